//! Explicit forward-difference solver on a uniform radial grid.
//!
//! Nodes sit at r_i = i·Δr, i = 0..M−1. The interior update discretizes
//! κ(∂²T/∂r² + (2/r)∂T/∂r) with the centered form
//!
//! ```text
//!   T_i' = T_i + λ[(1 + 1/i)(T_{i+1} − T_i) − (1 − 1/i)(T_i − T_{i−1})]
//!          + (ρ_b c_pb ω_b Δt/ρc_p)(T_c − T_i) + (Δt/ρc_p)P_i
//! ```
//!
//! with λ = κΔt/(ρc_pΔr²). Every coefficient is non-negative up to the
//! classical bound λ ≤ 1/2, which the constructor enforces; the default
//! time step saturates it. Zero-flux boundaries are applied by mirroring
//! the first interior node into the center and the last interior node into
//! the outer edge after each sweep.
//!
//! A L'Hôpital-style center update T₀' = T₀ + 6λ(T₁ − T₀) + … is available
//! as a compatibility variant. Its own amplification bound is the stricter
//! λ ≤ 1/3: at λ = 1/2 the factor 6λ = 3 makes the center recursion
//! T₀' = −2T₀ + 3T₁ + … grow without bound, so the variant rejects time
//! steps beyond 1/3.

use crate::error::{Error, Result};
use crate::profile::RadialProfile;
use crate::source::HeatSource;
use crate::tissue::TissueProperties;

/// Stability bound κΔt/(ρc_pΔr²) ≤ 1/2 for the explicit sweep.
pub const STABILITY_LIMIT: f64 = 0.5;

/// Stricter bound for the L'Hôpital center variant.
pub const LHOPITAL_STABILITY_LIMIT: f64 = 1.0 / 3.0;

/// How the r = 0 node is closed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CenterTreatment {
    /// Zero-gradient mirror: T₀ takes the updated first-ring value.
    #[default]
    Mirror,
    /// Factor-6 center update from lim_{r→0} (1/r)∂T/∂r = ∂²T/∂r².
    LHopital,
}

/// Uniform radial grid and time step for the explicit scheme.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FdmGrid {
    /// Node spacing Δr, m.
    pub dr: f64,
    /// Outer domain radius, m.
    pub outer_radius: f64,
    /// Time step Δt, s.
    pub dt: f64,
    /// Node count M = outer_radius/Δr + 1.
    pub node_count: usize,
    /// Center closure.
    pub center: CenterTreatment,
    stability_ratio: f64,
}

/// Temperatures on the grid after `step_index` sweeps.
#[derive(Debug, Clone, PartialEq)]
pub struct FdmState {
    pub temperatures: Vec<f64>,
    pub elapsed: f64,
    pub step_index: usize,
}

impl FdmGrid {
    /// Grid with the default time step Δt = ρc_pΔr²/(2κ), which saturates
    /// the stability bound exactly.
    pub fn new(tissue: &TissueProperties, dr: f64, outer_radius: f64) -> Result<Self> {
        let dt = tissue.rho * tissue.cp * dr * dr / (2.0 * tissue.kappa);
        Self::with_dt(tissue, dr, outer_radius, dt)
    }

    /// Paper-scenario grid: Δr = 0.3 mm, outer radius 15 cm (501 nodes).
    pub fn reference(tissue: &TissueProperties) -> Result<Self> {
        Self::new(tissue, 0.3e-3, 0.15)
    }

    /// Grid with an explicit time step, rejected if it violates stability.
    pub fn with_dt(tissue: &TissueProperties, dr: f64, outer_radius: f64, dt: f64) -> Result<Self> {
        tissue.validate()?;
        if !(dr > 0.0 && dr.is_finite()) {
            return Err(Error::invalid("dr", dr, "must be finite and > 0"));
        }
        if !(outer_radius > 0.0 && outer_radius.is_finite()) {
            return Err(Error::invalid(
                "outer_radius",
                outer_radius,
                "must be finite and > 0",
            ));
        }
        if !(dt > 0.0 && dt.is_finite()) {
            return Err(Error::invalid("dt", dt, "must be finite and > 0"));
        }
        let node_count = (outer_radius / dr).round() as usize + 1;
        if node_count < 4 {
            return Err(Error::invalid(
                "node_count",
                node_count as f64,
                "grid needs at least 4 nodes",
            ));
        }
        let ratio = tissue.kappa * dt / (tissue.rho * tissue.cp * dr * dr);
        if ratio > STABILITY_LIMIT * (1.0 + 1e-12) {
            return Err(Error::FdmUnstable { ratio });
        }
        Ok(FdmGrid {
            dr,
            outer_radius,
            dt,
            node_count,
            center: CenterTreatment::Mirror,
            stability_ratio: ratio,
        })
    }

    /// Switch the center closure; the L'Hôpital variant re-checks its
    /// stricter stability bound.
    pub fn with_center(self, center: CenterTreatment) -> Result<Self> {
        if center == CenterTreatment::LHopital
            && self.stability_ratio > LHOPITAL_STABILITY_LIMIT * (1.0 + 1e-12)
        {
            return Err(Error::FdmUnstable {
                ratio: self.stability_ratio,
            });
        }
        Ok(FdmGrid { center, ..self })
    }

    /// κΔt/(ρc_pΔr²) actually in effect.
    pub fn stability_ratio(&self) -> f64 {
        self.stability_ratio
    }

    /// Node radii i·Δr.
    pub fn radii(&self) -> Vec<f64> {
        (0..self.node_count).map(|i| i as f64 * self.dr).collect()
    }

    /// Uniform initial state at the core temperature.
    pub fn init_state(&self, tissue: &TissueProperties) -> FdmState {
        FdmState {
            temperatures: vec![tissue.core_temperature(); self.node_count],
            elapsed: 0.0,
            step_index: 0,
        }
    }

    /// One explicit sweep against a nodal power density field (W/m³).
    pub fn step(
        &self,
        state: &FdmState,
        tissue: &TissueProperties,
        source_field: &[f64],
    ) -> Result<FdmState> {
        assert_eq!(
            source_field.len(),
            self.node_count,
            "source field length must match the grid"
        );
        assert_eq!(state.temperatures.len(), self.node_count);
        let m = self.node_count;
        let lambda = self.stability_ratio;
        let tc = tissue.core_temperature();
        let rc = tissue.rho * tissue.cp;
        let perfusion = tissue.rho_b * tissue.cp_b * tissue.omega_b * self.dt / rc;
        let source_gain = self.dt / rc;
        let old = &state.temperatures;
        let mut new = vec![0.0; m];

        for i in 1..m - 1 {
            let inv_i = 1.0 / i as f64;
            let outward = (1.0 + inv_i) * (old[i + 1] - old[i]);
            let inward = (1.0 - inv_i) * (old[i] - old[i - 1]);
            new[i] = old[i]
                + lambda * (outward - inward)
                + perfusion * (tc - old[i])
                + source_gain * source_field[i];
        }
        new[0] = match self.center {
            CenterTreatment::Mirror => new[1],
            CenterTreatment::LHopital => {
                old[0]
                    + 6.0 * lambda * (old[1] - old[0])
                    + perfusion * (tc - old[0])
                    + source_gain * source_field[0]
            }
        };
        new[m - 1] = new[m - 2];

        let step_index = state.step_index + 1;
        if let Some(node) = new.iter().position(|v| !v.is_finite()) {
            return Err(Error::FdmDiverged {
                step: step_index,
                node,
            });
        }
        Ok(FdmState {
            temperatures: new,
            elapsed: step_index as f64 * self.dt,
            step_index,
        })
    }

    /// Sample a source shape at the node radii. Delta-shaped sources have
    /// no finite nodal density and are not representable on the grid.
    pub fn discretize_source(&self, source: &HeatSource) -> Result<Vec<f64>> {
        source.validate()?;
        match *source {
            HeatSource::Gaussian { p0, r0 } => Ok(self
                .radii()
                .iter()
                .map(|&r| p0 * (-(r / r0) * (r / r0)).exp())
                .collect()),
            HeatSource::Step { p0, r0 } => Ok(self
                .radii()
                .iter()
                .map(|&r| if r <= r0 * (1.0 + 1e-12) { p0 } else { 0.0 })
                .collect()),
            HeatSource::Point { .. } | HeatSource::Shell { .. } => Err(Error::invalid(
                "source",
                f64::NAN,
                "delta-shaped sources cannot be sampled on the finite-difference grid",
            )),
        }
    }

    /// March from T ≡ T_c and capture a profile at the first step time at
    /// or after each requested sample time (sorted; 0 yields the initial
    /// state).
    pub fn run(
        &self,
        source: &HeatSource,
        tissue: &TissueProperties,
        sample_times: &[f64],
    ) -> Result<Vec<RadialProfile>> {
        if sample_times.is_empty() {
            return Err(Error::invalid("sample_times", 0.0, "must be non-empty"));
        }
        if sample_times.windows(2).any(|w| w[1] < w[0]) {
            return Err(Error::invalid("sample_times", f64::NAN, "must be sorted"));
        }
        if sample_times.iter().any(|&t| !(t >= 0.0 && t.is_finite())) {
            return Err(Error::invalid(
                "sample_times",
                f64::NAN,
                "must be finite and >= 0",
            ));
        }
        let field = self.discretize_source(source)?;
        let radii = self.radii();
        let mut state = self.init_state(tissue);
        let mut profiles = Vec::with_capacity(sample_times.len());
        // absorb rounding dust when a sample time is an exact step multiple
        let snap = |elapsed: f64, t: f64| elapsed >= t - 1e-9 * t.max(1.0);

        for &t in sample_times {
            while !snap(state.elapsed, t) {
                state = self.step(&state, tissue, &field)?;
            }
            profiles.push(RadialProfile::new(
                state.elapsed,
                radii.clone(),
                state.temperatures.clone(),
            )?);
        }
        Ok(profiles)
    }
}
