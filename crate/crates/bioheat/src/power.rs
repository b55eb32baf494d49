//! Rosensweig model for the volumetric power dissipated by magnetic
//! nanoparticles in an alternating magnetic field.
//!
//! ```text
//!   P = πμ₀χ₀H₀²f · 2πfτ/(1 + (2πfτ)²)
//! ```
//!
//! where the effective relaxation time τ combines the Néel (internal moment
//! reorientation) and Brownian (body rotation) channels in parallel,
//! 1/τ = 1/τ_N + 1/τ_B, and χ₀ is the chord susceptibility of the Langevin
//! magnetization evaluated at the field amplitude.

use crate::error::{Error, Result};
use crate::{BOLTZMANN, MU_0};

/// Langevin arguments below this use the series for (3/ξ)·L(ξ);
/// coth ξ − 1/ξ cancels catastrophically as ξ → 0.
const LANGEVIN_SERIES_THRESHOLD: f64 = 1e-4;

/// Magnetic nanoparticle parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParticleSpec {
    /// Particle diameter D, m.
    pub diameter: f64,
    /// Magnetocrystalline anisotropy constant K, J/m³.
    pub anisotropy: f64,
    /// Domain magnetization M_d, A/m.
    pub domain_magnetization: f64,
    /// Attempt time τ₀ of the Néel process, s.
    pub tau0: f64,
    /// Sorbed surfactant layer thickness δ, m.
    pub surfactant_thickness: f64,
    /// Volume fraction φ of particles in the carrier.
    pub volume_fraction: f64,
}

/// Alternating magnetic field parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldSpec {
    /// Field amplitude H₀, A/m.
    pub amplitude: f64,
    /// Field frequency f, Hz.
    pub frequency: f64,
}

/// Carrier medium parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MediumSpec {
    /// Dynamic viscosity η, Pa·s.
    pub viscosity: f64,
    /// Medium temperature T, K.
    pub temperature: f64,
}

impl ParticleSpec {
    /// Magnetite preset: M_d = 446 kA/m, K = 9 kJ/m³, with the conventional
    /// aqueous-suspension defaults τ₀ = 1 ns, δ = 1 nm, φ = 0.003.
    pub fn magnetite(diameter: f64) -> Self {
        ParticleSpec {
            diameter,
            anisotropy: 9e3,
            domain_magnetization: 446e3,
            tau0: 1e-9,
            surfactant_thickness: 1e-9,
            volume_fraction: 0.003,
        }
    }

    /// Magnetic volume V_M = πD³/6.
    pub fn magnetic_volume(&self) -> f64 {
        std::f64::consts::PI * self.diameter.powi(3) / 6.0
    }

    /// Hydrodynamic volume V_H = (1 + 2δ/D)³·V_M ≥ V_M.
    pub fn hydrodynamic_volume(&self) -> f64 {
        let ratio = 1.0 + 2.0 * self.surfactant_thickness / self.diameter;
        ratio.powi(3) * self.magnetic_volume()
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.diameter > 0.0 && self.diameter.is_finite()) {
            return Err(Error::invalid("diameter", self.diameter, "must be > 0"));
        }
        if !(self.anisotropy > 0.0) {
            return Err(Error::invalid("anisotropy", self.anisotropy, "must be > 0"));
        }
        if !(self.domain_magnetization > 0.0) {
            return Err(Error::invalid(
                "domain_magnetization",
                self.domain_magnetization,
                "must be > 0",
            ));
        }
        if !(self.tau0 > 0.0) {
            return Err(Error::invalid("tau0", self.tau0, "must be > 0"));
        }
        if !(self.surfactant_thickness >= 0.0) {
            return Err(Error::invalid(
                "surfactant_thickness",
                self.surfactant_thickness,
                "must be >= 0",
            ));
        }
        if !(self.volume_fraction > 0.0 && self.volume_fraction < 1.0) {
            return Err(Error::invalid(
                "volume_fraction",
                self.volume_fraction,
                "must be in (0, 1)",
            ));
        }
        Ok(())
    }
}

impl FieldSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.amplitude >= 0.0 && self.amplitude.is_finite()) {
            return Err(Error::invalid("amplitude", self.amplitude, "must be >= 0"));
        }
        if !(self.frequency > 0.0 && self.frequency.is_finite()) {
            return Err(Error::invalid("frequency", self.frequency, "must be > 0"));
        }
        Ok(())
    }
}

impl MediumSpec {
    /// Aqueous carrier at body temperature: η = 7×10⁻⁴ Pa·s, T = 310 K.
    pub fn aqueous_at_body_temperature() -> Self {
        MediumSpec {
            viscosity: 7.0e-4,
            temperature: 310.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.viscosity > 0.0) {
            return Err(Error::invalid("viscosity", self.viscosity, "must be > 0"));
        }
        if !(self.temperature > 0.0) {
            return Err(Error::invalid(
                "temperature",
                self.temperature,
                "must be > 0",
            ));
        }
        Ok(())
    }
}

/// Néel relaxation time τ_N = τ₀·√π·e^Γ/(2√Γ) with Γ = K·V_M/(k_B·T).
///
/// Errors instead of returning infinity when e^Γ overflows f64.
pub fn neel_relaxation(particle: &ParticleSpec, medium: &MediumSpec) -> Result<f64> {
    let gamma = particle.anisotropy * particle.magnetic_volume()
        / (BOLTZMANN * medium.temperature);
    if gamma <= 0.0 {
        return Err(Error::invalid("gamma", gamma, "anisotropy energy ratio must be > 0"));
    }
    if gamma > f64::MAX.ln() {
        return Err(Error::RelaxationOutOfRange { gamma });
    }
    Ok(particle.tau0 * std::f64::consts::PI.sqrt() * gamma.exp() / (2.0 * gamma.sqrt()))
}

/// Brownian relaxation time τ_B = 3ηV_H/(k_B·T).
pub fn brownian_relaxation(particle: &ParticleSpec, medium: &MediumSpec) -> f64 {
    3.0 * medium.viscosity * particle.hydrodynamic_volume()
        / (BOLTZMANN * medium.temperature)
}

/// Effective relaxation time: 1/τ = 1/τ_N + 1/τ_B.
pub fn effective_relaxation(tau_n: f64, tau_b: f64) -> f64 {
    tau_n * tau_b / (tau_n + tau_b)
}

/// (3/ξ)(coth ξ − 1/ξ): the chord factor of the Langevin magnetization,
/// tending to 1 as ξ → 0.
fn langevin_chord_factor(xi: f64) -> f64 {
    if xi < LANGEVIN_SERIES_THRESHOLD {
        let x2 = xi * xi;
        1.0 - x2 / 15.0 + 2.0 * x2 * x2 / 315.0
    } else {
        // coth ξ = 1 + 2/(e^{2ξ} − 1), accurate for moderate and large ξ
        let coth = 1.0 + 2.0 / (2.0 * xi).exp_m1();
        3.0 / xi * (coth - 1.0 / xi)
    }
}

/// Chord susceptibility χ₀ = χ_i·(3/ξ)(coth ξ − 1/ξ).
///
/// χ_i = μ₀φM_d²V_M/(3k_BT) and ξ = μ₀M_dH₀V_M/(k_BT), with ξ evaluated at
/// the field amplitude H₀. 0 < χ₀ ≤ χ_i, with χ₀ → χ_i as H₀ → 0.
pub fn equilibrium_susceptibility(
    particle: &ParticleSpec,
    field: &FieldSpec,
    medium: &MediumSpec,
) -> f64 {
    let vm = particle.magnetic_volume();
    let kt = BOLTZMANN * medium.temperature;
    let chi_i =
        MU_0 * particle.volume_fraction * particle.domain_magnetization.powi(2) * vm / (3.0 * kt);
    let xi = MU_0 * particle.domain_magnetization * field.amplitude * vm / kt;
    chi_i * langevin_chord_factor(xi)
}

/// Volumetric power dissipation P = πμ₀χ₀H₀²f·2πfτ/(1+(2πfτ)²), W/m³.
pub fn power_dissipation(
    particle: &ParticleSpec,
    field: &FieldSpec,
    medium: &MediumSpec,
) -> Result<f64> {
    particle.validate()?;
    field.validate()?;
    medium.validate()?;
    let tau_n = neel_relaxation(particle, medium)?;
    let tau_b = brownian_relaxation(particle, medium);
    let tau = effective_relaxation(tau_n, tau_b);
    let chi0 = equilibrium_susceptibility(particle, field, medium);
    let omega_tau = 2.0 * std::f64::consts::PI * field.frequency * tau;
    let debye = omega_tau / (1.0 + omega_tau * omega_tau);
    Ok(std::f64::consts::PI
        * MU_0
        * chi0
        * field.amplitude
        * field.amplitude
        * field.frequency
        * debye)
}

/// Sample P over a diameter range, holding every other particle parameter
/// fixed. Returns (D, P) pairs on a uniform grid of `n_points` diameters.
pub fn sweep_diameter(
    particle_template: &ParticleSpec,
    field: &FieldSpec,
    medium: &MediumSpec,
    d_range: (f64, f64),
    n_points: usize,
) -> Result<Vec<(f64, f64)>> {
    let (d_min, d_max) = d_range;
    if !(d_min > 0.0 && d_max > d_min) {
        return Err(Error::invalid("d_range", d_min, "requires 0 < d_min < d_max"));
    }
    if n_points < 2 {
        return Err(Error::invalid(
            "n_points",
            n_points as f64,
            "needs at least 2 samples",
        ));
    }
    let mut curve = Vec::with_capacity(n_points);
    for i in 0..n_points {
        let d = d_min + (d_max - d_min) * i as f64 / (n_points - 1) as f64;
        let particle = ParticleSpec {
            diameter: d,
            ..*particle_template
        };
        curve.push((d, power_dissipation(&particle, field, medium)?));
    }
    Ok(curve)
}
