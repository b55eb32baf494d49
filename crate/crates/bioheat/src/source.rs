//! Heat source shapes and their Fourier sine transforms.
//!
//! Four spherically symmetric deposition profiles are supported:
//!
//! ```text
//!   point     P(r) = P₀ δ(r)/(4πr²)                      P₀ in W
//!   shell     P(r) = P₀ δ(r − r₀)/(4πr²)                 P₀ in W
//!   gaussian  P(r) = P₀ e^{−r²/r₀²}                      P₀ in W/m³
//!   step      P(r) = P₀ for r ≤ r₀, 0 outside            P₀ in W/m³
//! ```
//!
//! The transform solver consumes them through
//!
//! ```text
//!   F(β) = √(2/π) ∫₀^∞ r P(r) sin(βr) dr
//! ```
//!
//! which each shape admits in closed form.

use crate::error::{Error, Result};

/// Fraction of a radian below which the step transform switches to its
/// series form; sin(x) − x·cos(x) loses all significant digits as x → 0.
const STEP_SERIES_THRESHOLD: f64 = 1e-3;

/// A spherically symmetric heat deposition profile.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum HeatSource {
    /// Point release of `p0` watts at the origin.
    Point { p0: f64 },
    /// Zero-width spherical surface source of `p0` watts at radius `r0`.
    ///
    /// `shell_width` is the physical thickness used only to normalize the
    /// amplitude from a power density; the solvers treat the shell as
    /// zero-width at `r0`.
    Shell { p0: f64, r0: f64, shell_width: f64 },
    /// Gaussian profile with peak density `p0` (W/m³) and spread radius `r0`.
    Gaussian { p0: f64, r0: f64 },
    /// Uniform density `p0` (W/m³) inside radius `r0`, zero outside.
    Step { p0: f64, r0: f64 },
}

impl HeatSource {
    /// Source amplitude P₀ (W for point/shell, W/m³ for gaussian/step).
    pub fn amplitude(&self) -> f64 {
        match *self {
            HeatSource::Point { p0 }
            | HeatSource::Shell { p0, .. }
            | HeatSource::Gaussian { p0, .. }
            | HeatSource::Step { p0, .. } => p0,
        }
    }

    /// Characteristic radius r₀; `None` for the point source.
    pub fn radius(&self) -> Option<f64> {
        match *self {
            HeatSource::Point { .. } => None,
            HeatSource::Shell { r0, .. }
            | HeatSource::Gaussian { r0, .. }
            | HeatSource::Step { r0, .. } => Some(r0),
        }
    }

    /// Check the documented parameter ranges.
    pub fn validate(&self) -> Result<()> {
        let p0 = self.amplitude();
        if !(p0 >= 0.0 && p0.is_finite()) {
            return Err(Error::invalid("p0", p0, "must be finite and >= 0"));
        }
        if let Some(r0) = self.radius() {
            if !(r0 > 0.0 && r0.is_finite()) {
                return Err(Error::invalid("r0", r0, "must be finite and > 0"));
            }
        }
        if let HeatSource::Shell { shell_width, .. } = *self {
            if !(shell_width > 0.0 && shell_width.is_finite()) {
                return Err(Error::invalid(
                    "shell_width",
                    shell_width,
                    "must be finite and > 0",
                ));
            }
        }
        Ok(())
    }

    /// Fourier sine transform F(β) of r·P(r).
    ///
    /// Closed forms per shape, with a cubic series branch for the step
    /// source below β·r₀ = 1e-3. All shapes give F(0) = 0.
    pub fn sine_transform(&self, beta: f64) -> f64 {
        let sqrt_2_over_pi = (2.0 / std::f64::consts::PI).sqrt();
        match *self {
            HeatSource::Point { p0 } => sqrt_2_over_pi * p0 * beta / (4.0 * std::f64::consts::PI),
            HeatSource::Shell { p0, r0, .. } => {
                sqrt_2_over_pi * p0 * (beta * r0).sin() / (4.0 * std::f64::consts::PI * r0)
            }
            HeatSource::Gaussian { p0, r0 } => {
                let x = beta * r0;
                std::f64::consts::SQRT_2 / 4.0 * p0 * r0.powi(3) * beta * (-x * x / 4.0).exp()
            }
            HeatSource::Step { p0, r0 } => {
                let x = beta * r0;
                if x < STEP_SERIES_THRESHOLD {
                    // sin x − x cos x = x³/3 − x⁵/30 + x⁷/840 − …
                    let x2 = x * x;
                    sqrt_2_over_pi * p0 * beta * r0.powi(3) * (1.0 / 3.0 - x2 / 30.0
                        + x2 * x2 / 840.0)
                } else {
                    sqrt_2_over_pi * p0 * (x.sin() - x * x.cos()) / (beta * beta)
                }
            }
        }
    }
}

/// Point amplitude from a power density filling a small sphere:
/// P₀ = P·(4/3)π·radius³.
pub fn point_amplitude_from_density(power_density: f64, sphere_radius: f64) -> f64 {
    power_density * 4.0 / 3.0 * std::f64::consts::PI * sphere_radius.powi(3)
}

/// Shell amplitude from a power density filling a finite shell of the given
/// width: P₀ = P·(4/3)π[(r₀+w/2)³ − (r₀−w/2)³].
pub fn shell_amplitude_from_density(power_density: f64, r0: f64, width: f64) -> f64 {
    let outer = r0 + width / 2.0;
    let inner = r0 - width / 2.0;
    power_density * 4.0 / 3.0 * std::f64::consts::PI * (outer.powi(3) - inner.powi(3))
}
