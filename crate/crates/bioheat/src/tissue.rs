//! Thermo-physical tissue/blood parameters and derived solver constants.
//!
//! All solvers share four derived quantities:
//!
//! ```text
//!   K  = ρc_p/κ                   (s/m²)
//!   α  = √(ρ_b c_pb ω_b / κ)      (1/m)   perfusion screening constant
//!   a  = κ/(ρc_p) = 1/K           (m²/s)  thermal diffusivity
//!   b  = ρ_b c_pb ω_b/(ρc_p)      (1/s)   perfusion rate constant
//! ```
//!
//! with the identity √(b/a) = α tying the integral-transform and
//! Green's-function steady states together.

use crate::error::{Error, Result};

/// Thermo-physical constants of tissue and blood.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TissueProperties {
    /// Thermal conductivity of tissue, W/m/K.
    pub kappa: f64,
    /// Density of tissue, kg/m³.
    pub rho: f64,
    /// Specific heat of tissue, J/kg/K.
    pub cp: f64,
    /// Density of blood, kg/m³.
    pub rho_b: f64,
    /// Specific heat of blood, J/kg/K.
    pub cp_b: f64,
    /// Blood perfusion rate, 1/s.
    pub omega_b: f64,
    /// Arterial blood temperature, K.
    pub ta: f64,
    /// Metabolic heat generation rate, W/m³.
    pub qmet: f64,
}

/// Solver constants derived from [`TissueProperties`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedConstants {
    /// K = ρc_p/κ, s/m².
    pub big_k: f64,
    /// α = √(ρ_b c_pb ω_b/κ), 1/m.
    pub alpha: f64,
    /// a = κ/(ρc_p), m²/s.
    pub a: f64,
    /// b = ρ_b c_pb ω_b/(ρc_p), 1/s.
    pub b: f64,
}

impl TissueProperties {
    /// Muscle-like tissue preset used throughout the reference scenarios:
    /// κ = 0.502 W/m/K, ρ = 1060 kg/m³, c_p = 3600 J/kg/K,
    /// ρ_b = 1000 kg/m³, c_pb = 4180 J/kg/K, ω_b = 6.4×10⁻³ s⁻¹, T_c = 310 K.
    pub fn body_preset() -> Self {
        TissueProperties {
            kappa: 0.502,
            rho: 1060.0,
            cp: 3600.0,
            rho_b: 1000.0,
            cp_b: 4180.0,
            omega_b: 6.4e-3,
            ta: 310.0,
            qmet: 0.0,
        }
    }

    /// Check the documented parameter ranges.
    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("kappa", self.kappa),
            ("rho", self.rho),
            ("cp", self.cp),
            ("rho_b", self.rho_b),
            ("cp_b", self.cp_b),
            ("omega_b", self.omega_b),
            ("ta", self.ta),
        ];
        for (name, value) in positive {
            if !(value > 0.0 && value.is_finite()) {
                return Err(Error::invalid(name, value, "must be finite and > 0"));
            }
        }
        if !(self.qmet >= 0.0 && self.qmet.is_finite()) {
            return Err(Error::invalid("qmet", self.qmet, "must be finite and >= 0"));
        }
        Ok(())
    }

    /// Core temperature T_c = T_a + Q_met/(ρ_b c_pb ω_b): the uniform tissue
    /// temperature before heating, set by the balance of metabolic heat and
    /// perfusion.
    pub fn core_temperature(&self) -> f64 {
        self.ta + self.qmet / (self.rho_b * self.cp_b * self.omega_b)
    }

    /// The four derived solver constants.
    pub fn derived_constants(&self) -> DerivedConstants {
        let rc = self.rho * self.cp;
        let perf = self.rho_b * self.cp_b * self.omega_b;
        DerivedConstants {
            big_k: rc / self.kappa,
            alpha: (perf / self.kappa).sqrt(),
            a: self.kappa / rc,
            b: perf / rc,
        }
    }
}
