//! Tissue temperature fields during magnetic nanoparticle hyperthermia.
//!
//! Heating of a perfused tissue by a spherically symmetric power deposition
//! is governed by the Pennes bioheat equation
//!
//! ```text
//!   ρc_p ∂T/∂t = κ∇²T + ρ_b c_pb ω_b (T_c − T) + P(r)
//! ```
//!
//! with an infinite domain, uniform properties and a constant source. This
//! crate evaluates the temperature field T(r, t) by three independent routes
//! and the nanoparticle power density P by the Rosensweig linear-response
//! model:
//!
//! - [`transform`] — semi-analytic solutions built on the Fourier sine
//!   transform of the substituted variable θ = (T − T_c)·r, one specialized
//!   form per source shape (point, shell, Gaussian, step).
//! - [`greens`] — time convolutions against the heat kernel of the perfused
//!   medium, available for point and shell sources; serves as an independent
//!   oracle for the transform route.
//! - [`fdm`] — explicit finite differences on a uniform radial grid.
//! - [`power`] — Néel/Brownian relaxation, chord susceptibility and the
//!   volumetric dissipation of nanoparticles in an alternating field.
//!
//! [`tissue`] holds the thermo-physical parameters and derived solver
//! constants, [`source`] the four source shapes and their sine transforms,
//! and [`compare`] the cross-method difference metrics.

// validation guards use `!(x > 0.0)` so NaN fails the check
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod compare;
mod error;
pub mod fdm;
pub mod greens;
pub mod power;
pub mod profile;
pub mod quad;
pub mod source;
pub mod tissue;
pub mod transform;

pub use compare::{compare_profiles, ComparisonReport, TimeComparison};
pub use error::{Error, Result};
pub use fdm::{FdmGrid, FdmState};
pub use power::{FieldSpec, MediumSpec, ParticleSpec};
pub use profile::RadialProfile;
pub use quad::QuadratureConfig;
pub use source::HeatSource;
pub use tissue::{DerivedConstants, TissueProperties};

/// Permeability of free space, T·m/A.
pub const MU_0: f64 = 4.0e-7 * std::f64::consts::PI;

/// Boltzmann constant, J/K.
pub const BOLTZMANN: f64 = 1.380_649e-23;

/// Field-unit conversion used for alternating-field amplitudes: 1 mT = 0.796 kA/m.
pub const A_PER_M_PER_MT: f64 = 796.0;

/// Radii below this threshold are treated as the exact center r = 0.
///
/// Well below any physical grid spacing while keeping sin(βr)/r far from
/// the cancellation regime.
pub const R_CENTER_EPS: f64 = 1e-9;
