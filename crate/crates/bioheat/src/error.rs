use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Errors raised by parameter validation and the numerical kernels.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A parameter violates its documented range.
    #[error("invalid parameter {name}: {reason} (got {value})")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    /// Néel relaxation exponent too large for f64 arithmetic.
    #[error("Neel relaxation out of range: exp(Γ) overflows for Γ = {gamma:.3}")]
    RelaxationOutOfRange { gamma: f64 },

    /// The point-source solutions carry a 1/r factor and diverge at r = 0.
    #[error("point source temperature is singular at r = 0")]
    PointSourceSingularity,

    /// Semi-infinite β quadrature failed to meet its tolerances.
    #[error(
        "oscillatory quadrature did not converge within {panels} panels \
         (last panel {last_panel:.3e}, residual estimate {residual:.3e})"
    )]
    QuadratureNonConvergence {
        panels: usize,
        last_panel: f64,
        residual: f64,
    },

    /// Time-convolution quadrature failed to meet its tolerances.
    #[error(
        "time quadrature did not converge within {subdivisions} subdivisions \
         (residual estimate {residual:.3e})"
    )]
    TimeQuadratureNonConvergence { subdivisions: usize, residual: f64 },

    /// Explicit scheme stability bound κΔt/(ρc_pΔr²) ≤ 1/2 violated.
    #[error("finite-difference stability violated: κΔt/(ρc_pΔr²) = {ratio:.6} > 0.5")]
    FdmUnstable { ratio: f64 },

    /// A finite-difference step produced a non-finite temperature.
    #[error("finite-difference solution diverged at step {step} (node {node})")]
    FdmDiverged { step: usize, node: usize },

    /// Evaluation context attached to a solver failure.
    #[error("at r = {r:.6e} m, t = {t:.6e} s: {source}")]
    AtPoint {
        r: f64,
        t: f64,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    /// Wrap with the (r, t) evaluation point that triggered the failure.
    pub fn at_point(self, r: f64, t: f64) -> Self {
        Error::AtPoint {
            r,
            t,
            source: Box::new(self),
        }
    }

    pub(crate) fn invalid(name: &'static str, value: f64, reason: &'static str) -> Self {
        Error::InvalidParameter {
            name,
            value,
            reason,
        }
    }
}
