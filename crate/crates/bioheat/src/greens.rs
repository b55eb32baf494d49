//! Temperature solutions by convolution against the heat kernel of the
//! perfused medium; the independent oracle for the transform route.
//!
//! The kernel for radial flow in an infinite domain is
//!
//! ```text
//!   G(r,t;r',τ) = e^{−b(t−τ)}/(2rr'√(aπ(t−τ)))·[e^{−(r−r')²/(4a(t−τ))} − e^{−(r+r')²/(4a(t−τ))}]
//! ```
//!
//! and the delta-shaped sources collapse the spatial integral, leaving a
//! single time integral over the age s = t − τ. The integrands are
//! violently peaked near s = 0 for small radii and carry an s^{−1/2}
//! endpoint at r = r₀, so they are evaluated on a power-law graded mesh
//! concentrated toward s = 0.
//!
//! Only point and shell sources are treated here; distributed sources keep
//! a genuine double integral and are handled by the other two methods.

use crate::error::{Error, Result};
use crate::quad::{integrate_graded_finite, QuadOutcome};
use crate::tissue::TissueProperties;
use crate::R_CENTER_EPS;

/// Exponent below which e^x underflows f64; kernels short-circuit to zero.
const EXP_UNDERFLOW: f64 = -745.0;

/// Controls for the time-convolution quadrature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeIntegralConfig {
    /// Relative tolerance on the integral.
    pub rel_tol: f64,
    /// Power-law exponent of the graded mesh toward s = 0.
    pub graded_exponent: f64,
    /// Hard cap on mesh cells.
    pub max_subdivisions: usize,
}

impl Default for TimeIntegralConfig {
    fn default() -> Self {
        TimeIntegralConfig {
            rel_tol: 1e-8,
            graded_exponent: 2.0,
            max_subdivisions: 100_000,
        }
    }
}

impl TimeIntegralConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0) {
            return Err(Error::invalid("rel_tol", self.rel_tol, "must be > 0"));
        }
        if !(self.graded_exponent >= 1.0) {
            return Err(Error::invalid(
                "graded_exponent",
                self.graded_exponent,
                "must be >= 1",
            ));
        }
        Ok(())
    }
}

/// The heat kernel G(r, t; r', τ) of the perfused medium, written with
/// age s = t − τ. Diverges as r' → 0 against anything but a point source.
pub fn heat_kernel(tissue: &TissueProperties, r: f64, r_src: f64, s: f64) -> f64 {
    let d = tissue.derived_constants();
    let four_as = 4.0 * d.a * s;
    let gauss_diff =
        (-(r - r_src) * (r - r_src) / four_as).exp() - (-(r + r_src) * (r + r_src) / four_as).exp();
    (-d.b * s).exp() / (2.0 * r * r_src * (d.a * std::f64::consts::PI * s).sqrt()) * gauss_diff
}

/// ∫₀^t e^{−bs − ρ²/(4as)}·s^{−3/2} ds: the kernel shared by the point
/// solution at radius ρ = r and the shell center solution at ρ = r₀.
fn three_halves_kernel_integral(
    tissue: &TissueProperties,
    rho: f64,
    t: f64,
    cfg: &TimeIntegralConfig,
) -> Result<QuadOutcome> {
    let d = tissue.derived_constants();
    let peak = rho * rho / (4.0 * d.a);
    let kernel = move |s: f64| {
        let expo = -d.b * s - peak / s;
        if expo < EXP_UNDERFLOW {
            return 0.0;
        }
        expo.exp() * s.powf(-1.5)
    };
    integrate_graded_finite(
        kernel,
        t,
        cfg.graded_exponent,
        cfg.rel_tol,
        f64::MIN_POSITIVE,
        cfg.max_subdivisions,
    )
}

fn validate_common(tissue: &TissueProperties, p0: f64, t: f64, cfg: &TimeIntegralConfig) -> Result<()> {
    tissue.validate()?;
    cfg.validate()?;
    if !(p0 >= 0.0 && p0.is_finite()) {
        return Err(Error::invalid("p0", p0, "must be finite and >= 0"));
    }
    if !(t >= 0.0 && t.is_finite()) {
        return Err(Error::invalid("t", t, "must be finite and >= 0"));
    }
    Ok(())
}

/// T(r, t) for a point source of `p0` watts at the origin.
pub fn point_temperature(
    tissue: &TissueProperties,
    p0: f64,
    r: f64,
    t: f64,
    cfg: &TimeIntegralConfig,
) -> Result<f64> {
    validate_common(tissue, p0, t, cfg)?;
    if r < R_CENTER_EPS {
        // the convolution integral diverges at the source location
        return Err(Error::PointSourceSingularity);
    }
    let tc = tissue.core_temperature();
    if t == 0.0 || p0 == 0.0 {
        return Ok(tc);
    }
    let d = tissue.derived_constants();
    let prefactor = p0
        / (8.0 * std::f64::consts::PI.powf(1.5) * tissue.kappa * d.a.sqrt());
    let out = three_halves_kernel_integral(tissue, r, t, cfg)
        .map_err(|e| e.at_point(r, t))?;
    Ok(tc + prefactor * out.value)
}

/// T(r, t) for a point source evaluated through the substitution
/// u = r/(2√(as)), which maps the peaked kernel onto the smooth
/// e^{−u²−c²/u²} with c = αr/2. Independent verification path for
/// [`point_temperature`].
pub fn point_temperature_usub(
    tissue: &TissueProperties,
    p0: f64,
    r: f64,
    t: f64,
    cfg: &TimeIntegralConfig,
) -> Result<f64> {
    validate_common(tissue, p0, t, cfg)?;
    if r < R_CENTER_EPS {
        return Err(Error::PointSourceSingularity);
    }
    let tc = tissue.core_temperature();
    if t == 0.0 || p0 == 0.0 {
        return Ok(tc);
    }
    let d = tissue.derived_constants();
    let c = 0.5 * d.alpha * r;
    let u_lower = r / (2.0 * (d.a * t).sqrt());
    let span = (c.sqrt().max(1.0) + 30.0 - u_lower).max(30.0);
    let integrand = move |v: f64| {
        let u = u_lower + v;
        let expo = -u * u - c * c / (u * u);
        if expo < EXP_UNDERFLOW {
            return 0.0;
        }
        expo.exp()
    };
    let out = integrate_graded_finite(
        integrand,
        span,
        1.0,
        cfg.rel_tol,
        f64::MIN_POSITIVE,
        cfg.max_subdivisions,
    )
    .map_err(|e| e.at_point(r, t))?;
    let prefactor = p0 / (2.0 * std::f64::consts::PI.powf(1.5) * tissue.kappa * r);
    Ok(tc + prefactor * out.value)
}

/// T(r, t) for a shell source of `p0` watts at radius `r0`; the center
/// case reduces to the point kernel evaluated at ρ = r₀.
pub fn shell_temperature(
    tissue: &TissueProperties,
    p0: f64,
    r0: f64,
    r: f64,
    t: f64,
    cfg: &TimeIntegralConfig,
) -> Result<f64> {
    validate_common(tissue, p0, t, cfg)?;
    if !(r0 > 0.0 && r0.is_finite()) {
        return Err(Error::invalid("r0", r0, "must be finite and > 0"));
    }
    if !(r >= 0.0 && r.is_finite()) {
        return Err(Error::invalid("r", r, "must be finite and >= 0"));
    }
    let tc = tissue.core_temperature();
    if t == 0.0 || p0 == 0.0 {
        return Ok(tc);
    }
    let d = tissue.derived_constants();
    if r < R_CENTER_EPS {
        let prefactor =
            p0 / (8.0 * std::f64::consts::PI.powf(1.5) * tissue.kappa * d.a.sqrt());
        let out = three_halves_kernel_integral(tissue, r0, t, cfg)
            .map_err(|e| e.at_point(r, t))?;
        return Ok(tc + prefactor * out.value);
    }
    // Difference of the two image Gaussians, stabilized as
    // e^{−(r−r₀)²/(4as)}·(1 − e^{−rr₀/(as)}) so nearby exponentials are
    // never subtracted.
    let near = (r - r0) * (r - r0) / (4.0 * d.a);
    let cross = r * r0 / d.a;
    let b = d.b;
    let a_pi = d.a * std::f64::consts::PI;
    let kernel = move |s: f64| {
        let expo = -b * s - near / s;
        if expo < EXP_UNDERFLOW {
            return 0.0;
        }
        expo.exp() / (a_pi * s).sqrt() * (-(-cross / s).exp_m1())
    };
    let out = integrate_graded_finite(
        kernel,
        t,
        cfg.graded_exponent,
        cfg.rel_tol,
        f64::MIN_POSITIVE,
        cfg.max_subdivisions,
    )
    .map_err(|e| e.at_point(r, t))?;
    let prefactor = d.a * p0 / (8.0 * std::f64::consts::PI * tissue.kappa * r * r0);
    Ok(tc + prefactor * out.value)
}

/// Steady point solution T = T_c + P₀e^{−√(b/a)r}/(4πκr).
pub fn steady_point(tissue: &TissueProperties, p0: f64, r: f64) -> Result<f64> {
    if r < R_CENTER_EPS {
        return Err(Error::PointSourceSingularity);
    }
    let d = tissue.derived_constants();
    let decay = (-(d.b / d.a).sqrt() * r).exp();
    Ok(tissue.core_temperature() + p0 * decay / (4.0 * std::f64::consts::PI * tissue.kappa * r))
}

/// Steady shell solution
/// T = T_c + P₀√(a/b)·[e^{−√(b/a)|r−r₀|} − e^{−√(b/a)(r+r₀)}]/(8πκrr₀);
/// continuous across r = r₀ and finite at the center.
pub fn steady_shell(tissue: &TissueProperties, p0: f64, r0: f64, r: f64) -> f64 {
    if r < R_CENTER_EPS {
        return steady_shell_center(tissue, p0, r0);
    }
    let d = tissue.derived_constants();
    let decay_rate = (d.b / d.a).sqrt();
    let diff = (-decay_rate * (r - r0).abs()).exp() - (-decay_rate * (r + r0)).exp();
    tissue.core_temperature()
        + p0 * (d.a / d.b).sqrt() * diff / (8.0 * std::f64::consts::PI * tissue.kappa * r * r0)
}

/// Steady shell solution at the center, T = T_c + P₀e^{−√(b/a)r₀}/(4πκr₀).
pub fn steady_shell_center(tissue: &TissueProperties, p0: f64, r0: f64) -> f64 {
    let d = tissue.derived_constants();
    let decay = (-(d.b / d.a).sqrt() * r0).exp();
    tissue.core_temperature() + p0 * decay / (4.0 * std::f64::consts::PI * tissue.kappa * r0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::QuadratureConfig;
    use crate::source::HeatSource;
    use crate::transform;

    fn body() -> TissueProperties {
        TissueProperties::body_preset()
    }

    fn cfg() -> TimeIntegralConfig {
        TimeIntegralConfig::default()
    }

    #[test]
    fn starts_at_core_temperature() {
        assert_eq!(
            point_temperature(&body(), 0.0096, 5e-3, 0.0, &cfg()).unwrap(),
            310.0
        );
        assert_eq!(
            shell_temperature(&body(), 0.72, 5e-3, 2e-3, 0.0, &cfg()).unwrap(),
            310.0
        );
    }

    #[test]
    fn point_center_diverges() {
        assert!(matches!(
            point_temperature(&body(), 0.0096, 0.0, 10.0, &cfg()),
            Err(Error::PointSourceSingularity)
        ));
    }

    #[test]
    fn point_long_time_reaches_steady() {
        let late = point_temperature(&body(), 0.0096, 5e-3, 1e5, &cfg()).unwrap();
        let steady = steady_point(&body(), 0.0096, 5e-3).unwrap();
        assert!(
            (late - steady).abs() <= 1e-4 * (steady - 310.0),
            "late {late} steady {steady}"
        );
    }

    #[test]
    fn shell_center_long_time_reaches_steady() {
        let late = shell_temperature(&body(), 0.72, 5e-3, 0.0, 1e5, &cfg()).unwrap();
        let steady = steady_shell_center(&body(), 0.72, 5e-3);
        assert!((steady - 317.198).abs() < 1e-3, "steady {steady}");
        assert!((late - steady).abs() <= 1e-4 * (steady - 310.0));
    }

    #[test]
    fn usub_verification_path_agrees() {
        for (r, t) in [(0.5e-3, 5.0), (5e-3, 100.0), (12e-3, 1000.0)] {
            let direct = point_temperature(&body(), 0.0096, r, t, &cfg()).unwrap();
            let mapped = point_temperature_usub(&body(), 0.0096, r, t, &cfg()).unwrap();
            assert!(
                (direct - mapped).abs() <= 1e-7 * (direct - 310.0).max(1e-12),
                "r={r} t={t}: {direct} vs {mapped}"
            );
        }
    }

    #[test]
    fn steady_forms_match_transform_route() {
        // √(b/a) = α makes the two methods' steady states algebraically
        // identical; spot-check at machine precision.
        let qcfg = QuadratureConfig::default();
        for r in [1e-3, 5e-3, 17e-3] {
            let g = steady_point(&body(), 0.0096, r).unwrap();
            let x = transform::steady_temperature(
                &HeatSource::Point { p0: 0.0096 },
                &body(),
                r,
                &qcfg,
            )
            .unwrap();
            assert!((g - x).abs() <= 1e-14 * x);
        }
        for r in [0.0, 3e-3, 5e-3, 11e-3] {
            let g = steady_shell(&body(), 0.72, 5e-3, r);
            let x = transform::steady_temperature(
                &HeatSource::Shell {
                    p0: 0.72,
                    r0: 5e-3,
                    shell_width: 1e-3,
                },
                &body(),
                r,
                &qcfg,
            )
            .unwrap();
            assert!((g - x).abs() <= 1e-14 * x, "r={r}");
        }
    }

    #[test]
    fn steady_shell_continuous_across_kink() {
        // |r−r₀| puts a derivative kink at r₀ with slope ≈ α·ΔT ≈ 2e3 K/m;
        // one-sided values a distance δ away stay within slope·δ.
        let delta = 1e-9;
        let below = steady_shell(&body(), 0.72, 5e-3, 5e-3 - delta);
        let at = steady_shell(&body(), 0.72, 5e-3, 5e-3);
        let above = steady_shell(&body(), 0.72, 5e-3, 5e-3 + delta);
        assert!(at.is_finite());
        assert!((below - at).abs() < 1e-5);
        assert!((above - at).abs() < 1e-5);
    }

    #[test]
    fn steady_shell_center_is_small_r_limit() {
        let limit = steady_shell(&body(), 0.72, 5e-3, 1e-6);
        let center = steady_shell_center(&body(), 0.72, 5e-3);
        assert!((limit - center).abs() <= 1e-8 * (center - 310.0));
    }

    #[test]
    fn kernel_identity_reproduces_shell_integrand() {
        // G integrated against the shell delta equals Eq-level integrand of
        // the shell convolution: aP₀G(r,t;r₀,s)/(4πκ) against the kernel
        // assembled inside shell_temperature.
        let tissue = body();
        let d = tissue.derived_constants();
        let p0 = 0.72;
        // deterministic pseudo-random sweep over (r, r0, s)
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        for _ in 0..50 {
            let r = 1e-3 + 19e-3 * next();
            let r0 = 1e-3 + 9e-3 * next();
            let s = 0.1 + 999.9 * next();
            let via_kernel = d.a * p0 * heat_kernel(&tissue, r, r0, s)
                / (4.0 * std::f64::consts::PI * tissue.kappa);
            let near = (r - r0) * (r - r0) / (4.0 * d.a);
            let cross = r * r0 / d.a;
            let direct = d.a * p0 / (8.0 * std::f64::consts::PI * tissue.kappa * r * r0)
                * ((-d.b * s - near / s).exp()
                    / (d.a * std::f64::consts::PI * s).sqrt()
                    * (-(-cross / s).exp_m1()));
            let scale = via_kernel.abs().max(1e-300);
            assert!(
                (via_kernel - direct).abs() <= 1e-12 * scale,
                "r={r} r0={r0} s={s}: {via_kernel} vs {direct}"
            );
        }
    }

    #[test]
    fn transient_monotone_toward_steady() {
        let steady = steady_shell(&body(), 0.72, 5e-3, 2e-3);
        let mut last = 310.0;
        for t in [1.0, 5.0, 20.0, 100.0, 400.0, 2000.0, 2e4, 1e5] {
            let v = shell_temperature(&body(), 0.72, 5e-3, 2e-3, t, &cfg()).unwrap();
            assert!(v > last, "not monotone at t={t}");
            assert!(v <= steady + 1e-9, "overshoot at t={t}");
            last = v;
        }
    }

    #[test]
    fn graded_mesh_exponent_robustness() {
        // Two mesh families must land on the same value within tolerance.
        let quadratic = cfg();
        let cubic = TimeIntegralConfig {
            graded_exponent: 3.0,
            ..cfg()
        };
        for (r, t) in [(0.5e-3, 5.0), (5e-3, 100.0), (10e-3, 1000.0)] {
            let a = point_temperature(&body(), 0.0096, r, t, &quadratic).unwrap();
            let b = point_temperature(&body(), 0.0096, r, t, &cubic).unwrap();
            assert!(
                (a - b).abs() <= 2.0 * quadratic.rel_tol * (a - 310.0).max(1e-12),
                "r={r} t={t}"
            );
        }
    }
}
