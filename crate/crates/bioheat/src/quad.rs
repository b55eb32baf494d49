//! Quadrature kernels shared by the semi-analytic solvers.
//!
//! [`integrate_semi_infinite`] evaluates ∫₀^∞ f(β)dβ for integrands that
//! either decay under an analytic damping factor or oscillate with a known
//! wavelength. The β axis is cut into half-period panels; each panel is
//! integrated by a fixed-order Gauss rule with internal subdivision until
//! self-consistent, and the sequence of partial sums is extrapolated with
//! Wynn's epsilon algorithm so that slowly decaying alternating tails
//! (1/β envelopes) converge at geometric rates.
//!
//! [`integrate_graded_finite`] evaluates ∫₀^t g(s)ds on a power-law graded
//! mesh concentrated toward s = 0, for kernels with integrable endpoint
//! singularities such as s^{−1/2}.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};

/// Controls for the semi-infinite oscillatory quadrature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig {
    /// Relative tolerance on the accumulated value.
    pub rel_tol: f64,
    /// Absolute floor, in the integrand's own units.
    pub abs_tol: f64,
    /// Hard cap on half-period panels.
    pub max_panels: usize,
    /// Gauss nodes per panel (and per subdivision cell).
    pub panel_order: usize,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            rel_tol: 1e-8,
            abs_tol: 1e-10,
            max_panels: 1_000_000,
            panel_order: 15,
        }
    }
}

impl QuadratureConfig {
    /// Same tolerances with the absolute floor rescaled; used when the
    /// integral feeds a prefactor so that `abs_tol` stays in kelvin.
    pub fn with_abs_tol(&self, abs_tol: f64) -> Self {
        QuadratureConfig { abs_tol, ..*self }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0) {
            return Err(Error::invalid("rel_tol", self.rel_tol, "must be > 0"));
        }
        if !(self.abs_tol > 0.0) {
            return Err(Error::invalid("abs_tol", self.abs_tol, "must be > 0"));
        }
        if self.max_panels < 1 {
            return Err(Error::invalid(
                "max_panels",
                self.max_panels as f64,
                "must be >= 1",
            ));
        }
        if self.panel_order < 2 || self.panel_order > 64 {
            return Err(Error::invalid(
                "panel_order",
                self.panel_order as f64,
                "must be in 2..=64",
            ));
        }
        Ok(())
    }
}

/// Outcome of a quadrature, with the engine's own accuracy estimate.
#[derive(Debug, Clone, Copy)]
pub struct QuadOutcome {
    /// Best estimate of the integral.
    pub value: f64,
    /// Absolute error estimate, never below the rounding floor of the
    /// accumulated panel sums.
    pub error_estimate: f64,
    /// Half-period panels consumed.
    pub panels: usize,
    /// Whether the returned value came from series acceleration.
    pub accelerated: bool,
}

/// Gauss–Legendre rule mapped to [0, 1].
#[derive(Debug, Clone)]
struct GaussRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussRule {
    /// Nodes and weights by Newton iteration on the Legendre polynomial.
    fn compute(order: usize) -> Self {
        let n = order;
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        for i in 0..n {
            // Chebyshev-based initial guess for the i-th root of P_n
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                // evaluate P_n(x) and P_n'(x) via the three-term recurrence
                let mut p0 = 1.0;
                let mut p1 = x;
                for k in 2..=n {
                    let pk = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                    p0 = p1;
                    p1 = pk;
                }
                dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
                let dx = p1 / dp;
                x -= dx;
                if dx.abs() < 1e-15 {
                    break;
                }
            }
            nodes[i] = 0.5 * (1.0 + x);
            weights[i] = 1.0 / ((1.0 - x * x) * dp * dp);
        }
        GaussRule { nodes, weights }
    }

    fn shared(order: usize) -> Arc<GaussRule> {
        static CACHE: OnceLock<Mutex<HashMap<usize, Arc<GaussRule>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        let mut guard = cache.lock().expect("gauss rule cache poisoned");
        guard
            .entry(order)
            .or_insert_with(|| Arc::new(GaussRule::compute(order)))
            .clone()
    }

    /// ∫_lo^hi f, single application.
    fn apply<F: Fn(f64) -> f64>(&self, f: &F, lo: f64, hi: f64) -> f64 {
        let span = hi - lo;
        let mut acc = 0.0;
        for (&x, &w) in self.nodes.iter().zip(&self.weights) {
            acc += w * f(lo + span * x);
        }
        acc * span
    }

    /// ∫_lo^hi f with the interval split into `cells` equal parts.
    fn apply_cells<F: Fn(f64) -> f64>(&self, f: &F, lo: f64, hi: f64, cells: usize) -> f64 {
        let h = (hi - lo) / cells as f64;
        let mut acc = 0.0;
        for c in 0..cells {
            acc += self.apply(f, lo + c as f64 * h, lo + (c + 1) as f64 * h);
        }
        acc
    }
}

/// One panel, subdivided until two successive refinement levels agree.
///
/// The half-period cut guarantees sign coherence of the oscillation but not
/// resolution of slower structure inside the panel (e.g. a Lorentzian of
/// width α in the first panel when the period is long); doubling the cell
/// count until agreement covers that case.
fn refine_panel<F: Fn(f64) -> f64>(rule: &GaussRule, f: &F, lo: f64, hi: f64, tol: f64) -> f64 {
    const MAX_CELLS: usize = 1 << 13;
    let mut cells = 1;
    let mut prev = rule.apply_cells(f, lo, hi, cells);
    loop {
        cells *= 2;
        let cur = rule.apply_cells(f, lo, hi, cells);
        if (cur - prev).abs() <= tol || cells >= MAX_CELLS {
            return cur;
        }
        prev = cur;
    }
}

/// Wynn epsilon extrapolation of a partial-sum window.
///
/// Returns the best limit candidate and the spread of the deepest even
/// columns as its error estimate. Strong on alternating tails with smooth
/// envelopes; poor on logarithmic (1/n-type) convergence.
fn wynn_epsilon(sums: &[f64]) -> (f64, f64) {
    let n = sums.len();
    let mut best = sums[n - 1];
    let mut err = if n > 1 {
        (sums[n - 1] - sums[n - 2]).abs()
    } else {
        f64::INFINITY
    };
    let mut prev: Vec<f64> = sums.to_vec();
    let mut prev2: Vec<f64> = vec![0.0; n + 1];
    for k in 1..n {
        let mut cur = Vec::with_capacity(n - k);
        for i in 0..(n - k) {
            let d = prev[i + 1] - prev[i];
            cur.push(if d == 0.0 {
                f64::INFINITY
            } else {
                prev2[i + 1] + 1.0 / d
            });
        }
        if k % 2 == 0 && cur.len() >= 2 {
            let cand = cur[cur.len() - 1];
            let e = (cand - cur[cur.len() - 2]).abs();
            if cand.is_finite() && e < err {
                err = e;
                best = cand;
            }
        }
        prev2 = std::mem::replace(&mut prev, cur);
    }
    (best, err)
}

/// Wynn rho extrapolation with interpolation points `x`.
///
/// The complement of epsilon: converges on sequences with polynomial
/// remainders S_n ≈ A + c₁/n + c₂/n² + …, which arise from the
/// non-oscillatory residue of products like sin(βr)·sin(βr₀) once panels
/// are aggregated over full periods.
fn wynn_rho(sums: &[f64], x: &[f64]) -> (f64, f64) {
    let n = sums.len();
    let mut best = sums[n - 1];
    let mut err = if n > 1 {
        (sums[n - 1] - sums[n - 2]).abs()
    } else {
        f64::INFINITY
    };
    let mut prev: Vec<f64> = sums.to_vec();
    let mut prev2: Vec<f64> = vec![0.0; n + 1];
    for k in 1..n {
        let mut cur = Vec::with_capacity(n - k);
        for i in 0..(n - k) {
            let d = prev[i + 1] - prev[i];
            cur.push(if d == 0.0 {
                f64::INFINITY
            } else {
                prev2[i + 1] + (x[i + k] - x[i]) / d
            });
        }
        if k % 2 == 0 && cur.len() >= 2 {
            let cand = cur[cur.len() - 1];
            let e = (cand - cur[cur.len() - 2]).abs();
            if cand.is_finite() && e < err {
                err = e;
                best = cand;
            }
        }
        prev2 = std::mem::replace(&mut prev, cur);
    }
    (best, err)
}

/// Number of trailing partial sums retained for extrapolation; long enough
/// to span the beat period of two-frequency integrands at nearby radii.
const EPSILON_WINDOW: usize = 192;

/// Pair sums retained for the rho extrapolation.
const RHO_WINDOW: usize = 96;

/// Disagreement of a fresh extrapolation candidate with the previous two.
fn history_spread(candidate: f64, history: &[Option<f64>; 2]) -> f64 {
    match *history {
        [Some(c1), Some(c2)] => (candidate - c1).abs().max((candidate - c2).abs()),
        _ => f64::INFINITY,
    }
}

/// Consecutive negligible panels required for plain termination.
const PLAIN_STREAK: usize = 3;

/// ∫₀^∞ f(β)dβ over half-period panels of length π/`oscillation_wavelength`.
///
/// Terminates on whichever comes first of a run of panels individually
/// below tolerance (damped integrands) or an extrapolated tail estimate
/// below tolerance (oscillatory 1/β-type envelopes), where tolerance is
/// max(abs_tol, rel_tol·|value|), floored at the rounding noise of the
/// accumulated panel magnitudes.
pub fn integrate_semi_infinite<F: Fn(f64) -> f64>(
    f: F,
    oscillation_wavelength: f64,
    cfg: &QuadratureConfig,
) -> Result<QuadOutcome> {
    cfg.validate()?;
    if !(oscillation_wavelength > 0.0 && oscillation_wavelength.is_finite()) {
        return Err(Error::invalid(
            "oscillation_wavelength",
            oscillation_wavelength,
            "must be finite and > 0",
        ));
    }
    let rule = GaussRule::shared(cfg.panel_order);
    let h = std::f64::consts::PI / oscillation_wavelength;

    let mut total = 0.0f64;
    let mut abs_accum = 0.0f64;
    let mut sums: Vec<f64> = Vec::with_capacity(EPSILON_WINDOW);
    let mut pair_sums: Vec<f64> = Vec::new();
    let mut pair_offset = 0usize;
    let mut streak = 0usize;
    let mut last_panel = f64::INFINITY;
    let mut best_err = f64::INFINITY;
    let mut eps_history: [Option<f64>; 2] = [None, None];
    let mut rho_history: [Option<f64>; 2] = [None, None];
    // Geometric check schedule: successive extrapolation passes must agree
    // across a growing panel span, so slow beat modulations (two nearby
    // oscillation frequencies) cannot fake convergence within one phase.
    let mut next_check = 9usize;

    for k in 0..cfg.max_panels {
        let lo = k as f64 * h;
        let hi = lo + h;
        let panel_tol = if k == 0 {
            // bootstrap the scale from the first panel itself
            let rough = rule.apply(&f, lo, hi);
            0.02 * cfg.rel_tol * rough.abs().max(cfg.abs_tol)
        } else {
            (0.02 * cfg.rel_tol * total.abs()).max(0.1 * cfg.abs_tol)
        };
        let pv = refine_panel(&rule, &f, lo, hi, panel_tol);
        total += pv;
        abs_accum += pv.abs();
        last_panel = pv;
        if sums.len() == EPSILON_WINDOW {
            sums.remove(0);
        }
        sums.push(total);
        if k % 2 == 1 {
            // partial sum after a full oscillation period
            if pair_sums.len() == RHO_WINDOW {
                pair_sums.remove(0);
                pair_offset += 1;
            }
            pair_sums.push(total);
        }

        let noise_floor = f64::EPSILON * abs_accum;
        let tol = cfg.abs_tol.max(cfg.rel_tol * total.abs());
        if pv.abs() < tol {
            streak += 1;
            if streak >= PLAIN_STREAK {
                return Ok(QuadOutcome {
                    value: total,
                    error_estimate: pv.abs().max(noise_floor),
                    panels: k + 1,
                    accelerated: false,
                });
            }
        } else {
            streak = 0;
        }

        if k >= next_check && k % 2 == 1 && sums.len() >= 10 {
            next_check = k + (k / 2).max(2);
            // Each transform's own spread is optimistic for tails outside
            // its model class; demand agreement of the last three passes
            // before trusting either.
            let mut accepted: Option<(f64, f64)> = None;

            let (eps_best, eps_spread) = wynn_epsilon(&sums);
            let eps_err = eps_spread.max(history_spread(eps_best, &eps_history));
            let eps_target = cfg.abs_tol.max(cfg.rel_tol * eps_best.abs());
            if eps_err <= (0.1 * eps_target).max(noise_floor) {
                accepted = Some((eps_best, eps_err));
            }
            eps_history = [Some(eps_best), eps_history[0]];

            if accepted.is_none() && pair_sums.len() >= 8 {
                let x: Vec<f64> = (0..pair_sums.len())
                    .map(|j| (pair_offset + j + 1) as f64)
                    .collect();
                let (rho_best, rho_spread) = wynn_rho(&pair_sums, &x);
                let rho_err = rho_spread.max(history_spread(rho_best, &rho_history));
                let rho_target = cfg.abs_tol.max(cfg.rel_tol * rho_best.abs());
                if rho_err <= (0.1 * rho_target).max(noise_floor) {
                    accepted = Some((rho_best, rho_err));
                }
                rho_history = [Some(rho_best), rho_history[0]];
                best_err = best_err.min(rho_err.max(noise_floor));
            }
            best_err = best_err.min(eps_err.max(noise_floor));

            if let Some((value, err)) = accepted {
                return Ok(QuadOutcome {
                    value,
                    error_estimate: err.max(noise_floor),
                    panels: k + 1,
                    accelerated: true,
                });
            }
        }
    }

    Err(Error::QuadratureNonConvergence {
        panels: cfg.max_panels,
        last_panel,
        residual: best_err,
    })
}

/// ∫₀^t g(s)ds on the power-law graded mesh s = t·ξ^p.
///
/// The substitution carries the Jacobian p·t·ξ^{p−1}, so an s^{−1/2}
/// endpoint singularity becomes a bounded integrand in ξ for p ≥ 2. Cells
/// are uniform in ξ and doubled until two refinement levels agree within
/// `rel_tol` (floored at `abs_tol`), up to `max_cells` cells.
pub fn integrate_graded_finite<F: Fn(f64) -> f64>(
    g: F,
    upper: f64,
    exponent: f64,
    rel_tol: f64,
    abs_tol: f64,
    max_cells: usize,
) -> Result<QuadOutcome> {
    if !(upper > 0.0 && upper.is_finite()) {
        return Err(Error::invalid("upper", upper, "must be finite and > 0"));
    }
    if !(exponent >= 1.0) {
        return Err(Error::invalid("exponent", exponent, "must be >= 1"));
    }
    let rule = GaussRule::shared(15);
    let transformed = |xi: f64| {
        let s = upper * xi.powf(exponent);
        if s <= 0.0 {
            return 0.0;
        }
        g(s) * exponent * upper * xi.powf(exponent - 1.0)
    };

    let mut cells = 32;
    let mut prev = rule.apply_cells(&transformed, 0.0, 1.0, cells);
    loop {
        cells *= 2;
        let cur = rule.apply_cells(&transformed, 0.0, 1.0, cells);
        let delta = (cur - prev).abs();
        if delta <= abs_tol.max(rel_tol * cur.abs()) {
            return Ok(QuadOutcome {
                value: cur,
                error_estimate: delta.max(f64::EPSILON * cur.abs()),
                panels: cells,
                accelerated: false,
            });
        }
        if cells >= max_cells {
            return Err(Error::TimeQuadratureNonConvergence {
                subdivisions: cells,
                residual: delta,
            });
        }
        prev = cur;
    }
}
