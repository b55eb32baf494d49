//! Cross-method difference metrics between radial profiles.
//!
//! Two relative measures are reported side by side: the primary one divides
//! by the absolute temperature in kelvin (the convention behind statements
//! like "a 0.3% central difference" at ~317 K), the alternative divides by
//! the peak temperature excess over the core value at that time, which is
//! the stricter measure when profiles sit close to baseline.

use crate::error::{Error, Result};
use crate::profile::RadialProfile;

/// Differences between two methods at one sample time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeComparison {
    pub time: f64,
    /// max_r |T_a − T_b|, K.
    pub max_abs_diff: f64,
    /// max_r |T_a − T_b| / T_a (absolute-temperature convention).
    pub max_rel_diff: f64,
    /// Radius attaining the maximum, m.
    pub argmax_radius: f64,
    /// max_r |T_a − T_b| / max_r(T_a − T_core): excess-relative metric.
    pub max_rel_diff_excess: f64,
}

/// Per-time metrics plus the global worst case.
#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonReport {
    pub per_time: Vec<TimeComparison>,
    pub worst_abs_diff: f64,
    pub worst_rel_diff: f64,
    pub worst_time: f64,
    pub worst_radius: f64,
}

/// Compare two profile sets sampled on identical grids and times.
///
/// The first argument is the reference method supplying denominators.
pub fn compare_profiles(
    reference: &[RadialProfile],
    other: &[RadialProfile],
    core_temperature: f64,
) -> Result<ComparisonReport> {
    if reference.len() != other.len() || reference.is_empty() {
        return Err(Error::invalid(
            "profiles",
            other.len() as f64,
            "need equal non-zero profile counts",
        ));
    }
    let mut per_time = Vec::with_capacity(reference.len());
    let mut worst_abs_diff = 0.0f64;
    let mut worst_rel_diff = 0.0f64;
    let mut worst_time = reference[0].time;
    let mut worst_radius = reference[0].radii[0];

    for (a, b) in reference.iter().zip(other) {
        if (a.time - b.time).abs() > 1e-9 * a.time.max(1.0) {
            return Err(Error::invalid(
                "profiles",
                b.time,
                "sample times do not match",
            ));
        }
        if a.radii.len() != b.radii.len()
            || a.radii
                .iter()
                .zip(&b.radii)
                .any(|(x, y)| (x - y).abs() > 1e-12 * x.abs().max(1e-12))
        {
            return Err(Error::invalid(
                "profiles",
                f64::NAN,
                "radial grids do not match",
            ));
        }
        let mut max_abs_diff = 0.0f64;
        let mut max_rel_diff = 0.0f64;
        let mut argmax_radius = a.radii[0];
        let mut peak_excess = 0.0f64;
        for ((&r, &ta), &tb) in a.radii.iter().zip(&a.temperatures).zip(&b.temperatures) {
            let diff = (ta - tb).abs();
            let rel = diff / ta.abs().max(f64::MIN_POSITIVE);
            if diff > max_abs_diff {
                max_abs_diff = diff;
                argmax_radius = r;
            }
            max_rel_diff = max_rel_diff.max(rel);
            peak_excess = peak_excess.max(ta - core_temperature);
        }
        let max_rel_diff_excess = max_abs_diff / peak_excess.max(1e-12);
        per_time.push(TimeComparison {
            time: a.time,
            max_abs_diff,
            max_rel_diff,
            argmax_radius,
            max_rel_diff_excess,
        });
        if max_rel_diff > worst_rel_diff {
            worst_rel_diff = max_rel_diff;
            worst_time = a.time;
            worst_radius = argmax_radius;
        }
        worst_abs_diff = worst_abs_diff.max(max_abs_diff);
    }

    Ok(ComparisonReport {
        per_time,
        worst_abs_diff,
        worst_rel_diff,
        worst_time,
        worst_radius,
    })
}
