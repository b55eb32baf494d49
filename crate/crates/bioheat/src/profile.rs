//! Radial temperature profiles at a fixed time.

use crate::error::{Error, Result};

/// Temperatures on a radial grid at one instant.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialProfile {
    /// Sample time, s.
    pub time: f64,
    /// Strictly increasing radii, m.
    pub radii: Vec<f64>,
    /// Temperatures at `radii`, K.
    pub temperatures: Vec<f64>,
}

impl RadialProfile {
    /// Build a profile, checking grid monotonicity and length agreement.
    pub fn new(time: f64, radii: Vec<f64>, temperatures: Vec<f64>) -> Result<Self> {
        if radii.len() != temperatures.len() {
            return Err(Error::invalid(
                "temperatures",
                temperatures.len() as f64,
                "must match the radii length",
            ));
        }
        if radii.is_empty() {
            return Err(Error::invalid("radii", 0.0, "must be non-empty"));
        }
        if radii.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::invalid(
                "radii",
                f64::NAN,
                "must be strictly increasing",
            ));
        }
        Ok(RadialProfile {
            time,
            radii,
            temperatures,
        })
    }

    pub fn len(&self) -> usize {
        self.radii.len()
    }

    pub fn is_empty(&self) -> bool {
        self.radii.is_empty()
    }
}

/// Uniform grid of `n` radii over [0, r_max].
pub fn uniform_grid(r_max: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| r_max * i as f64 / (n - 1).max(1) as f64)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_mismatched_lengths() {
        assert!(RadialProfile::new(0.0, vec![0.0, 1.0], vec![310.0]).is_err());
    }

    #[test]
    fn rejects_unsorted_radii() {
        assert!(RadialProfile::new(0.0, vec![1.0, 0.5], vec![310.0, 310.0]).is_err());
    }

    #[test]
    fn uniform_grid_endpoints() {
        let g = uniform_grid(0.03, 121);
        assert_eq!(g.len(), 121);
        assert_eq!(g[0], 0.0);
        assert!((g[120] - 0.03).abs() < 1e-15);
        assert!((g[1] - 0.25e-3).abs() < 1e-12);
    }
}
