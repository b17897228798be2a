//! Uniform frequency grids.

use alloc::vec::Vec;
use num_traits::Float;

/// Relative tolerance for the uniform-spacing invariant.
const SPACING_RTOL: f64 = 1e-12;

/// Tolerance used when deciding whether two grids are the same.
const COMPAT_TOL: f64 = 1e-9;

/// A strictly increasing, uniformly spaced set of frequencies
/// (cycles per unit time).
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct FrequencyGrid {
    frequencies: Vec<f64>,
    spacing: f64,
}

/// Violation of the grid invariants.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("bad grid: {0}")]
pub struct GridError(pub &'static str);

impl FrequencyGrid {
    /// Build a grid from explicit frequencies, validating strict increase
    /// and uniform spacing (relative tolerance 1e-12).
    pub fn new(frequencies: Vec<f64>) -> Result<Self, GridError> {
        if frequencies.len() < 2 {
            return Err(GridError("grid needs at least 2 points"));
        }
        if !frequencies.iter().all(|f| f.is_finite()) {
            return Err(GridError("grid frequencies must be finite"));
        }
        let spacing = frequencies[1] - frequencies[0];
        if spacing <= 0.0 {
            return Err(GridError("grid must be strictly increasing"));
        }
        let scale = spacing.abs().max(frequencies[0].abs()).max(1e-300);
        for w in frequencies.windows(2) {
            let step = w[1] - w[0];
            if step <= 0.0 {
                return Err(GridError("grid must be strictly increasing"));
            }
            if (step - spacing).abs() > SPACING_RTOL * scale.max(step.abs()) {
                return Err(GridError("grid spacing must be uniform"));
            }
        }
        Ok(FrequencyGrid {
            frequencies,
            spacing,
        })
    }

    /// Uniform grid `start + k*spacing` for `k = 0..len`.
    pub fn uniform(start: f64, spacing: f64, len: usize) -> Result<Self, GridError> {
        if len < 2 {
            return Err(GridError("grid needs at least 2 points"));
        }
        if !(spacing > 0.0) || !spacing.is_finite() || !start.is_finite() {
            return Err(GridError("grid spacing must be positive and finite"));
        }
        let frequencies = (0..len).map(|k| start + k as f64 * spacing).collect();
        Ok(FrequencyGrid {
            frequencies,
            spacing,
        })
    }

    /// The two-sided DFT grid for `n_points` bins at `sample_rate`:
    /// `(k - floor(n/2)) * sample_rate / n`. Always contains frequency 0.
    pub fn two_sided(n_points: usize, sample_rate: f64) -> Result<Self, GridError> {
        if n_points < 2 {
            return Err(GridError("grid needs at least 2 points"));
        }
        if !(sample_rate > 0.0) {
            return Err(GridError("sample rate must be positive"));
        }
        let spacing = sample_rate / n_points as f64;
        let offset = (n_points / 2) as f64;
        let frequencies = (0..n_points)
            .map(|k| (k as f64 - offset) * spacing)
            .collect();
        Ok(FrequencyGrid {
            frequencies,
            spacing,
        })
    }

    pub fn len(&self) -> usize {
        self.frequencies.len()
    }

    pub fn is_empty(&self) -> bool {
        self.frequencies.is_empty()
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    pub fn frequencies(&self) -> &[f64] {
        &self.frequencies
    }

    pub fn min(&self) -> f64 {
        self.frequencies[0]
    }

    pub fn max(&self) -> f64 {
        *self.frequencies.last().unwrap()
    }

    /// Index of the grid point closest to `f` (clamped to the grid range).
    pub fn nearest_bin(&self, f: f64) -> usize {
        let pos = (f - self.min()) / self.spacing;
        let idx = pos.round();
        if idx <= 0.0 {
            0
        } else {
            (idx as usize).min(self.len() - 1)
        }
    }

    /// Whether `other` can be treated as the same grid (same length, same
    /// points within an absolute tolerance scaled by spacing).
    pub fn compatible(&self, other: &FrequencyGrid) -> bool {
        self.len() == other.len()
            && (self.min() - other.min()).abs() <= COMPAT_TOL * self.spacing.max(1.0)
            && (self.spacing - other.spacing).abs() <= COMPAT_TOL * self.spacing.max(1.0)
    }

    /// Index of the bin holding frequency `-f(i)`, if it lies on the grid.
    pub fn mirror_bin(&self, i: usize) -> Option<usize> {
        let tol = COMPAT_TOL * self.spacing.max(1.0);
        let target = -self.frequencies[i];
        if target < self.min() - tol || target > self.max() + tol {
            return None;
        }
        let j = self.nearest_bin(target);
        ((self.frequencies[j] - target).abs() <= tol).then_some(j)
    }
}
