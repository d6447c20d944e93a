use serde::{Deserialize, Serialize};

use super::distribution::FiniteDistribution;
use super::sampler::Point2;
use crate::error::{Error, Result};

/// Additive mass given to every bin before normalization.
pub const HISTOGRAM_SMOOTHING: f64 = 1e-9;

/// Rectangular binning of the plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid2 {
    pub x_range: (f64, f64),
    pub y_range: (f64, f64),
    pub x_bins: usize,
    pub y_bins: usize,
}

impl Grid2 {
    /// Square grid `[-half_width, half_width]²` with `bins` bins per axis.
    pub fn square(half_width: f64, bins: usize) -> Self {
        Self {
            x_range: (-half_width, half_width),
            y_range: (-half_width, half_width),
            x_bins: bins,
            y_bins: bins,
        }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, (lo, hi), bins) in [("x", self.x_range, self.x_bins), ("y", self.y_range, self.y_bins)] {
            if bins < 1 {
                return Err(Error::InvalidParameter(format!("{name} bin count must be >= 1")));
            }
            if !(lo.is_finite() && hi.is_finite() && lo < hi) {
                return Err(Error::InvalidParameter(format!(
                    "{name} bounds must be finite with min < max, got ({lo}, {hi})"
                )));
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.x_bins * self.y_bins
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Flattened bin index, row-major in x: `ix * y_bins + iy`.
    /// Points outside the bounds land in the nearest edge bin.
    pub fn bin_of(&self, p: Point2) -> usize {
        let ix = axis_bin(p[0], self.x_range, self.x_bins);
        let iy = axis_bin(p[1], self.y_range, self.y_bins);
        ix * self.y_bins + iy
    }
}

fn axis_bin(v: f64, (lo, hi): (f64, f64), bins: usize) -> usize {
    let t = ((v - lo) / (hi - lo) * bins as f64).floor();
    if t.is_nan() || t < 0.0 {
        0
    } else {
        (t as usize).min(bins - 1)
    }
}

/// Normalized, smoothed bin occupancy of `samples` on `grid`.
pub fn histogram_estimate(samples: &[Point2], grid: &Grid2) -> Result<FiniteDistribution> {
    grid.validate()?;
    if samples.is_empty() {
        return Err(Error::TooFewSamples { needed: 1, got: 0 });
    }
    let mut counts = vec![0u64; grid.len()];
    for &p in samples {
        counts[grid.bin_of(p)] += 1;
    }
    let n = samples.len() as f64;
    let weights: Vec<f64> = counts
        .iter()
        .map(|&c| c as f64 / n + HISTOGRAM_SMOOTHING)
        .collect();
    FiniteDistribution::normalize(&weights)
}
