//! Sample-based quality metrics for planar generators.

use crate::divergence::formula;
use crate::error::{Error, Result};
use crate::prob::{histogram_estimate, Grid2, Point2};

pub const MIN_COVERAGE_SAMPLES: usize = 1000;

/// Number of `centers` that receive at least `fraction` of `samples` within
/// `sigmas · sigma` of the center.
pub fn mode_coverage(samples: &[Point2], centers: &[Point2], sigma: f64, fraction: f64, sigmas: f64) -> Result<usize> {
    if samples.len() < MIN_COVERAGE_SAMPLES {
        return Err(Error::TooFewSamples {
            needed: MIN_COVERAGE_SAMPLES,
            got: samples.len(),
        });
    }
    let r2 = (sigmas * sigma).powi(2);
    let need = fraction * samples.len() as f64;
    Ok(centers
        .iter()
        .filter(|c| {
            let near = samples
                .iter()
                .filter(|s| (s[0] - c[0]).powi(2) + (s[1] - c[1]).powi(2) <= r2)
                .count();
            near as f64 >= need
        })
        .count())
}

/// Jensen-Shannon divergence between the histogram estimates of two sample sets.
pub fn hist_jsd(a: &[Point2], b: &[Point2], grid: &Grid2) -> Result<f64> {
    let p = histogram_estimate(a, grid)?;
    let q = histogram_estimate(b, grid)?;
    Ok(formula::jsd(p.masses(), q.masses())?.max(0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prob::RingSpec;

    #[test]
    fn real_samples_cover_every_mode() {
        let ring = RingSpec::default();
        let samples = ring.sampler(3).unwrap().sample(10_000);
        assert_eq!(mode_coverage(&samples, &ring.centers(), ring.sigma, 0.01, 3.0).unwrap(), 8);
    }

    #[test]
    fn single_point_and_near_miss() {
        let ring = RingSpec::default();
        let centers = ring.centers();
        let stacked = vec![centers[2]; 2000];
        assert_eq!(mode_coverage(&stacked, &centers, ring.sigma, 0.01, 3.0).unwrap(), 1);
        let off: Vec<Point2> = centers
            .iter()
            .cycle()
            .take(2000)
            .map(|c| {
                let n = (c[0] * c[0] + c[1] * c[1]).sqrt();
                let s = (n + 10.0 * ring.sigma) / n;
                [c[0] * s, c[1] * s]
            })
            .collect();
        assert_eq!(mode_coverage(&off, &centers, ring.sigma, 0.01, 3.0).unwrap(), 0);
    }

    #[test]
    fn too_few_samples() {
        let err = mode_coverage(&[[0.0, 0.0]; 10], &[[0.0, 0.0]], 0.1, 0.01, 3.0).unwrap_err();
        assert!(matches!(err, Error::TooFewSamples { needed: 1000, got: 10 }));
    }

    #[test]
    fn hist_jsd_bounds() {
        let ring = RingSpec::default();
        let grid = Grid2::square(1.5, 30);
        let a = ring.sampler(1).unwrap().sample(10_000);
        let b = ring.sampler(2).unwrap().sample(10_000);
        let same = hist_jsd(&a, &b, &grid).unwrap();
        assert!(same < 0.05, "{same}");
        let collapsed = vec![[1.0, 0.0]; 10_000];
        let far = hist_jsd(&a, &collapsed, &grid).unwrap();
        assert!(far > 0.5 && far <= std::f64::consts::LN_2 + 1e-9, "{far}");
    }
}
