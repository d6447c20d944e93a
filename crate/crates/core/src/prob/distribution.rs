use rand_distr::{Distribution, Exp1};
use serde::{Deserialize, Serialize};

use super::rng::rng_from_seed;
use crate::error::{Error, Result};

/// Absolute tolerance on the unit-sum invariant.
pub const SUM_TOLERANCE: f64 = 1e-12;

/// Probability masses on a finite support `0..n`.
///
/// Densities on a continuous space are represented here with the counting
/// measure, so every integral becomes a finite sum over the support.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct FiniteDistribution {
    masses: Vec<f64>,
}

impl FiniteDistribution {
    /// Wraps masses that already form a distribution.
    pub fn from_masses(masses: Vec<f64>) -> Result<Self> {
        check_entries(&masses)?;
        let total: f64 = masses.iter().sum();
        if (total - 1.0).abs() > SUM_TOLERANCE {
            return Err(Error::InvalidParameter(format!(
                "masses sum to {total}, expected 1 within {SUM_TOLERANCE:e}"
            )));
        }
        Ok(Self { masses })
    }

    /// Rescales nonnegative weights to unit sum.
    pub fn normalize(weights: &[f64]) -> Result<Self> {
        check_entries(weights)?;
        let total: f64 = weights.iter().sum();
        if total <= 0.0 {
            return Err(Error::DegenerateWeights(format!(
                "all {} weights are zero",
                weights.len()
            )));
        }
        Ok(Self {
            masses: weights.iter().map(|w| w / total).collect(),
        })
    }

    /// The uniform distribution on `n` points.
    pub fn uniform(n: usize) -> Result<Self> {
        Self::normalize(&vec![1.0; n])
    }

    /// A random distribution with strictly positive masses, deterministic in `(n, seed)`.
    ///
    /// Masses are normalized Exp(1) variates, i.e. a uniform draw from the simplex.
    pub fn random(n: usize, seed: u64) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidParameter(format!(
                "random distribution needs support size >= 2, got {n}"
            )));
        }
        let mut rng = rng_from_seed(seed);
        let weights: Vec<f64> = (0..n)
            .map(|_| loop {
                let w: f64 = Exp1.sample(&mut rng);
                if w > 0.0 {
                    break w;
                }
            })
            .collect();
        Self::normalize(&weights)
    }

    pub fn masses(&self) -> &[f64] {
        &self.masses
    }

    pub fn len(&self) -> usize {
        self.masses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.masses.is_empty()
    }

    /// Fails unless `other` lives on a support of the same size.
    pub fn check_same_support(&self, other: &Self) -> Result<()> {
        if self.len() != other.len() {
            return Err(Error::SupportMismatch {
                left: self.len(),
                right: other.len(),
            });
        }
        Ok(())
    }

    /// The midpoint mixture `(p + q) / 2`.
    pub fn midpoint(&self, other: &Self) -> Result<Self> {
        self.check_same_support(other)?;
        Ok(Self {
            masses: self
                .masses
                .iter()
                .zip(&other.masses)
                .map(|(p, q)| 0.5 * p + 0.5 * q)
                .collect(),
        })
    }

    /// Largest pointwise mass difference.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        self.check_same_support(other)?;
        Ok(self
            .masses
            .iter()
            .zip(&other.masses)
            .map(|(p, q)| (p - q).abs())
            .fold(0.0, f64::max))
    }
}

fn check_entries(weights: &[f64]) -> Result<()> {
    if weights.is_empty() {
        return Err(Error::DegenerateWeights("empty weight vector".into()));
    }
    for (index, &w) in weights.iter().enumerate() {
        if !w.is_finite() {
            return Err(Error::InvalidEntry {
                index,
                reason: format!("non-finite weight {w}"),
            });
        }
        if w < 0.0 {
            return Err(Error::InvalidEntry {
                index,
                reason: format!("negative weight {w}"),
            });
        }
    }
    Ok(())
}

impl TryFrom<Vec<f64>> for FiniteDistribution {
    type Error = Error;

    fn try_from(masses: Vec<f64>) -> Result<Self> {
        Self::from_masses(masses)
    }
}

impl From<FiniteDistribution> for Vec<f64> {
    fn from(d: FiniteDistribution) -> Self {
        d.masses
    }
}

/// Free-function form of [`FiniteDistribution::normalize`].
pub fn normalize(weights: &[f64]) -> Result<FiniteDistribution> {
    FiniteDistribution::normalize(weights)
}

/// Free-function form of [`FiniteDistribution::midpoint`].
pub fn midpoint_mixture(p: &FiniteDistribution, q: &FiniteDistribution) -> Result<FiniteDistribution> {
    p.midpoint(q)
}

/// Free-function form of [`FiniteDistribution::random`].
pub fn random_distribution(n: usize, seed: u64) -> Result<FiniteDistribution> {
    FiniteDistribution::random(n, seed)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit_sum(d: &FiniteDistribution) -> bool {
        (d.masses().iter().sum::<f64>() - 1.0).abs() <= SUM_TOLERANCE
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(normalize(&[1.0, 1.0]).unwrap().masses(), &[0.5, 0.5]);
        assert_eq!(normalize(&[1.0, 3.0]).unwrap().masses(), &[0.25, 0.75]);
        let err = normalize(&[0.0, 0.0]).unwrap_err();
        assert!(err.to_string().contains("degenerate weight vector"));
    }

    #[test]
    fn normalize_names_bad_index() {
        match normalize(&[1.0, -2.0, 3.0]) {
            Err(Error::InvalidEntry { index, .. }) => assert_eq!(index, 1),
            other => panic!("unexpected {other:?}"),
        }
        match normalize(&[1.0, 2.0, f64::NAN]) {
            Err(Error::InvalidEntry { index, .. }) => assert_eq!(index, 2),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            normalize(&[f64::INFINITY, 1.0]),
            Err(Error::InvalidEntry { index: 0, .. })
        ));
    }

    #[test]
    fn midpoint_examples() {
        let p = FiniteDistribution::from_masses(vec![1.0, 0.0]).unwrap();
        let q = FiniteDistribution::from_masses(vec![0.0, 1.0]).unwrap();
        assert_eq!(midpoint_mixture(&p, &q).unwrap().masses(), &[0.5, 0.5]);
        assert_eq!(midpoint_mixture(&p, &p).unwrap(), p);

        let p = FiniteDistribution::from_masses(vec![0.5, 0.5]).unwrap();
        let q = FiniteDistribution::from_masses(vec![0.25, 0.75]).unwrap();
        assert_eq!(midpoint_mixture(&p, &q).unwrap().masses(), &[0.375, 0.625]);
    }

    #[test]
    fn midpoint_rejects_mismatch() {
        let p = FiniteDistribution::uniform(2).unwrap();
        let q = FiniteDistribution::uniform(3).unwrap();
        assert_eq!(
            midpoint_mixture(&p, &q).unwrap_err(),
            Error::SupportMismatch { left: 2, right: 3 }
        );
    }

    #[test]
    fn random_is_deterministic_and_positive() {
        let a = random_distribution(2, 11).unwrap();
        let b = random_distribution(2, 11).unwrap();
        assert_eq!(a, b);

        let big = random_distribution(64, 5).unwrap();
        assert!(unit_sum(&big));
        assert!(big.masses().iter().all(|&m| m > 0.0));

        let c = random_distribution(8, 1).unwrap();
        let d = random_distribution(8, 2).unwrap();
        assert!(c.max_abs_diff(&d).unwrap() > 0.0);

        assert!(random_distribution(1, 0).is_err());
    }

    #[test]
    fn from_masses_checks_sum() {
        assert!(FiniteDistribution::from_masses(vec![0.5, 0.6]).is_err());
        assert!(FiniteDistribution::from_masses(vec![0.5, 0.5]).is_ok());
    }

    #[test]
    fn serde_roundtrip_validates() {
        let d = random_distribution(4, 3).unwrap();
        let text = serde_json::to_string(&d).unwrap();
        let back: FiniteDistribution = serde_json::from_str(&text).unwrap();
        assert_eq!(d, back);
        assert!(serde_json::from_str::<FiniteDistribution>("[0.5, 0.7]").is_err());
    }
}
