use serde::Serialize;

use crate::error::{Error, Result};
use crate::prob::FiniteDistribution;

/// Pointwise discriminator values `D_i ∈ [0, 1]` on a finite support.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiscriminatorField {
    values: Vec<f64>,
}

impl DiscriminatorField {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        for (index, &v) in values.iter().enumerate() {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::InvalidEntry {
                    index,
                    reason: format!("discriminator value {v} outside [0, 1]"),
                });
            }
        }
        Ok(Self { values })
    }

    pub fn constant(value: f64, len: usize) -> Result<Self> {
        Self::new(vec![value; len])
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

// Points carrying no mass under either law get ½; they never enter a value.
fn ratio(num: f64, den: f64) -> f64 {
    if den == 0.0 {
        0.5
    } else {
        (num / den).clamp(0.0, 1.0)
    }
}

/// `D*_i = p_i/(p_i + q_i)`.
pub fn canonical_discriminator(p: &FiniteDistribution, q: &FiniteDistribution) -> Result<DiscriminatorField> {
    p.check_same_support(q)?;
    let values = p.masses().iter().zip(q.masses()).map(|(&a, &b)| ratio(a, a + b)).collect();
    Ok(DiscriminatorField { values })
}

/// `D*_i = p_i^α/(p_i^α + q_i^α)`, the maximizer of the α-loss discriminator objective.
pub fn alpha_discriminator(alpha: f64, p: &FiniteDistribution, q: &FiniteDistribution) -> Result<DiscriminatorField> {
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(Error::InvalidParameter(format!("alpha must be > 0, got {alpha}")));
    }
    if alpha == 1.0 {
        return canonical_discriminator(p, q);
    }
    p.check_same_support(q)?;
    let values = p
        .masses()
        .iter()
        .zip(q.masses())
        .map(|(&a, &b)| {
            let (pa, qa) = (a.powf(alpha), b.powf(alpha));
            ratio(pa, pa + qa)
        })
        .collect();
    Ok(DiscriminatorField { values })
}

/// `D*_i = (γ p_i + β q_i)/(p_i + q_i)`, the maximizer of the least-squares
/// discriminator objective with target `γ` on real samples and `β` on generated ones.
pub fn lk_discriminator(
    gamma: f64,
    beta: f64,
    p: &FiniteDistribution,
    q: &FiniteDistribution,
) -> Result<DiscriminatorField> {
    for (name, v) in [("gamma", gamma), ("beta", beta)] {
        if !(0.0..=1.0).contains(&v) {
            return Err(Error::InvalidParameter(format!("{name} must lie in [0, 1], got {v}")));
        }
    }
    p.check_same_support(q)?;
    let values = p
        .masses()
        .iter()
        .zip(q.masses())
        .map(|(&a, &b)| ratio(gamma * a + beta * b, a + b))
        .collect();
    Ok(DiscriminatorField { values })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prob::random_distribution;

    fn d(v: &[f64]) -> FiniteDistribution {
        FiniteDistribution::from_masses(v.to_vec()).unwrap()
    }

    #[test]
    fn canonical_examples() {
        let p = d(&[0.5, 0.5, 0.0]);
        let q = d(&[0.25, 0.5, 0.25]);
        let f = canonical_discriminator(&p, &q).unwrap();
        assert!((f.values()[0] - 2.0 / 3.0).abs() < 1e-15);
        assert_eq!(f.values()[1], 0.5);
        assert_eq!(f.values()[2], 0.0);
    }

    #[test]
    fn alpha_examples() {
        let p = d(&[0.5, 0.5]);
        let q = d(&[0.25, 0.75]);
        let f = alpha_discriminator(2.0, &p, &q).unwrap();
        assert!((f.values()[0] - 0.8).abs() < 1e-15);
        let f = alpha_discriminator(7.0, &p, &p).unwrap();
        assert!(f.values().iter().all(|&v| v == 0.5));
        assert!(alpha_discriminator(0.0, &p, &q).is_err());
    }

    #[test]
    fn reductions_to_canonical_are_exact() {
        let p = random_distribution(32, 1).unwrap();
        let q = random_distribution(32, 2).unwrap();
        let c = canonical_discriminator(&p, &q).unwrap();
        assert_eq!(alpha_discriminator(1.0, &p, &q).unwrap(), c);
        assert_eq!(lk_discriminator(1.0, 0.0, &p, &q).unwrap(), c);
    }

    #[test]
    fn lk_examples() {
        let p = random_distribution(8, 5).unwrap();
        let q = random_distribution(8, 6).unwrap();
        let f = lk_discriminator(0.3, 0.3, &p, &q).unwrap();
        assert!(f.values().iter().all(|&v| (v - 0.3).abs() < 1e-15));
        let f = lk_discriminator(0.0, 1.0, &p, &p).unwrap();
        assert!(f.values().iter().all(|&v| v == 0.5));
        assert!(lk_discriminator(1.5, 0.0, &p, &q).is_err());
    }

    #[test]
    fn field_rejects_out_of_range() {
        assert!(DiscriminatorField::new(vec![0.5, 1.1]).is_err());
    }
}
