use super::discriminator::DiscriminatorField;
use crate::cpe::{CpeLoss, Label};
use crate::error::{Error, Result};
use crate::prob::FiniteDistribution;

fn check(d: &DiscriminatorField, p: &FiniteDistribution, q: &FiniteDistribution) -> Result<()> {
    p.check_same_support(q)?;
    if d.len() != p.len() {
        return Err(Error::SupportMismatch {
            left: d.len(),
            right: p.len(),
        });
    }
    Ok(())
}

/// `Σ p_i (−L(1, D_i)) + Σ q_i (−L(0, D_i))`; zero masses contribute nothing.
pub fn generator_value(
    loss: &CpeLoss,
    d: &DiscriminatorField,
    p: &FiniteDistribution,
    q: &FiniteDistribution,
) -> Result<f64> {
    check(d, p, q)?;
    let mut total = 0.0;
    for (index, ((&di, &pi), &qi)) in d.values().iter().zip(p.masses()).zip(q.masses()).enumerate() {
        let mut term = 0.0;
        if pi > 0.0 {
            term -= pi * loss.eval(Label::Real, di);
        }
        if qi > 0.0 {
            term -= qi * loss.eval(Label::Fake, di);
        }
        if term.is_nan() {
            return Err(Error::NotANumber { index });
        }
        total += term;
    }
    Ok(total)
}

/// Least-squares generator objective of order `k`: `Σ (p_i + q_i)|D_i − c|^k`.
pub fn lk_generator_value(
    k: f64,
    c: f64,
    d: &DiscriminatorField,
    p: &FiniteDistribution,
    q: &FiniteDistribution,
) -> Result<f64> {
    check(d, p, q)?;
    Ok(d.values()
        .iter()
        .zip(p.masses())
        .zip(q.masses())
        .map(|((&di, &pi), &qi)| (pi + qi) * (di - c).abs().powf(k))
        .sum())
}

/// Shifted objective `Σ p_i(|D_i|^k − 1) + Σ q_i(|1 − D_i|^k − 1)`.
pub fn shifted_lk_generator_value(
    k: f64,
    d: &DiscriminatorField,
    p: &FiniteDistribution,
    q: &FiniteDistribution,
) -> Result<f64> {
    check(d, p, q)?;
    Ok(d.values()
        .iter()
        .zip(p.masses())
        .zip(q.masses())
        .map(|((&di, &pi), &qi)| pi * (di.abs().powf(k) - 1.0) + qi * ((1.0 - di).abs().powf(k) - 1.0))
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cpe::{make_loss, LossFamily};
    use crate::equilibrium::canonical_discriminator;
    use crate::prob::random_distribution;

    #[test]
    fn vanilla_at_half_is_minus_two_ln2() {
        let l = make_loss(LossFamily::Vanilla).unwrap();
        let p = random_distribution(5, 9).unwrap();
        let d = DiscriminatorField::constant(0.5, 5).unwrap();
        let v = generator_value(&l, &d, &p, &p).unwrap();
        assert!((v + 2.0 * 2f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn slk_at_one_is_minus_one() {
        let l = make_loss(LossFamily::Slk { k: 3.0 }).unwrap();
        let p = FiniteDistribution::from_masses(vec![1.0]).unwrap();
        let d = DiscriminatorField::constant(1.0, 1).unwrap();
        // −L(1,1) − L(0,1) = 0 − (1 − 0^k)
        assert_eq!(generator_value(&l, &d, &p, &p).unwrap(), -1.0);
    }

    #[test]
    fn alpha_two_matches_brute_force() {
        let l = make_loss(LossFamily::Alpha { alpha: 2.0 }).unwrap();
        let p = random_distribution(40, 11).unwrap();
        let q = random_distribution(40, 12).unwrap();
        let d = canonical_discriminator(&p, &q).unwrap();
        // ℓ₂(1, ŷ) = 2(1 − √ŷ), ℓ₂(0, ŷ) = 2(1 − √(1−ŷ))
        let oracle: f64 = (0..40)
            .map(|i| {
                let (a, b) = (p.masses()[i], q.masses()[i]);
                let di = a / (a + b);
                -a * 2.0 * (1.0 - di.sqrt()) - b * 2.0 * (1.0 - (1.0 - di).sqrt())
            })
            .sum();
        let v = generator_value(&l, &d, &p, &q).unwrap();
        assert!((v - oracle).abs() < 1e-13);
    }

    #[test]
    fn shifted_lk_is_slk_generator_value() {
        let l = make_loss(LossFamily::Slk { k: 2.5 }).unwrap();
        let p = random_distribution(16, 21).unwrap();
        let q = random_distribution(16, 22).unwrap();
        let d = canonical_discriminator(&p, &q).unwrap();
        let a = shifted_lk_generator_value(2.5, &d, &p, &q).unwrap();
        let b = generator_value(&l, &d, &p, &q).unwrap();
        assert!((a - b).abs() < 1e-14);
    }
}
