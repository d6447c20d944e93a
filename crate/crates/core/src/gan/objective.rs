//! Batch objectives as functions of discriminator outputs.
//!
//! Each returns the batch-mean value and its derivative with respect to every
//! discriminator output, ready to be fed into the network's reverse pass.

use ndarray::Array1;

use super::config::{GeneratorObjective, LossScheme};
use crate::cpe::{make_loss, CpeLoss, Label, LossFamily};
use crate::error::Result;

#[derive(Debug, Clone, PartialEq)]
pub struct DiscriminatorObjective {
    pub value: f64,
    pub d_real: Array1<f64>,
    pub d_fake: Array1<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorObjectiveValue {
    pub value: f64,
    pub d_fake: Array1<f64>,
}

fn alpha_family(alpha: f64) -> LossFamily {
    LossFamily::Alpha { alpha }
}

/// Batch mean of `L(1, D(x)) + L(0, D(G(z)))` for a CPE loss family.
fn cpe_objective(fam: LossFamily, real: &Array1<f64>, fake: &Array1<f64>) -> Result<(f64, Array1<f64>, Array1<f64>)> {
    let b = real.len() as f64;
    let loss: CpeLoss = make_loss(fam)?;
    let value = (real.iter().map(|&d| loss.eval(Label::Real, d)).sum::<f64>()
        + fake.iter().map(|&d| loss.eval(Label::Fake, d)).sum::<f64>())
        / b;
    Ok((
        value,
        real.mapv(|d| fam.derivative(Label::Real, d) / b),
        fake.mapv(|d| fam.derivative(Label::Fake, d) / b),
    ))
}

/// Objective the discriminator descends for `scheme`, given `D(x)` and `D(G(z))`.
pub fn discriminator_objective(scheme: LossScheme, real: &Array1<f64>, fake: &Array1<f64>) -> Result<DiscriminatorObjective> {
    let b = real.len() as f64;
    let (value, d_real, d_fake) = match scheme {
        LossScheme::AlphaGan { alpha_d, .. } => cpe_objective(alpha_family(alpha_d), real, fake)?,
        LossScheme::LkSlkgan { .. } => {
            let value = real.iter().zip(fake).map(|(&r, &f)| 0.5 * (r - 1.0).powi(2) + 0.5 * f * f).sum::<f64>() / b;
            (value, real.mapv(|r| (r - 1.0) / b), fake.mapv(|f| f / b))
        }
        LossScheme::VanillaSlkgan { .. } => cpe_objective(LossFamily::Vanilla, real, fake)?,
    };
    Ok(DiscriminatorObjective { value, d_real, d_fake })
}

/// Objective the generator descends for `scheme`, given `D(G(z))`.
pub fn generator_objective(
    scheme: LossScheme,
    orientation: GeneratorObjective,
    fake: &Array1<f64>,
) -> Result<GeneratorObjectiveValue> {
    let b = fake.len() as f64;
    let (value, d_fake) = match scheme {
        LossScheme::AlphaGan { alpha_g, .. } => {
            let fam = alpha_family(alpha_g);
            let loss = make_loss(fam)?;
            match orientation {
                GeneratorObjective::NonSaturating => (
                    fake.iter().map(|&d| loss.eval(Label::Real, d)).sum::<f64>() / b,
                    fake.mapv(|d| fam.derivative(Label::Real, d) / b),
                ),
                GeneratorObjective::Saturating => (
                    -fake.iter().map(|&d| loss.eval(Label::Fake, d)).sum::<f64>() / b,
                    fake.mapv(|d| -fam.derivative(Label::Fake, d) / b),
                ),
            }
        }
        LossScheme::LkSlkgan { k } | LossScheme::VanillaSlkgan { k } => (
            fake.iter().map(|&d| 0.5 * ((1.0 - d).abs().powf(k) - 1.0)).sum::<f64>() / b,
            fake.mapv(|d| -0.5 * k * (1.0 - d).abs().powf(k - 1.0) / b),
        ),
    };
    Ok(GeneratorObjectiveValue { value, d_fake })
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::array;
    use std::f64::consts::LN_2;

    const ALPHA11: LossScheme = LossScheme::AlphaGan {
        alpha_d: 1.0,
        alpha_g: 1.0,
    };

    #[test]
    fn cross_entropy_at_half() {
        let half = Array1::from_elem(4, 0.5);
        let o = discriminator_objective(LossScheme::VanillaSlkgan { k: 2.0 }, &half, &half).unwrap();
        assert!((o.value - 2.0 * LN_2).abs() < 1e-15);
    }

    #[test]
    fn least_squares_perfect_discriminator() {
        let o = discriminator_objective(LossScheme::LkSlkgan { k: 2.0 }, &array![1.0, 1.0], &array![0.0, 0.0]).unwrap();
        assert_eq!(o.value, 0.0);
    }

    #[test]
    fn alpha_one_matches_cross_entropy() {
        let real = array![0.1, 0.5, 0.93, 1e-7, 0.999];
        let fake = array![0.8, 0.2, 0.5, 0.3, 1e-7];
        let a = discriminator_objective(ALPHA11, &real, &fake).unwrap();
        let v = discriminator_objective(LossScheme::VanillaSlkgan { k: 1.0 }, &real, &fake).unwrap();
        assert!((a.value - v.value).abs() <= 1e-12);
        for (x, y) in a.d_real.iter().chain(&a.d_fake).zip(v.d_real.iter().chain(&v.d_fake)) {
            assert!((x - y).abs() <= 1e-12 * y.abs().max(1.0));
        }
    }

    #[test]
    fn generator_examples() {
        let ones = Array1::from_elem(3, 1.0);
        let g = generator_objective(LossScheme::LkSlkgan { k: 3.0 }, GeneratorObjective::NonSaturating, &ones).unwrap();
        assert_eq!(g.value, -0.5);
        let half = Array1::from_elem(3, 0.5);
        let g = generator_objective(ALPHA11, GeneratorObjective::NonSaturating, &half).unwrap();
        assert!((g.value - LN_2).abs() < 1e-15);
        let d = array![0.2, 0.7];
        let g = generator_objective(LossScheme::VanillaSlkgan { k: 2.0 }, GeneratorObjective::NonSaturating, &d).unwrap();
        let expected = (0.5 * (0.64 - 1.0) + 0.5 * (0.09 - 1.0)) / 2.0;
        assert!((g.value - expected).abs() < 1e-15);
    }

    #[test]
    fn derivatives_match_differences() {
        let schemes = [
            LossScheme::AlphaGan { alpha_d: 0.7, alpha_g: 4.0 },
            LossScheme::LkSlkgan { k: 2.5 },
            LossScheme::VanillaSlkgan { k: 0.5 },
        ];
        let real = array![0.3, 0.8];
        let fake = array![0.6, 0.15];
        let h = 1e-7;
        for s in schemes {
            let base = discriminator_objective(s, &real, &fake).unwrap();
            for i in 0..2 {
                let mut r = real.clone();
                r[i] += h;
                let up = discriminator_objective(s, &r, &fake).unwrap().value;
                r[i] -= 2.0 * h;
                let down = discriminator_objective(s, &r, &fake).unwrap().value;
                assert!(((up - down) / (2.0 * h) - base.d_real[i]).abs() < 1e-6);
            }
            for o in [GeneratorObjective::NonSaturating, GeneratorObjective::Saturating] {
                let g = generator_objective(s, o, &fake).unwrap();
                for i in 0..2 {
                    let mut f = fake.clone();
                    f[i] += h;
                    let up = generator_objective(s, o, &f).unwrap().value;
                    f[i] -= 2.0 * h;
                    let down = generator_objective(s, o, &f).unwrap().value;
                    assert!(((up - down) / (2.0 * h) - g.d_fake[i]).abs() < 1e-6);
                }
            }
        }
    }
}
