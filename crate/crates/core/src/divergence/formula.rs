//! Closed-form divergence integrals evaluated by direct summation.
//!
//! These take raw mass slices, so they also apply to unnormalized measures
//! such as the pair `(p + q, 2q)`. They are independent of the generator
//! machinery and serve as its reference.

use crate::error::{Error, Result};

fn check(p: &[f64], q: &[f64]) -> Result<()> {
    if p.len() != q.len() {
        return Err(Error::SupportMismatch {
            left: p.len(),
            right: q.len(),
        });
    }
    Ok(())
}

/// `Σ p log(p/q)`.
pub fn kl(p: &[f64], q: &[f64]) -> Result<f64> {
    check(p, q)?;
    Ok(p.iter()
        .zip(q)
        .map(|(&a, &b)| {
            if a == 0.0 {
                0.0
            } else if b == 0.0 {
                f64::INFINITY
            } else {
                a * (a / b).ln()
            }
        })
        .sum())
}

/// `½ KL(p‖m) + ½ KL(q‖m)` with `m = (p+q)/2`.
pub fn jsd(p: &[f64], q: &[f64]) -> Result<f64> {
    check(p, q)?;
    let m: Vec<f64> = p.iter().zip(q).map(|(a, b)| 0.5 * (a + b)).collect();
    Ok(0.5 * kl(p, &m)? + 0.5 * kl(q, &m)?)
}

/// `Σ (q − p)² / p`.
pub fn pearson_chi2(p: &[f64], q: &[f64]) -> Result<f64> {
    pearson_vajda(2.0, p, q)
}

/// `Σ |q − p|^k / p^{k−1}`.
pub fn pearson_vajda(k: f64, p: &[f64], q: &[f64]) -> Result<f64> {
    check(p, q)?;
    Ok(p.iter()
        .zip(q)
        .map(|(&a, &b)| {
            let num = (b - a).abs().powf(k);
            if num == 0.0 {
                0.0
            } else {
                num / a.powf(k - 1.0)
            }
        })
        .sum())
}

/// `(α/(α−1)) (Σ (p^α + q^α)^{1/α} − 2^{1/α})`.
pub fn arimoto(alpha: f64, p: &[f64], q: &[f64]) -> Result<f64> {
    check(p, q)?;
    let s: f64 = p
        .iter()
        .zip(q)
        .map(|(&a, &b)| (a.powf(alpha) + b.powf(alpha)).powf(1.0 / alpha))
        .sum();
    Ok(alpha / (alpha - 1.0) * (s - 2f64.powf(1.0 / alpha)))
}

/// `(1/(α−1)) (Σ p^α q^{1−α} − 1)`.
pub fn hellinger(alpha: f64, p: &[f64], q: &[f64]) -> Result<f64> {
    check(p, q)?;
    Ok((power_sum(alpha, p, q) - 1.0) / (alpha - 1.0))
}

/// `Σ p^α q^{1−α}`, skipping points where both masses vanish.
pub(crate) fn power_sum(alpha: f64, p: &[f64], q: &[f64]) -> f64 {
    p.iter()
        .zip(q)
        .filter(|(&a, &b)| a > 0.0 || b > 0.0)
        .map(|(&a, &b)| {
            if a == 0.0 {
                0.0
            } else {
                a.powf(alpha) * b.powf(1.0 - alpha)
            }
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_point_values() {
        let p = [0.5, 0.5];
        let q = [0.25, 0.75];
        let expected = 0.5 * 2f64.ln() + 0.5 * (2.0f64 / 3.0).ln();
        assert!((kl(&p, &q).unwrap() - expected).abs() < 1e-15);
        assert!((pearson_chi2(&p, &q).unwrap() - 0.25).abs() < 1e-15);
        let direct = 2.0 * ((0.25f64 + 0.0625).sqrt() + (0.25f64 + 0.5625).sqrt() - 2f64.sqrt());
        assert!((arimoto(2.0, &p, &q).unwrap() - direct).abs() < 1e-15);
    }

    #[test]
    fn disjoint_jsd_is_ln2() {
        assert!((jsd(&[1.0, 0.0], &[0.0, 1.0]).unwrap() - 2f64.ln()).abs() < 1e-15);
    }
}
