use super::generator::GeneratingFunction;
use crate::error::{Error, Result};
use crate::prob::FiniteDistribution;

/// `D_f(p‖q) = Σ q f(p/q)` on raw masses.
///
/// Boundary conventions: `0·f(0/0) = 0` and `0·f(a/0) = a · lim_{t→∞} f(t)/t`.
pub fn f_divergence_raw(f: &GeneratingFunction, p: &[f64], q: &[f64]) -> Result<f64> {
    if p.len() != q.len() {
        return Err(Error::SupportMismatch {
            left: p.len(),
            right: q.len(),
        });
    }
    let mut total = 0.0;
    for (index, (&pi, &qi)) in p.iter().zip(q).enumerate() {
        let term = if qi > 0.0 {
            qi * f.try_eval(pi / qi)?
        } else if pi == 0.0 {
            0.0
        } else {
            let slope = f.recession_slope().ok_or_else(|| {
                Error::InvalidParameter(format!(
                    "generator {} has no recession slope but q vanishes at index {index} where p > 0",
                    f.name()
                ))
            })?;
            if slope == 0.0 {
                0.0
            } else {
                pi * slope
            }
        };
        if term.is_nan() {
            return Err(Error::NotANumber { index });
        }
        total += term;
    }
    Ok(total)
}

/// The f-divergence `D_f(p‖q)` in nats.
pub fn f_divergence(f: &GeneratingFunction, p: &FiniteDistribution, q: &FiniteDistribution) -> Result<f64> {
    p.check_same_support(q)?;
    if !f.is_normalized() {
        return Err(Error::InvalidParameter(format!(
            "generator {} is not declared normalized (f(1) = 0)",
            f.name()
        )));
    }
    f_divergence_raw(f, p.masses(), q.masses())
}

/// The Jensen-f-divergence `½ D_f(p‖m) + ½ D_f(q‖m)`, `m = (p+q)/2`.
///
/// Every ratio against `m` lies in `[0, 2]`, so generators restricted to that
/// interval are accepted.
pub fn jensen_f(f: &GeneratingFunction, p: &FiniteDistribution, q: &FiniteDistribution) -> Result<f64> {
    let m = p.midpoint(q)?;
    let dp = f_divergence(f, p, &m)?;
    let dq = f_divergence(f, q, &m)?;
    Ok(0.5 * dp + 0.5 * dq)
}

/// `f̄(u) = ((u+1)/4) (f(2u/(u+1)) + f(2/(u+1)))`, whose f-divergence equals `J_f`.
pub fn symmetrize(f: &GeneratingFunction) -> Result<GeneratingFunction> {
    if !f.is_normalized() {
        return Err(Error::InvalidParameter(format!(
            "generator {} is not declared normalized (f(1) = 0)",
            f.name()
        )));
    }
    let at_zero = f.try_eval(0.0)?;
    let at_two = f.try_eval(2.0)?;
    let slope = 0.25 * (at_zero + at_two);
    let inner = f.clone();
    let mut g = GeneratingFunction::new(format!("sym({})", f.name()), move |u| {
        if u.is_infinite() {
            return f64::INFINITY;
        }
        let s = u + 1.0;
        0.25 * s * (inner.eval((2.0 * u / s).min(2.0)) + inner.eval(2.0 / s))
    })
    .with_recession_slope(if slope.is_nan() { f64::INFINITY } else { slope });
    for (k, v) in f.params() {
        g = g.with_param(k.clone(), *v);
    }
    Ok(g)
}

/// Rényi divergence `(1/(α−1)) log Σ p^α q^{1−α}`.
///
/// The sum is accumulated as `Σ (p^α q^{1−α} − q)` so nearby laws keep
/// their relative precision.
pub fn renyi_divergence(alpha: f64, p: &FiniteDistribution, q: &FiniteDistribution) -> Result<f64> {
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(Error::InvalidParameter(format!("renyi requires alpha > 0, got {alpha}")));
    }
    if alpha == 1.0 {
        return Err(Error::InvalidParameter(
            "renyi is undefined at alpha = 1; use kl for that limit".into(),
        ));
    }
    p.check_same_support(q)?;
    let mut excess = 0.0;
    for (&pi, &qi) in p.masses().iter().zip(q.masses()) {
        excess += if pi == 0.0 {
            -qi
        } else if qi == 0.0 {
            if alpha > 1.0 {
                return Ok(f64::INFINITY);
            }
            0.0
        } else {
            qi * (alpha * ((pi - qi) / qi).ln_1p()).exp_m1()
        };
    }
    Ok(excess.ln_1p() / (alpha - 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::divergence::builtin::{builtin_generator, Family};
    use crate::prob::random_distribution;

    fn d(v: &[f64]) -> FiniteDistribution {
        FiniteDistribution::from_masses(v.to_vec()).unwrap()
    }

    #[test]
    fn kl_examples() {
        let kl = builtin_generator(Family::Kl).unwrap();
        let p = d(&[0.5, 0.5]);
        let q = d(&[0.25, 0.75]);
        assert_eq!(f_divergence(&kl, &p, &p).unwrap(), 0.0);
        // ½ ln 2 + ½ ln(2/3)
        let oracle = 0.5 * 2f64.ln() + 0.5 * (2.0f64 / 3.0).ln();
        let v = f_divergence(&kl, &p, &q).unwrap();
        assert!((v - oracle).abs() < 1e-15);
        assert!((v - 0.143841).abs() < 1e-6);
    }

    #[test]
    fn chi2_example() {
        let f = builtin_generator(Family::PearsonChi2).unwrap();
        let v = f_divergence(&f, &d(&[0.5, 0.5]), &d(&[0.25, 0.75])).unwrap();
        assert!((v - 0.25).abs() < 1e-15);
    }

    #[test]
    fn arimoto_two_matches_direct_sum() {
        let f = builtin_generator(Family::Arimoto { alpha: 2.0 }).unwrap();
        let v = f_divergence(&f, &d(&[0.5, 0.5]), &d(&[0.25, 0.75])).unwrap();
        let oracle = 2.0 * ((0.25f64 + 0.0625).sqrt() + (0.25f64 + 0.5625).sqrt() - 2f64.sqrt());
        assert!((v - oracle).abs() < 1e-12);
    }

    #[test]
    fn jensen_examples() {
        let f = builtin_generator(Family::Kl).unwrap();
        let p = d(&[0.5, 0.5]);
        let q = d(&[0.25, 0.75]);
        assert_eq!(jensen_f(&f, &p, &p).unwrap(), 0.0);
        // two KL terms against the midpoint [0.375, 0.625]
        let kl1 = 0.5 * (0.5f64 / 0.375).ln() + 0.5 * (0.5f64 / 0.625).ln();
        let kl2 = 0.25 * (0.25f64 / 0.375).ln() + 0.75 * (0.75f64 / 0.625).ln();
        let oracle = 0.5 * kl1 + 0.5 * kl2;
        let v = jensen_f(&f, &p, &q).unwrap();
        assert!((v - oracle).abs() < 1e-15);
        assert!((v - 0.033822).abs() < 1e-6);

        let v = jensen_f(&f, &d(&[1.0, 0.0]), &d(&[0.0, 1.0])).unwrap();
        assert!((v - 2f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn zero_conventions() {
        let kl = builtin_generator(Family::Kl).unwrap();
        let inf = f_divergence(&kl, &d(&[0.5, 0.5]), &d(&[1.0, 0.0])).unwrap();
        assert_eq!(inf, f64::INFINITY);
        let jsd = builtin_generator(Family::Jsd).unwrap();
        let v = f_divergence(&jsd, &d(&[1.0, 0.0]), &d(&[0.0, 1.0])).unwrap();
        assert!((v - 2f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn support_mismatch_rejected() {
        let kl = builtin_generator(Family::Kl).unwrap();
        let err = f_divergence(&kl, &d(&[1.0]), &d(&[0.5, 0.5])).unwrap_err();
        assert_eq!(err, Error::SupportMismatch { left: 1, right: 2 });
    }

    #[test]
    fn nan_is_reported_with_index() {
        let bad = GeneratingFunction::new("bad", |u| if u > 1.5 { f64::NAN } else { 0.0 });
        let err = f_divergence(&bad, &d(&[0.1, 0.9]), &d(&[0.5, 0.5])).unwrap_err();
        assert_eq!(err, Error::NotANumber { index: 1 });
    }

    #[test]
    fn symmetrized_kl() {
        let f = builtin_generator(Family::Kl).unwrap();
        let fbar = symmetrize(&f).unwrap();
        assert!(fbar.eval(1.0).abs() < 1e-15);
        for i in 1..=100 {
            let u = 0.1 * i as f64;
            assert!((fbar.eval(u) - u * fbar.eval(1.0 / u)).abs() < 1e-12, "u = {u}");
        }
        let p = random_distribution(64, 1).unwrap();
        let q = random_distribution(64, 2).unwrap();
        let gap = f_divergence(&fbar, &p, &q).unwrap() - jensen_f(&f, &p, &q).unwrap();
        assert!(gap.abs() <= 1e-12);
    }

    #[test]
    fn renyi_examples() {
        let p = d(&[0.5, 0.5]);
        let q = d(&[0.25, 0.75]);
        assert_eq!(renyi_divergence(2.0, &p, &p).unwrap(), 0.0);
        let v = renyi_divergence(2.0, &p, &q).unwrap();
        assert!((v - (4.0f64 / 3.0).ln()).abs() < 1e-15);
        assert!((v - 0.287682).abs() < 1e-6);
        let err = renyi_divergence(1.0, &p, &q).unwrap_err();
        assert!(err.to_string().contains("kl"));
    }
}
