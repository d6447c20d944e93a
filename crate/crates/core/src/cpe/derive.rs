use serde::Serialize;

use super::loss::{check_symmetry, CpeLoss, Label};
use crate::divergence::{
    classify_curvature, convexity_report, midpoint_gaps, Curvature, GeneratingFunction, ProbeGrid,
};
use crate::error::{Error, Result};

/// `f_α(1)` must vanish to this precision.
pub const NORMALIZATION_TOLERANCE: f64 = 1e-12;

/// Whether `u ↦ u·L(1, u/2)` bends up or down on `[0, 2]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LossCurvature {
    Convex,
    Concave,
}

impl std::fmt::Display for LossCurvature {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            LossCurvature::Convex => "convex",
            LossCurvature::Concave => "concave",
        })
    }
}

/// `f_α(u) = −u(L(1, u/2)/a − b)` on `[0, 2]` together with its constants.
#[derive(Debug, Clone)]
pub struct DerivedGenerator {
    pub generator: GeneratingFunction,
    pub a: f64,
    pub b: f64,
    pub curvature: LossCurvature,
}

impl DerivedGenerator {
    /// `2a·J − 2ab`, the generator value at the optimal discriminator when the
    /// Jensen-f-divergence between the two laws is `j`.
    pub fn equilibrium_value(&self, j: f64) -> f64 {
        2.0 * self.a * j - 2.0 * self.a * self.b
    }
}

/// Derives `(f_α, a, b)` from a symmetric loss.
///
/// `a_magnitude` defaults to the loss's [`CpeLoss::default_scale`]. The sign of
/// `a` is negative when `u·L(1, u/2)` is convex and positive when it is concave,
/// and `b = L(1, ½)/a` forces `f_α(1) = 0`.
pub fn derive_generator(loss: &CpeLoss, a_magnitude: Option<f64>) -> Result<DerivedGenerator> {
    let magnitude = a_magnitude.unwrap_or_else(|| loss.default_scale());
    if !(magnitude > 0.0 && magnitude.is_finite()) {
        return Err(Error::InvalidParameter(format!("a magnitude must be > 0, got {magnitude}")));
    }
    if !check_symmetry(loss) {
        let (max_gap, at) = loss.symmetry_gap();
        return Err(Error::AsymmetricLoss { max_gap, at });
    }

    let h = {
        let loss = loss.clone();
        move |u: f64| if u == 0.0 { 0.0 } else { u * loss.eval(Label::Real, u / 2.0) }
    };
    let curvature = match classify_curvature(&h, &ProbeGrid::jensen()) {
        Curvature::Convex => LossCurvature::Convex,
        Curvature::Concave => LossCurvature::Concave,
        Curvature::Affine => {
            return Err(Error::NotConvex(format!(
                "u*L(1,u/2) is affine for {}, so the derived generator is affine",
                loss.name()
            )))
        }
        Curvature::Mixed { worst_at, worst } => {
            return Err(Error::NotConvex(format!(
                "u*L(1,u/2) for {} has mixed curvature; worst second difference {worst:.3e} at u = {worst_at}",
                loss.name()
            )))
        }
    };
    let gaps = midpoint_gaps(&h);
    let strict = match curvature {
        LossCurvature::Convex => gaps.iter().all(|&g| g > 0.0),
        LossCurvature::Concave => gaps.iter().all(|&g| g < 0.0),
    };
    if !strict {
        return Err(Error::NotConvex(format!(
            "u*L(1,u/2) for {} is not strictly curved around u = 1 (midpoint gaps {gaps:?})",
            loss.name()
        )));
    }

    let a = match curvature {
        LossCurvature::Convex => -magnitude,
        LossCurvature::Concave => magnitude,
    };
    let b = loss.eval(Label::Real, 0.5) / a;
    let eval_loss = loss.clone();
    let mut generator = GeneratingFunction::new(format!("f[{}]", loss.name()), move |u| {
        if u == 0.0 {
            0.0
        } else {
            -u * (eval_loss.eval(Label::Real, u / 2.0) / a - b)
        }
    })
    .restricted_to(2.0)
    .with_param("a", a)
    .with_param("b", b);
    if let Some(p) = loss.family().and_then(|f| f.parameter()) {
        generator = generator.with_param("loss_parameter", p);
    }

    let at_one = generator.eval(1.0);
    if at_one.abs() > NORMALIZATION_TOLERANCE {
        return Err(Error::InvalidParameter(format!("derived generator has f(1) = {at_one:e}")));
    }
    let report = convexity_report(&generator, &ProbeGrid::jensen());
    if !report.convex || !report.strict_at_1 {
        return Err(Error::NotConvex(format!(
            "derived generator for {}: worst second difference {:.3e} at u = {:?}, strict at 1: {}",
            loss.name(),
            report.worst_second_difference,
            report.worst_at,
            report.strict_at_1
        )));
    }
    Ok(DerivedGenerator {
        generator,
        a,
        b,
        curvature,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cpe::{make_loss, LossFamily};
    use crate::divergence::{alpha_loss_generator, jensen_f, slk_generator};
    use crate::prob::random_distribution;

    fn derive(fam: LossFamily) -> Result<DerivedGenerator> {
        derive_generator(&make_loss(fam).unwrap(), None)
    }

    #[test]
    fn vanilla_gives_ulogu() {
        let d = derive(LossFamily::Vanilla).unwrap();
        assert_eq!(d.a, 1.0);
        assert!((d.b - 2f64.ln()).abs() < 1e-15);
        assert_eq!(d.curvature, LossCurvature::Concave);
        for i in 0..=200 {
            let u = i as f64 / 100.0;
            let expected = if u == 0.0 { 0.0 } else { u * u.ln() };
            assert!((d.generator.eval(u) - expected).abs() <= 1e-12, "u = {u}");
        }
        assert!((d.generator.eval(2.0) - 2.0 * 2f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn alpha_matches_closed_form() {
        for alpha in [0.6, 1.0, 2.0, 5.0, 10.0, 20.0] {
            let d = derive(LossFamily::Alpha { alpha }).unwrap();
            let closed = alpha_loss_generator(alpha).unwrap();
            assert!((d.a - 2f64.powf(1.0 / alpha - 1.0)).abs() < 1e-15);
            if alpha != 1.0 {
                let b = alpha / (alpha - 1.0) * (2f64.powf(1.0 - 1.0 / alpha) - 1.0);
                assert!((d.b - b).abs() < 1e-12, "alpha {alpha}: {} vs {b}", d.b);
            }
            for i in 1..=200 {
                let u = i as f64 / 100.0;
                assert!((d.generator.eval(u) - closed.eval(u)).abs() < 1e-12, "alpha {alpha}, u {u}");
            }
        }
    }

    #[test]
    fn slk_matches_closed_form() {
        for k in [0.25, 1.0, 2.0, 7.5, 15.0] {
            let d = derive(LossFamily::Slk { k }).unwrap();
            let closed = slk_generator(k).unwrap();
            assert!((d.b - (2f64.powf(k) - 1.0)).abs() < 1e-9 * 2f64.powf(k));
            for i in 0..=200 {
                let u = i as f64 / 100.0;
                // −u·L/a and u·b cancel; rounding follows their size
                let scale = 1f64.max(u * d.b.abs());
                assert!((d.generator.eval(u) - closed.eval(u)).abs() < 1e-12 * scale, "k {k}, u {u}");
            }
        }
        let d = derive(LossFamily::Slk { k: 2.0 }).unwrap();
        assert_eq!((d.a, d.b), (0.25, 3.0));
        assert!((d.generator.eval(2.0) - 6.0).abs() < 1e-12);
    }

    #[test]
    fn ab_equals_loss_at_half() {
        for fam in [LossFamily::Vanilla, LossFamily::Alpha { alpha: 3.0 }, LossFamily::Slk { k: 0.5 }] {
            let l = make_loss(fam).unwrap();
            let d = derive_generator(&l, Some(0.7)).unwrap();
            assert!((d.a * d.b - l.eval(Label::Real, 0.5)).abs() < 1e-12);
        }
    }

    #[test]
    fn alpha_below_half_is_rejected() {
        let err = derive(LossFamily::Alpha { alpha: 0.4 }).unwrap_err();
        assert!(err.to_string().contains("generator not convex"), "{err}");
    }

    #[test]
    fn asymmetric_loss_is_rejected() {
        let l = CpeLoss::custom("asym", |y, yh| match y {
            Label::Real => 1.0 - yh,
            Label::Fake => 0.0,
        });
        assert!(matches!(derive_generator(&l, None), Err(Error::AsymmetricLoss { .. })));
    }

    #[test]
    fn convex_custom_loss_gets_negative_scale() {
        // u·L(1, u/2) = u²/2 for L(1, ŷ) = ŷ
        let l = CpeLoss::custom("identity", |y, yh| match y {
            Label::Real => yh,
            Label::Fake => 1.0 - yh,
        });
        let d = derive_generator(&l, None).unwrap();
        assert_eq!(d.curvature, LossCurvature::Convex);
        assert!(d.a < 0.0);
    }

    #[test]
    fn scale_choice_leaves_equilibrium_value_unchanged() {
        let l = make_loss(LossFamily::Alpha { alpha: 5.0 }).unwrap();
        let p = random_distribution(16, 3).unwrap();
        let q = random_distribution(16, 4).unwrap();
        let values: Vec<f64> = [0.3, 0.6, 1.2]
            .iter()
            .map(|&m| {
                let d = derive_generator(&l, Some(m)).unwrap();
                d.equilibrium_value(jensen_f(&d.generator, &p, &q).unwrap())
            })
            .collect();
        assert!((values[0] - values[1]).abs() < 1e-9 && (values[1] - values[2]).abs() < 1e-9);
    }
}
