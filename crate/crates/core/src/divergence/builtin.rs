use std::f64::consts::LN_2;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::generator::{xlogx, GeneratingFunction};
use crate::error::{Error, Result};

/// The tabulated f-divergence families.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Family {
    Kl,
    Jsd,
    PearsonChi2,
    PearsonVajda { k: f64 },
    Arimoto { alpha: f64 },
    Hellinger { alpha: f64 },
    VanillaULogU,
}

impl Family {
    pub fn validate(&self) -> Result<()> {
        match *self {
            Family::PearsonVajda { k } if !(k > 1.0 && k.is_finite()) => {
                Err(Error::InvalidParameter(format!("pearson_vajda requires k > 1, got {k}")))
            }
            Family::Arimoto { alpha } | Family::Hellinger { alpha } if !(alpha > 0.0 && alpha.is_finite()) => Err(
                Error::InvalidParameter(format!("{} requires alpha > 0, got {alpha}", self.label())),
            ),
            Family::Arimoto { alpha } | Family::Hellinger { alpha } if alpha == 1.0 => Err(Error::InvalidParameter(
                format!("{} requires alpha != 1 (use kl for the alpha -> 1 limit)", self.label()),
            )),
            _ => Ok(()),
        }
    }

    fn label(&self) -> &'static str {
        match self {
            Family::Kl => "kl",
            Family::Jsd => "jsd",
            Family::PearsonChi2 => "chi2",
            Family::PearsonVajda { .. } => "vajda",
            Family::Arimoto { .. } => "arimoto",
            Family::Hellinger { .. } => "hellinger",
            Family::VanillaULogU => "ulogu",
        }
    }

    /// Every parameter-free family plus a representative of each parametric one.
    pub fn zoo() -> Vec<Family> {
        vec![
            Family::Kl,
            Family::Jsd,
            Family::PearsonChi2,
            Family::PearsonVajda { k: 1.5 },
            Family::PearsonVajda { k: 3.0 },
            Family::Arimoto { alpha: 0.5 },
            Family::Arimoto { alpha: 2.0 },
            Family::Arimoto { alpha: 5.0 },
            Family::Hellinger { alpha: 0.5 },
            Family::Hellinger { alpha: 2.0 },
            Family::VanillaULogU,
        ]
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::PearsonVajda { k } => write!(f, "vajda:{k}"),
            Family::Arimoto { alpha } => write!(f, "arimoto:{alpha}"),
            Family::Hellinger { alpha } => write!(f, "hellinger:{alpha}"),
            other => f.write_str(other.label()),
        }
    }
}

/// A divergence named on the command line: an f-divergence family or Rényi.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DivergenceSpec {
    F(Family),
    Renyi { alpha: f64 },
}

impl FromStr for DivergenceSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (head, arg) = match s.split_once(':') {
            Some((h, a)) => (h, Some(a)),
            None => (s, None),
        };
        let number = |what: &str| -> Result<f64> {
            let a = arg.ok_or_else(|| Error::Parse(format!("{head} needs a parameter, e.g. {head}:{what}")))?;
            a.parse::<f64>()
                .map_err(|_| Error::Parse(format!("bad parameter {a:?} for {head}")))
        };
        let no_arg = |fam: Family| -> Result<Self> {
            match arg {
                None => Ok(DivergenceSpec::F(fam)),
                Some(_) => Err(Error::Parse(format!("{head} takes no parameter"))),
            }
        };
        let spec = match head {
            "kl" => no_arg(Family::Kl)?,
            "jsd" => no_arg(Family::Jsd)?,
            "chi2" => no_arg(Family::PearsonChi2)?,
            "ulogu" => no_arg(Family::VanillaULogU)?,
            "vajda" => DivergenceSpec::F(Family::PearsonVajda { k: number("2")? }),
            "arimoto" => DivergenceSpec::F(Family::Arimoto { alpha: number("2")? }),
            "hellinger" => DivergenceSpec::F(Family::Hellinger { alpha: number("2")? }),
            "renyi" => {
                let alpha = number("2")?;
                if !(alpha > 0.0 && alpha.is_finite()) || alpha == 1.0 {
                    return Err(Error::InvalidParameter(format!(
                        "renyi requires alpha > 0 and alpha != 1 (use kl for alpha = 1), got {alpha}"
                    )));
                }
                DivergenceSpec::Renyi { alpha }
            }
            other => return Err(Error::Parse(format!("unknown divergence family {other:?}"))),
        };
        if let DivergenceSpec::F(fam) = spec {
            fam.validate()?;
        }
        Ok(spec)
    }
}

/// The generating function of a tabulated family.
///
/// Arimoto uses `(α/(α−1))((1+u^α)^{1/α} − (1+u) − 2^{1/α} + 2)`, the form that
/// reproduces the integral `(α/(α−1))(∫(p^α+q^α)^{1/α} − 2^{1/α})` under `Σ q f(p/q)`.
pub fn builtin_generator(family: Family) -> Result<GeneratingFunction> {
    family.validate()?;
    let g = match family {
        Family::Kl => GeneratingFunction::new("kl", xlogx).with_recession_slope(f64::INFINITY),
        Family::VanillaULogU => GeneratingFunction::new("u log u", xlogx).with_recession_slope(f64::INFINITY),
        Family::Jsd => GeneratingFunction::new("jsd", |u| 0.5 * (xlogx(u) - (u + 1.0) * ((u + 1.0) / 2.0).ln()))
            .with_recession_slope(0.5 * LN_2),
        Family::PearsonChi2 => GeneratingFunction::new("chi2", |u| {
            if u == 0.0 {
                f64::INFINITY
            } else {
                let r = u.sqrt() - 1.0 / u.sqrt();
                r * r
            }
        })
        .with_recession_slope(1.0),
        Family::PearsonVajda { k } => GeneratingFunction::new("vajda", move |u| {
            if u == 0.0 {
                f64::INFINITY
            } else {
                u.powf(1.0 - k) * (1.0 - u).abs().powf(k)
            }
        })
        .with_param("k", k)
        .with_recession_slope(1.0),
        Family::Arimoto { alpha } => {
            let c = alpha / (alpha - 1.0);
            let two_root = 2f64.powf(1.0 / alpha);
            GeneratingFunction::new("arimoto", move |u| {
                c * ((1.0 + u.powf(alpha)).powf(1.0 / alpha) - (1.0 + u) - two_root + 2.0)
            })
            .with_param("alpha", alpha)
            .with_recession_slope(0.0)
        }
        Family::Hellinger { alpha } => {
            let slope = if alpha > 1.0 { f64::INFINITY } else { 0.0 };
            GeneratingFunction::new("hellinger", move |u| (alpha * u.ln()).exp_m1() / (alpha - 1.0))
                .with_param("alpha", alpha)
                .with_recession_slope(slope)
        }
    };
    Ok(g)
}

/// `f_α(u) = (α/(α−1))(u^{2−1/α} − u)`, the closed form generated by α-loss
/// with `a = 2^{1/α−1}`; `u log u` at `α = 1`. Convex only for `α > 1/2`.
pub fn alpha_loss_generator(alpha: f64) -> Result<GeneratingFunction> {
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(Error::InvalidParameter(format!("alpha must be > 0, got {alpha}")));
    }
    if alpha == 1.0 {
        return Ok(GeneratingFunction::new("alpha-loss f", xlogx)
            .with_param("alpha", 1.0)
            .with_recession_slope(f64::INFINITY));
    }
    let c = alpha / (alpha - 1.0);
    let e = 2.0 - 1.0 / alpha;
    let slope = if e > 1.0 {
        f64::INFINITY
    } else if e == 1.0 {
        0.0
    } else {
        -c
    };
    Ok(GeneratingFunction::new("alpha-loss f", move |u| c * (u.powf(e) - u))
    .with_param("alpha", alpha)
    .with_recession_slope(slope))
}

/// `f_k(u) = u(u^k − 1)`, generated by the shifted Lk loss with `a = 2^{−k}`.
pub fn slk_generator(k: f64) -> Result<GeneratingFunction> {
    if !(k > 0.0 && k.is_finite()) {
        return Err(Error::InvalidParameter(format!("k must be > 0, got {k}")));
    }
    Ok(GeneratingFunction::new("slk f", move |u| u * (u.powf(k) - 1.0))
        .with_param("k", k)
        .with_recession_slope(f64::INFINITY))
}

/// The (α_D, α_G) generator `(α_G/(α_G−1)) (u^{α_D(1−1/α_G)+1} + 1) / (u^{α_D} + 1)^{1−1/α_G}`,
/// shifted by its value at 1 so that it is normalized.
///
/// At `α_G = 1` the pointwise limit (after dropping an affine term whose
/// divergence contribution vanishes) is `α_D u log u − (u+1) log(u^{α_D}+1) + 2 log 2`.
pub fn dual_alpha_generator(alpha_d: f64, alpha_g: f64) -> Result<GeneratingFunction> {
    for (name, v) in [("alpha_d", alpha_d), ("alpha_g", alpha_g)] {
        if !(v > 0.0 && v.is_finite()) {
            return Err(Error::InvalidParameter(format!("{name} must be > 0, got {v}")));
        }
    }
    let g = if alpha_g == 1.0 {
        GeneratingFunction::new("dual-alpha f", move |u| {
            alpha_d * xlogx(u) - (u + 1.0) * (u.powf(alpha_d) + 1.0).ln() + 2.0 * LN_2
        })
    } else {
        let c = alpha_g / (alpha_g - 1.0);
        let s = 1.0 - 1.0 / alpha_g;
        let raw = move |u: f64| c * (u.powf(alpha_d * s + 1.0) + 1.0) / (u.powf(alpha_d) + 1.0).powf(s);
        let at_one = raw(1.0);
        GeneratingFunction::new("dual-alpha f", move |u| raw(u) - at_one)
    };
    Ok(g.with_param("alpha_d", alpha_d).with_param("alpha_g", alpha_g))
}
