use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Predictions are kept at least this far from a singular endpoint.
pub const PREDICTION_CLAMP: f64 = 1e-7;

/// Probe predictions `0, 0.1, …, 1` for the symmetry check.
pub const SYMMETRY_PROBES: usize = 11;

pub const SYMMETRY_TOLERANCE: f64 = 1e-12;

/// Binary label of a CPE loss.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Label {
    Fake,
    Real,
}

impl Label {
    pub fn from_bit(y: u8) -> Self {
        if y == 0 {
            Label::Fake
        } else {
            Label::Real
        }
    }
}

/// Loss families with closed forms.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum LossFamily {
    /// `−y log ŷ − (1−y) log(1−ŷ)`.
    Vanilla,
    /// α-loss; `α = 1` coincides with [`LossFamily::Vanilla`].
    Alpha { alpha: f64 },
    /// Shifted Lk loss `−(y(ŷ^k − 1) + (1−y)((1−ŷ)^k − 1))`.
    Slk { k: f64 },
}

impl LossFamily {
    pub fn validate(&self) -> Result<()> {
        match *self {
            LossFamily::Vanilla => Ok(()),
            LossFamily::Alpha { alpha } if !(alpha > 0.0 && alpha.is_finite()) => {
                Err(Error::InvalidParameter(format!("alpha-loss requires alpha > 0, got {alpha}")))
            }
            LossFamily::Slk { k } if !(k > 0.0 && k.is_finite()) => {
                Err(Error::InvalidParameter(format!("slk loss requires k > 0, got {k}")))
            }
            _ => Ok(()),
        }
    }

    pub fn parameter(&self) -> Option<f64> {
        match *self {
            LossFamily::Vanilla => None,
            LossFamily::Alpha { alpha } => Some(alpha),
            LossFamily::Slk { k } => Some(k),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            LossFamily::Vanilla => "vanilla",
            LossFamily::Alpha { .. } => "alpha",
            LossFamily::Slk { .. } => "slk",
        }
    }

    /// Scale magnitude `|a|` under which the derived generator takes its textbook
    /// closed form: `1`, `2^{1/α−1}` and `2^{−k}` respectively.
    pub fn default_scale(&self) -> f64 {
        match *self {
            LossFamily::Vanilla => 1.0,
            LossFamily::Alpha { alpha } => 2f64.powf(1.0 / alpha - 1.0),
            LossFamily::Slk { k } => 2f64.powf(-k),
        }
    }

    /// `∂L(y, ŷ)/∂ŷ`, using the same endpoint clamp as the loss itself.
    pub fn derivative(&self, y: Label, yhat: f64) -> f64 {
        match *self {
            LossFamily::Vanilla => alpha_derivative(1.0, y, yhat),
            LossFamily::Alpha { alpha } => alpha_derivative(alpha, y, yhat),
            LossFamily::Slk { k } => match y {
                Label::Real => -k * yhat.powf(k - 1.0),
                Label::Fake => k * (1.0 - yhat).powf(k - 1.0),
            },
        }
    }
}

impl fmt::Display for LossFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LossFamily::Vanilla => f.write_str("vanilla"),
            LossFamily::Alpha { alpha } => write!(f, "alpha:{alpha}"),
            LossFamily::Slk { k } => write!(f, "slk:{k}"),
        }
    }
}

impl FromStr for LossFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (head, arg) = match s.split_once(':') {
            Some((h, a)) => (h, Some(a)),
            None => (s, None),
        };
        let number = || -> Result<f64> {
            let a = arg.ok_or_else(|| Error::Parse(format!("{head} needs a parameter, e.g. {head}:2")))?;
            a.parse::<f64>()
                .map_err(|_| Error::Parse(format!("bad parameter {a:?} for {head}")))
        };
        let fam = match (head, arg) {
            ("vanilla", None) => LossFamily::Vanilla,
            ("alpha", _) => LossFamily::Alpha { alpha: number()? },
            ("slk", _) => LossFamily::Slk { k: number()? },
            ("vanilla", Some(_)) => return Err(Error::Parse("vanilla takes no parameter".into())),
            (other, _) => return Err(Error::Parse(format!("unknown loss {other:?}"))),
        };
        fam.validate()?;
        Ok(fam)
    }
}

type LossFn = dyn Fn(Label, f64) -> f64 + Send + Sync;

#[derive(Clone)]
enum Kind {
    Family(LossFamily),
    Custom { name: String, eval: Arc<LossFn> },
}

/// A class-probability-estimation loss `L(y, ŷ)`, `y ∈ {0, 1}`, `ŷ ∈ [0, 1]`.
#[derive(Clone)]
pub struct CpeLoss {
    kind: Kind,
}

impl CpeLoss {
    pub fn new(family: LossFamily) -> Result<Self> {
        family.validate()?;
        Ok(Self {
            kind: Kind::Family(family),
        })
    }

    /// Wraps a user-supplied evaluator. It receives `ŷ` unclamped.
    pub fn custom(name: impl Into<String>, eval: impl Fn(Label, f64) -> f64 + Send + Sync + 'static) -> Self {
        Self {
            kind: Kind::Custom {
                name: name.into(),
                eval: Arc::new(eval),
            },
        }
    }

    pub fn family(&self) -> Option<LossFamily> {
        match &self.kind {
            Kind::Family(f) => Some(*f),
            Kind::Custom { .. } => None,
        }
    }

    pub fn name(&self) -> String {
        match &self.kind {
            Kind::Family(f) => f.to_string(),
            Kind::Custom { name, .. } => name.clone(),
        }
    }

    /// Default `|a|` for [`crate::cpe::derive_generator`]; 1 for custom losses.
    pub fn default_scale(&self) -> f64 {
        self.family().map_or(1.0, |f| f.default_scale())
    }

    pub fn eval(&self, y: Label, yhat: f64) -> f64 {
        match &self.kind {
            Kind::Family(LossFamily::Vanilla) => alpha_loss(1.0, y, yhat),
            Kind::Family(LossFamily::Alpha { alpha }) => alpha_loss(*alpha, y, yhat),
            Kind::Family(LossFamily::Slk { k }) => match y {
                Label::Real => 1.0 - yhat.powf(*k),
                Label::Fake => 1.0 - (1.0 - yhat).powf(*k),
            },
            Kind::Custom { eval, .. } => eval(y, yhat),
        }
    }

    /// Largest `|L(1, ŷ) − L(0, 1−ŷ)|` over the probe grid and where it occurs.
    pub fn symmetry_gap(&self) -> (f64, f64) {
        (0..SYMMETRY_PROBES)
            .map(|i| {
                let y = i as f64 / (SYMMETRY_PROBES - 1) as f64;
                let gap = (self.eval(Label::Real, y) - self.eval(Label::Fake, 1.0 - y)).abs();
                (if gap.is_nan() { f64::INFINITY } else { gap }, y)
            })
            .fold((0.0, 0.0), |best, cur| if cur.0 > best.0 { cur } else { best })
    }
}

impl fmt::Debug for CpeLoss {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CpeLoss({})", self.name())
    }
}

/// Builds a closed-form loss.
pub fn make_loss(family: LossFamily) -> Result<CpeLoss> {
    CpeLoss::new(family)
}

/// `L(1, ŷ) = L(0, 1−ŷ)` on the probe grid within [`SYMMETRY_TOLERANCE`].
pub fn check_symmetry(loss: &CpeLoss) -> bool {
    loss.symmetry_gap().0 <= SYMMETRY_TOLERANCE
}

fn needs_clamp(alpha: f64) -> bool {
    // log at α = 1, negative power ŷ^{1−1/α} below 1
    alpha <= 1.0
}

/// α-loss. `L(1, ŷ) = (α/(α−1))(1 − ŷ^{1−1/α})`, `L(0, ŷ) = L(1, 1−ŷ)`.
fn alpha_loss(alpha: f64, y: Label, yhat: f64) -> f64 {
    // Evaluate on the probability assigned to the true label.
    let t = match y {
        Label::Real => yhat,
        Label::Fake => 1.0 - yhat,
    };
    let t = if needs_clamp(alpha) { t.max(PREDICTION_CLAMP) } else { t };
    if alpha == 1.0 {
        -t.ln()
    } else {
        alpha / (alpha - 1.0) * (1.0 - t.powf(1.0 - 1.0 / alpha))
    }
}

fn alpha_derivative(alpha: f64, y: Label, yhat: f64) -> f64 {
    let (t, sign) = match y {
        Label::Real => (yhat, -1.0),
        Label::Fake => (1.0 - yhat, 1.0),
    };
    if needs_clamp(alpha) && t < PREDICTION_CLAMP {
        return 0.0;
    }
    // d/dt [(α/(α−1))(1 − t^{1−1/α})] = −t^{−1/α}
    sign * t.powf(-1.0 / alpha)
}
