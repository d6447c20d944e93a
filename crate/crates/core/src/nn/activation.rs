use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Sigmoid outputs are kept inside `[ε, 1−ε]`.
pub const SIGMOID_CLAMP: f64 = 1e-7;

pub const DEFAULT_LEAKY_SLOPE: f64 = 0.2;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Activation {
    LeakyRelu { slope: f64 },
    Tanh,
    Sigmoid,
    Identity,
}

impl Activation {
    pub fn leaky_relu() -> Self {
        Activation::LeakyRelu {
            slope: DEFAULT_LEAKY_SLOPE,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            Activation::LeakyRelu { slope } if !(slope > 0.0 && slope < 1.0) => Err(Error::InvalidParameter(
                format!("leaky relu slope must lie in (0, 1), got {slope}"),
            )),
            _ => Ok(()),
        }
    }

    /// `(a(z), a'(z), a''(z))`.
    ///
    /// A clamped sigmoid is flat, so both derivatives vanish there.
    #[inline]
    pub fn eval(&self, z: f64) -> (f64, f64, f64) {
        match *self {
            Activation::Identity => (z, 1.0, 0.0),
            Activation::LeakyRelu { slope } => {
                if z > 0.0 {
                    (z, 1.0, 0.0)
                } else {
                    (slope * z, slope, 0.0)
                }
            }
            Activation::Tanh => {
                let t = z.tanh();
                let d = 1.0 - t * t;
                (t, d, -2.0 * t * d)
            }
            Activation::Sigmoid => {
                let s = sigmoid(z);
                if s <= SIGMOID_CLAMP {
                    (SIGMOID_CLAMP, 0.0, 0.0)
                } else if s >= 1.0 - SIGMOID_CLAMP {
                    (1.0 - SIGMOID_CLAMP, 0.0, 0.0)
                } else {
                    let d = s * (1.0 - s);
                    (s, d, d * (1.0 - 2.0 * s))
                }
            }
        }
    }
}

fn sigmoid(z: f64) -> f64 {
    if z >= 0.0 {
        1.0 / (1.0 + (-z).exp())
    } else {
        let e = z.exp();
        e / (1.0 + e)
    }
}

impl fmt::Display for Activation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Activation::LeakyRelu { slope } => write!(f, "leaky_relu:{slope}"),
            Activation::Tanh => f.write_str("tanh"),
            Activation::Sigmoid => f.write_str("sigmoid"),
            Activation::Identity => f.write_str("identity"),
        }
    }
}

impl FromStr for Activation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let a = match s.split_once(':') {
            Some(("leaky_relu", slope)) => Activation::LeakyRelu {
                slope: slope
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad leaky relu slope {slope:?}")))?,
            },
            None if s == "leaky_relu" => Activation::leaky_relu(),
            None if s == "tanh" => Activation::Tanh,
            None if s == "sigmoid" => Activation::Sigmoid,
            None if s == "identity" => Activation::Identity,
            _ => return Err(Error::Parse(format!("unknown activation {s:?}"))),
        };
        a.validate()?;
        Ok(a)
    }
}
