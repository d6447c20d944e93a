use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Arguments this far above a restricted domain's upper end are clamped onto it.
const DOMAIN_SLACK: f64 = 1e-12;

type Evaluator = dyn Fn(f64) -> f64 + Send + Sync;

/// A convex function `f` on `[0, ∞)` (or `[0, upper]`) that generates an f-divergence.
///
/// Besides the evaluator it carries the recession slope `lim_{t→∞} f(t)/t`, which
/// fixes the contribution of support points where `q` vanishes but `p` does not.
#[derive(Clone)]
pub struct GeneratingFunction {
    name: String,
    params: Vec<(String, f64)>,
    eval: Arc<Evaluator>,
    normalized: bool,
    recession_slope: Option<f64>,
    domain_upper: Option<f64>,
}

impl GeneratingFunction {
    /// A generator declared normalized (`f(1) = 0`) on `[0, ∞)` with unknown recession slope.
    pub fn new(name: impl Into<String>, eval: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Self {
            name: name.into(),
            params: Vec::new(),
            eval: Arc::new(eval),
            normalized: true,
            recession_slope: None,
            domain_upper: None,
        }
    }

    pub fn with_param(mut self, key: impl Into<String>, value: f64) -> Self {
        self.params.push((key.into(), value));
        self
    }

    /// Sets `lim_{t→∞} f(t)/t`; `f64::INFINITY` is allowed.
    pub fn with_recession_slope(mut self, slope: f64) -> Self {
        self.recession_slope = Some(slope);
        self
    }

    /// Restricts the domain to `[0, upper]`.
    pub fn restricted_to(mut self, upper: f64) -> Self {
        self.domain_upper = Some(upper);
        self
    }

    /// Marks the generator as not satisfying `f(1) = 0`.
    pub fn unnormalized(mut self) -> Self {
        self.normalized = false;
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn params(&self) -> &[(String, f64)] {
        &self.params
    }

    pub fn param(&self, key: &str) -> Option<f64> {
        self.params.iter().find(|(k, _)| k == key).map(|&(_, v)| v)
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    pub fn recession_slope(&self) -> Option<f64> {
        self.recession_slope
    }

    pub fn domain_upper(&self) -> Option<f64> {
        self.domain_upper
    }

    /// Raw evaluation; callers are responsible for staying inside the domain.
    pub fn eval(&self, u: f64) -> f64 {
        (self.eval)(u)
    }

    /// Domain-checked evaluation.
    pub fn try_eval(&self, u: f64) -> Result<f64> {
        if u.is_nan() || u < 0.0 {
            return Err(Error::OutsideDomain {
                value: u,
                upper: self.domain_upper.unwrap_or(f64::INFINITY),
            });
        }
        match self.domain_upper {
            Some(upper) if u > upper + DOMAIN_SLACK => Err(Error::OutsideDomain { value: u, upper }),
            Some(upper) if u > upper => Ok(self.eval(upper)),
            _ => Ok(self.eval(u)),
        }
    }

    /// Multiplies the generator by a positive constant.
    pub fn scaled(&self, c: f64) -> Self {
        let inner = self.eval.clone();
        Self {
            name: format!("{c}*{}", self.name),
            params: self.params.clone(),
            eval: Arc::new(move |u| c * inner(u)),
            normalized: self.normalized,
            recession_slope: self.recession_slope.map(|s| c * s),
            domain_upper: self.domain_upper,
        }
    }
}

impl fmt::Debug for GeneratingFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GeneratingFunction")
            .field("name", &self.name)
            .field("params", &self.params)
            .field("normalized", &self.normalized)
            .field("recession_slope", &self.recession_slope)
            .field("domain_upper", &self.domain_upper)
            .finish()
    }
}

/// `u log u` with the continuous extension `0 log 0 = 0`.
pub(crate) fn xlogx(u: f64) -> f64 {
    if u == 0.0 {
        0.0
    } else {
        u * u.ln()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn restricted_domain_is_enforced() {
        let f = GeneratingFunction::new("sq", |u| (u - 1.0) * (u - 1.0)).restricted_to(2.0);
        assert_eq!(f.try_eval(2.0).unwrap(), 1.0);
        assert_eq!(f.try_eval(2.0 + 1e-14).unwrap(), 1.0);
        assert!(f.try_eval(2.1).is_err());
        assert!(f.try_eval(-0.1).is_err());
    }

    #[test]
    fn scaled_generator() {
        let f = GeneratingFunction::new("sq", |u| (u - 1.0) * (u - 1.0)).with_recession_slope(f64::INFINITY);
        let g = f.scaled(3.0);
        assert_eq!(g.eval(3.0), 12.0);
        assert_eq!(g.recession_slope(), Some(f64::INFINITY));
    }
}
