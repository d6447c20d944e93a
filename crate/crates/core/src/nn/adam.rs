use ndarray::Zip;
use serde::{Deserialize, Serialize};

use super::mlp::{Grads, Mlp};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AdamConfig {
    pub learning_rate: f64,
    pub beta1: f64,
    pub beta2: f64,
    pub epsilon: f64,
}

impl Default for AdamConfig {
    fn default() -> Self {
        Self {
            learning_rate: 2e-4,
            beta1: 0.5,
            beta2: 0.999,
            epsilon: 1e-7,
        }
    }
}

impl AdamConfig {
    pub fn validate(&self) -> Result<()> {
        let ok = self.learning_rate > 0.0
            && self.learning_rate.is_finite()
            && (0.0..1.0).contains(&self.beta1)
            && (0.0..1.0).contains(&self.beta2)
            && self.epsilon > 0.0;
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!(
                "adam needs learning_rate > 0, betas in [0, 1), epsilon > 0; got {self:?}"
            )))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepOutcome {
    Applied,
    /// The gradient held a non-finite entry; nothing changed.
    SkippedNonFinite,
}

/// Bias-corrected Adam moments for one network.
#[derive(Debug, Clone, PartialEq)]
pub struct AdamState {
    pub config: AdamConfig,
    m: Grads,
    v: Grads,
    t: u64,
}

impl AdamState {
    pub fn new(net: &Mlp, config: AdamConfig) -> Result<Self> {
        config.validate()?;
        Ok(Self {
            config,
            m: Grads::zeros_like(net),
            v: Grads::zeros_like(net),
            t: 0,
        })
    }

    pub fn steps(&self) -> u64 {
        self.t
    }

    pub fn step(&mut self, net: &mut Mlp, grads: &Grads) -> Result<StepOutcome> {
        if !grads.same_shape(net) || !self.m.same_shape(net) {
            return Err(Error::Shape("gradient does not match network parameters".into()));
        }
        if !grads.is_finite() {
            return Ok(StepOutcome::SkippedNonFinite);
        }
        self.t += 1;
        let AdamConfig {
            learning_rate,
            beta1,
            beta2,
            epsilon,
        } = self.config;
        let c1 = 1.0 - beta1.powi(self.t as i32);
        let c2 = 1.0 - beta2.powi(self.t as i32);
        let mut update = Grads::zeros_like(net);
        let moments = |m: &mut f64, v: &mut f64, u: &mut f64, g: f64| {
            *m = beta1 * *m + (1.0 - beta1) * g;
            *v = beta2 * *v + (1.0 - beta2) * g * g;
            *u = learning_rate * (*m / c1) / ((*v / c2).sqrt() + epsilon);
        };
        for l in 0..grads.weights.len() {
            Zip::from(&mut self.m.weights[l])
                .and(&mut self.v.weights[l])
                .and(&mut update.weights[l])
                .and(&grads.weights[l])
                .for_each(|m, v, u, &g| moments(m, v, u, g));
            Zip::from(&mut self.m.biases[l])
                .and(&mut self.v.biases[l])
                .and(&mut update.biases[l])
                .and(&grads.biases[l])
                .for_each(|m, v, u, &g| moments(m, v, u, g));
        }
        net.apply_update(&update)?;
        Ok(StepOutcome::Applied)
    }
}
