//! Squared input-gradient norm of the discriminator logit, summed over a batch.

use ndarray::Array2;

use super::config::PenaltyMethod;
use crate::error::Result;
use crate::nn::{Grads, Mlp};

/// Step for the finite-difference variant, scaled by `max(1, |θ|)`.
pub const PENALTY_FD_STEP: f64 = 1e-4;

#[derive(Debug, Clone)]
pub struct GradientPenalty {
    /// `coefficient · Σ_r ‖∇_x logit(x_r)‖²`.
    pub value: f64,
    pub grads: Grads,
}

pub fn gradient_penalty(d: &Mlp, real: &Array2<f64>, coefficient: f64, method: PenaltyMethod) -> Result<GradientPenalty> {
    match method {
        PenaltyMethod::Exact => {
            let p = d.logit_gradient_penalty(real)?;
            let mut grads = Grads::zeros_like(d);
            grads.add_scaled(&p.grads, coefficient);
            Ok(GradientPenalty {
                value: coefficient * p.value,
                grads,
            })
        }
        PenaltyMethod::FiniteDifference => {
            let value = coefficient * d.logit_gradient_norm_sum(real)?;
            let theta = d.params_flat();
            let mut probe = d.clone();
            let mut shifted = theta.clone();
            let mut flat = Vec::with_capacity(theta.len());
            for (i, &t) in theta.iter().enumerate() {
                let h = PENALTY_FD_STEP * t.abs().max(1.0);
                shifted[i] = t + h;
                probe.set_params_flat(&shifted)?;
                let up = probe.logit_gradient_norm_sum(real)?;
                shifted[i] = t - h;
                probe.set_params_flat(&shifted)?;
                let down = probe.logit_gradient_norm_sum(real)?;
                shifted[i] = t;
                flat.push(coefficient * (up - down) / (2.0 * h));
            }
            probe.set_params_flat(&flat)?;
            let mut grads = Grads::zeros_like(d);
            for (i, layer) in probe.layers().iter().enumerate() {
                grads.weights[i].assign(&layer.weights);
                grads.biases[i].assign(&layer.biases);
            }
            Ok(GradientPenalty { value, grads })
        }
    }
}
