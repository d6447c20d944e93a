//! Input-gradient norms of the output logit and their parameter gradients.
//!
//! The parameter gradient of `P = Σ_r ‖∇_x z(x_r)‖²` is `2 ∂S/∂θ` where
//! `S = Σ_r ⟨v_r, ∇_x z(x_r)⟩` with `v = ∇_x z` held fixed; `S` is a forward
//! tangent of the network along `v`, so one tangent pass and one reverse pass
//! over primal and tangent give the exact gradient.

use ndarray::{Array2, Axis};

use super::activation::Activation;
use super::mlp::{second_derivative, ForwardCache, Grads, Mlp};
use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct LogitPenalty {
    /// `Σ_r ‖∇_x z(x_r)‖²` without any coefficient.
    pub value: f64,
    pub grads: Grads,
    /// Per-row input gradients `∇_x z(x_r)`.
    pub input_gradients: Array2<f64>,
}

impl Mlp {
    fn require_scalar_output(&self) -> Result<()> {
        if self.output_width() != 1 {
            return Err(Error::Shape(format!(
                "logit gradients need a single output, network has {}",
                self.output_width()
            )));
        }
        Ok(())
    }

    // A saturated output sigmoid makes the clamped logit locally constant.
    fn live_rows(&self, cache: &ForwardCache) -> Array2<f64> {
        let last = self.layers().len() - 1;
        let slopes = &cache.slopes[last];
        match self.layers()[last].activation {
            Activation::Sigmoid => slopes.mapv(|d| if d == 0.0 { 0.0 } else { 1.0 }),
            _ => Array2::ones(slopes.raw_dim()),
        }
    }

    fn logit_gradient_from(&self, cache: &ForwardCache, live: &Array2<f64>) -> Array2<f64> {
        let layers = self.layers();
        let mut dz = live.clone();
        for i in (0..layers.len()).rev() {
            let dh = dz.dot(&layers[i].weights.t());
            if i == 0 {
                return dh;
            }
            dz = dh * &cache.slopes[i - 1];
        }
        unreachable!("at least one layer")
    }

    /// `∇_x z(x_r)` for each row, `z` the output pre-activation.
    pub fn logit_input_gradient(&self, x: &Array2<f64>) -> Result<Array2<f64>> {
        self.require_scalar_output()?;
        let cache = self.forward(x)?;
        Ok(self.logit_gradient_from(&cache, &self.live_rows(&cache)))
    }

    /// `Σ_r ‖∇_x z(x_r)‖²` only.
    pub fn logit_gradient_norm_sum(&self, x: &Array2<f64>) -> Result<f64> {
        Ok(self.logit_input_gradient(x)?.iter().map(|g| g * g).sum())
    }

    /// `Σ_r ‖∇_x z(x_r)‖²` and its exact parameter gradient.
    pub fn logit_gradient_penalty(&self, x: &Array2<f64>) -> Result<LogitPenalty> {
        self.require_scalar_output()?;
        let cache = self.forward(x)?;
        let layers = self.layers();
        let n = layers.len();
        let live = self.live_rows(&cache);
        let v = self.logit_gradient_from(&cache, &live);
        let value = v.iter().map(|g| g * g).sum();

        // tangent pass along v
        let mut hdots = Vec::with_capacity(n);
        let mut zdots = Vec::with_capacity(n);
        let mut hdot = v.clone();
        for (i, layer) in layers.iter().enumerate() {
            let zdot = hdot.dot(&layer.weights);
            let next = &zdot * &cache.slopes[i];
            hdots.push(hdot);
            zdots.push(zdot);
            hdot = next;
        }

        // reverse pass of S = Σ live ⊙ ż_L
        let mut gw = vec![Array2::zeros((0, 0)); n];
        let mut gb = vec![ndarray::Array1::zeros(0); n];
        let mut zdot_bar = live;
        let mut z_bar = Array2::<f64>::zeros(zdot_bar.raw_dim());
        for i in (0..n).rev() {
            let mut w = hdots[i].t().dot(&zdot_bar);
            w += &cache.inputs[i].t().dot(&z_bar);
            gw[i] = w * 2.0;
            gb[i] = z_bar.sum_axis(Axis(0)) * 2.0;
            if i > 0 {
                let hdot_bar = zdot_bar.dot(&layers[i].weights.t());
                let h_bar = z_bar.dot(&layers[i].weights.t());
                let a2 = second_derivative(layers[i - 1].activation, &cache.pre[i - 1]);
                let slopes = &cache.slopes[i - 1];
                z_bar = &h_bar * slopes + &(&hdot_bar * &a2) * &zdots[i - 1];
                zdot_bar = hdot_bar * slopes;
            }
        }
        Ok(LogitPenalty {
            value,
            grads: Grads {
                weights: gw,
                biases: gb,
            },
            input_gradients: v,
        })
    }
}
