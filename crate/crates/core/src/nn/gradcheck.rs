//! Central-difference checks of the analytic gradients.

use ndarray::Array2;
use rand::Rng as _;
use rand_distr::{Distribution, StandardNormal};
use serde::Serialize;

use super::activation::Activation;
use super::mlp::{ForwardCache, Mlp};
use crate::error::Result;
use crate::prob::rng::{derive_seed, rng_from_seed};

/// Relative step `h = FD_STEP · max(1, |θ|)`.
pub const FD_STEP: f64 = 1e-4;

/// Resolution of the difference quotient relative to `max(1, |loss|)`; smaller
/// gradient entries are compared absolutely at this scale.
pub const FD_RESOLUTION: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GradCheck {
    pub max_param_error: f64,
    pub max_input_error: f64,
    pub params_checked: usize,
    pub inputs_checked: usize,
    /// Entries whose stencil crossed a kink of the network and were not compared.
    pub skipped: usize,
}

impl GradCheck {
    pub fn max_error(&self) -> f64 {
        self.max_param_error.max(self.max_input_error)
    }
}

/// `|a − n| / max(|a|, |n|, floor)`.
pub fn relative_error(analytic: f64, numeric: f64, floor: f64) -> f64 {
    (analytic - numeric).abs() / analytic.abs().max(numeric.abs()).max(floor)
}

/// Which side of every kink each unit sits on: leaky-ReLU sign and sigmoid clamp.
fn kink_pattern(net: &Mlp, cache: &ForwardCache) -> Vec<bool> {
    let mut bits = Vec::new();
    for (layer, (z, d)) in net.layers().iter().zip(cache.pre.iter().zip(&cache.slopes)) {
        match layer.activation {
            Activation::LeakyRelu { .. } => bits.extend(z.iter().map(|&v| v > 0.0)),
            Activation::Sigmoid => bits.extend(d.iter().map(|&v| v == 0.0)),
            Activation::Tanh | Activation::Identity => {}
        }
    }
    bits
}

struct Probe {
    value: f64,
    pattern: Vec<bool>,
}

/// Fourth-order central difference of `g` at `t` and the comparison floor, or
/// `None` when the stencil straddles a kink.
fn central_difference(t: f64, mut g: impl FnMut(f64) -> Result<Probe>) -> Result<Option<(f64, f64)>> {
    let h = FD_STEP * t.abs().max(1.0);
    let probes = [g(t - 2.0 * h)?, g(t - h)?, g(t + h)?, g(t + 2.0 * h)?];
    if probes.iter().any(|p| p.pattern != probes[0].pattern) {
        return Ok(None);
    }
    let [m2, m1, p1, p2] = probes.map(|p| p.value);
    let slope = (m2 - 8.0 * m1 + 8.0 * p1 - p2) / (12.0 * h);
    let scale = [m2, m1, p1, p2].iter().fold(1.0f64, |a, v| a.max(v.abs()));
    Ok(Some((slope, FD_RESOLUTION * scale)))
}

fn scalar_loss(net: &Mlp, x: &Array2<f64>, weights: &Array2<f64>) -> Result<Probe> {
    let cache = net.forward(x)?;
    Ok(Probe {
        value: (cache.output() * weights).sum(),
        pattern: kink_pattern(net, &cache),
    })
}

/// Compares reverse-mode gradients of `Σ c ⊙ net(x)` with central differences,
/// over every parameter and every input entry.
pub fn check_gradients(net: &Mlp, x: &Array2<f64>, c: &Array2<f64>) -> Result<GradCheck> {
    let cache = net.forward(x)?;
    let back = net.backward(&cache, c)?;
    let analytic = back.params.flatten();
    let theta = net.params_flat();
    let mut probe = net.clone();
    let mut shifted = theta.clone();
    let mut skipped = 0;
    let mut max_param_error: f64 = 0.0;
    for (i, &t) in theta.iter().enumerate() {
        let fd = central_difference(t, |v| {
            shifted[i] = v;
            probe.set_params_flat(&shifted)?;
            scalar_loss(&probe, x, c)
        })?;
        shifted[i] = t;
        match fd {
            Some((numeric, floor)) => max_param_error = max_param_error.max(relative_error(analytic[i], numeric, floor)),
            None => skipped += 1,
        }
    }
    let mut max_input_error: f64 = 0.0;
    let mut xs = x.clone();
    for (idx, &v) in x.indexed_iter() {
        let fd = central_difference(v, |s| {
            xs[idx] = s;
            scalar_loss(net, &xs, c)
        })?;
        xs[idx] = v;
        match fd {
            Some((numeric, floor)) => max_input_error = max_input_error.max(relative_error(back.input[idx], numeric, floor)),
            None => skipped += 1,
        }
    }
    Ok(GradCheck {
        max_param_error,
        max_input_error,
        params_checked: theta.len(),
        inputs_checked: x.len(),
        skipped,
    })
}

/// Checks the logit input gradient used by the penalty against central
/// differences on `x`; entries whose stencil crosses a kink are skipped.
pub fn check_logit_input_gradient(net: &Mlp, x: &Array2<f64>) -> Result<f64> {
    let g = net.logit_input_gradient(x)?;
    let mut worst: f64 = 0.0;
    let mut xs = x.clone();
    for (idx, &v) in x.indexed_iter() {
        let fd = central_difference(v, |s| {
            xs[idx] = s;
            let cache = net.forward(&xs)?;
            Ok(Probe {
                value: cache.output_pre_activation()[[idx.0, 0]],
                pattern: kink_pattern(net, &cache),
            })
        })?;
        xs[idx] = v;
        if let Some((numeric, floor)) = fd {
            worst = worst.max(relative_error(g[idx], numeric, floor));
        }
    }
    Ok(worst)
}

/// A random toy network with widths at most `[8, 16, 8, 1]` and mixed activations.
pub fn random_toy_net(seed: u64) -> Result<Mlp> {
    let mut rng = rng_from_seed(derive_seed(seed, 0));
    let depth = rng.random_range(1..=3);
    let mut widths = vec![rng.random_range(1..=8)];
    let caps = [16, 8];
    for cap in caps.iter().take(depth - 1) {
        widths.push(rng.random_range(2..=*cap));
    }
    widths.push(1);
    let hidden = [Activation::Tanh, Activation::leaky_relu(), Activation::Sigmoid, Activation::Identity];
    let mut acts: Vec<Activation> = (0..depth - 1).map(|_| hidden[rng.random_range(0..hidden.len())]).collect();
    acts.push(Activation::Sigmoid);
    Mlp::init(&widths, &acts, derive_seed(seed, 1))
}

/// Standard-normal batch.
pub fn random_batch(rows: usize, cols: usize, seed: u64) -> Array2<f64> {
    let mut rng = rng_from_seed(seed);
    Array2::from_shape_simple_fn((rows, cols), || StandardNormal.sample(&mut rng))
}

/// Runs [`check_gradients`] and [`check_logit_input_gradient`] on `nets` random toy networks.
pub fn toy_gradient_survey(nets: usize, seed: u64) -> Result<Vec<(GradCheck, f64)>> {
    (0..nets as u64)
        .map(|i| {
            let s = derive_seed(seed, i);
            let net = random_toy_net(s)?;
            let x = random_batch(4, net.input_width(), derive_seed(s, 2));
            let c = random_batch(4, net.output_width(), derive_seed(s, 3));
            Ok((check_gradients(&net, &x, &c)?, check_logit_input_gradient(&net, &x)?))
        })
        .collect()
}
