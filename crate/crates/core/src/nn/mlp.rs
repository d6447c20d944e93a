use std::hash::{DefaultHasher, Hash, Hasher};

use ndarray::{Array1, Array2, Axis, Zip};
use rand_distr::{Distribution, Normal};

use super::activation::Activation;
use crate::error::{Error, Result};
use crate::prob::rng::rng_from_seed;

/// Dense layer `h ↦ a(h W + b)`; `weights` is `fan_in × fan_out`.
#[derive(Debug, Clone, PartialEq)]
pub struct Layer {
    pub weights: Array2<f64>,
    pub biases: Array1<f64>,
    pub activation: Activation,
}

impl Layer {
    pub fn fan_in(&self) -> usize {
        self.weights.nrows()
    }

    pub fn fan_out(&self) -> usize {
        self.weights.ncols()
    }
}

/// Feedforward network of dense layers.
#[derive(Debug, Clone, PartialEq)]
pub struct Mlp {
    layers: Vec<Layer>,
}

/// Parameter-shaped container for gradients and optimizer moments.
#[derive(Debug, Clone, PartialEq)]
pub struct Grads {
    pub weights: Vec<Array2<f64>>,
    pub biases: Vec<Array1<f64>>,
}

impl Grads {
    pub fn zeros_like(net: &Mlp) -> Self {
        Self {
            weights: net.layers.iter().map(|l| Array2::zeros(l.weights.raw_dim())).collect(),
            biases: net.layers.iter().map(|l| Array1::zeros(l.biases.raw_dim())).collect(),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.weights.iter().all(|w| w.iter().all(|x| x.is_finite()))
            && self.biases.iter().all(|b| b.iter().all(|x| x.is_finite()))
    }

    /// `self += c · other`.
    pub fn add_scaled(&mut self, other: &Grads, c: f64) {
        for (a, b) in self.weights.iter_mut().zip(&other.weights) {
            a.scaled_add(c, b);
        }
        for (a, b) in self.biases.iter_mut().zip(&other.biases) {
            a.scaled_add(c, b);
        }
    }

    /// Layer by layer: weights row-major, then biases.
    pub fn flatten(&self) -> Vec<f64> {
        let mut out = Vec::new();
        for (w, b) in self.weights.iter().zip(&self.biases) {
            out.extend(w.iter());
            out.extend(b.iter());
        }
        out
    }

    pub fn same_shape(&self, net: &Mlp) -> bool {
        self.weights.len() == net.layers.len()
            && net
                .layers
                .iter()
                .zip(self.weights.iter().zip(&self.biases))
                .all(|(l, (w, b))| w.dim() == l.weights.dim() && b.len() == l.biases.len())
    }
}

/// Intermediates of one forward pass.
#[derive(Debug, Clone)]
pub struct ForwardCache {
    /// Layer inputs `h_0 = x, h_1, …, h_{L−1}`.
    pub(crate) inputs: Vec<Array2<f64>>,
    /// Pre-activations `z_l`.
    pub(crate) pre: Vec<Array2<f64>>,
    /// `a'(z_l)`.
    pub(crate) slopes: Vec<Array2<f64>>,
    pub(crate) output: Array2<f64>,
}

impl ForwardCache {
    pub fn output(&self) -> &Array2<f64> {
        &self.output
    }

    pub fn into_output(self) -> Array2<f64> {
        self.output
    }

    /// Pre-activation of the output layer (the logit when it is a sigmoid).
    pub fn output_pre_activation(&self) -> &Array2<f64> {
        self.pre.last().expect("at least one layer")
    }

    pub fn batch_size(&self) -> usize {
        self.output.nrows()
    }
}

/// Gradients of a scalarized loss.
#[derive(Debug, Clone)]
pub struct Backward {
    pub params: Grads,
    pub input: Array2<f64>,
}

fn apply(act: Activation, z: &Array2<f64>) -> (Array2<f64>, Array2<f64>) {
    let mut h = Array2::zeros(z.raw_dim());
    let mut d = Array2::zeros(z.raw_dim());
    Zip::from(&mut h).and(&mut d).and(z).for_each(|h, d, &z| {
        let (a, da, _) = act.eval(z);
        *h = a;
        *d = da;
    });
    (h, d)
}

pub(crate) fn second_derivative(act: Activation, z: &Array2<f64>) -> Array2<f64> {
    z.mapv(|z| act.eval(z).2)
}

impl Mlp {
    /// Weights `N(0, 1/fan_in)`, biases zero.
    pub fn init(widths: &[usize], activations: &[Activation], seed: u64) -> Result<Self> {
        if widths.len() != activations.len() + 1 || activations.is_empty() {
            return Err(Error::Shape(format!(
                "{} widths need {} activations, got {}",
                widths.len(),
                widths.len().saturating_sub(1),
                activations.len()
            )));
        }
        if let Some(i) = widths.iter().position(|&w| w == 0) {
            return Err(Error::Shape(format!("width {i} is zero")));
        }
        let mut rng = rng_from_seed(seed);
        let layers = widths
            .windows(2)
            .zip(activations)
            .map(|(w, &activation)| {
                activation.validate()?;
                let normal = Normal::new(0.0, 1.0 / (w[0] as f64).sqrt()).expect("positive scale");
                let weights = Array2::from_shape_simple_fn((w[0], w[1]), || normal.sample(&mut rng));
                Ok(Layer {
                    weights,
                    biases: Array1::zeros(w[1]),
                    activation,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { layers })
    }

    pub fn from_layers(layers: Vec<Layer>) -> Result<Self> {
        if layers.is_empty() {
            return Err(Error::Shape("network needs at least one layer".into()));
        }
        for (i, l) in layers.iter().enumerate() {
            l.activation.validate()?;
            if l.biases.len() != l.fan_out() {
                return Err(Error::Shape(format!(
                    "layer {i}: {} biases for {} outputs",
                    l.biases.len(),
                    l.fan_out()
                )));
            }
            if i > 0 && layers[i - 1].fan_out() != l.fan_in() {
                return Err(Error::Shape(format!(
                    "layer {i} expects {} inputs but layer {} produces {}",
                    l.fan_in(),
                    i - 1,
                    layers[i - 1].fan_out()
                )));
            }
            if !l.weights.iter().chain(l.biases.iter()).all(|x| x.is_finite()) {
                return Err(Error::NonFinite(format!("layer {i} has non-finite parameters")));
            }
        }
        Ok(Self { layers })
    }

    pub fn layers(&self) -> &[Layer] {
        &self.layers
    }

    pub fn input_width(&self) -> usize {
        self.layers[0].fan_in()
    }

    pub fn output_width(&self) -> usize {
        self.layers.last().expect("non-empty").fan_out()
    }

    pub fn widths(&self) -> Vec<usize> {
        std::iter::once(self.input_width())
            .chain(self.layers.iter().map(|l| l.fan_out()))
            .collect()
    }

    pub fn param_count(&self) -> usize {
        self.layers.iter().map(|l| l.weights.len() + l.biases.len()).sum()
    }

    pub fn forward(&self, x: &Array2<f64>) -> Result<ForwardCache> {
        if x.ncols() != self.input_width() {
            return Err(Error::Shape(format!(
                "batch has width {} but the network expects {}",
                x.ncols(),
                self.input_width()
            )));
        }
        if !x.iter().all(|v| v.is_finite()) {
            return Err(Error::NonFinite("network input".into()));
        }
        let n = self.layers.len();
        let mut inputs = Vec::with_capacity(n);
        let mut pre = Vec::with_capacity(n);
        let mut slopes = Vec::with_capacity(n);
        let mut h = x.clone();
        for layer in &self.layers {
            let mut z = h.dot(&layer.weights);
            z += &layer.biases;
            let (next, d) = apply(layer.activation, &z);
            inputs.push(h);
            pre.push(z);
            slopes.push(d);
            h = next;
        }
        if !h.iter().all(|v| v.is_finite()) {
            return Err(Error::NonFinite("network output".into()));
        }
        Ok(ForwardCache {
            inputs,
            pre,
            slopes,
            output: h,
        })
    }

    pub fn predict(&self, x: &Array2<f64>) -> Result<Array2<f64>> {
        Ok(self.forward(x)?.output)
    }

    /// Reverse pass for the loss whose gradient with respect to the output is `grad_out`.
    pub fn backward(&self, cache: &ForwardCache, grad_out: &Array2<f64>) -> Result<Backward> {
        if cache.inputs.len() != self.layers.len()
            || grad_out.dim() != cache.output.dim()
            || cache.inputs.iter().zip(&self.layers).any(|(h, l)| h.ncols() != l.fan_in())
        {
            return Err(Error::Shape("cache does not match this network or output gradient".into()));
        }
        let mut gw = Vec::with_capacity(self.layers.len());
        let mut gb = Vec::with_capacity(self.layers.len());
        let mut upstream = grad_out.clone();
        for (l, layer) in self.layers.iter().enumerate().rev() {
            let dz = upstream * &cache.slopes[l];
            gw.push(cache.inputs[l].t().dot(&dz));
            gb.push(dz.sum_axis(Axis(0)));
            upstream = dz.dot(&layer.weights.t());
        }
        gw.reverse();
        gb.reverse();
        Ok(Backward {
            params: Grads {
                weights: gw,
                biases: gb,
            },
            input: upstream,
        })
    }

    /// `θ ← θ − step` for every parameter.
    pub fn apply_update(&mut self, step: &Grads) -> Result<()> {
        if !step.same_shape(self) {
            return Err(Error::Shape("update does not match network parameters".into()));
        }
        for (l, layer) in self.layers.iter_mut().enumerate() {
            layer.weights -= &step.weights[l];
            layer.biases -= &step.biases[l];
        }
        Ok(())
    }

    pub fn params_flat(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.param_count());
        for l in &self.layers {
            out.extend(l.weights.iter());
            out.extend(l.biases.iter());
        }
        out
    }

    pub fn set_params_flat(&mut self, flat: &[f64]) -> Result<()> {
        if flat.len() != self.param_count() {
            return Err(Error::Shape(format!(
                "{} values for {} parameters",
                flat.len(),
                self.param_count()
            )));
        }
        let mut it = flat.iter().copied();
        for l in &mut self.layers {
            l.weights.iter_mut().for_each(|w| *w = it.next().expect("counted"));
            l.biases.iter_mut().for_each(|b| *b = it.next().expect("counted"));
        }
        Ok(())
    }

    /// Hash of the exact parameter bits.
    pub fn fingerprint(&self) -> u64 {
        let mut h = DefaultHasher::new();
        for v in self.params_flat() {
            v.to_bits().hash(&mut h);
        }
        h.finish()
    }
}
