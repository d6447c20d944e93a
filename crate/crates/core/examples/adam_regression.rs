//! Fits a small tanh network to sin(3x) with hand-written backprop and Adam.

use lagan::nn::{Activation, AdamConfig, AdamState, Mlp};
use ndarray::Array2;

fn main() -> lagan::Result<()> {
    let x = Array2::from_shape_fn((64, 1), |(i, _)| -1.0 + 2.0 * i as f64 / 63.0);
    let y = x.mapv(|v| (3.0 * v).sin());
    let mut net = Mlp::init(&[1, 32, 32, 1], &[Activation::Tanh, Activation::Tanh, Activation::Identity], 0)?;
    let mut adam = AdamState::new(&net, AdamConfig { learning_rate: 1e-2, ..Default::default() })?;
    for step in 0..=2000 {
        let cache = net.forward(&x)?;
        let err = cache.output() - &y;
        let mse = err.mapv(|e| e * e).mean().unwrap_or(0.0);
        if step % 400 == 0 {
            println!("step {step:>4}  mse {mse:.3e}");
        }
        let grads = net.backward(&cache, &(err * (2.0 / x.nrows() as f64)))?.params;
        adam.step(&mut net, &grads)?;
    }
    Ok(())
}
