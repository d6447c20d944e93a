//! The logit-gradient penalty and its parameter gradient, exact and by differences.

use lagan::gan::{gradient_penalty, PenaltyMethod};
use lagan::nn::gradcheck::random_batch;
use lagan::nn::{Activation, Mlp};

fn main() -> lagan::Result<()> {
    let acts = [Activation::leaky_relu(), Activation::leaky_relu(), Activation::Sigmoid];
    let d = Mlp::init(&[2, 16, 16, 1], &acts, 3)?;
    let x = random_batch(32, 2, 4);
    let exact = gradient_penalty(&d, &x, 5.0, PenaltyMethod::Exact)?;
    let fd = gradient_penalty(&d, &x, 5.0, PenaltyMethod::FiniteDifference)?;
    let worst = exact
        .grads
        .flatten()
        .iter()
        .zip(fd.grads.flatten())
        .map(|(a, b)| (a - b).abs() / a.abs().max(b.abs()).max(1e-8))
        .fold(0.0, f64::max);
    println!("penalty {:.9}", exact.value);
    println!("{} parameters, worst relative gap exact vs differences {worst:.2e}", d.param_count());
    Ok(())
}
