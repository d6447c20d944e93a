//! Trains a GAN on the 8-mode ring and prints the metric trajectory.
//!
//! cargo run --release --example train_ring -- [alpha_d alpha_g] [seed]

use lagan::gan::{train, LossScheme, TrainConfig};

fn main() -> lagan::Result<()> {
    let args: Vec<f64> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let (alpha_d, alpha_g) = match args.as_slice() {
        [d, g, ..] => (*d, *g),
        _ => (1.0, 1.0),
    };
    let seed = args.get(2).copied().unwrap_or(0.0) as u64;
    let cfg = TrainConfig {
        loss: LossScheme::AlphaGan { alpha_d, alpha_g },
        seed,
        ..Default::default()
    };
    let t = std::time::Instant::now();
    let rec = train(cfg)?;
    for e in rec.entries.iter().filter(|e| e.step % 500 == 0) {
        println!(
            "step {:>5}  d {:>9.5}  g {:>9.5}  jsd {:.4}  modes {}",
            e.step, e.d_loss, e.g_loss, e.hist_jsd, e.mode_coverage
        );
    }
    println!("collapsed: {}  skipped: {}  elapsed: {:.1?}", rec.collapsed, rec.skipped_steps, t.elapsed());
    Ok(())
}
