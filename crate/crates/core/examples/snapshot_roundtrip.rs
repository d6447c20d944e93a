//! Trains briefly, saves both networks as JSON and reloads them.

use lagan::gan::{NetworkConfig, TrainConfig, Trainer};
use lagan::nn::Mlp;

fn main() -> lagan::Result<()> {
    let small = NetworkConfig {
        hidden: vec![16],
        ..Default::default()
    };
    let cfg = TrainConfig {
        steps: 50,
        batch_size: 64,
        generator: small.clone(),
        discriminator: small,
        ..Default::default()
    };
    let rec = Trainer::new(cfg)?.run()?;
    let dir = std::env::temp_dir();
    let path = dir.join("lagan_generator_example.json");
    rec.generator.save(&path)?;
    let back = Mlp::load(&path)?;
    println!("saved {} ({} parameters), identical after reload: {}", path.display(), back.param_count(), back == rec.generator);
    Ok(())
}
