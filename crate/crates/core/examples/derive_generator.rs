//! Generating functions induced by symmetric class-probability losses.

use lagan::cpe::{derive_generator, make_loss, LossFamily};

fn main() -> lagan::Result<()> {
    let families = [
        LossFamily::Vanilla,
        LossFamily::Alpha { alpha: 0.6 },
        LossFamily::Alpha { alpha: 2.0 },
        LossFamily::Slk { k: 2.0 },
        LossFamily::Slk { k: 7.5 },
        LossFamily::Alpha { alpha: 0.4 },
    ];
    for family in families {
        let loss = make_loss(family)?;
        match derive_generator(&loss, None) {
            Ok(d) => {
                let f: Vec<String> = [0.0, 0.5, 1.0, 1.5, 2.0]
                    .iter()
                    .map(|&u| format!("{:.6}", d.generator.eval(u)))
                    .collect();
                println!("{family:<10} a={:+.6} b={:.6} {:<8} f = [{}]", d.a, d.b, d.curvature.to_string(), f.join(", "));
            }
            Err(e) => println!("{family:<10} {e}"),
        }
    }
    Ok(())
}
