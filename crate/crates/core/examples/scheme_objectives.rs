//! Discriminator and generator objectives of the three training schemes on one batch.

use lagan::gan::{discriminator_objective, generator_objective, GeneratorObjective, LossScheme};
use ndarray::array;

fn main() -> lagan::Result<()> {
    let real = array![0.9, 0.7, 0.55, 0.8];
    let fake = array![0.2, 0.45, 0.1, 0.3];
    let schemes = [
        LossScheme::AlphaGan { alpha_d: 1.0, alpha_g: 1.0 },
        LossScheme::AlphaGan { alpha_d: 1.0, alpha_g: 5.0 },
        LossScheme::VanillaSlkgan { k: 2.0 },
        LossScheme::LkSlkgan { k: 2.0 },
    ];
    for s in schemes {
        let d = discriminator_objective(s, &real, &fake)?;
        let g = generator_objective(s, GeneratorObjective::NonSaturating, &fake)?;
        println!("{:<22} D objective {:.12}  G objective {:.12}", s.label(), d.value, g.value);
    }
    Ok(())
}
