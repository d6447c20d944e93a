//! Rényi divergence computed directly and through the Hellinger divergence.

use lagan::divergence::{builtin_generator, f_divergence, renyi_divergence, Family};
use lagan::prob::FiniteDistribution;

fn main() -> lagan::Result<()> {
    let p = FiniteDistribution::from_masses(vec![0.1, 0.2, 0.3, 0.4])?;
    let q = FiniteDistribution::uniform(4)?;
    for alpha in [0.5, 2.0, 5.0] {
        let direct = renyi_divergence(alpha, &p, &q)?;
        let h = f_divergence(&builtin_generator(Family::Hellinger { alpha })?, &p, &q)?;
        let via = (1.0 + (alpha - 1.0) * h).ln() / (alpha - 1.0);
        println!("alpha {alpha}: direct {direct:.15}  via hellinger {via:.15}  gap {:.1e}", (direct - via).abs());
    }
    Ok(())
}
