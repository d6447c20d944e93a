//! Every tabulated f-divergence between two random distributions, with its
//! Jensen counterpart and the symmetry check.

use lagan::divergence::{builtin_generator, f_divergence, jensen_f, symmetrize, Family};
use lagan::prob::FiniteDistribution;

fn main() -> lagan::Result<()> {
    let p = FiniteDistribution::random(6, 1)?;
    let q = FiniteDistribution::random(6, 2)?;
    println!("{:<18} {:>14} {:>14} {:>14}", "family", "D(p||q)", "J(p||q)", "D_sym(p||q)");
    for family in Family::zoo() {
        let f = builtin_generator(family)?;
        let d = f_divergence(&f, &p, &q)?;
        let j = jensen_f(&f, &p, &q)?;
        let sym = f_divergence(&symmetrize(&f)?, &p, &q)?;
        println!("{:<18} {d:>14.9} {j:>14.9} {sym:>14.9}", family.to_string());
    }
    Ok(())
}
