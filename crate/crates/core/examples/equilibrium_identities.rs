//! Generator values at the optimal discriminator against their divergence forms.

use lagan::cpe::{make_loss, LossFamily};
use lagan::equilibrium::{
    lemma2_identity, lemma4_corrected_identity, lemma4_identity, prop1_alpha_one_check, prop1_arimoto_identity,
    prop3_vajda_identity, theorem1_identity, IdentityReport, LkLabels,
};
use lagan::prob::FiniteDistribution;

fn show(name: &str, r: &IdentityReport) {
    println!(
        "{name:<28} lhs {:>16.12} rhs {:>16.12} residual {:.1e} {}",
        r.lhs,
        r.rhs,
        r.residual(),
        if r.pass { "ok" } else { "MISMATCH" }
    );
}

fn main() -> lagan::Result<()> {
    let p = FiniteDistribution::random(8, 10)?;
    let q = FiniteDistribution::random(8, 11)?;
    for family in [LossFamily::Vanilla, LossFamily::Alpha { alpha: 2.0 }, LossFamily::Slk { k: 7.5 }] {
        show(&format!("value vs jensen, {family}"), &theorem1_identity(&make_loss(family)?, None, &p, &q)?);
    }
    show("vanilla vs 2 JSD - 2 ln 2", &lemma2_identity(&p, &q)?);
    show("alpha=2 vs arimoto", &prop1_arimoto_identity(2.0, &p, &q)?);
    show("least squares vs vajda k=2", &prop3_vajda_identity(2.0, LkLabels::LSGAN, &p, &q)?);
    show("shifted k=2, printed const", &lemma4_identity(2.0, &p, &q)?);
    show("shifted k=2, derived const", &lemma4_corrected_identity(2.0, &p, &q)?);
    println!("alpha = 1: {}", prop1_alpha_one_check(&p, &q)?.summary());
    Ok(())
}
