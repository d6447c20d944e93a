//! Runs a verification suite and tallies results per check.

use std::collections::BTreeMap;

use lagan::equilibrium::{run_suite, Suite, SuiteConfig};

fn main() -> lagan::Result<()> {
    let suite: Suite = std::env::args().nth(1).unwrap_or_else(|| "all".into()).parse()?;
    let records = run_suite(suite, SuiteConfig { seeds: 5, ..Default::default() })?;
    let mut tally: BTreeMap<&str, (usize, usize, f64)> = BTreeMap::new();
    for r in &records {
        let t = tally.entry(&r.check).or_default();
        t.0 += 1;
        t.1 += usize::from(r.pass);
        t.2 = t.2.max(r.residual.unwrap_or(0.0));
    }
    for (check, (n, ok, worst)) in tally {
        println!("{check:<18} {ok:>4}/{n:<4} worst residual {worst:.2e}");
    }
    Ok(())
}
