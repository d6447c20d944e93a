//! Writes two PMF files, reads them back and compares them.

use lagan::divergence::formula;
use lagan::prob::pmf::{read_pmf, write_pmf};
use lagan::prob::FiniteDistribution;

fn main() -> lagan::Result<()> {
    let dir = std::env::temp_dir();
    let (a, b) = (dir.join("lagan_a.pmf"), dir.join("lagan_b.pmf"));
    write_pmf(&a, &FiniteDistribution::from_masses(vec![0.5, 0.5])?)?;
    write_pmf(&b, &FiniteDistribution::from_masses(vec![0.25, 0.75])?)?;
    let (p, q) = (read_pmf(&a)?.distribution, read_pmf(&b)?.distribution);
    println!("KL   {:.12}", formula::kl(p.masses(), q.masses())?);
    println!("JSD  {:.12}", formula::jsd(p.masses(), q.masses())?);
    println!("try: cargo run -- divergence kl {} {} --jensen", a.display(), b.display());
    Ok(())
}
