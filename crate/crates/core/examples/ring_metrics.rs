//! Histogram-JSD and mode coverage for real, collapsed and shifted samples.

use lagan::gan::{hist_jsd, mode_coverage};
use lagan::prob::{Grid2, RingSpec};

fn main() -> lagan::Result<()> {
    let ring = RingSpec::default();
    let grid = Grid2::square(1.5, 30);
    let centers = ring.centers();
    let reference = ring.sampler(0)?.sample(10_000);
    let real = ring.sampler(1)?.sample(10_000);
    let half: Vec<_> = real.iter().copied().filter(|p| p[1] >= -1e-9).collect::<Vec<_>>().repeat(2);
    let collapsed = vec![centers[0]; 10_000];
    for (name, s) in [("real", &real), ("upper half", &half), ("one point", &collapsed)] {
        let cov = mode_coverage(s, &centers, ring.sigma, 0.01, 3.0)?;
        println!("{name:<10} modes {cov}  hist_jsd {:.4}", hist_jsd(&reference, s, &grid)?);
    }
    Ok(())
}
