//! Plain-text PMF files: one nonnegative decimal mass per line.

use std::path::Path;

use super::distribution::FiniteDistribution;
use crate::error::{Error, Result};

/// Raw sums further than this from 1 are reported by the reader.
pub const PMF_SUM_WARNING: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq)]
pub struct PmfRead {
    pub distribution: FiniteDistribution,
    pub raw_sum: f64,
}

impl PmfRead {
    /// Whether the file's masses needed more than rounding-level renormalization.
    pub fn sum_deviates(&self) -> bool {
        (self.raw_sum - 1.0).abs() > PMF_SUM_WARNING
    }
}

pub fn parse_pmf(text: &str) -> Result<PmfRead> {
    let mut masses = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let v: f64 = line
            .parse()
            .map_err(|_| Error::Parse(format!("line {}: not a number: {line:?}", lineno + 1)))?;
        masses.push(v);
    }
    let raw_sum = masses.iter().sum();
    let distribution = FiniteDistribution::normalize(&masses)?;
    Ok(PmfRead { distribution, raw_sum })
}

pub fn read_pmf(path: impl AsRef<Path>) -> Result<PmfRead> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_pmf(&text)
}

pub fn format_pmf(d: &FiniteDistribution) -> String {
    d.masses().iter().map(|m| format!("{m}\n")).collect()
}

pub fn write_pmf(path: impl AsRef<Path>, d: &FiniteDistribution) -> Result<()> {
    std::fs::write(path, format_pmf(d))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_normalizes() {
        let r = parse_pmf("0.5\n0.5\n").unwrap();
        assert_eq!(r.distribution.masses(), &[0.5, 0.5]);
        assert!(!r.sum_deviates());

        let r = parse_pmf("1\n3\n\n").unwrap();
        assert_eq!(r.distribution.masses(), &[0.25, 0.75]);
        assert!(r.sum_deviates());
        assert_eq!(r.raw_sum, 4.0);
    }

    #[test]
    fn rejects_garbage_and_negatives() {
        assert!(matches!(parse_pmf("0.5\nabc\n"), Err(Error::Parse(_))));
        assert!(matches!(parse_pmf("0.5\n-0.5\n"), Err(Error::InvalidEntry { index: 1, .. })));
        assert!(parse_pmf("").is_err());
    }

    #[test]
    fn write_then_read() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("a.pmf");
        let d = FiniteDistribution::random(6, 1).unwrap();
        write_pmf(&path, &d).unwrap();
        let back = read_pmf(&path).unwrap();
        assert!(back.distribution.max_abs_diff(&d).unwrap() < 1e-15);
    }
}
