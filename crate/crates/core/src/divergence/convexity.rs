//! Numerical convexity certificates on a probe grid.

use serde::Serialize;

use super::generator::GeneratingFunction;

/// Second differences of magnitude below this count as zero.
pub const CURVATURE_TOLERANCE: f64 = 1e-9;

/// Half-widths used to test strict convexity around 1.
pub const STRICTNESS_PROBES: [f64; 2] = [1e-2, 1e-1];

/// A midpoint gap must exceed this to count as strictly positive.
const STRICT_GAP_FLOOR: f64 = 1e-12;

/// Equally spaced probe points `start, start + step, …, end`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProbeGrid {
    pub start: f64,
    pub end: f64,
    pub step: f64,
}

impl ProbeGrid {
    pub const fn new(start: f64, end: f64, step: f64) -> Self {
        Self { start, end, step }
    }

    /// `[0, 4]` with step `1e-3`.
    pub const fn standard() -> Self {
        Self::new(0.0, 4.0, 1e-3)
    }

    /// `[0, 2]` with step `1e-3`, enough for generators entering Jensen-f-divergences.
    pub const fn jensen() -> Self {
        Self::new(0.0, 2.0, 1e-3)
    }

    pub fn points(&self) -> Vec<f64> {
        assert!(self.step > 0.0 && self.start >= 0.0 && self.end >= self.start, "invalid probe grid {self:?}");
        let n = ((self.end - self.start) / self.step).round() as usize;
        (0..=n).map(|i| self.start + i as f64 * self.step).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvexityReport {
    pub convex: bool,
    pub strict_at_1: bool,
    /// Most negative scale-adjusted second difference seen (0 when none is negative).
    pub worst_second_difference: f64,
    pub worst_at: Option<f64>,
    /// Probe points where the evaluator returned a non-finite value.
    pub non_finite_at: Vec<f64>,
}

fn second_differences(g: &dyn Fn(f64) -> f64, grid: &ProbeGrid) -> (Vec<(f64, f64)>, Vec<f64>) {
    let xs = grid.points();
    let ys: Vec<f64> = xs.iter().map(|&x| g(x)).collect();
    let non_finite = xs
        .iter()
        .zip(&ys)
        .filter(|(_, y)| !y.is_finite())
        .map(|(&x, _)| x)
        .collect();
    let diffs = (1..xs.len().saturating_sub(1))
        .filter(|&i| ys[i - 1].is_finite() && ys[i].is_finite() && ys[i + 1].is_finite())
        .map(|i| {
            let d = ys[i - 1] - 2.0 * ys[i] + ys[i + 1];
            // rounding in the three evaluations grows with their magnitude
            let scale = 1f64.max(ys[i].abs());
            (xs[i], d / scale)
        })
        .collect();
    (diffs, non_finite)
}

/// Midpoint gap `g(1−h)/2 + g(1+h)/2 − g(1)` for each strictness probe.
pub fn midpoint_gaps(g: &dyn Fn(f64) -> f64) -> [f64; 2] {
    STRICTNESS_PROBES.map(|h| 0.5 * g(1.0 - h) + 0.5 * g(1.0 + h) - g(1.0))
}

/// Convexity flags for `f` on `grid`; never mutates or rejects.
pub fn convexity_report(f: &GeneratingFunction, grid: &ProbeGrid) -> ConvexityReport {
    let grid = match f.domain_upper() {
        Some(upper) if grid.end > upper => ProbeGrid { end: upper, ..*grid },
        _ => *grid,
    };
    let eval = |u: f64| f.eval(u);
    let (diffs, non_finite_at) = second_differences(&eval, &grid);
    let (worst_at, worst) = diffs
        .iter()
        .copied()
        .fold((None, 0.0), |(at, w), (x, d)| if d < w { (Some(x), d) } else { (at, w) });
    let strict_at_1 = midpoint_gaps(&eval).iter().all(|&gap| gap > STRICT_GAP_FLOOR);
    ConvexityReport {
        convex: worst >= -CURVATURE_TOLERANCE,
        strict_at_1,
        worst_second_difference: worst,
        worst_at,
        non_finite_at,
    }
}

/// Shape of a real function on a probe grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Curvature {
    Convex,
    Concave,
    /// Every second difference within tolerance of zero.
    Affine,
    /// Second differences of both signs beyond tolerance; `worst_at` is the
    /// probe point carrying the largest minority-sign difference.
    Mixed { worst_at: f64, worst: f64 },
}

/// Classifies `g` as convex or concave on `grid`, treating second
/// differences below [`CURVATURE_TOLERANCE`] as zero.
pub fn classify_curvature(g: &dyn Fn(f64) -> f64, grid: &ProbeGrid) -> Curvature {
    let (diffs, non_finite) = second_differences(g, grid);
    if let Some(&x) = non_finite.first() {
        return Curvature::Mixed {
            worst_at: x,
            worst: f64::NAN,
        };
    }
    let pos: Vec<(f64, f64)> = diffs.iter().copied().filter(|&(_, d)| d > CURVATURE_TOLERANCE).collect();
    let neg: Vec<(f64, f64)> = diffs.iter().copied().filter(|&(_, d)| d < -CURVATURE_TOLERANCE).collect();
    match (pos.is_empty(), neg.is_empty()) {
        (true, true) => Curvature::Affine,
        (false, true) => Curvature::Convex,
        (true, false) => Curvature::Concave,
        (false, false) => {
            let minority = if pos.len() < neg.len() { &pos } else { &neg };
            let (worst_at, worst) = minority
                .iter()
                .copied()
                .max_by(|a, b| a.1.abs().total_cmp(&b.1.abs()))
                .expect("non-empty");
            Curvature::Mixed { worst_at, worst }
        }
    }
}
