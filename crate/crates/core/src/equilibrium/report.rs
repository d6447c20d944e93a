use serde::Serialize;

/// Both sides below this magnitude switch the comparison to the absolute residual.
pub const NEAR_ZERO: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerance {
    pub relative: f64,
    pub absolute: f64,
}

impl Tolerance {
    /// `relative` with the absolute fallback `min(1e-12, relative)`.
    pub fn relative(relative: f64) -> Self {
        Self {
            relative,
            absolute: relative.min(1e-12),
        }
    }

    pub fn standard() -> Self {
        Self::relative(1e-9)
    }

    pub fn tight() -> Self {
        Self::relative(1e-12)
    }
}

/// Outcome of comparing two independently computed sides of an identity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IdentityReport {
    pub lhs: f64,
    pub rhs: f64,
    pub abs_residual: f64,
    pub rel_residual: f64,
    pub tolerance: Tolerance,
    /// Whether the absolute fallback decided the outcome.
    pub near_zero: bool,
    pub pass: bool,
}

impl IdentityReport {
    pub fn compare(lhs: f64, rhs: f64, tolerance: Tolerance) -> Self {
        let abs_residual = if lhs == rhs { 0.0 } else { (lhs - rhs).abs() };
        let scale = lhs.abs().max(rhs.abs());
        let rel_residual = if abs_residual == 0.0 { 0.0 } else { abs_residual / scale };
        let near_zero = scale < NEAR_ZERO;
        let pass = if near_zero {
            abs_residual <= tolerance.absolute
        } else {
            rel_residual <= tolerance.relative
        };
        Self {
            lhs,
            rhs,
            abs_residual,
            rel_residual,
            tolerance,
            near_zero,
            pass,
        }
    }

    /// The residual that decided `pass`.
    pub fn residual(&self) -> f64 {
        if self.near_zero {
            self.abs_residual
        } else {
            self.rel_residual
        }
    }
}
