//! f-divergences on finite supports.
//!
//! [`GeneratingFunction`] wraps a convex `f` with its boundary metadata;
//! [`f_divergence`], [`jensen_f`] and [`renyi_divergence`] evaluate the
//! corresponding dissimilarities in nats. [`formula`] holds the closed-form
//! integrals used as references, and [`convexity_report`] certifies a
//! generator numerically.

mod builtin;
mod convexity;
pub mod formula;
mod generator;
mod ops;

pub use builtin::{
    alpha_loss_generator, builtin_generator, dual_alpha_generator, slk_generator, DivergenceSpec, Family,
};
pub use convexity::{
    classify_curvature, convexity_report, midpoint_gaps, ConvexityReport, Curvature, ProbeGrid, CURVATURE_TOLERANCE,
};
pub use generator::GeneratingFunction;
pub use ops::{f_divergence, f_divergence_raw, jensen_f, renyi_divergence, symmetrize};
