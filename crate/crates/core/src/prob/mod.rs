//! Finite-support distributions, planar mixture samplers and histogram estimates.

mod distribution;
mod histogram;
pub mod pmf;
pub mod rng;
mod sampler;

pub use distribution::{midpoint_mixture, normalize, random_distribution, FiniteDistribution, SUM_TOLERANCE};
pub use histogram::{histogram_estimate, Grid2, HISTOGRAM_SMOOTHING};
pub use sampler::{ring_sampler, Point2, Point2Sampler, RingSpec};
