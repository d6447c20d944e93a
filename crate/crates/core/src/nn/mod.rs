//! Dense networks with hand-written reverse mode, a double-backprop penalty
//! gradient, and Adam.

mod activation;
mod adam;
pub mod gradcheck;
mod mlp;
mod penalty;
mod snapshot;

pub use activation::{Activation, DEFAULT_LEAKY_SLOPE, SIGMOID_CLAMP};
pub use adam::{AdamConfig, AdamState, StepOutcome};
pub use mlp::{Backward, ForwardCache, Grads, Layer, Mlp};
pub use penalty::LogitPenalty;
pub use snapshot::{LayerRecord, MlpSnapshot, SNAPSHOT_FORMAT, SNAPSHOT_VERSION};
