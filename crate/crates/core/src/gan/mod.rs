//! Alternating two-network training on planar mixtures.

mod config;
mod metrics;
mod objective;
mod penalty;
mod trainer;

pub use config::{
    EvalConfig, GeneratorObjective, LossScheme, NetworkConfig, PenaltyConfig, PenaltyMethod, TrainConfig, CONFIG_VERSION,
};
pub use metrics::{hist_jsd, mode_coverage, MIN_COVERAGE_SAMPLES};
pub use objective::{discriminator_objective, generator_objective, DiscriminatorObjective, GeneratorObjectiveValue};
pub use penalty::{gradient_penalty, GradientPenalty, PENALTY_FD_STEP};
pub use trainer::{sample_generator, train, write_points_csv, EvalEntry, StepResult, TrainRecord, Trainer};
