//! Class-probability-estimation losses and the generators they induce.

mod derive;
mod loss;

pub use derive::{derive_generator, DerivedGenerator, LossCurvature, NORMALIZATION_TOLERANCE};
pub use loss::{
    check_symmetry, make_loss, CpeLoss, Label, LossFamily, PREDICTION_CLAMP, SYMMETRY_PROBES, SYMMETRY_TOLERANCE,
};
