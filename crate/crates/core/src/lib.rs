//! Dual-objective GAN laboratory built around Jensen-f-divergences.

pub mod cli;
pub mod cpe;
pub mod divergence;
pub mod equilibrium;
pub mod error;
pub mod gan;
pub mod nn;
pub mod prob;

pub use error::{Error, Result};
