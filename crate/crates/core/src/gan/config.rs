use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::nn::{Activation, AdamConfig};
use crate::prob::{Grid2, RingSpec};

pub const CONFIG_VERSION: u32 = 1;

/// Discriminator/generator objective pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "scheme", rename_all = "snake_case", deny_unknown_fields)]
pub enum LossScheme {
    /// α-loss discriminator with `α_D`, α-loss generator with `α_G`.
    AlphaGan { alpha_d: f64, alpha_g: f64 },
    /// Least-squares discriminator (labels 1 real, 0 fake), shifted order-`k` generator.
    LkSlkgan { k: f64 },
    /// Cross-entropy discriminator, shifted order-`k` generator.
    VanillaSlkgan { k: f64 },
}

impl LossScheme {
    pub fn validate(&self) -> Result<()> {
        let check = |name: &str, v: f64| {
            if v > 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(Error::InvalidParameter(format!("{name} must satisfy {name} > 0, got {v}")))
            }
        };
        match *self {
            LossScheme::AlphaGan { alpha_d, alpha_g } => {
                check("alpha_d", alpha_d)?;
                check("alpha_g", alpha_g)
            }
            LossScheme::LkSlkgan { k } | LossScheme::VanillaSlkgan { k } => check("k", k),
        }
    }

    pub fn label(&self) -> String {
        match self {
            LossScheme::AlphaGan { alpha_d, alpha_g } => format!("({alpha_d},{alpha_g})-GAN"),
            LossScheme::LkSlkgan { k } => format!("Lk-SLkGAN k={k}"),
            LossScheme::VanillaSlkgan { k } => format!("Vanilla-SLkGAN k={k}"),
        }
    }
}

/// How the α-loss generator objective is oriented.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GeneratorObjective {
    /// Descend `ℓ_{α_G}(1, D(G(z)))`.
    #[default]
    NonSaturating,
    /// Descend `−ℓ_{α_G}(0, D(G(z)))`.
    Saturating,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PenaltyMethod {
    /// Forward-over-reverse second derivatives.
    #[default]
    Exact,
    /// Central differences over every discriminator parameter.
    FiniteDifference,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PenaltyConfig {
    pub enabled: bool,
    pub coefficient: f64,
    pub method: PenaltyMethod,
}

impl Default for PenaltyConfig {
    fn default() -> Self {
        Self {
            enabled: false,
            coefficient: 5.0,
            method: PenaltyMethod::Exact,
        }
    }
}

impl PenaltyConfig {
    /// Coefficient actually applied; zero when disabled.
    pub fn active_coefficient(&self) -> f64 {
        if self.enabled {
            self.coefficient
        } else {
            0.0
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NetworkConfig {
    pub hidden: Vec<usize>,
    pub activation: Activation,
}

impl Default for NetworkConfig {
    fn default() -> Self {
        Self {
            hidden: vec![64, 64],
            activation: Activation::leaky_relu(),
        }
    }
}

impl NetworkConfig {
    pub fn widths(&self, input: usize, output: usize) -> Vec<usize> {
        std::iter::once(input)
            .chain(self.hidden.iter().copied())
            .chain(std::iter::once(output))
            .collect()
    }

    pub fn activations(&self, output: Activation) -> Vec<Activation> {
        let mut v = vec![self.activation; self.hidden.len()];
        v.push(output);
        v
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EvalConfig {
    /// Evaluate after every `every` steps and after the last one.
    pub every: usize,
    pub samples: usize,
    pub grid: Grid2,
    /// A mode is covered when at least this fraction of samples lies near it.
    pub coverage_fraction: f64,
    /// "Near" means within this many standard deviations of the center.
    pub coverage_sigmas: f64,
}

impl Default for EvalConfig {
    fn default() -> Self {
        Self {
            every: 100,
            samples: 10_000,
            grid: Grid2::square(1.5, 30),
            coverage_fraction: 0.01,
            coverage_sigmas: 3.0,
        }
    }
}

/// Complete description of one training run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TrainConfig {
    pub version: u32,
    pub loss: LossScheme,
    pub generator_objective: GeneratorObjective,
    pub penalty: PenaltyConfig,
    /// Number of alternating iterations.
    pub steps: usize,
    pub batch_size: usize,
    pub d_steps_per_g_step: usize,
    pub adam: AdamConfig,
    pub noise_dim: usize,
    pub data: RingSpec,
    pub generator: NetworkConfig,
    pub discriminator: NetworkConfig,
    pub seed: u64,
    pub eval: EvalConfig,
    /// Consecutive iterations with a skipped non-finite step that mark a trial as collapsed.
    pub collapse_after: usize,
    /// Write elapsed milliseconds into the metric CSV; zeros keep files reproducible.
    pub record_wall_clock: bool,
}

impl Default for TrainConfig {
    fn default() -> Self {
        Self {
            version: CONFIG_VERSION,
            loss: LossScheme::AlphaGan {
                alpha_d: 1.0,
                alpha_g: 1.0,
            },
            generator_objective: GeneratorObjective::default(),
            penalty: PenaltyConfig::default(),
            steps: 5000,
            batch_size: 256,
            d_steps_per_g_step: 1,
            adam: AdamConfig::default(),
            noise_dim: 8,
            data: RingSpec::default(),
            generator: NetworkConfig::default(),
            discriminator: NetworkConfig::default(),
            seed: 0,
            eval: EvalConfig::default(),
            collapse_after: 50,
            record_wall_clock: false,
        }
    }
}

impl TrainConfig {
    pub fn validate(&self) -> Result<()> {
        if self.version != CONFIG_VERSION {
            return Err(Error::InvalidParameter(format!(
                "config version {} is not supported (expected {CONFIG_VERSION})",
                self.version
            )));
        }
        self.loss.validate()?;
        self.adam.validate()?;
        self.data.validate()?;
        self.eval.grid.validate()?;
        let positive = [
            ("steps", self.steps),
            ("batch_size", self.batch_size),
            ("d_steps_per_g_step", self.d_steps_per_g_step),
            ("noise_dim", self.noise_dim),
            ("eval.every", self.eval.every),
            ("collapse_after", self.collapse_after),
        ];
        for (name, v) in positive {
            if v == 0 {
                return Err(Error::InvalidParameter(format!("{name} must be >= 1")));
            }
        }
        if self.eval.samples < super::metrics::MIN_COVERAGE_SAMPLES {
            return Err(Error::InvalidParameter(format!(
                "eval.samples must be >= {}",
                super::metrics::MIN_COVERAGE_SAMPLES
            )));
        }
        if !(self.penalty.coefficient >= 0.0 && self.penalty.coefficient.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "penalty coefficient must be >= 0, got {}",
                self.penalty.coefficient
            )));
        }
        if !(self.eval.coverage_fraction > 0.0 && self.eval.coverage_fraction <= 1.0 && self.eval.coverage_sigmas > 0.0) {
            return Err(Error::InvalidParameter("coverage thresholds must be positive".into()));
        }
        for net in [&self.generator, &self.discriminator] {
            net.activation.validate()?;
            if net.hidden.contains(&0) {
                return Err(Error::InvalidParameter("hidden widths must be >= 1".into()));
            }
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: Self = serde_json::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_json_pretty(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }
}
