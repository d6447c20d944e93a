use std::io::Write;
use std::path::Path;
use std::time::Instant;

use ndarray::{Array1, Array2, Axis};
use rand_distr::{Distribution, StandardNormal};
use serde::Serialize;

use super::config::TrainConfig;
use super::metrics::{hist_jsd, mode_coverage};
use super::objective::{discriminator_objective, generator_objective};
use super::penalty::gradient_penalty;
use crate::error::{Error, Result};
use crate::nn::{Activation, AdamState, Grads, Mlp, StepOutcome};
use crate::prob::rng::{derive_seed, rng_from_seed, Rng};
use crate::prob::{Point2, Point2Sampler};

const STREAM_G_INIT: u64 = 0;
const STREAM_D_INIT: u64 = 1;
const STREAM_DATA: u64 = 2;
const STREAM_NOISE: u64 = 3;
const STREAM_EVAL_NOISE: u64 = 4;
const STREAM_EVAL_DATA: u64 = 5;
const STREAM_DUMP: u64 = 6;

/// One row of the metric CSV.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EvalEntry {
    pub step: usize,
    pub d_loss: f64,
    pub g_loss: f64,
    pub hist_jsd: f64,
    pub mode_coverage: usize,
    pub wall_ms: u64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepResult {
    /// Objective value before the update, without the penalty term.
    pub loss: f64,
    pub applied: bool,
}

impl StepResult {
    fn skipped(loss: f64) -> Self {
        Self { loss, applied: false }
    }
}

#[derive(Debug, Clone)]
pub struct TrainRecord {
    pub entries: Vec<EvalEntry>,
    pub collapsed: bool,
    pub steps_completed: usize,
    pub skipped_steps: usize,
    pub generator: Mlp,
    pub discriminator: Mlp,
}

impl TrainRecord {
    pub fn final_entry(&self) -> Option<&EvalEntry> {
        self.entries.last()
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        if self.entries.is_empty() {
            w.write_record(["step", "d_loss", "g_loss", "hist_jsd", "mode_coverage", "wall_ms"])?;
        }
        for e in &self.entries {
            w.serialize(e)?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn save_csv(&self, path: impl AsRef<Path>) -> Result<()> {
        self.write_csv(std::fs::File::create(path)?)
    }
}

pub fn write_points_csv<W: Write>(points: &[Point2], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["x", "y"])?;
    for p in points {
        w.serialize(p)?;
    }
    w.flush()?;
    Ok(())
}

/// Owns both networks, their optimizers and every random stream of one trial.
#[derive(Debug, Clone)]
pub struct Trainer {
    config: TrainConfig,
    generator: Mlp,
    discriminator: Mlp,
    g_opt: AdamState,
    d_opt: AdamState,
    data: Point2Sampler,
    eval_data: Point2Sampler,
    noise: Rng,
    eval_noise: Rng,
    centers: Vec<Point2>,
    consecutive_skips: usize,
    skipped_steps: usize,
}

fn gaussian(rows: usize, cols: usize, rng: &mut Rng) -> Array2<f64> {
    Array2::from_shape_simple_fn((rows, cols), || StandardNormal.sample(rng))
}

fn to_matrix(points: &[Point2]) -> Array2<f64> {
    Array2::from_shape_fn((points.len(), 2), |(r, c)| points[r][c])
}

fn column(v: Array1<f64>) -> Array2<f64> {
    v.insert_axis(Axis(1))
}

impl Trainer {
    pub fn new(config: TrainConfig) -> Result<Self> {
        config.validate()?;
        let s = config.seed;
        let g_widths = config.generator.widths(config.noise_dim, 2);
        let d_widths = config.discriminator.widths(2, 1);
        let generator = Mlp::init(
            &g_widths,
            &config.generator.activations(Activation::Identity),
            derive_seed(s, STREAM_G_INIT),
        )?;
        let discriminator = Mlp::init(
            &d_widths,
            &config.discriminator.activations(Activation::Sigmoid),
            derive_seed(s, STREAM_D_INIT),
        )?;
        Ok(Self {
            g_opt: AdamState::new(&generator, config.adam)?,
            d_opt: AdamState::new(&discriminator, config.adam)?,
            data: config.data.sampler(derive_seed(s, STREAM_DATA))?,
            eval_data: config.data.sampler(derive_seed(s, STREAM_EVAL_DATA))?,
            noise: rng_from_seed(derive_seed(s, STREAM_NOISE)),
            eval_noise: rng_from_seed(derive_seed(s, STREAM_EVAL_NOISE)),
            centers: config.data.centers(),
            generator,
            discriminator,
            config,
            consecutive_skips: 0,
            skipped_steps: 0,
        })
    }

    pub fn config(&self) -> &TrainConfig {
        &self.config
    }

    pub fn generator(&self) -> &Mlp {
        &self.generator
    }

    pub fn discriminator(&self) -> &Mlp {
        &self.discriminator
    }

    /// Fresh real batch and noise batch of the configured size.
    pub fn sample_batches(&mut self) -> (Array2<f64>, Array2<f64>) {
        let b = self.config.batch_size;
        let real = to_matrix(&self.data.sample(b));
        let z = gaussian(b, self.config.noise_dim, &mut self.noise);
        (real, z)
    }

    /// One Adam step on the discriminator; the generator is only evaluated.
    pub fn discriminator_step(&mut self, real: &Array2<f64>, z: &Array2<f64>) -> Result<StepResult> {
        if real.nrows() != z.nrows() {
            return Err(Error::Shape(format!("real batch {} vs noise batch {}", real.nrows(), z.nrows())));
        }
        let fake = match self.generator.predict(z) {
            Err(Error::NonFinite(_)) => return Ok(self.record_skip(f64::NAN)),
            other => other?,
        };
        let (rc, fc) = match (self.discriminator.forward(real), self.discriminator.forward(&fake)) {
            (Ok(r), Ok(f)) => (r, f),
            (Err(Error::NonFinite(_)), _) | (_, Err(Error::NonFinite(_))) => return Ok(self.record_skip(f64::NAN)),
            (Err(e), _) | (_, Err(e)) => return Err(e),
        };
        let obj = discriminator_objective(
            self.config.loss,
            &rc.output().column(0).to_owned(),
            &fc.output().column(0).to_owned(),
        )?;
        if !obj.value.is_finite() {
            return Ok(self.record_skip(obj.value));
        }
        let mut grads = self.discriminator.backward(&rc, &column(obj.d_real))?.params;
        grads.add_scaled(&self.discriminator.backward(&fc, &column(obj.d_fake))?.params, 1.0);
        let coefficient = self.config.penalty.active_coefficient();
        if coefficient > 0.0 {
            let gp = gradient_penalty(&self.discriminator, real, coefficient, self.config.penalty.method)?;
            if !gp.value.is_finite() {
                return Ok(self.record_skip(obj.value));
            }
            grads.add_scaled(&gp.grads, 1.0);
        }
        let outcome = self.d_opt.step(&mut self.discriminator, &grads)?;
        Ok(self.record(obj.value, outcome))
    }

    /// One Adam step on the generator through the fixed discriminator.
    pub fn generator_step(&mut self, z: &Array2<f64>) -> Result<StepResult> {
        let gc = match self.generator.forward(z) {
            Err(Error::NonFinite(_)) => return Ok(self.record_skip(f64::NAN)),
            other => other?,
        };
        let dc = match self.discriminator.forward(gc.output()) {
            Err(Error::NonFinite(_)) => return Ok(self.record_skip(f64::NAN)),
            other => other?,
        };
        let obj = generator_objective(
            self.config.loss,
            self.config.generator_objective,
            &dc.output().column(0).to_owned(),
        )?;
        if !obj.value.is_finite() {
            return Ok(self.record_skip(obj.value));
        }
        let through_d = self.discriminator.backward(&dc, &column(obj.d_fake))?.input;
        let grads: Grads = self.generator.backward(&gc, &through_d)?.params;
        let outcome = self.g_opt.step(&mut self.generator, &grads)?;
        Ok(self.record(obj.value, outcome))
    }

    fn record_skip(&mut self, loss: f64) -> StepResult {
        self.skipped_steps += 1;
        StepResult::skipped(loss)
    }

    fn record(&mut self, loss: f64, outcome: StepOutcome) -> StepResult {
        match outcome {
            StepOutcome::Applied => StepResult { loss, applied: true },
            StepOutcome::SkippedNonFinite => self.record_skip(loss),
        }
    }

    /// Whether the last `collapse_after` iterations each skipped a step.
    pub fn is_collapsing(&self) -> bool {
        self.consecutive_skips >= self.config.collapse_after
    }

    /// `n` generator samples drawn with the evaluation noise stream.
    pub fn generate(&mut self, n: usize) -> Result<Vec<Point2>> {
        let z = gaussian(n, self.config.noise_dim, &mut self.eval_noise);
        Ok(self.generator.predict(&z)?.rows().into_iter().map(|r| [r[0], r[1]]).collect())
    }

    /// Histogram-JSD and mode coverage on fresh real and generated samples.
    pub fn evaluate(&mut self) -> Result<(f64, usize)> {
        let n = self.config.eval.samples;
        let fake = self.generate(n)?;
        let real = self.eval_data.sample(n);
        let e = &self.config.eval;
        let jsd = hist_jsd(&real, &fake, &e.grid)?;
        let cov = mode_coverage(&fake, &self.centers, self.config.data.sigma, e.coverage_fraction, e.coverage_sigmas)?;
        Ok((jsd, cov))
    }

    pub fn run(mut self) -> Result<TrainRecord> {
        let start = Instant::now();
        let total = self.config.steps;
        let mut entries = Vec::new();
        let mut collapsed = false;
        let mut steps_completed = 0;
        for step in 1..=total {
            let mut d_loss = f64::NAN;
            let mut last_z = None;
            let mut all_applied = true;
            for _ in 0..self.config.d_steps_per_g_step {
                let (real, z) = self.sample_batches();
                let r = self.discriminator_step(&real, &z)?;
                d_loss = r.loss;
                all_applied &= r.applied;
                last_z = Some(z);
            }
            let z = last_z.expect("at least one discriminator step");
            let g = self.generator_step(&z)?;
            let g_loss = g.loss;
            all_applied &= g.applied;
            self.consecutive_skips = if all_applied { 0 } else { self.consecutive_skips + 1 };
            steps_completed = step;
            if self.is_collapsing() {
                collapsed = true;
                break;
            }
            if step % self.config.eval.every == 0 || step == total {
                let (hist_jsd, mode_coverage) = match self.evaluate() {
                    Ok(m) => m,
                    Err(Error::NonFinite(_)) => {
                        collapsed = true;
                        break;
                    }
                    Err(e) => return Err(e),
                };
                let wall_ms = if self.config.record_wall_clock {
                    start.elapsed().as_millis() as u64
                } else {
                    0
                };
                entries.push(EvalEntry {
                    step,
                    d_loss,
                    g_loss,
                    hist_jsd,
                    mode_coverage,
                    wall_ms,
                });
            }
        }
        Ok(TrainRecord {
            entries,
            collapsed,
            steps_completed,
            skipped_steps: self.skipped_steps,
            generator: self.generator,
            discriminator: self.discriminator,
        })
    }
}

pub fn train(config: TrainConfig) -> Result<TrainRecord> {
    Trainer::new(config)?.run()
}

/// Generator samples for dumping, from a stream distinct from training and evaluation.
pub fn sample_generator(generator: &Mlp, n: usize, seed: u64) -> Result<Vec<Point2>> {
    let mut rng = rng_from_seed(derive_seed(seed, STREAM_DUMP));
    let z = gaussian(n, generator.input_width(), &mut rng);
    Ok(generator.predict(&z)?.rows().into_iter().map(|r| [r[0], r[1]]).collect())
}
