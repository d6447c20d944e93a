use std::f64::consts::TAU;

use rand::distr::weighted::WeightedIndex;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use super::distribution::FiniteDistribution;
use super::rng::{derive_seed, rng_from_seed, Rng};
use crate::error::{Error, Result};

pub type Point2 = [f64; 2];

/// Isotropic Gaussian mixture in the plane with its own random stream.
#[derive(Debug, Clone)]
pub struct Point2Sampler {
    centers: Vec<Point2>,
    sigma: f64,
    weights: FiniteDistribution,
    picker: WeightedIndex<f64>,
    seed: u64,
    rng: Rng,
}

impl Point2Sampler {
    pub fn new(centers: Vec<Point2>, sigma: f64, weights: FiniteDistribution, seed: u64) -> Result<Self> {
        if centers.is_empty() {
            return Err(Error::InvalidParameter("sampler needs at least one mode".into()));
        }
        if !(sigma > 0.0 && sigma.is_finite()) {
            return Err(Error::InvalidParameter(format!("sigma must be > 0, got {sigma}")));
        }
        if weights.len() != centers.len() {
            return Err(Error::SupportMismatch {
                left: centers.len(),
                right: weights.len(),
            });
        }
        let picker = WeightedIndex::new(weights.masses())
            .map_err(|e| Error::InvalidParameter(format!("mixture weights: {e}")))?;
        Ok(Self {
            centers,
            sigma,
            weights,
            picker,
            seed,
            rng: rng_from_seed(seed),
        })
    }

    pub fn centers(&self) -> &[Point2] {
        &self.centers
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn weights(&self) -> &FiniteDistribution {
        &self.weights
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// A fresh sampler over the same mixture whose stream is derived from this one's seed.
    pub fn fork(&self, stream: u64) -> Self {
        let seed = derive_seed(self.seed, stream);
        Self {
            rng: rng_from_seed(seed),
            seed,
            ..self.clone()
        }
    }

    pub fn sample_one(&mut self) -> Point2 {
        let mode = self.picker.sample(&mut self.rng);
        let c = self.centers[mode];
        let dx: f64 = StandardNormal.sample(&mut self.rng);
        let dy: f64 = StandardNormal.sample(&mut self.rng);
        [c[0] + self.sigma * dx, c[1] + self.sigma * dy]
    }

    pub fn sample(&mut self, n: usize) -> Vec<Point2> {
        (0..n).map(|_| self.sample_one()).collect()
    }
}

/// Serializable description of an equally weighted ring of Gaussian modes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RingSpec {
    pub modes: usize,
    pub radius: f64,
    pub sigma: f64,
}

impl Default for RingSpec {
    fn default() -> Self {
        Self {
            modes: 8,
            radius: 1.0,
            sigma: 0.05,
        }
    }
}

impl RingSpec {
    pub fn validate(&self) -> Result<()> {
        if self.modes < 1 {
            return Err(Error::InvalidParameter("ring needs at least one mode".into()));
        }
        if !(self.radius > 0.0 && self.radius.is_finite()) {
            return Err(Error::InvalidParameter(format!("radius must be > 0, got {}", self.radius)));
        }
        if !(self.sigma > 0.0 && self.sigma.is_finite()) {
            return Err(Error::InvalidParameter(format!("sigma must be > 0, got {}", self.sigma)));
        }
        Ok(())
    }

    /// Mode centers at angles `2πj/modes`.
    pub fn centers(&self) -> Vec<Point2> {
        (0..self.modes)
            .map(|j| {
                let t = TAU * j as f64 / self.modes as f64;
                [self.radius * t.cos(), self.radius * t.sin()]
            })
            .collect()
    }

    pub fn sampler(&self, seed: u64) -> Result<Point2Sampler> {
        self.validate()?;
        Point2Sampler::new(self.centers(), self.sigma, FiniteDistribution::uniform(self.modes)?, seed)
    }
}

/// Equally weighted Gaussian modes on a circle around the origin.
pub fn ring_sampler(modes: usize, radius: f64, sigma: f64, seed: u64) -> Result<Point2Sampler> {
    RingSpec { modes, radius, sigma }.sampler(seed)
}
