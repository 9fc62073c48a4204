//! Seeded random instances.
//!
//! The generator is SplitMix64 with its state initialised to the seed, and a
//! draw in `[0, 1)` is the top 53 bits of one output scaled by `2^-53`, so a
//! spec yields the same instance on every platform.

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{Link, LinkInstance, ModelKind, Point};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum LengthDist {
    Fixed {
        length: f64,
    },
    Uniform {
        min: f64,
        max: f64,
    },
    /// `min * lambda^u` for uniform `u`; with two or more links the first link
    /// gets `min` and the second `min * lambda`, so the diversity is `lambda`.
    Lambda {
        lambda: f64,
        #[serde(default = "one")]
        min: f64,
    },
}

fn one() -> f64 {
    1.0
}

fn default_alpha() -> f64 {
    3.0
}

fn default_model() -> ModelKind {
    ModelKind::Directed
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub n: usize,
    pub seed: u64,
    pub area_side: f64,
    pub length_dist: LengthDist,
    #[serde(default = "default_model")]
    pub model: ModelKind,
    #[serde(default = "default_alpha")]
    pub alpha: f64,
    #[serde(default = "one")]
    pub beta: f64,
    #[serde(default)]
    pub noise: f64,
}

impl GeneratorSpec {
    pub fn new(n: usize, seed: u64, area_side: f64, length_dist: LengthDist) -> Self {
        GeneratorSpec { n, seed, area_side, length_dist, model: ModelKind::Directed, alpha: 3.0, beta: 1.0, noise: 0.0 }
    }

    pub fn with_model(mut self, model: ModelKind) -> Self {
        self.model = model;
        self
    }

    pub fn with_alpha(mut self, alpha: f64) -> Self {
        self.alpha = alpha;
        self
    }

    pub fn with_beta(mut self, beta: f64) -> Self {
        self.beta = beta;
        self
    }

    pub fn with_noise(mut self, noise: f64) -> Self {
        self.noise = noise;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    fn check(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        if self.n == 0 {
            return bad("n must be at least 1".into());
        }
        if !(self.area_side > 0.0 && self.area_side.is_finite()) {
            return bad(format!("area_side must be positive, got {}", self.area_side));
        }
        let pos = |x: f64| x > 0.0 && x.is_finite();
        match self.length_dist {
            LengthDist::Fixed { length } if !pos(length) => bad(format!("fixed length must be positive, got {length}")),
            LengthDist::Uniform { min, max } if !(pos(min) && pos(max) && min <= max) => {
                bad(format!("uniform lengths need 0 < min <= max, got [{min}, {max}]"))
            }
            LengthDist::Lambda { lambda, min } if !(pos(min) && lambda >= 1.0 && lambda.is_finite()) => {
                bad(format!("lambda must be >= 1 and min positive, got lambda={lambda} min={min}"))
            }
            _ => Ok(()),
        }
    }
}

/// Portable uniform draws in `[0, 1)`.
pub struct UnitRng(SplitMix64);

impl UnitRng {
    pub fn new(seed: u64) -> Self {
        UnitRng(SplitMix64::seed_from_u64(seed))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    pub fn unit(&mut self) -> f64 {
        (self.0.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform integer in `0..k`, `k > 0`.
    pub fn below(&mut self, k: usize) -> usize {
        ((self.unit() * k as f64) as usize).min(k - 1)
    }
}

pub fn generate(spec: &GeneratorSpec) -> Result<LinkInstance> {
    spec.check()?;
    let mut rng = UnitRng::new(spec.seed);
    let side = spec.area_side;
    let links = (0..spec.n)
        .map(|i| {
            let sender = Point::new(side * rng.unit(), side * rng.unit());
            let u = rng.unit();
            let length = match spec.length_dist {
                LengthDist::Fixed { length } => length,
                LengthDist::Uniform { min, max } => min + (max - min) * u,
                LengthDist::Lambda { lambda, min } => {
                    let u = match i {
                        0 => 0.0,
                        1 => 1.0,
                        _ => u,
                    };
                    min * lambda.powf(u)
                }
            };
            let theta = std::f64::consts::TAU * rng.unit();
            let receiver = Point::new(sender.x + length * theta.cos(), sender.y + length * theta.sin());
            Link::new(i as u64, sender, receiver)
        })
        .collect();
    LinkInstance::new(links, spec.model, spec.alpha, spec.beta, spec.noise)
}
