use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{BinaryForm, NormalizedResultant};
use crate::arith::rat_to_f64;
use crate::error::{Error, Result};

pub const MIN_SAMPLES: u64 = 10_000;
const CHUNK: u64 = 1 << 14;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MCConfig {
    pub seed: u64,
    pub samples: u64,
}

impl Default for MCConfig {
    fn default() -> Self {
        MCConfig { seed: 0x5eed, samples: 1_000_000 }
    }
}

impl MCConfig {
    pub fn validate(&self) -> Result<()> {
        if self.samples < MIN_SAMPLES {
            return Err(Error::InvalidConfig(format!("samples must be at least {MIN_SAMPLES}, got {}", self.samples)));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MCEstimate {
    pub value: f64,
    pub stderr: f64,
    pub samples: u64,
    pub seed: u64,
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

fn sphere_point(rng: &mut ChaCha8Rng) -> (Complex64, Complex64) {
    let mut g = || -> f64 { StandardNormal.sample(rng) };
    let (a, b, c, d) = (g(), g(), g(), g());
    let norm = (a * a + b * b + c * c + d * d).sqrt();
    (Complex64::new(a, b) / norm, Complex64::new(c, d) / norm)
}

/// Monte-Carlo mean of `ln|R(z₀, z₁)|` for independent uniform `z₀, z₁` on
/// the unit sphere of C², with `R` the resultant normalized at `(s₀, s₁)`.
///
/// Chunks draw from generators seeded by `(seed, chunk index)` and are reduced
/// in index order, so the estimate does not depend on the thread count.
pub fn sphere_mc_log_integral(s0: &BinaryForm, s1: &BinaryForm, cfg: &MCConfig) -> Result<MCEstimate> {
    cfg.validate()?;
    for s in [s0, s1] {
        if s.degree() != 1 {
            return Err(Error::DegreeMismatch { expected: 1, got: s.degree() });
        }
    }
    let r = NormalizedResultant::new(s0, s1)?;
    let ln_delta = rat_to_f64(&r.delta).abs().ln();
    let chunks = cfg.samples.div_ceil(CHUNK);
    let sums: Vec<(f64, f64)> = (0..chunks)
        .into_par_iter()
        .map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(splitmix64(cfg.seed ^ splitmix64(k)));
            let n = CHUNK.min(cfg.samples - k * CHUNK);
            let (mut s, mut s2) = (0.0, 0.0);
            for _ in 0..n {
                let (u0, u1) = sphere_point(&mut rng);
                let (v0, v1) = sphere_point(&mut rng);
                let x = (u0 * v1 - u1 * v0).norm().ln() - ln_delta;
                s += x;
                s2 += x * x;
            }
            (s, s2)
        })
        .collect();
    let (s, s2) = sums.iter().fold((0.0, 0.0), |(a, b), (x, y)| (a + x, b + y));
    let n = cfg.samples as f64;
    let mean = s / n;
    let var = ((s2 / n - mean * mean) * n / (n - 1.0)).max(0.0);
    Ok(MCEstimate { value: mean, stderr: (var / n).sqrt(), samples: cfg.samples, seed: cfg.seed })
}
