//! Seeded, sharded Monte-Carlo integration over Euclidean balls.
//!
//! Shard `s` draws from `ChaCha8Rng::seed_from_u64(seed)` on stream `s`, so the
//! sample sequence depends only on `(seed, samples)` and not on thread count.
//! Shard sums are combined in index order, which keeps results bit-identical.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use slicebound_bodies::{HPolytopeSection, KpBall, KpSection};
use slicebound_decomp::{Subspace, Tolerances};
use slicebound_specfun::ln_gamma;

use crate::error::{OracleError, Result};
use crate::geometry::check_bounded;

pub const MIN_SAMPLES: u64 = 1_000;
const SHARD: u64 = 1 << 15;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct McEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub samples: u64,
    pub seed: u64,
    pub hit_rate: f64,
}

impl McEstimate {
    /// Whether `value` lies within `sigmas` standard errors of the mean.
    ///
    /// A rounding-level relative margin is added so that zero-variance
    /// estimates (the set fills its envelope) still agree with the exact value.
    pub fn agrees_with(&self, value: f64, sigmas: f64) -> bool {
        (self.mean - value).abs() <= sigmas * self.std_error + 1e-12 * value.abs()
    }
}

/// `vol_k(B_2^k) r^k`.
pub fn ball_volume(dim: usize, radius: f64) -> f64 {
    let k = dim as f64;
    let log = 0.5 * k * std::f64::consts::PI.ln() - ln_gamma(0.5 * k + 1.0).unwrap_or(f64::NAN);
    log.exp() * radius.powi(dim as i32)
}

/// Uniform point in the centered ball of the given radius.
pub(crate) fn sample_ball<R: Rng>(rng: &mut R, out: &mut [f64], radius: f64) {
    let mut norm2 = 0.0;
    for x in out.iter_mut() {
        *x = rng.sample(StandardNormal);
        norm2 += *x * *x;
    }
    let r = radius * rng.random::<f64>().powf(1.0 / out.len() as f64) / norm2.sqrt();
    out.iter_mut().for_each(|x| *x *= r);
}

#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct Moments {
    pub sum: f64,
    pub sum_sq: f64,
    pub hits: u64,
}

/// Sum `f` (returning the value and a hit flag) over `samples` uniform points of the ball.
pub(crate) fn ball_moments<F>(dim: usize, radius: f64, samples: u64, seed: u64, f: F) -> Moments
where
    F: Fn(&[f64]) -> (f64, bool) + Sync,
{
    let shards = samples.div_ceil(SHARD);
    let parts: Vec<Moments> = (0..shards)
        .into_par_iter()
        .map(|s| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(s);
            let count = SHARD.min(samples - s * SHARD);
            let mut y = vec![0.0; dim];
            let mut m = Moments::default();
            for _ in 0..count {
                sample_ball(&mut rng, &mut y, radius);
                let (v, hit) = f(&y);
                m.sum += v;
                m.sum_sq += v * v;
                m.hits += hit as u64;
            }
            m
        })
        .collect();
    parts.iter().fold(Moments::default(), |acc, m| Moments {
        sum: acc.sum + m.sum,
        sum_sq: acc.sum_sq + m.sum_sq,
        hits: acc.hits + m.hits,
    })
}

pub(crate) fn require_samples(samples: u64) -> Result<()> {
    if samples < MIN_SAMPLES {
        return Err(OracleError::TooFewSamples {
            got: samples,
            min: MIN_SAMPLES,
        });
    }
    Ok(())
}

/// Hit-or-miss volume estimate of `{y : member(y)}` inside the ball of `radius`.
pub(crate) fn hit_or_miss<F>(dim: usize, radius: f64, samples: u64, seed: u64, member: F) -> Result<McEstimate>
where
    F: Fn(&[f64]) -> bool + Sync,
{
    require_samples(samples)?;
    let m = ball_moments(dim, radius, samples, seed, |y| {
        let hit = member(y);
        (hit as u8 as f64, hit)
    });
    let rate = m.hits as f64 / samples as f64;
    let envelope = ball_volume(dim, radius);
    Ok(McEstimate {
        mean: rate * envelope,
        std_error: (rate * (1.0 - rate) / samples as f64).sqrt() * envelope,
        samples,
        seed,
        hit_rate: rate,
    })
}

/// Rejection-sampling estimate of `vol_k(poly)` from the ball of its envelope radius.
pub fn mc_volume(poly: &HPolytopeSection, samples: u64, seed: u64) -> Result<McEstimate> {
    check_bounded(poly)?;
    hit_or_miss(poly.dim, poly.envelope_radius, samples, seed, |y| poly.contains(y))
}

/// Estimate of `vol_k(K_p ∩ H)` by direct evaluation of the `K_p` norm.
pub fn mc_kp_section_volume(ball: &KpBall, h: &Subspace, samples: u64, seed: u64) -> Result<McEstimate> {
    let section = ball.section(h, &Tolerances::default())?;
    mc_kp_section(&section, samples, seed)
}

pub fn mc_kp_section(section: &KpSection, samples: u64, seed: u64) -> Result<McEstimate> {
    hit_or_miss(section.dim(), section.envelope_radius(), samples, seed, |y| section.contains(y))
}
