//! Numerical two-sided check of the Parseval identity for a section of
//! `L = {|<x, v_j>| <= 1}`:
//!
//! `vol_k(L ∩ H) = (2 pi)^(-d) int_{R^d} prod_J fhat_j(sqrt(1 - ctilde_j) <y, w_j>) dy`,
//!
//! where `fhat_j(s) = 2 sin(a_j s)/s` is the transform of `1[-a_j, a_j]`,
//! `a_j = sqrt(ctilde_j) t_j` and `w_j` are the lifted complement vectors.
//!
//! The right side is integrated in polar coordinates. Along a ray `y = r theta`
//! the integrand is `r^(d-1-|A|) prod_A sin(omega_j r)` times constants, and
//! that radial integral has a closed form (see [`sine_product_moment`]), so only
//! the angular integral is numerical: exact for `d = 1`, adaptive quadrature for
//! `d = 2`, and seeded Monte-Carlo over the sphere for `d >= 3`.

use std::f64::consts::PI;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use slicebound_bodies::section_polytope;
use slicebound_decomp::{lift, ProjectedDecomposition, Tolerances};
use slicebound_specfun::{integrate_breaks, ln_gamma, QuadratureOptions};

use crate::error::{OracleError, Result};
use crate::geometry::{exact_volume_smallk, MAX_EXACT_DIM};
use crate::mc::{mc_volume, sample_ball};

/// More sine factors than this make the `2^(m-1)` sign expansion impractical.
pub const MAX_FACTORS: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParsevalOptions {
    /// Absolute tolerance of the angular quadrature (`d = 2`).
    pub quad_tol: f64,
    /// Sample count for Monte-Carlo parts: the left side when `k > 3`, the right side when `d >= 3`.
    pub samples: u64,
    pub seed: u64,
}

impl Default for ParsevalOptions {
    fn default() -> Self {
        Self {
            quad_tol: 1e-9,
            samples: 200_000,
            seed: 0x5eed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParsevalGate {
    pub name: String,
    pub satisfied: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParsevalCheck {
    pub lhs: f64,
    /// Zero when the left side is exact.
    pub lhs_std_error: f64,
    pub lhs_method: String,
    pub rhs: f64,
    /// Quadrature error estimate, or a standard error for Monte-Carlo.
    pub rhs_error: f64,
    pub rhs_method: String,
    pub k: usize,
    pub m0: usize,
    pub d: usize,
    pub gates: Vec<ParsevalGate>,
}

impl ParsevalCheck {
    pub fn discrepancy(&self) -> f64 {
        (self.lhs - self.rhs).abs()
    }

    /// `|lhs - rhs| <= max(tol, 3 sigma)` with `sigma` combining both sides.
    pub fn agrees(&self, tol: f64) -> bool {
        let sigma = self.lhs_std_error.hypot(self.rhs_error);
        self.discrepancy() <= tol.max(3.0 * sigma)
    }

    pub fn gates_satisfied(&self) -> bool {
        self.gates.iter().all(|g| g.satisfied)
    }
}

/// `int_0^inf x^(-n) prod_{j<m} sin(omega_j x) dx` for `1 <= n <= m`, all `omega_j > 0`.
///
/// Expanding the product into exponentials and taking finite parts, only the
/// `sgn` terms survive when `m - n` is even and only the `ln|.|` terms when it is odd:
///
/// * even: `pi (-1)^((m-n)/2) / (2^(m+1) (n-1)!) sum_s prod(s) (s.omega)^(n-1) sgn(s.omega)`
/// * odd: `(-1)^((m-n-1)/2) / (2^m (n-1)!) sum_s prod(s) (s.omega)^(n-1) ln|s.omega|`
///
/// with the sum over sign vectors `s`. Returns `None` when the integral diverges
/// (`n = 1`, `m - n` odd and a resonance `s.omega = 0`) or `n` is out of range.
pub fn sine_product_moment(omegas: &[f64], n: usize) -> Option<f64> {
    let m = omegas.len();
    if n == 0 || n > m || m > MAX_FACTORS {
        return None;
    }
    let scale = omegas.iter().copied().fold(0.0, f64::max);
    if !(scale > 0.0) {
        return None;
    }
    let w: Vec<f64> = omegas.iter().map(|o| o / scale).collect();
    let p = (n - 1) as i32;
    let even = (m - n) % 2 == 0;
    let resonance = 1e-14 * m as f64;
    // Terms for s and -s coincide, so fix s_0 = +1 and double.
    let mut sum = 0.0;
    for mask in 0u32..(1u32 << (m - 1)) {
        let mut dotp = w[0];
        let mut parity = 1.0;
        for (i, wi) in w.iter().enumerate().skip(1) {
            if mask >> (i - 1) & 1 == 1 {
                dotp -= wi;
                parity = -parity;
            } else {
                dotp += wi;
            }
        }
        let term = if even {
            if dotp.abs() <= resonance {
                continue;
            }
            dotp.powi(p) * dotp.signum()
        } else if dotp.abs() <= resonance {
            if p == 0 {
                return None;
            }
            continue;
        } else {
            dotp.powi(p) * dotp.abs().ln()
        };
        sum += parity * term;
    }
    sum *= 2.0;
    let fact = (1..n).map(|i| i as f64).product::<f64>();
    let value = if even {
        let sign = if ((m - n) / 2) % 2 == 0 { 1.0 } else { -1.0 };
        PI * sign / (2f64.powi(m as i32 + 1) * fact) * sum
    } else {
        let sign = if ((m - n - 1) / 2) % 2 == 0 { 1.0 } else { -1.0 };
        sign / (2f64.powi(m as i32) * fact) * sum
    };
    Some(value * scale.powi(p))
}

/// Radial profile of the right-hand integrand: `int_0^inf r^(d-1) prod_J fhat_j(r <theta, b_j>) dr`.
struct Radial {
    d: usize,
    half_widths: Vec<f64>,
    /// `sqrt(1 - ctilde_j) w_j` for unsaturated indices.
    directions: Vec<Vec<f64>>,
    /// Product of `2 a_j` over saturated indices, which are constant on `H^perp`.
    constant: f64,
}

impl Radial {
    fn at(&self, theta: &[f64]) -> f64 {
        let mut constant = self.constant;
        let mut omegas = Vec::with_capacity(self.directions.len());
        let mut coef = 1.0;
        for (b, &a) in self.directions.iter().zip(&self.half_widths) {
            let beta: f64 = b.iter().zip(theta).map(|(x, y)| x * y).sum();
            let blen = b.iter().map(|x| x * x).sum::<f64>().sqrt();
            if beta.abs() <= 1e-13 * blen {
                constant *= 2.0 * a;
            } else {
                omegas.push(a * beta.abs());
                coef *= 2.0 / beta.abs();
            }
        }
        let m = omegas.len();
        if m < self.d {
            return f64::INFINITY;
        }
        match sine_product_moment(&omegas, m + 1 - self.d) {
            Some(j) => constant * coef * j,
            None => f64::INFINITY,
        }
    }
}

fn sphere_area(d: usize) -> f64 {
    let h = 0.5 * d as f64;
    2.0 * (h * PI.ln() - ln_gamma(h).unwrap_or(f64::NAN)).exp()
}

pub fn parseval_check(proj: &ProjectedDecomposition, quad_tol: f64) -> Result<ParsevalCheck> {
    parseval_check_with(
        proj,
        &ParsevalOptions {
            quad_tol,
            ..ParsevalOptions::default()
        },
    )
}

pub fn parseval_check_with(proj: &ProjectedDecomposition, opts: &ParsevalOptions) -> Result<ParsevalCheck> {
    let lifted = lift(proj, &Tolerances::default())?;
    let k = lifted.dim();
    let m0 = lifted.m0();
    let d = lifted.complement_dim();
    let nontrivial = lifted.unsaturated().len();
    let rank = lifted.complement_rank();

    let gates = vec![
        ParsevalGate {
            name: "complement_rank".into(),
            satisfied: rank == d,
            detail: format!("the w_j span a space of dimension {rank}, need d = {d}"),
        },
        ParsevalGate {
            name: "factor_count".into(),
            satisfied: d == 0 || nontrivial > d,
            detail: format!("{nontrivial} nontrivial factors, need more than d = {d}"),
        },
    ];
    if let Some(g) = gates.iter().find(|g| !g.satisfied) {
        return Err(OracleError::Gate(format!("{}: {}", g.name, g.detail)));
    }
    if nontrivial > MAX_FACTORS {
        return Err(OracleError::Unsupported {
            what: "Parseval right-hand side (nontrivial factors)",
            dim: nontrivial,
            max: MAX_FACTORS,
        });
    }

    let poly = section_polytope(proj);
    let (lhs, lhs_std_error, lhs_method) = if k <= MAX_EXACT_DIM {
        (exact_volume_smallk(&poly)?, 0.0, "exact")
    } else {
        let est = mc_volume(&poly, opts.samples, opts.seed)?;
        (est.mean, est.std_error, "monte_carlo")
    };

    let profile = lifted.profile();
    let half_width = |j: usize| profile.tilde_weights()[j].sqrt() * profile.threshold(j);
    let constant: f64 = (0..m0)
        .filter(|j| !lifted.unsaturated().contains(j))
        .map(|j| 2.0 * half_width(j))
        .product();
    let radial = Radial {
        d,
        half_widths: lifted.unsaturated().iter().map(|&j| half_width(j)).collect(),
        directions: lifted
            .unsaturated()
            .iter()
            .zip(lifted.complement_vectors())
            .map(|(&j, w)| {
                let s = (1.0 - profile.tilde_weights()[j]).sqrt();
                w.iter().map(|x| s * x).collect()
            })
            .collect(),
        constant,
    };

    let norm = (2.0 * PI).powi(-(d as i32));
    let (rhs, rhs_error, rhs_method) = match d {
        0 => (constant, 0.0, "closed_form"),
        1 => (norm * 2.0 * radial.at(&[1.0]), 0.0, "closed_form_radial"),
        2 => {
            // Break where a factor becomes constant along the ray.
            let mut breaks: Vec<f64> = radial
                .directions
                .iter()
                .map(|b| (b[1].atan2(b[0]) + 0.5 * PI).rem_euclid(PI))
                .chain([0.0, PI])
                .collect();
            breaks.sort_by(f64::total_cmp);
            breaks.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
            let q = integrate_breaks(
                |phi| radial.at(&[phi.cos(), phi.sin()]),
                &breaks,
                &QuadratureOptions::default()
                    .with_abs_tol(opts.quad_tol)
                    .with_rel_tol(0.0)
                    .with_max_intervals(20_000),
            )?;
            (norm * 2.0 * q.value, norm * 2.0 * q.abs_error_estimate, "angular_quadrature")
        }
        _ => {
            crate::mc::require_samples(opts.samples)?;
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
            let mut theta = vec![0.0; d];
            let (mut sum, mut sum_sq) = (0.0, 0.0);
            for _ in 0..opts.samples {
                sample_ball(&mut rng, &mut theta, 1.0);
                let len = theta.iter().map(|x| x * x).sum::<f64>().sqrt();
                theta.iter_mut().for_each(|x| *x /= len);
                let v = radial.at(&theta);
                sum += v;
                sum_sq += v * v;
            }
            let n = opts.samples as f64;
            let mean = sum / n;
            let var = (sum_sq / n - mean * mean).max(0.0);
            let area = sphere_area(d);
            (norm * area * mean, norm * area * (var / n).sqrt(), "angular_monte_carlo")
        }
    };

    Ok(ParsevalCheck {
        lhs,
        lhs_std_error,
        lhs_method: lhs_method.into(),
        rhs,
        rhs_error,
        rhs_method: rhs_method.into(),
        k,
        m0,
        d,
        gates,
    })
}
