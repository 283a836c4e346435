//! Wills functional and first intrinsic volume of small polytopes.

use std::f64::consts::PI;

use slicebound_bodies::HPolytopeSection;

use crate::error::{OracleError, Result};
use crate::geometry::{check_bounded, vertices, MAX_EXACT_DIM};
use crate::mc::{ball_moments, ball_volume, require_samples, McEstimate};

pub const DYKSTRA_TOL: f64 = 1e-9;
pub const DYKSTRA_MAX_CYCLES: usize = 10_000;
/// Margin around the polytope where `exp(-pi d^2)` is still sampled; beyond it the integrand is below `e^-38`.
const WILLS_MARGIN: f64 = 3.5;
pub const SPHERE_DIRECTIONS: usize = 10_000;

/// Euclidean distance from `point` to the polytope, by Dykstra's cyclic projections
/// onto the constraint half-spaces.
pub fn distance_to_polytope(poly: &HPolytopeSection, point: &[f64]) -> f64 {
    if poly.contains(point) {
        return 0.0;
    }
    let k = point.len();
    let mut x = point.to_vec();
    let mut increments = vec![vec![0.0; k]; poly.len()];
    let mut z = vec![0.0; k];
    for _ in 0..DYKSTRA_MAX_CYCLES {
        let mut moved = 0.0f64;
        for ((a, b), p) in poly.constraints().zip(increments.iter_mut()) {
            for i in 0..k {
                z[i] = x[i] + p[i];
            }
            let excess = a.iter().zip(&z).map(|(ai, zi)| ai * zi).sum::<f64>() - b;
            let step = if excess > 0.0 { excess / a.iter().map(|v| v * v).sum::<f64>() } else { 0.0 };
            for i in 0..k {
                let next = z[i] - step * a[i];
                p[i] = z[i] - next;
                moved = moved.max((next - x[i]).abs());
                x[i] = next;
            }
        }
        if moved <= DYKSTRA_TOL {
            break;
        }
    }
    x.iter().zip(point).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt()
}

/// Monte-Carlo estimate of `W(lambda P) = int exp(-pi d(x, lambda P)^2) dx`.
/// `hit_rate` reports the fraction of samples inside `lambda P`.
pub fn wills_oracle(poly: &HPolytopeSection, lambda: f64, samples: u64, seed: u64) -> Result<McEstimate> {
    check_bounded(poly)?;
    require_samples(samples)?;
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(OracleError::InvalidArgument(format!("lambda must be positive, got {lambda}")));
    }
    let radius = lambda * poly.envelope_radius + WILLS_MARGIN;
    let m = ball_moments(poly.dim, radius, samples, seed, |y| {
        let scaled: Vec<f64> = y.iter().map(|v| v / lambda).collect();
        let dist = lambda * distance_to_polytope(poly, &scaled);
        ((-PI * dist * dist).exp(), dist == 0.0)
    });
    let n = samples as f64;
    let envelope = ball_volume(poly.dim, radius);
    let mean = m.sum / n;
    let var = (m.sum_sq / n - mean * mean).max(0.0);
    Ok(McEstimate {
        mean: envelope * mean,
        std_error: envelope * (var / n).sqrt(),
        samples,
        seed,
        hit_rate: m.hits as f64 / n,
    })
}

/// Fibonacci-lattice points on `S^2`.
pub fn fibonacci_sphere(count: usize) -> Vec<[f64; 3]> {
    let golden = PI * (3.0 - 5f64.sqrt());
    (0..count)
        .map(|i| {
            let z = 1.0 - (2.0 * i as f64 + 1.0) / count as f64;
            let r = (1.0 - z * z).sqrt();
            let phi = golden * i as f64;
            [r * phi.cos(), r * phi.sin(), z]
        })
        .collect()
}

/// `V_1(P) = k omega_k / omega_(k-1) * mean_theta h_P(theta)` for `k <= 3`, with the
/// support function `h_P` evaluated on vertices and averaged over
/// [`SPHERE_DIRECTIONS`] directions (exactly over `{±1}` when `k = 1`).
pub fn v1_oracle(poly: &HPolytopeSection) -> Result<f64> {
    v1_oracle_with(poly, SPHERE_DIRECTIONS)
}

pub fn v1_oracle_with(poly: &HPolytopeSection, directions: usize) -> Result<f64> {
    if poly.dim > MAX_EXACT_DIM {
        return Err(OracleError::Unsupported {
            what: "v1_oracle",
            dim: poly.dim,
            max: MAX_EXACT_DIM,
        });
    }
    let verts = vertices(poly)?;
    let support = |theta: &[f64]| {
        verts
            .iter()
            .map(|v| v.iter().zip(theta).map(|(a, b)| a * b).sum::<f64>())
            .fold(f64::NEG_INFINITY, f64::max)
    };
    let (factor, mean_h) = match poly.dim {
        1 => (2.0, 0.5 * (support(&[1.0]) + support(&[-1.0]))),
        2 => {
            let sum: f64 = (0..directions)
                .map(|i| {
                    let phi = 2.0 * PI * (i as f64 + 0.5) / directions as f64;
                    support(&[phi.cos(), phi.sin()])
                })
                .sum();
            (PI, sum / directions as f64)
        }
        _ => {
            let sum: f64 = fibonacci_sphere(directions).iter().map(|t| support(t)).sum();
            (4.0, sum / directions as f64)
        }
    };
    Ok(factor * mean_h)
}
