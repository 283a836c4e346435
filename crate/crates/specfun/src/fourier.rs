//! Closed-form and quadrature Fourier transforms of one-dimensional profiles.

use crate::error::{Result, SpecFunError};
use crate::gamma::{factorial, gamma_fn};
use crate::quad::{integrate_breaks, uniform_breaks, QuadratureOptions};

/// Below this `|c t|` the removable singularity is handled by a Taylor series.
pub const SMALL_ARGUMENT: f64 = 1e-4;

/// Fourier transform of the indicator of `[-c, c]`: `2 sin(c t) / t`, and `2c` at 0.
pub fn indicator_ft(c: f64, t: f64) -> f64 {
    let x = c * t;
    if x.abs() < SMALL_ARGUMENT {
        let x2 = x * x;
        2.0 * c * (1.0 - x2 / 6.0 * (1.0 - x2 / 20.0 * (1.0 - x2 / 42.0 * (1.0 - x2 / 72.0))))
    } else {
        2.0 * x.sin() / t
    }
}

/// Fourier transform of `exp(-alpha |x|)`: `2 alpha / (alpha^2 + y^2)`.
pub fn exp_ft(alpha: f64, y: f64) -> f64 {
    2.0 * alpha / (alpha * alpha + y * y)
}

/// Above this `|y|` the asymptotic series of `gamma_p` is used.
const GAMMA_P_ASYMPTOTIC_FROM: f64 = 30.0;

/// `gamma_p(y) = int_R exp(-|x|^p) e^{ixy} dx` for `1 <= p <= 2`.
pub fn gamma_p(p: f64, y: f64) -> Result<f64> {
    if !(1.0..=2.0).contains(&p) {
        return Err(SpecFunError::UnsupportedRange {
            name: "gamma_p",
            p,
            lo: 1.0,
            hi: 2.0,
        });
    }
    let y = y.abs();
    if y > GAMMA_P_ASYMPTOTIC_FROM {
        return Ok(gamma_p_asymptotic(p, y));
    }
    // exp(-x^p) < 1e-16 beyond this point.
    let cutoff = (16.0 * std::f64::consts::LN_10).powf(1.0 / p);
    let width = if y > 1.0 { std::f64::consts::PI / y } else { cutoff };
    let breaks = uniform_breaks(0.0, cutoff, width.min(cutoff));
    let opts = QuadratureOptions::default().with_abs_tol(1e-12).with_rel_tol(1e-12);
    let r = integrate_breaks(|x| (-x.powf(p)).exp() * (x * y).cos(), &breaks, &opts)?;
    Ok(2.0 * r.value)
}

/// `gamma_p(y) ~ -2 sum_{k>=1} (-1)^k Gamma(pk+1) sin(pi p k / 2) / (k! y^{pk+1})`,
/// summed until the terms stop shrinking.
fn gamma_p_asymptotic(p: f64, y: f64) -> f64 {
    let mut sum = 0.0;
    let mut last = f64::INFINITY;
    for k in 1..=60u32 {
        let kf = f64::from(k);
        let Ok(g) = gamma_fn(p * kf + 1.0) else { break };
        let magnitude = g / factorial(k) * y.powf(-p * kf - 1.0);
        if !magnitude.is_finite() || magnitude > last {
            break;
        }
        last = magnitude;
        let sign = if k % 2 == 0 { -1.0 } else { 1.0 };
        sum += sign * magnitude * (std::f64::consts::FRAC_PI_2 * p * kf).sin();
        if magnitude < 1e-18 * sum.abs().max(f64::MIN_POSITIVE) {
            break;
        }
    }
    2.0 * sum
}
