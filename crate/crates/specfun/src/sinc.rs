//! `I_p = int_R |sin x / x|^p dx` and Ball's majorant `sqrt(2) pi / sqrt(p)`.
//!
//! Instead of truncating the slowly decaying tail, every half-period
//! `[n pi, (n+1) pi]` is folded back onto `[0, pi]`:
//!
//! `I_p / 2 = int_0^pi (sin u / u)^p du + pi^-p int_0^pi sin^p u * zeta(p, 1 + u/pi) du`
//!
//! with the Hurwitz zeta function evaluated by Euler–Maclaurin summation. Both
//! integrands are bounded on a finite interval, so the result is accurate to
//! the quadrature tolerance for every `p > 1`.

use std::f64::consts::PI;

use crate::error::{Result, SpecFunError};
use crate::quad::{integrate_breaks, QuadratureOptions, QuadratureResult};

// B_{2k} / (2k)! for k = 1..=7.
const BERNOULLI_OVER_FACTORIAL: [f64; 7] = [
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30_240.0,
    -1.0 / 1_209_600.0,
    1.0 / 47_900_160.0,
    -691.0 / 1_307_674_368_000.0,
    1.0 / 74_724_249_600.0,
];

/// Hurwitz zeta `sum_{n >= 0} (a + n)^-s` for `s > 1`, `a > 0`.
pub fn hurwitz_zeta(s: f64, a: f64) -> Result<f64> {
    if !(s > 1.0) {
        return Err(SpecFunError::Divergent { p: s, min: 1.0 });
    }
    if !(a > 0.0) {
        return Err(SpecFunError::Domain {
            name: "hurwitz_zeta",
            value: a,
        });
    }
    const N: usize = 12;
    let head: f64 = (0..N).map(|n| (a + n as f64).powf(-s)).sum();
    let x = a + N as f64;
    let mut tail = x.powf(1.0 - s) / (s - 1.0) + 0.5 * x.powf(-s);
    // Rising factorial s (s+1) ... (s+2k-2) times x^(-s-2k+1).
    let mut rising = s;
    let mut power = x.powf(-s - 1.0);
    for (k, coeff) in BERNOULLI_OVER_FACTORIAL.iter().enumerate() {
        tail += coeff * rising * power;
        let m = 2.0 * k as f64;
        rising *= (s + m + 1.0) * (s + m + 2.0);
        power /= x * x;
    }
    Ok(head + tail)
}

fn sinc_pow(u: f64, p: f64) -> f64 {
    if u.abs() < 1e-4 {
        let u2 = u * u;
        // (sin u / u)^p = exp(p ln(1 - u^2/6 + u^4/120 ...)); ln term to O(u^6).
        (p * (-u2 / 6.0 - u2 * u2 / 180.0)).exp()
    } else {
        (u.sin() / u).powf(p)
    }
}

/// `I_p = int_R |sin x / x|^p dx` for `p > 1`.
pub fn sinc_power_integral(p: f64) -> Result<QuadratureResult> {
    sinc_power_integral_with(p, &QuadratureOptions::default().with_rel_tol(1e-12).with_abs_tol(0.0))
}

pub fn sinc_power_integral_with(p: f64, opts: &QuadratureOptions) -> Result<QuadratureResult> {
    if !(p > 1.0) {
        return Err(SpecFunError::Divergent { p, min: 1.0 });
    }
    // For large p the main mass sits within a few multiples of 1/sqrt(p) of 0.
    let width = (1.0 / p.sqrt()).min(1.0);
    let mut breaks = vec![0.0];
    breaks.extend([2.0 * width, 8.0 * width].into_iter().filter(|&b| b < PI));
    breaks.push(PI);

    let main = integrate_breaks(|u| sinc_pow(u, p), &breaks, opts)?;
    let scale = PI.powf(-p);
    let folded = if scale == 0.0 {
        QuadratureResult {
            value: 0.0,
            abs_error_estimate: 0.0,
            evaluations: 0,
        }
    } else {
        let mut failure = None;
        let r = integrate_breaks(
            |u| {
                let s = u.sin().max(0.0).powf(p);
                match hurwitz_zeta(p, 1.0 + u / PI) {
                    Ok(z) => s * z,
                    Err(e) => {
                        failure.get_or_insert(e);
                        0.0
                    }
                }
            },
            &[0.0, PI / 2.0, PI],
            opts,
        )?;
        if let Some(e) = failure {
            return Err(e);
        }
        r.scaled(scale)
    };
    Ok(main.plus(folded).scaled(2.0))
}

/// Outcome of comparing `I_p` against `sqrt(2) pi / sqrt(p)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BallCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

/// Relative slack allowed when declaring the inequality satisfied.
pub const BALL_CHECK_TOL: f64 = 1e-8;

/// Check `I_p <= sqrt(2) pi / sqrt(p)`; only asserted for `p >= 2`.
pub fn ball_integral_bound_check(p: f64) -> Result<BallCheck> {
    if !(p >= 2.0) {
        return Err(SpecFunError::Gate {
            name: "ball_integral_bound_check",
            p,
            min: 2.0,
        });
    }
    let lhs = sinc_power_integral(p)?.value;
    let rhs = 2f64.sqrt() * PI / p.sqrt();
    Ok(BallCheck {
        lhs,
        rhs,
        holds: lhs <= rhs * (1.0 + BALL_CHECK_TOL),
    })
}
