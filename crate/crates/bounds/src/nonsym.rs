//! Sections of bodies whose John ellipsoid is the unit ball but which are not symmetric.

use std::f64::consts::LN_2;

use slicebound_decomp::NonsymLift;
use slicebound_specfun::ln_gamma;

use crate::error::{finite, BoundError, Result};
use crate::gate::Gate;

/// `ln vol_k(S_k)` for the regular `k`-simplex with inradius 1:
/// `k^(k/2) (k+1)^((k+1)/2) / k!`.
fn log_simplex_volume(k: usize) -> Result<f64> {
    let kf = k as f64;
    let head = if k == 0 { 0.0 } else { 0.5 * kf * kf.ln() };
    Ok(head + 0.5 * (kf + 1.0) * (kf + 1.0).ln() - ln_gamma(kf + 1.0)?)
}

pub fn simplex_volume(k: usize) -> Result<f64> {
    if k <= 20 {
        // Direct arithmetic keeps small cases exact (vol S_1 = 2).
        let kf = k as f64;
        let factorial: f64 = (1..=k).map(|i| i as f64).product();
        return Ok(kf.powf(0.5 * kf) * (kf + 1.0).powf(0.5 * (kf + 1.0)) / factorial);
    }
    Ok(log_simplex_volume(k)?.exp())
}

pub fn kappa_gate(nl: &NonsymLift) -> Gate {
    Gate::at_least("kappa_j >= 1/2 for all j in J", nl.kappa(), 0.5)
}

/// `vol_k(S_k) 2^((k+1-|J|)/2) n^(k/2) (n+1)^((k+1)/2) / (k^(k/2) (k+1)^((k+1)/2)) prod_J delta_j^(-kappa_j/2)`,
/// no gate check.
pub fn nonsym_fourier_formula(nl: &NonsymLift) -> Result<f64> {
    let n = nl.base_dim() as f64;
    let k = nl.section_dim();
    let kf = k as f64;
    let support = nl.projection().support();
    let deltas = nl.lifted_weights();
    let log_ratio = 0.5 * kf * n.ln() + 0.5 * (kf + 1.0) * (n + 1.0).ln()
        - 0.5 * kf * kf.ln()
        - 0.5 * (kf + 1.0) * (kf + 1.0).ln();
    let log_deltas: f64 = support
        .iter()
        .zip(nl.kappa())
        .map(|(&j, kappa)| -0.5 * kappa * deltas[j].ln())
        .sum();
    let log = log_simplex_volume(k)? + 0.5 * (kf + 1.0 - support.len() as f64) * LN_2 + log_ratio + log_deltas;
    finite("nonsym_fourier", log.exp())
}

pub fn bound_nonsym_fourier(nl: &NonsymLift) -> Result<f64> {
    kappa_gate(nl).enforce("nonsym_fourier")?;
    nonsym_fourier_formula(nl)
}

/// `(1/sqrt2) sqrt((n+1)/n) ((n+1)/(n-1))^((n-1)/2) vol_(n-1)(S_(n-1))`.
pub fn bound_nonsym_hyperplane(n: usize) -> Result<f64> {
    if n < 2 {
        return Err(BoundError::OutOfRegime {
            bound: "nonsym_hyperplane",
            reason: format!("needs n >= 2, got {n}"),
        });
    }
    let nf = n as f64;
    let value = if n <= 20 {
        ((nf + 1.0) / (2.0 * nf) * ((nf + 1.0) / (nf - 1.0)).powi(n as i32 - 1)).sqrt() * simplex_volume(n - 1)?
    } else {
        let log = -0.5 * LN_2
            + 0.5 * ((nf + 1.0) / nf).ln()
            + 0.5 * (nf - 1.0) * ((nf + 1.0) / (nf - 1.0)).ln()
            + log_simplex_volume(n - 1)?;
        log.exp()
    };
    finite("nonsym_hyperplane", value)
}
