//! Bounds obtained from the Wills functional `W(K) = int exp(-pi d(x, K)^2) dx`.

use std::f64::consts::{LN_2, PI};

use slicebound_decomp::ProjectionProfile;
use slicebound_specfun::{sinc_power_integral, wills_lp_norm, WillsIntegrandParams};

use crate::error::{finite, BoundError, Result};
use crate::gate::Gate;
use crate::symmetric::{half_weight_gate, symmetric_case1_formula, SATURATION};

/// `2^k / pi^(m0-k) prod_J (1-ctilde_j)^(-(1-ctilde_j)/2) I_(p_j)^(1-ctilde_j) (sqrt(ctilde_j) t_j)^ctilde_j`
/// with `p_j = 1/(1 - ctilde_j)` and `I_p` the sinc power integral.
pub fn bound_volume_via_wills(profile: &ProjectionProfile) -> Result<f64> {
    let k = profile.dim() as f64;
    let mut log = k * LN_2 - (profile.m0() as f64 - k) * PI.ln();
    for (j, &ct) in profile.tilde_weights().iter().enumerate() {
        let t = profile.threshold(j);
        log += ct * (ct.sqrt() * t).ln();
        let defect = 1.0 - ct;
        if defect < SATURATION {
            continue;
        }
        let ip = sinc_power_integral(1.0 / defect)?.value;
        log += defect * (ip.ln() - 0.5 * defect.ln());
    }
    finite("wills_volume", log.exp())
}

/// Ball's majorant `I_p <= sqrt(2) pi / sqrt(p)` applied to [`bound_volume_via_wills`];
/// coincides with the Fourier-route bound `2^((m0+k)/2) prod c_j^(ctilde_j/2)`.
pub fn bound_volume_via_wills_majorized(profile: &ProjectionProfile) -> Result<f64> {
    half_weight_gate(profile).enforce("wills_volume_majorized")?;
    symmetric_case1_formula(profile)
}

pub fn wills_functional_gate(lambda: f64) -> Gate {
    Gate::check("lambda > 0", lambda > 0.0 && lambda.is_finite())
}

/// `W(lambda (L ∩ H)) <= (2 pi)^(-(m0-k)) prod_J ((1-ctilde_j)^(-1/2) g(alpha_j))^(1-ctilde_j)`
/// with `alpha_j = lambda sqrt(ctilde_j) t_j` and `g(alpha) = int |A_alpha|^(p_j)`.
///
/// A saturated index contributes the `p -> inf` limit `||A_alpha||_inf = 2 alpha + 1`.
pub fn bound_wills_functional(profile: &ProjectionProfile, lambda: f64) -> Result<f64> {
    if !wills_functional_gate(lambda).satisfied {
        return Err(BoundError::OutOfRegime {
            bound: "wills_functional",
            reason: format!("lambda must be positive, got {lambda}"),
        });
    }
    let k = profile.dim() as f64;
    let mut log = -(profile.m0() as f64 - k) * (2.0 * PI).ln();
    for (j, &ct) in profile.tilde_weights().iter().enumerate() {
        let alpha = lambda * ct.sqrt() * profile.threshold(j);
        let defect = 1.0 - ct;
        if defect < SATURATION {
            log += (2.0 * alpha + 1.0).ln();
            continue;
        }
        let params = WillsIntegrandParams::new(alpha, 1.0 / defect)?;
        // g^(1 - ctilde) = g^(1/p) = ||A||_p
        log += wills_lp_norm(&params)?.ln() - 0.5 * defect * defect.ln();
    }
    finite("wills_functional", log.exp())
}
