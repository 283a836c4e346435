//! Volume bounds for sections of symmetric bodies `L = {|<x, v_j>| <= 1}`.

use slicebound_decomp::ProjectionProfile;
use slicebound_specfun::cauchy_power_integral;

use crate::error::{finite, BoundError, Result};
use crate::gate::Gate;

/// Below this distance from 1, `ctilde_j` is treated as exactly 1 in limit branches.
pub const SATURATION: f64 = 1e-9;

pub fn half_weight_gate(profile: &ProjectionProfile) -> Gate {
    Gate::at_least("ctilde_j >= 1/2 for all j in J", profile.tilde_weights(), 0.5)
}

/// `2^((m0+k)/2) prod_J c_j^(ctilde_j/2)`, no gate check.
pub fn symmetric_case1_formula(profile: &ProjectionProfile) -> Result<f64> {
    let log = 0.5 * (profile.m0() + profile.dim()) as f64 * std::f64::consts::LN_2
        + profile
            .weights()
            .iter()
            .zip(profile.tilde_weights())
            .map(|(c, ct)| 0.5 * ct * c.ln())
            .sum::<f64>();
    finite("symmetric_case1", log.exp())
}

pub fn bound_symmetric_case1(profile: &ProjectionProfile) -> Result<f64> {
    half_weight_gate(profile).enforce("symmetric_case1")?;
    symmetric_case1_formula(profile)
}

pub fn symmetric_case1_coarse_formula(profile: &ProjectionProfile) -> Result<f64> {
    let k = profile.dim() as f64;
    let m0 = profile.m0();
    if m0 < profile.dim() {
        return Err(BoundError::Degenerate {
            bound: "symmetric_case1_coarse",
            reason: format!("m0 = {m0} < k = {k}"),
        });
    }
    let base = 2f64.powf(k);
    if m0 == profile.dim() {
        return Ok(base);
    }
    let n = profile.ambient_dim() as f64;
    let d = m0 as f64 - k;
    finite("symmetric_case1_coarse", base * ((n - 2.0 * k + m0 as f64) / d).powf(d / 2.0))
}

/// `2^k ((n - 2k + m0)/(m0 - k))^((m0-k)/2)`; `2^k` when `m0 = k`.
pub fn bound_symmetric_case1_coarse(profile: &ProjectionProfile) -> Result<f64> {
    half_weight_gate(profile).enforce("symmetric_case1_coarse")?;
    symmetric_case1_coarse_formula(profile)
}

pub fn symmetric_case2_gate(n: usize, k: usize) -> Gate {
    Gate::check("n/2 <= k <= n", 2 * k >= n && k <= n)
}

/// `2^((n+k)/2)`, stated for `n/2 <= k <= n`.
pub fn bound_symmetric_case2(n: usize, k: usize) -> Result<f64> {
    if !symmetric_case2_gate(n, k).satisfied {
        return Err(BoundError::OutOfRegime {
            bound: "symmetric_case2",
            reason: format!("needs n/2 <= k <= n, got n = {n}, k = {k}"),
        });
    }
    Ok(symmetric_case2_formula(n, k))
}

pub fn symmetric_case2_formula(n: usize, k: usize) -> f64 {
    2f64.powf((n + k) as f64 / 2.0)
}

/// `2^k prod_J (c_j / ctilde_j)^(ctilde_j/2)`.
pub fn bound_ab_old(profile: &ProjectionProfile) -> Result<f64> {
    let log = profile.dim() as f64 * std::f64::consts::LN_2
        + profile
            .weights()
            .iter()
            .zip(profile.tilde_weights())
            .map(|(c, ct)| 0.5 * ct * (c / ct).ln())
            .sum::<f64>();
    finite("ab_old", log.exp())
}

/// `2 sum_J ctilde_j t_j`, an upper bound for `V_1(L ∩ H)`.
pub fn bound_mean_width(profile: &ProjectionProfile) -> Result<f64> {
    let s: f64 = profile
        .tilde_weights()
        .iter()
        .zip(profile.thresholds())
        .map(|(ct, t)| ct * t)
        .sum();
    finite("mean_width", 2.0 * s)
}

/// The two ways of bounding the same section: through Fourier transforms
/// (`symmetric_case1`) and through the direct inequality (`ab_old`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RouteComparison {
    pub parseval_route: f64,
    pub direct_route: f64,
}

pub fn compare_bl_direct_vs_parseval(profile: &ProjectionProfile) -> Result<RouteComparison> {
    half_weight_gate(profile).enforce("compare_bl_direct_vs_parseval")?;
    Ok(RouteComparison {
        parseval_route: symmetric_case1_formula(profile)?,
        direct_route: bound_ab_old(profile)?,
    })
}

/// `prod_{J_1} (Gamma(p_j - 1/2) / (sqrt(1 - ctilde_j) Gamma(p_j)))^(1 - ctilde_j)` with
/// `p_j = 1/(1 - ctilde_j)`; saturated indices contribute 1.
pub fn gamma_karamata_product(profile: &ProjectionProfile) -> Result<f64> {
    let mut log = 0.0;
    for &ct in profile.tilde_weights() {
        let defect = 1.0 - ct;
        if defect < SATURATION {
            continue;
        }
        let ratio = cauchy_power_integral(ct)? / (std::f64::consts::PI.sqrt() * defect.sqrt());
        log += defect * ratio.ln();
    }
    Ok(log.exp())
}
