//! Bounds for sections of `K_p = {x : sum_j alpha_j |<x, v_j>|^p <= 1}`, `1 <= p <= 2`.

use std::f64::consts::{LN_2, PI};

use slicebound_bodies::KpSection;
use slicebound_specfun::{
    cauchy_power_integral, gamma_p, integrate_semi_infinite, ln_gamma, QuadratureOptions, SpecFunError,
};

use crate::error::{finite, BoundError, Result};
use crate::gate::Gate;
use crate::symmetric::SATURATION;

/// `vol_k(B_p^k) = (2 Gamma(1 + 1/p))^k / Gamma(1 + k/p)`.
pub fn unit_ball_volume(k: usize, p: f64) -> Result<f64> {
    Ok(log_unit_ball_volume(k, p)?.exp())
}

fn log_unit_ball_volume(k: usize, p: f64) -> Result<f64> {
    let k = k as f64;
    Ok(k * (LN_2 + ln_gamma(1.0 + 1.0 / p)?) - ln_gamma(1.0 + k / p)?)
}

pub fn k1_gate(section: &KpSection) -> Gate {
    Gate::check("p = 1", section.p() == 1.0)
}

fn lower_regime(bound: &'static str, section: &KpSection) -> Result<()> {
    let (m0, k) = (section.projection().m0(), section.dim());
    if m0 <= k {
        return Err(BoundError::Degenerate {
            bound,
            reason: format!("needs m0 > k, got m0 = {m0}, k = {k}"),
        });
    }
    Ok(())
}

/// `sum_J ctilde_j ln(sqrt(c_j) / alpha_j^(1/p))`.
fn log_weighted_base(section: &KpSection) -> f64 {
    let profile = section.projection().profile();
    profile
        .weights()
        .iter()
        .zip(profile.tilde_weights())
        .zip(section.alphas())
        .map(|((c, ct), a)| ct * (0.5 * c.ln() - a.ln() / section.p()))
        .sum()
}

/// `prod_J (sqrt(c_j)/alpha_j^(1/p))^(ctilde_j) vol_k(B_p^k)`.
pub fn bound_kp_upper(section: &KpSection) -> Result<f64> {
    let log = log_weighted_base(section) + log_unit_ball_volume(section.dim(), section.p())?;
    finite("kp_upper", log.exp())
}

/// `vol_k(B_1^k) prod_J (sqrt(c_j)/alpha_j)^(ctilde_j)`.
pub fn bound_k1_upper(section: &KpSection) -> Result<f64> {
    k1_gate(section).enforce("k1_upper")?;
    k1_upper_formula(section)
}

pub fn k1_upper_formula(section: &KpSection) -> Result<f64> {
    let log = log_weighted_base(section) + log_unit_ball_volume(section.dim(), 1.0)?;
    finite("k1_upper", log.exp())
}

/// The `k1_upper` product with the Cauchy-integral refinement over `J_1`:
/// `2^k/k! pi^(-(m0-k)/2) prod_J (sqrt(c_j)/alpha_j)^ctilde_j
///  prod_{J_1} (Gamma(p_j - 1/2) / (sqrt(1-ctilde_j) Gamma(p_j)))^(1-ctilde_j)`.
pub fn bound_k1_intermediate(section: &KpSection) -> Result<f64> {
    k1_gate(section).enforce("k1_intermediate")?;
    k1_intermediate_formula(section)
}

pub fn k1_intermediate_formula(section: &KpSection) -> Result<f64> {
    let profile = section.projection().profile();
    let d = profile.m0() as f64 - profile.dim() as f64;
    let mut log = log_weighted_base(section) + log_unit_ball_volume(section.dim(), 1.0)? - 0.5 * d * PI.ln();
    for &ct in profile.tilde_weights() {
        let defect = 1.0 - ct;
        if defect < SATURATION {
            continue;
        }
        let ratio = cauchy_power_integral(ct)? / (PI.sqrt() * defect.sqrt());
        log += defect * ratio.ln();
    }
    finite("k1_intermediate", log.exp())
}

/// `m0^m0 / (pi^((m0-k)/2) (sum_J alpha_j^2/c_j)^((m0+k)/2)) prod_J (alpha_j/sqrt(c_j))
///  Gamma((m0+k)/2) / Gamma(m0) vol_k(B_1^k)`.
pub fn bound_k1_lower(section: &KpSection) -> Result<f64> {
    k1_gate(section).enforce("k1_lower")?;
    k1_lower_formula(section)
}

pub fn k1_lower_formula(section: &KpSection) -> Result<f64> {
    lower_regime("k1_lower", section)?;
    let profile = section.projection().profile();
    let m0 = profile.m0() as f64;
    let k = profile.dim() as f64;
    let pairs = || profile.weights().iter().zip(section.alphas());
    let spread: f64 = pairs().map(|(c, a)| a * a / c).sum();
    let log = m0 * m0.ln() - 0.5 * (m0 - k) * PI.ln() - 0.5 * (m0 + k) * spread.ln()
        + pairs().map(|(c, a)| a.ln() - 0.5 * c.ln()).sum::<f64>()
        + ln_gamma(0.5 * (m0 + k))?
        - ln_gamma(m0)?
        + log_unit_ball_volume(profile.dim(), 1.0)?;
    finite("k1_lower", log.exp())
}

/// `prod_J (sqrt(c_j)/alpha_j^(1/p)) / (2 pi)^(m0-k) * pi^b (m0-k)^b / Gamma(b)
///  * int_0^inf t^(b-1) prod_J gamma_p(sqrt(t c_j (1-ctilde_j) / alpha_j^(2/p))) dt / Gamma(1 + k/p)`
/// with `b = (m0-k)/2`. The `t` integral is taken after substituting `t = u^2`.
pub fn bound_kp_lower(section: &KpSection) -> Result<f64> {
    bound_kp_lower_with(section, &QuadratureOptions::default().with_rel_tol(1e-9).with_abs_tol(0.0))
}

pub fn bound_kp_lower_with(section: &KpSection, opts: &QuadratureOptions) -> Result<f64> {
    lower_regime("kp_lower", section)?;
    let p = section.p();
    let profile = section.projection().profile();
    let k = profile.dim() as f64;
    let d = profile.m0() as f64 - k;
    let beta = 0.5 * d;
    let rates: Vec<f64> = profile
        .weights()
        .iter()
        .zip(profile.tilde_weights())
        .zip(section.alphas())
        .map(|((c, ct), a)| (c * (1.0 - ct).max(0.0) / a.powf(2.0 / p)).sqrt())
        .collect();

    let mut failure: Option<SpecFunError> = None;
    let integral = integrate_semi_infinite(
        |u| {
            let mut log = LN_2;
            if d > 1.0 {
                log += (2.0 * beta - 1.0) * u.ln();
            }
            for r in &rates {
                match gamma_p(p, u * r) {
                    Ok(g) if g > 0.0 => log += g.ln(),
                    Ok(_) => return 0.0,
                    Err(e) => {
                        failure.get_or_insert(e);
                        return 0.0;
                    }
                }
            }
            log.exp()
        },
        0.0,
        opts,
    )?;
    if let Some(e) = failure {
        return Err(e.into());
    }

    let prefactor: f64 = profile
        .weights()
        .iter()
        .zip(section.alphas())
        .map(|(c, a)| 0.5 * c.ln() - a.ln() / p)
        .sum();
    let log = prefactor - d * (2.0 * PI).ln() + beta * (PI.ln() + d.ln()) - ln_gamma(beta)?
        + integral.value.ln()
        - ln_gamma(1.0 + k / p)?;
    finite("kp_lower", log.exp())
}
