//! The Gaussian sine integral `I(s)` and the Fourier transform `A_alpha` of
//! `exp(-pi d(x, [-alpha, alpha])^2)`, plus the power integral `g(alpha) = int |A_alpha|^p`.

use std::f64::consts::PI;

use crate::error::{Result, SpecFunError};
use crate::fourier::indicator_ft;
use crate::gamma::ln_gamma;
use crate::quad::{integrate_breaks, uniform_breaks, QuadratureOptions, QuadratureResult};

/// Beyond this `|s|` the asymptotic series of `1 - s I(s)` is accurate to ~1e-20.
const ASYMPTOTIC_FROM: f64 = 25.0;

/// `exp(-pi y^2) < 1e-17` for `y` beyond this.
fn gauss_cutoff() -> f64 {
    (17.0 * std::f64::consts::LN_10 / PI).sqrt()
}

fn gauss_sine_quadrature(s: f64) -> f64 {
    let cutoff = gauss_cutoff();
    let width = if s.abs() > 1.0 { PI / s.abs() } else { cutoff };
    let breaks = uniform_breaks(0.0, cutoff, width);
    let opts = QuadratureOptions::default().with_abs_tol(1e-14).with_rel_tol(1e-12);
    // The integrand is smooth and bounded; the budget cannot realistically run out,
    // and if it does the partial sum is still far inside 1e-10.
    match integrate_breaks(|y| (-PI * y * y).exp() * (y * s).sin(), &breaks, &opts) {
        Ok(r) => r.value,
        Err(SpecFunError::Budget { value, .. }) => value,
        Err(_) => f64::NAN,
    }
}

/// `sum_{n>=1} (2n-1)!! (2 pi / s^2)^n`, so that `1 - s I(s) = -series`.
fn asymptotic_tail(s: f64) -> f64 {
    let x = 2.0 * PI / (s * s);
    let mut term = 1.0;
    let mut sum = 0.0;
    for n in 1..200 {
        let next = term * (2 * n - 1) as f64 * x;
        if next > term && n > 1 {
            break;
        }
        term = next;
        sum += term;
        if term < 1e-20 * sum {
            break;
        }
    }
    sum
}

/// `I(s) = int_0^inf exp(-pi y^2) sin(y s) dy`; odd in `s`.
pub fn gauss_sine_integral(s: f64) -> f64 {
    if s == 0.0 {
        return 0.0;
    }
    if s.abs() > ASYMPTOTIC_FROM {
        (1.0 + asymptotic_tail(s)) / s
    } else {
        gauss_sine_quadrature(s)
    }
}

/// `1 - s I(s)`, computed without cancellation for large `|s|`.
pub fn one_minus_s_gauss_sine(s: f64) -> f64 {
    if s.abs() > ASYMPTOTIC_FROM {
        -asymptotic_tail(s)
    } else {
        1.0 - s * gauss_sine_quadrature(s)
    }
}

const TABLE_PANEL: f64 = 0.5;
const TABLE_NODES: usize = 20;

/// Piecewise Chebyshev interpolant of the quadrature `I(s)` on `[0, ASYMPTOTIC_FROM]`.
///
/// `A_alpha` is evaluated millions of times inside `wills_g`; each panel is built
/// once from `TABLE_NODES` quadrature values and is accurate to a few ulps.
struct GaussSineTable {
    panels: Vec<[f64; TABLE_NODES]>,
}

impl GaussSineTable {
    fn build() -> Self {
        let count = (ASYMPTOTIC_FROM / TABLE_PANEL).ceil() as usize;
        let n = TABLE_NODES as f64;
        let panels = (0..count)
            .map(|i| {
                let (a, b) = (i as f64 * TABLE_PANEL, (i + 1) as f64 * TABLE_PANEL);
                let values: Vec<f64> = (0..TABLE_NODES)
                    .map(|k| {
                        let x = (PI * (k as f64 + 0.5) / n).cos();
                        gauss_sine_quadrature(0.5 * (a + b) + 0.5 * (b - a) * x)
                    })
                    .collect();
                let mut coeffs = [0.0; TABLE_NODES];
                for (j, c) in coeffs.iter_mut().enumerate() {
                    let sum: f64 = values
                        .iter()
                        .enumerate()
                        .map(|(k, v)| v * (PI * j as f64 * (k as f64 + 0.5) / n).cos())
                        .sum();
                    *c = 2.0 * sum / n;
                }
                coeffs
            })
            .collect();
        Self { panels }
    }

    /// `s` in `[0, ASYMPTOTIC_FROM]`.
    fn eval(&self, s: f64) -> f64 {
        let i = ((s / TABLE_PANEL) as usize).min(self.panels.len() - 1);
        let a = i as f64 * TABLE_PANEL;
        let x = 2.0 * (s - a) / TABLE_PANEL - 1.0;
        let coeffs = &self.panels[i];
        let (mut b1, mut b2) = (0.0, 0.0);
        for &c in coeffs.iter().skip(1).rev() {
            let b0 = 2.0 * x * b1 - b2 + c;
            b2 = b1;
            b1 = b0;
        }
        x * b1 - b2 + 0.5 * coeffs[0]
    }
}

fn table() -> &'static GaussSineTable {
    static TABLE: std::sync::OnceLock<GaussSineTable> = std::sync::OnceLock::new();
    TABLE.get_or_init(GaussSineTable::build)
}

/// `1 - s I(s)` from the interpolation table; agrees with
/// [`one_minus_s_gauss_sine`] to about 1e-14.
pub fn one_minus_s_gauss_sine_tabulated(s: f64) -> f64 {
    let a = s.abs();
    if a > ASYMPTOTIC_FROM {
        -asymptotic_tail(s)
    } else {
        1.0 - a * table().eval(a)
    }
}

/// `sup_{0 <= s <= s_max} |1 - s I(s)| (1 + s^2)` on a uniform grid of the given step.
/// The decay lemma only asserts that such a constant exists; this measures it.
pub fn gauss_sine_decay_constant(s_max: f64, step: f64) -> f64 {
    let n = (s_max / step).round() as usize;
    (0..=n)
        .map(|i| {
            let s = i as f64 * step;
            one_minus_s_gauss_sine(s).abs() * (1.0 + s * s)
        })
        .fold(0.0, f64::max)
}

/// Fourier transform of `exp(-pi d^2(x, [-alpha, alpha]))`.
pub fn dist_sq_ft(alpha: f64, z: f64) -> f64 {
    if z == 0.0 {
        return 2.0 * alpha + 1.0;
    }
    // a + c = 2 sin(alpha z) (1 - z I(z)) / z
    indicator_ft(alpha, z) * one_minus_s_gauss_sine_tabulated(z) + (alpha * z).cos() * (-z * z / (4.0 * PI)).exp()
}

/// Parameters of the Wills integrand: the half-width `alpha` and exponent `p`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WillsIntegrandParams {
    alpha: f64,
    p: f64,
}

impl WillsIntegrandParams {
    /// `alpha >= 0` (zero gives the pure Gaussian profile) and `p > 1`.
    pub fn new(alpha: f64, p: f64) -> Result<Self> {
        if !(p > 1.0) || !p.is_finite() {
            return Err(SpecFunError::Divergent { p, min: 1.0 });
        }
        if !(alpha >= 0.0) || !alpha.is_finite() {
            return Err(SpecFunError::Domain {
                name: "wills alpha",
                value: alpha,
            });
        }
        Ok(Self { alpha, p })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn p(&self) -> f64 {
        self.p
    }
}

/// `A_alpha(s) = 2 sin(alpha s)/s + cos(alpha s) exp(-s^2 / 4pi) - 2 sin(alpha s) I(s)`.
pub fn wills_integrand_a(params: &WillsIntegrandParams, s: f64) -> f64 {
    dist_sq_ft(params.alpha, s)
}

/// Mean of `|sin|^p` over a period.
fn mean_abs_sin_pow(p: f64) -> Result<f64> {
    Ok((ln_gamma(0.5 * (p + 1.0))? - ln_gamma(0.5 * p + 1.0)?).exp() / PI.sqrt())
}

/// `g(alpha) = int_R |A_alpha(s)|^p ds`.
///
/// The Gaussian part is negligible past `sqrt(160 pi / p)`. The oscillating part
/// decays like `4 pi |sin(alpha s)| / |s|^3`; it is integrated numerically over a few
/// hundred periods and the rest is replaced by its period average, whose error is
/// folded into the estimate.
pub fn wills_g(params: &WillsIntegrandParams) -> Result<QuadratureResult> {
    wills_g_scaled(params, 1.0)
}

/// `||A_alpha||_p = g(alpha)^(1/p)`, computed from `|A / (2 alpha + 1)|^p` so that
/// large `p` does not overflow.
pub fn wills_lp_norm(params: &WillsIntegrandParams) -> Result<f64> {
    let peak = 2.0 * params.alpha + 1.0;
    let scaled = wills_g_scaled(params, peak)?;
    Ok(peak * scaled.value.powf(1.0 / params.p))
}

/// `int_R |A_alpha(s) / scale|^p ds`.
fn wills_g_scaled(params: &WillsIntegrandParams, scale: f64) -> Result<QuadratureResult> {
    let WillsIntegrandParams { alpha, p } = *params;
    let gauss_end = (160.0 * PI / p).sqrt();
    let opts = QuadratureOptions::default()
        .with_abs_tol(1e-10 * scale.powf(-p))
        .with_rel_tol(1e-12)
        .with_max_intervals(400_000);
    let integrand = |s: f64| (dist_sq_ft(alpha, s) / scale).abs().powf(p);

    if alpha == 0.0 {
        let breaks = uniform_breaks(0.0, gauss_end, 1.0);
        return Ok(integrate_breaks(integrand, &breaks, &opts)?.scaled(2.0));
    }

    let period = PI / alpha;
    // Past this point even the crude envelope leaves less than 1e-12 behind.
    let negligible_from = (2.0 * (4.4 * PI).powf(p) / ((3.0 * p - 1.0) * 1e-12)).powf(1.0 / (3.0 * p - 1.0));
    let end = gauss_end.max(50.0).max((400.0 * period).min(negligible_from));
    // Panels of one half-period keep each kink of |sin|^p at a panel edge.
    let mut breaks: Vec<f64> = (0..)
        .map(|i| i as f64 * period)
        .take_while(|&s| s < end)
        .collect();
    breaks.push(end);
    let body = integrate_breaks(integrand, &breaks, &opts)?;

    // Averaged tail over [end, inf): mean(|sin|^p) * int (4 pi / s^3)^p ds, using
    // 1 - sI ~ -2 pi / s^2. The averaging error is at most one period of the
    // envelope; the asymptotic error is relative O(6 pi p / s^2).
    let envelope_at_end = (4.0 * PI / (end.powi(3) * scale)).powf(p);
    let tail = mean_abs_sin_pow(p)? * envelope_at_end * end / (3.0 * p - 1.0);
    let tail_error = envelope_at_end * period.min(end) + tail * 6.0 * PI * p / (end * end);

    Ok(QuadratureResult {
        value: 2.0 * (body.value + tail),
        abs_error_estimate: 2.0 * (body.abs_error_estimate + tail_error),
        evaluations: body.evaluations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_sine_is_odd_and_zero_at_origin() {
        assert_eq!(gauss_sine_integral(0.0), 0.0);
        for s in [0.3, 2.0, 17.0, 40.0] {
            assert_eq!(gauss_sine_integral(-s), -gauss_sine_integral(s));
        }
    }

    #[test]
    fn table_matches_quadrature() {
        for i in 0..=2600 {
            let s = i as f64 * 0.01 + 0.003;
            let direct = one_minus_s_gauss_sine(s);
            let tab = one_minus_s_gauss_sine_tabulated(s);
            assert!((direct - tab).abs() < 1e-13, "s = {s}: {direct} vs {tab}");
            assert_eq!(tab, one_minus_s_gauss_sine_tabulated(-s));
        }
    }

    #[test]
    fn lp_norm_matches_g_and_survives_large_p() {
        let params = WillsIntegrandParams::new(0.7, 2.0).unwrap();
        let g = wills_g(&params).unwrap().value;
        assert!((wills_lp_norm(&params).unwrap() - g.sqrt()).abs() < 1e-10);
        let big = WillsIntegrandParams::new(3.0, 5e4).unwrap();
        let norm = wills_lp_norm(&big).unwrap();
        assert!(norm.is_finite() && norm < 7.0 && norm > 6.9, "{norm}");
    }

    #[test]
    fn branches_agree_at_switch() {
        let s = ASYMPTOTIC_FROM;
        let quad = 1.0 - s * gauss_sine_quadrature(s);
        let asym = -asymptotic_tail(s);
        assert!((quad - asym).abs() < 1e-12, "{quad} vs {asym}");
    }

    #[test]
    fn dist_sq_ft_at_origin_and_nearby() {
        assert_eq!(dist_sq_ft(1.0, 0.0), 3.0);
        assert!((dist_sq_ft(1.0, 1e-10) - 3.0).abs() < 1e-6);
    }

    #[test]
    fn alpha_zero_is_gaussian() {
        let params = WillsIntegrandParams::new(0.0, 2.0).unwrap();
        for s in [0.5, 3.0, 10.0] {
            let a = wills_integrand_a(&params, s);
            assert!((a - (-s * s / (4.0 * PI)).exp()).abs() < 1e-15);
            assert!(a > 0.0);
        }
    }

    #[test]
    fn params_reject_bad_inputs() {
        assert!(WillsIntegrandParams::new(1.0, 1.0).is_err());
        assert!(WillsIntegrandParams::new(-1.0, 2.0).is_err());
    }
}
