//! Quadrature and one-dimensional special functions behind the section bounds:
//! the sinc power integral, Fourier transforms of interval indicators and
//! `exp(-|x|^p)`, the Gaussian sine integral and the Wills integrand.
//!
//! Everything here is a pure function of its arguments.

mod error;
pub mod fourier;
pub mod gamma;
pub mod quad;
pub mod sinc;
pub mod wills;

pub use error::{Result, SpecFunError};
pub use fourier::{exp_ft, gamma_p, indicator_ft};
pub use gamma::{cauchy_power_integral, factorial, gamma_fn, ln_gamma, ln_gamma_ratio};
pub use quad::{
    integrate, integrate_breaks, integrate_semi_infinite, QuadratureOptions, QuadratureResult,
};
pub use sinc::{ball_integral_bound_check, hurwitz_zeta, sinc_power_integral, sinc_power_integral_with, BallCheck};
pub use wills::{
    dist_sq_ft, gauss_sine_decay_constant, gauss_sine_integral, one_minus_s_gauss_sine,
    one_minus_s_gauss_sine_tabulated,
    wills_g, wills_integrand_a, wills_lp_norm, WillsIntegrandParams,
};
