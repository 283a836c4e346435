use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpecFunError {
    #[error("integral diverges for p = {p} (need p > {min})")]
    Divergent { p: f64, min: f64 },
    #[error("{name} is undefined at {value}")]
    Domain { name: &'static str, value: f64 },
    #[error("{name}: p = {p} outside the supported range [{lo}, {hi}]")]
    UnsupportedRange {
        name: &'static str,
        p: f64,
        lo: f64,
        hi: f64,
    },
    #[error("{name} requires p >= {min}, got {p}")]
    Gate { name: &'static str, p: f64, min: f64 },
    #[error("integrand returned a non-finite value at x = {at}")]
    NonFinite { at: f64 },
    #[error("quadrature budget of {intervals} intervals exhausted (value {value}, error {error:e})")]
    Budget {
        intervals: usize,
        value: f64,
        error: f64,
    },
}

pub type Result<T> = std::result::Result<T, SpecFunError>;
