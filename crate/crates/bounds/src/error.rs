use slicebound_bodies::BodiesError;
use slicebound_decomp::DecompError;
use slicebound_specfun::SpecFunError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BoundError {
    #[error("{bound}: gate `{condition}` fails at indices {offending:?}")]
    Gate {
        bound: &'static str,
        condition: String,
        offending: Vec<usize>,
    },
    #[error("{bound}: out of regime: {reason}")]
    OutOfRegime { bound: &'static str, reason: String },
    #[error("{bound}: degenerate configuration: {reason}")]
    Degenerate { bound: &'static str, reason: String },
    #[error("{bound} needs {input}")]
    MissingInput { bound: &'static str, input: &'static str },
    #[error("{bound} evaluated to {value}")]
    NonFinite { bound: &'static str, value: f64 },
    #[error("unknown bound `{name}`; valid names: {valid}")]
    UnknownBound { name: String, valid: String },
    #[error(transparent)]
    SpecFun(#[from] SpecFunError),
    #[error(transparent)]
    Decomp(#[from] DecompError),
    #[error(transparent)]
    Bodies(#[from] BodiesError),
}

pub type Result<T> = std::result::Result<T, BoundError>;

pub(crate) fn finite(bound: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(BoundError::NonFinite { bound, value })
    }
}
