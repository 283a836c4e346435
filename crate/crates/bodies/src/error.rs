use slicebound_decomp::DecompError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BodiesError {
    #[error("Sylvester construction needs a power-of-two order, got {0}")]
    UnsupportedOrder(usize),
    #[error("Hadamard system needs k a power of two and k <= n <= 2k, got k = {k}, n = {n}")]
    HadamardRange { k: usize, n: usize },
    #[error("dimension must be at least 1")]
    ZeroDimension,
    #[error("p = {0} is outside [1, 2]")]
    BadExponent(f64),
    #[error("{found} alphas given for {expected} vectors")]
    AlphaCount { expected: usize, found: usize },
    #[error("alpha[{index}] = {value} must be positive and finite")]
    BadAlpha { index: usize, value: f64 },
    #[error("determinant route gives {det_route}, closed form {closed_form}")]
    Inconsistent { det_route: f64, closed_form: f64 },
    #[error(transparent)]
    Decomp(#[from] DecompError),
}

pub type Result<T> = std::result::Result<T, BodiesError>;
