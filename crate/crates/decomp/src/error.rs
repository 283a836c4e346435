use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DecompError {
    #[error("dimension must be at least 1")]
    ZeroDimension,
    #[error("vector {index} has length {found}, expected {expected}")]
    DimensionMismatch {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("{vectors} vectors but {weights} weights")]
    CountMismatch { vectors: usize, weights: usize },
    #[error("need at least dim = {dim} vectors, got {count}")]
    TooFewVectors { count: usize, dim: usize },
    #[error("at most {max} vectors are supported, got {count}")]
    TooManyVectors { count: usize, max: usize },
    #[error("weight {index} must be positive and finite, got {value}")]
    BadWeight { index: usize, value: f64 },
    #[error("vector {index} has a non-finite entry")]
    NonFinite { index: usize },
    #[error("subspace basis is rank deficient (row {row})")]
    RankDeficient { row: usize },
    #[error("coordinate index {index} out of range for ambient dimension {ambient}")]
    CoordinateOutOfRange { index: usize, ambient: usize },
    #[error("subspace lives in R^{found} but the decomposition in R^{expected}")]
    AmbientMismatch { expected: usize, found: usize },
    #[error("subspace dimension {k} must lie in 1..={ambient}")]
    BadSubspaceDimension { k: usize, ambient: usize },
    #[error("projected frame rows are not orthonormal (residual {residual:e} > {tolerance:e})")]
    RowsNotOrthonormal { residual: f64, tolerance: f64 },
    #[error("decomposition is not centered: |sum c_j u_j| = {residual:e} > {tolerance:e}")]
    NotCentered { residual: f64, tolerance: f64 },
    #[error("projected system has m0 = {m0} < k = {k}")]
    TooFewProjected { m0: usize, k: usize },
    #[error("invalid profile: {0}")]
    BadProfile(String),
}

pub type Result<T> = std::result::Result<T, DecompError>;
