use thiserror::Error;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("Monte-Carlo estimates need at least {min} samples, got {got}")]
    TooFewSamples { got: u64, min: u64 },
    #[error("polytope is unbounded: constraint normals span only {rank} of {dim} dimensions")]
    Unbounded { rank: usize, dim: usize },
    #[error("{what} supports dimension at most {max}, got {dim}")]
    Unsupported { what: &'static str, dim: usize, max: usize },
    #[error("polytope has no vertices; it is empty or degenerate")]
    NoVertices,
    #[error("Parseval gate failed: {0}")]
    Gate(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error(transparent)]
    SpecFun(#[from] slicebound_specfun::SpecFunError),
    #[error(transparent)]
    Decomp(#[from] slicebound_decomp::DecompError),
    #[error(transparent)]
    Bodies(#[from] slicebound_bodies::BodiesError),
}

pub type Result<T> = std::result::Result<T, OracleError>;
