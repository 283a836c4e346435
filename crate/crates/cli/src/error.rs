use std::io;

use thiserror::Error;

/// Structural failures. All of them map to exit code 1.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot access {path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("malformed JSON in {origin}: {message}")]
    Json { origin: String, message: String },
    #[error(transparent)]
    Decomp(#[from] slicebound_decomp::DecompError),
    #[error(transparent)]
    Bodies(#[from] slicebound_bodies::BodiesError),
    #[error(transparent)]
    Bounds(#[from] slicebound_bounds::BoundError),
    #[error(transparent)]
    Oracle(#[from] slicebound_oracle::OracleError),
    #[error("{0}")]
    Usage(String),
}

pub type Result<T> = std::result::Result<T, CliError>;

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        CliError::Usage(message.into())
    }

    pub fn io(path: impl Into<String>, source: io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }

    /// Wraps a serde error, keeping the dotted path of the field that failed.
    pub fn json<E: std::fmt::Display>(origin: &str, err: serde_path_to_error::Error<E>) -> Self {
        let path = err.path().to_string();
        let message = if path == "." {
            err.inner().to_string()
        } else {
            format!("field `{path}`: {}", err.inner())
        };
        CliError::Json {
            origin: origin.to_owned(),
            message,
        }
    }
}
