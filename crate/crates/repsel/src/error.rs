use std::path::PathBuf;

/// Crate-wide error type.
///
/// The CLI maps variants onto its exit-code contract: invalid arguments
/// exit 2, data validation failures exit 3, everything else exits 1.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("cannot read `{path}`: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error("cannot write `{path}`: {source}")]
    Write {
        path: PathBuf,
        source: std::io::Error,
    },

    /// A feature cell that does not parse as a finite number. `row` is the
    /// 1-based line number in the file (the header is line 1).
    #[error("row {row}, column `{column}`: `{value}` is not a finite number")]
    BadCell {
        row: u64,
        column: String,
        value: String,
    },

    #[error("dimension mismatch: {left} vs {right} columns")]
    DimensionMismatch { left: usize, right: usize },

    /// Malformed or unusable input data (exit 3 in the CLI).
    #[error("{0}")]
    InvalidData(String),

    /// A caller-supplied parameter outside its contract (exit 2 in the CLI).
    #[error("{0}")]
    InvalidArgument(String),

    #[error("{0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn invalid_data(msg: impl Into<String>) -> Self {
        Error::InvalidData(msg.into())
    }

    pub fn invalid_argument(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    /// Exit code for the CLI: 2 for argument errors, 3 for data validation
    /// errors, 1 for anything else.
    pub fn exit_code(&self) -> u8 {
        match self {
            Error::InvalidArgument(_) => 2,
            Error::Read { .. }
            | Error::BadCell { .. }
            | Error::DimensionMismatch { .. }
            | Error::InvalidData(_) => 3,
            Error::Write { .. } | Error::Internal(_) => 1,
        }
    }
}
