use std::path::PathBuf;

use thiserror::Error;

/// Everything that makes the CLI exit with status 1.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("matrix is not square: {0}")]
    NonSquare(String),
    #[error("file contains no numbers")]
    EmptyFile,
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] nekrasov_lcp::Error),
}
