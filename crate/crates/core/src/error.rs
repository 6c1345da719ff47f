use std::path::PathBuf;

use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot read base graph file {path}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("cannot write output: {0}")]
    Output(#[from] std::io::Error),
    #[error("malformed base graph data at line {line}: {reason}")]
    Malformed { line: usize, reason: String },
    #[error("duplicate entry at row {row}, column {col}")]
    DuplicateEntry { row: usize, col: usize },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("invalid lifting size {0}")]
    InvalidLiftingSize(usize),
    #[error("invalid code configuration: {0}")]
    InvalidConfig(String),
    #[error("expanded parity-check matrix too large ({cols} columns, limit {limit})")]
    TooLarge { cols: usize, limit: usize },
    #[error("encoder core is singular; base graph data is inconsistent")]
    SingularCore,
    #[error("message length {got} does not match K = {expected}")]
    MessageLength { got: usize, expected: usize },
    #[error("check node degree {0} is below 2")]
    DegreeTooSmall(usize),
    #[error("invalid schedule: {0}")]
    InvalidSchedule(String),
    #[error("invalid decoder parameter: {0}")]
    InvalidParameter(String),
    #[error("R-message row has more than two distinct magnitudes")]
    NotCompressible,
    #[error("LLR length {got} does not match code length {expected}")]
    LlrLength { got: usize, expected: usize },
    #[error("bit length {len} is not a multiple of {bits_per_symbol} bits per symbol")]
    SymbolLength { len: usize, bits_per_symbol: usize },
    #[error("simulation requested zero frames")]
    ZeroFrames,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
