use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("index ({ell}, {m}, {radial}) outside band")]
    IndexOutOfBand { ell: i64, m: i64, radial: i64 },
    #[error("band mismatch: {0}")]
    BandMismatch(String),
    #[error("dimension {dim} too large for the dense path (limit {limit})")]
    Dimension { dim: usize, limit: usize },
    #[error("eigenvalue {value:e} outside [-1e-9, 1+1e-9] in block {block}")]
    EigenvalueOutOfRange { value: f64, block: String },
    #[error("eigensolver did not converge on block {0}")]
    NonConvergence(String),
    #[error("regions overlap: {0}")]
    Overlap(String),
    #[error("format error: {0}")]
    Format(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
