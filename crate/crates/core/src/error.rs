use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid exponent p = {0}: norms are defined for p in [1, inf]")]
    InvalidExponent(f64),

    #[error("matrix is not Hermitian (max deviation {0:e})")]
    NotHermitian(f64),

    #[error("non-finite entry at flat index {0}")]
    NonFinite(usize),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("size limit exceeded: {0}")]
    TooLarge(String),

    #[error("decomposition failed to converge: {0}")]
    Decomposition(String),

    #[error("unsupported norm pair (p, q) = ({p}, {q})")]
    UnsupportedNormPair { p: f64, q: f64 },

    #[error("graph is not vertex transitive")]
    NotVertexTransitive,

    #[error("malformed input: {0}")]
    Parse(String),

    #[error("I/O error on {path}: {message}")]
    Io { path: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
