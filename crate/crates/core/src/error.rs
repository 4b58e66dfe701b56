use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown group spec '{0}'; valid families: cyclic:n (n >= 2), binary-dihedral:m (m >= 2), binary-tetrahedral, binary-octahedral, binary-icosahedral")]
    UnknownSpec(String),
    /// Generator closure ran past the safety bound.
    #[error("group closure exceeded {bound} elements; the generators are wrong")]
    ClosureOverflow { bound: usize },
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("not an affine ADE diagram: {0}")]
    NotAffineAde(String),
    #[error("criterion out of the paper's stated scope: {0}")]
    OutOfScope(String),
    #[error("framing mismatch: {0:?} vs {1:?}")]
    FramingMismatch(Vec<i64>, Vec<i64>),
    #[error("cache error: {0}")]
    Cache(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
