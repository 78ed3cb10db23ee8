use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension must be at least 2 (got {0})")]
    DimensionTooSmall(usize),

    #[error("{what}: expected {expected}, found {found}")]
    DimensionMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("expected {expected} parties, found {found}")]
    PartyCount { expected: String, found: usize },

    #[error("generator index {index} out of range for SU({dim}) basis of size {size}")]
    IndexOutOfRange {
        index: usize,
        dim: usize,
        size: usize,
    },

    #[error("matrix is not Hermitian: max |A - A^dagger| = {deviation:e}")]
    NotHermitian { deviation: f64 },

    #[error("trace is not 1: |tr - 1| = {deviation:e}")]
    TraceNotUnit { deviation: f64 },

    #[error("matrix is not positive semidefinite: smallest eigenvalue is -{deviation:e}")]
    NotPositive { deviation: f64 },

    #[error("matrix is not in SU(d): {0}")]
    NotSpecialUnitary(String),

    #[error("adjoint rotation is not special orthogonal: {0}")]
    NotSpecialOrthogonal(String),

    #[error("imaginary residue {residue:e} exceeds {limit:e} in {context}")]
    ImaginaryResidue {
        residue: f64,
        limit: f64,
        context: String,
    },

    #[error("invalid pivot {0}; expected 1, 2 or 3")]
    InvalidPivot(usize),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("rank {rank} out of range 1..={max}")]
    RankOutOfRange { rank: usize, max: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("fingerprints are not comparable: {0}")]
    Incomparable(String),
}
