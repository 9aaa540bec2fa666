use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not Hermitian (relative deviation {deviation:.3e})")]
    NotHermitian { deviation: f64 },

    #[error("matrix is not positive semidefinite (min eigenvalue {min_eigenvalue:.3e})")]
    NotPsd { min_eigenvalue: f64 },

    #[error("matrix is not positive definite (min eigenvalue {min_eigenvalue:.3e})")]
    NotPositiveDefinite { min_eigenvalue: f64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("geodesic weight must lie in [0, 1], got {0}")]
    InvalidWeight(f64),

    #[error("Schatten exponent must be >= 1, got {0}")]
    InvalidP(f64),

    #[error("Ky Fan index {k} outside 1..={max}")]
    InvalidK { k: usize, max: usize },

    #[error("block structure mismatch: {0}")]
    BlockMismatch(String),

    #[error("matrix data has {found} entries, expected {expected}")]
    DataLength { expected: usize, found: usize },

    #[error("matrix contains a non-finite entry")]
    NonFinite,

    #[error("invalid density state: {0}")]
    InvalidState(String),

    #[error("need at least {needed} observables, got {found}")]
    TooFewObservables { needed: usize, found: usize },
}
