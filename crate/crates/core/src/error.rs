use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("matrix is not Hermitian (defect {defect:e})")]
    NotHermitian { defect: f64 },

    #[error("matrix is not positive semidefinite (min eigenvalue {min_eigenvalue:e})")]
    NotPositive { min_eigenvalue: f64 },

    #[error("trace is {trace}, expected 1")]
    NotNormalized { trace: f64 },

    #[error("non-finite matrix entry")]
    NonFinite,

    #[error("Kraus family is not trace preserving (deviation {deviation:e})")]
    NotTracePreserving { deviation: f64 },

    #[error("invalid probability vector: {0}")]
    InvalidProbabilities(String),

    #[error("vector is not normalized (norm {norm})")]
    NotUnitVector { norm: f64 },

    #[error("basis does not decompose the channel: {0}")]
    NotDecomposable(String),

    #[error("witness unavailable; path hypothesis violated: {0}")]
    WitnessUnavailable(String),

    #[error("no recovery available: {0}")]
    NoRecovery(String),

    #[error("problem too large: {0}")]
    TooLarge(String),

    #[error("contract violated: {0}")]
    Contract(String),

    #[error("invalid input: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
