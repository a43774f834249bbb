use thiserror::Error;

/// Errors produced by the simulation library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("parameter out of range: {0}")]
    Domain(String),

    #[error("matrix is not Hermitian (max deviation {0:.3e})")]
    NotHermitian(f64),

    #[error("channel is not CPTP: {0}")]
    NotCptp(String),

    #[error("invalid Choi matrix: {0}")]
    InvalidChoi(String),

    #[error("code construction failed: {0}")]
    Construction(String),

    #[error("sampler exceeded {retries} redraws at target fidelity {f0}")]
    SamplerExhausted { f0: f64, retries: u64 },

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("{0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
