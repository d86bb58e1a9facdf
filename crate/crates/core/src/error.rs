use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("empty training set")]
    EmptyTrainingSet,

    #[error("ill-conditioned kernel matrix (factorization failed with jitter up to {max_jitter:e})")]
    IllConditioned { max_jitter: f64 },

    #[error("negative predictive variance {0:e}")]
    NegativeVariance(f64),

    #[error("objective returned non-finite value {value} at {point:?}")]
    NonFiniteObjective { point: Vec<f64>, value: f64 },

    #[error("copy fill-in requires at least one observation")]
    EmptyHistory,

    #[error("observed value {y} exceeds the claimed optimum {f_star}")]
    InconsistentOptimum { y: f64, f_star: f64 },

    #[error("length mismatch: {0}")]
    LengthMismatch(String),

    #[error("dataset error at line {line}: {message}")]
    Dataset { line: usize, message: String },

    #[error("config error: {0}")]
    Config(String),

    #[error("unknown {kind} '{name}'; available: {available}")]
    UnknownName {
        kind: &'static str,
        name: String,
        available: String,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn check_dim(expected: usize, got: usize) -> Result<()> {
        if expected == got {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected, got })
        }
    }
}
