use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("variable x{var} out of range for a {n}-variable function")]
    VarOutOfRange { var: u32, n: u32 },

    #[error("{n} variables exceed the truth-table limit of {max}")]
    TableTooLarge { n: u32, max: u32 },

    #[error("weight {m} out of range for {n} variables")]
    WeightOutOfRange { m: u64, n: u32 },

    #[error("operation undefined for the zero-weight function")]
    ZeroWeight,

    #[error("{n} variables exceed the DP limit of {limit} (3^n memo)")]
    DpLimitExceeded { n: u32, limit: u32 },

    #[error("{n} variables exceed the exact-measure limit of {limit}")]
    MeasureLimitExceeded { n: u32, limit: u32 },

    #[error("{strategy} strategy precondition violated: requires {hypothesis}")]
    Precondition {
        strategy: &'static str,
        hypothesis: String,
    },

    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    #[error("parameter out of domain: {0}")]
    Domain(String),

    #[error("strategy disagrees with f on input {input}: expected {expected}, got {got}")]
    StrategyMismatch { input: u64, expected: u8, got: u8 },

    #[error("strategy queried x{var} twice")]
    StrategyRequery { var: u32 },

    #[error("strategy did not terminate within {n} queries")]
    StrategyOverrun { n: u32 },

    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Shorthand for a domain-violation error.
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
