use thiserror::Error;

/// Errors surfaced by every layer of the verifier.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid instance (p = {p}, n = {n}): {reason}")]
    InvalidInstance { p: u64, n: u64, reason: String },

    /// A certified comparison or quotient stayed ambiguous up to the precision ceiling.
    #[error("precision exhausted: {what} still undecided at {ceiling_bits} bits")]
    PrecisionExhausted { what: String, ceiling_bits: u32 },

    /// The input interval of a continued-fraction expansion is too wide to
    /// certify the next partial quotient.
    #[error("partial quotient {index} is ambiguous at the given input width")]
    QuotientAmbiguous { index: usize },

    #[error("interval contains zero where a nonzero value is required")]
    DivisionByZeroInterval,

    #[error("logarithm of a non-positive interval")]
    LogOfNonPositive,

    #[error("exact evaluation would need about {bits} bits, budget is {budget}")]
    BudgetExceeded { bits: u64, budget: u64 },

    #[error("fixed-point bound could not be certified: {0}")]
    FixedPointUncertified(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("checkpoint refused: {0}")]
    Checkpoint(String),

    #[error("i/o error: {0}")]
    Io(String),

    #[error("report parse error: {0}")]
    Parse(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
