use thiserror::Error;

/// Errors produced across the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot parse `{token}`: {reason}")]
    Parse { token: String, reason: String },

    #[error("value must be greater than 1, got {0}")]
    NotAboveOne(String),

    #[error("expansion `{0}` ends in a repeating block of 9s")]
    AllNinesPeriod(String),

    #[error("operand {value} is below the required minimum {min}")]
    OperandTooSmall { value: String, min: u32 },

    #[error("modulus must be at least 2")]
    BadModulus,

    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),

    #[error("unsupported sequence {name}: {reason}")]
    UnsupportedSequence {
        name: &'static str,
        reason: &'static str,
    },

    /// `last_complete` is the last index whose term fit the budget.
    #[error("digit budget of {budget} digits exceeded after n = {last_complete}")]
    DigitBudget { last_complete: u32, budget: u64 },

    #[error("hypothesis not met: {0}")]
    HypothesisNotMet(String),

    #[error("resource limit: {0}")]
    Resource(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn parse(token: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Parse {
            token: token.into(),
            reason: reason.into(),
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
