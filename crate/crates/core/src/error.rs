use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid group spec `{spec}`: {reason}")]
    InvalidSpec { spec: String, reason: String },

    #[error("closure exceeds the cap of {cap} elements")]
    ClosureTooLarge { cap: usize },

    #[error("invalid group table: {0}")]
    InvalidGroup(String),

    #[error("element index {index} out of range for group of order {order}")]
    IndexOutOfRange { index: usize, order: usize },

    #[error("class functions belong to different groups")]
    GroupMismatch,

    #[error("work budget exceeded: projected {projected} operations, budget {budget}")]
    BudgetExceeded { projected: u128, budget: u128 },

    #[error("value is not rational: {0}")]
    NotRational(String),

    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },

    #[error("character table provider `{provider}` cannot be used here: {reason}")]
    ProviderMismatch { provider: String, reason: String },

    #[error("character table rejected: {0}")]
    TableRejected(String),

    #[error("corrupt character table: {0}")]
    CorruptTable(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("search failed: {0}")]
    SearchFailed(String),

    #[error("methods disagree: {0}")]
    Disagreement(String),

    #[error("i/o error on {path}: {message}")]
    Io { path: String, message: String },
}

impl Error {
    pub(crate) fn spec(spec: &str, reason: impl Into<String>) -> Self {
        Error::InvalidSpec {
            spec: spec.to_string(),
            reason: reason.into(),
        }
    }

    pub(crate) fn parse(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            location: location.into(),
            message: message.into(),
        }
    }
}
