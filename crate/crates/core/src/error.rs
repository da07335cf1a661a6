use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    Param(String),

    #[error("invalid state: {0}")]
    State(String),

    #[error("universe too small: n = {n}, this strategy needs n >= {required}")]
    UniverseTooSmall { n: u32, required: u64 },

    #[error("rule violation: {0}")]
    RuleViolation(String),

    #[error("strategy {strategy} forfeits: {reason}")]
    Forfeit { strategy: String, reason: String },

    #[error("resource limit: {0}")]
    Resource(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::Param(msg.into())
    }

    pub(crate) fn state(msg: impl Into<String>) -> Self {
        Error::State(msg.into())
    }

    pub(crate) fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }
}
