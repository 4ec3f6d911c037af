use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },

    /// A statement-specific decision procedure was called outside the domain
    /// its hypotheses cover.
    #[error("hypothesis of `{rule}` not satisfied: {detail}")]
    Hypothesis { rule: &'static str, detail: String },

    #[error("numeric precondition violated: {0}")]
    Numeric(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn hypothesis(rule: &'static str, detail: impl Into<String>) -> Error {
    Error::Hypothesis {
        rule,
        detail: detail.into(),
    }
}
