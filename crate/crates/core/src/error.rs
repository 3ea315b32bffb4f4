use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    /// A Gamma/digamma argument landed on a nonpositive integer.
    #[error("pole: {0}")]
    Pole(String),

    #[error("binomial in denominator vanishes at j = {j} (bottom = {bottom})")]
    ZeroDenominator { j: u32, bottom: String },

    #[error("weight encoding: {0}")]
    Encoding(String),

    /// Parameter tuple outside an operation's (or identity's) domain.
    #[error("domain: {0}")]
    Domain(String),

    #[error("series diverges: {0}")]
    Divergent(String),

    #[error("series is not defined: {0}")]
    UndefinedSeries(String),

    #[error("series did not reach tolerance after {terms} terms")]
    NotConverged { terms: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
