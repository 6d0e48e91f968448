use thiserror::Error;

/// Errors raised by computations, generators and verifiers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("arithmetic overflow during {0}")]
    Overflow(&'static str),

    /// A division that must be exact left a remainder.
    #[error("inexact division: {numerator} / {denominator}")]
    InexactDivision { numerator: String, denominator: String },

    #[error("resource limit exceeded: {what} = {requested} is above the cap {cap}")]
    ResourceLimit {
        what: &'static str,
        requested: u64,
        cap: u64,
    },

    #[error("domain violation: {0}")]
    DomainViolation(String),

    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),

    #[error("unknown bijection `{0}`")]
    UnknownBijection(String),

    #[error("cannot parse `{input}`: {reason}")]
    Parse { input: String, reason: String },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::DomainViolation(msg.into())
    }

    pub(crate) fn limit(what: &'static str, requested: impl TryInto<u64>, cap: impl TryInto<u64>) -> Self {
        Error::ResourceLimit {
            what,
            requested: requested.try_into().unwrap_or(u64::MAX),
            cap: cap.try_into().unwrap_or(u64::MAX),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
