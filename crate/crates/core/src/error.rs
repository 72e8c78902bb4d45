use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not invertible series: constant term is zero")]
    NotInvertible,
    #[error("composition requires delta series (inner series has nonzero constant term)")]
    CompositionNeedsDelta,
    #[error("not a delta series with unit linear part: order is {order}")]
    NotDelta { order: String },
    #[error("domain error: constant term is {constant}, expected {expected}")]
    Domain { constant: String, expected: &'static str },
    #[error("rational power undefined: exponent {exponent} needs constant term 1, found {constant}")]
    RationalPowerUndefined { exponent: String, constant: String },
    #[error("series too short for polynomial degree: need order {needed}, have {available}")]
    SeriesTooShort { needed: usize, available: usize },
    #[error("x^{{-1}} undefined: constant term is {constant}")]
    XInverseUndefined { constant: String },
    #[error("negative index {0}")]
    NegativeIndex(i64),
    #[error("{0}")]
    InvalidParameter(String),
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),
    #[error("parameters out of domain for `{id}`: {reason}")]
    OutOfDomain { id: String, reason: String },
}

impl Error {
    /// True for errors caused by a truncation order that is too small, as
    /// opposed to malformed input.
    pub fn is_insufficient_order(&self) -> bool {
        matches!(self, Error::SeriesTooShort { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
