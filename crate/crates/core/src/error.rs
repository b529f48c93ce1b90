use thiserror::Error;

/// Errors raised by the ring constructions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Two operands live over different generator profiles or ring handles.
    #[error("profile mismatch: {0}")]
    ProfileMismatch(String),
    /// A power series whose constant term is not 1 was inverted.
    #[error("series is not invertible: constant term is {0}")]
    NonInvertible(String),
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    /// An internal invariant of a ring construction failed. Seeing this
    /// means a construction is broken, not that the input was bad.
    #[error("internal consistency failure: {0}")]
    Consistency(String),
    /// An operation was called on input outside its domain, e.g. a
    /// stability probe on a tuple with a basepoint.
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("enumeration budget of {budget} exceeded")]
    Budget { budget: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
