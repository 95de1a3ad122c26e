use thiserror::Error;

use crate::tower::Rat;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid rational: denominator {0} is not a positive integer")]
    InvalidRational(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("tolerance must be positive, got {0}")]
    InvalidTolerance(Rat),
    #[error("apartness witness rejected: {0}")]
    InvalidApartness(String),
    #[error("denominator sequence is zero at every index up to {0}")]
    EmptyQuotient(usize),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("invalid interval: lower end {0} exceeds upper end {1}")]
    InvalidInterval(String, String),
    #[error("cannot parse rational literal {0:?}")]
    ParseRational(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Rejects non-positive tolerances.
pub(crate) fn require_positive(eps: &Rat) -> Result<()> {
    if eps.is_positive() {
        Ok(())
    } else {
        Err(Error::InvalidTolerance(eps.clone()))
    }
}
