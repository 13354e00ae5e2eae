use legendre_exact::ExactError;
use legendre_sections::SectionError;
use legendre_xi::XiError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum RothError {
    #[error("series precision exhausted: need coefficients through exponent {needed}, trusted only below {have}; expand deeper")]
    PrecisionExhausted { needed: i64, have: i64 },
    #[error("seed is a multiple root of the leading-order equation: branch unsupported")]
    DegenerateSeed,
    #[error("division by zero: {0}")]
    ZeroDivision(&'static str),
    #[error("precondition violated: {0}")]
    Precondition(&'static str),
    #[error("bound violated: {0}")]
    BoundViolated(String),
    #[error("not an S-unit: {0}")]
    NotSUnit(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Section(#[from] SectionError),
    #[error(transparent)]
    Xi(#[from] XiError),
}
