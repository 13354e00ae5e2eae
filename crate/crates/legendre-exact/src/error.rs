use thiserror::Error;

/// Errors surfaced by exact-arithmetic operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("valuation of zero undefined")]
    ZeroValuation,
    #[error("zero polynomial has no {0}")]
    ZeroPolynomial(&'static str),
    #[error("division by zero in {0}")]
    DivisionByZero(&'static str),
    #[error("order of a mixed element at an unramified place is ambiguous without factoring in the extension")]
    AmbiguousOrder,
    #[error("elements live in different extensions")]
    MixedExtensions,
    #[error("{0}")]
    Unsupported(&'static str),
}
