use legendre_exact::ExactError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SectionError {
    #[error("point is not on the curve")]
    NotOnCurve,
    #[error("operation undefined at the identity")]
    IdentityPoint,
    #[error("curve is singular (zero discriminant)")]
    SingularCurve,
    #[error("section is torsion: {0}")]
    TorsionSection(&'static str),
    #[error("denominator decomposition does not have the expected shape: {0}")]
    DecompositionShape(String),
    #[error("precondition violated: {0}")]
    Precondition(&'static str),
    #[error(transparent)]
    Exact(#[from] ExactError),
}
