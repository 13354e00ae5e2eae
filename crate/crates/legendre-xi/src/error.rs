use legendre_exact::ExactError;
use legendre_sections::SectionError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum XiError {
    #[error("Ξ singular at 2-torsion (y = 0)")]
    TwoTorsion,
    #[error("x − λ vanishes identically: Ξ undefined on this section")]
    AbscissaEqualsLambda,
    #[error("section is torsion (Ξ vanishes identically)")]
    TorsionSection,
    #[error("multiplicity bound violated: {0}")]
    BoundViolated(String),
    #[error("precondition violated: {0}")]
    Precondition(&'static str),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Section(#[from] SectionError),
}
