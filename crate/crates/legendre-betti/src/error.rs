use thiserror::Error;

#[derive(Debug, Error)]
pub enum BettiError {
    #[error("singular fiber at λ = {0} (distance {1:.2e} below cutoff)")]
    SingularFiber(num_complex::Complex64, f64),
    #[error("degenerate period frame (fundamental area ≈ 0)")]
    DegenerateFrame,
    #[error("point at infinity has no finite elliptic logarithm")]
    PointAtInfinity,
    #[error("point does not satisfy the fiber equation (residual {0:.2e})")]
    NotOnFiber(f64),
    #[error("λ inside the exclusion radius {0}: use the tail bound instead")]
    ExclusionRadius(f64),
    #[error("precision loss: {0}")]
    PrecisionLoss(&'static str),
    #[error("requested tolerance {requested} unreachable (achieved {achieved})")]
    ToleranceUnreachable { requested: f64, achieved: f64 },
    #[error("vanishing order indeterminate: {0}")]
    IndeterminateOrder(&'static str),
    #[error("precondition violated: {0}")]
    Precondition(&'static str),
    #[error(transparent)]
    Exact(#[from] legendre_exact::ExactError),
    #[error(transparent)]
    Section(#[from] legendre_sections::SectionError),
    #[error(transparent)]
    Xi(#[from] legendre_xi::XiError),
}
