use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("pole at specialization q = {0}")]
    PoleAtSpecialization(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("dimension mismatch: {0}")]
    DimensionError(String),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("singular matrix: {0}")]
    Singular(String),
    #[error("the partial transpose of R is singular")]
    SingularSecondInverse,
    #[error("uv is not a scalar multiple of the identity")]
    NotRibbonScalar,
    #[error("ribbon scalar {0} has no monomial square root")]
    NoCanonicalRoot(String),
    #[error("no invertible metric for any monomial lambda^2")]
    NoMetric,
    #[error("metric is ambiguous: {0}")]
    AmbiguousMetric(String),
    #[error("R is not q-Hecke")]
    NotHecke,
    #[error("operator does not preserve the relation ideal: {0}")]
    NotCovariant(String),
    #[error("layout mismatch: {0}")]
    LayoutError(String),
    #[error("unknown model '{0}'")]
    UnknownModel(String),
    #[error("model validation failed: {0}")]
    ModelValidation(String),
    #[error("elements belong to different models")]
    ModelMismatch,
    #[error("lambda is not available in Q(q): {0}")]
    LambdaNotRational(String),
    #[error("{0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;
