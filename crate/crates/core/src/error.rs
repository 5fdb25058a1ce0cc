use crate::Scalar;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("grade overflow: {0} + {1} exceeds 4")]
    GradeOverflow(usize, usize),
    #[error("grade out of range: {0}")]
    GradeOutOfRange(usize),
    #[error("grade mismatch: expected {expected}, found {found}")]
    GradeMismatch { expected: usize, found: usize },
    #[error("contraction of grade {form} into grade {target} is undefined")]
    ContractionGrade { form: usize, target: usize },
    #[error("coordinate count {found} does not match grade {grade} (expected {expected})")]
    CoordinateCount {
        grade: usize,
        expected: usize,
        found: usize,
    },
    #[error("non-finite value in {0}")]
    NonFinite(&'static str),
    #[error("space mismatch: {0}")]
    SpaceMismatch(String),
    #[error("dyadic is not trace-free: trace = {0}")]
    NonzeroTrace(Scalar),
    #[error("singular {0}")]
    Singular(String),
    #[error("medium has no construction provenance suitable for {0}")]
    MissingProvenance(&'static str),
    #[error("medium does not satisfy the quadratic equation (residual {residual:e})")]
    NotQuadratic { residual: f64 },
    #[error("quadratic medium classification impasse: {0}")]
    Impasse(String),
    #[error("degenerate: both reconstructions trivial (pure axion medium)")]
    DegenerateAxion,
    #[error("degenerate wave: {0}")]
    DegenerateWave(String),
    #[error("dispersion relation not satisfied (relative defect {0:e})")]
    DispersionNotSatisfied(f64),
    #[error("degenerate direction: quadratic vanishes identically along the line")]
    DegenerateDirection,
    #[error("quartic fit residual {residual:e} exceeds {limit:e}")]
    FitResidual { residual: f64, limit: f64 },
    #[error("factor mismatch: {0}")]
    FactorMismatch(String),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

impl Error {
    /// True for errors caused by malformed or out-of-contract input, as
    /// opposed to numerical failures on well-formed input.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::GradeOverflow(..)
                | Error::GradeOutOfRange(_)
                | Error::GradeMismatch { .. }
                | Error::ContractionGrade { .. }
                | Error::CoordinateCount { .. }
                | Error::NonFinite(_)
                | Error::SpaceMismatch(_)
                | Error::NonzeroTrace(_)
                | Error::MissingProvenance(_)
                | Error::Invalid(_)
        )
    }
}
