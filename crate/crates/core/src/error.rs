use thiserror::Error;

/// Everything that can go wrong across the crate.
///
/// Variants are grouped by [`ErrorKind`] so front ends can map them to exit
/// codes without matching every case.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("division by the zero polynomial")]
    DivisionByZeroPoly,
    #[error("moduli are not pairwise coprime")]
    NonCoprimeModuli,
    #[error("invalid modulus {0}: {1}")]
    InvalidModulus(String, &'static str),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not invertible in its ring: {0}")]
    NotInvertibleInRing(String),
    #[error("vector is not primitive (entry gcd {0})")]
    NotPrimitive(String),
    #[error("conjugation parameter is not in the ring: {0}")]
    ParameterNotInRing(String),
    #[error("no off-diagonal entry is a unit")]
    NoUnitOffDiagonal,
    #[error("target diagonal sums to {target}, but the trace is {trace}")]
    TargetTraceMismatch { target: String, trace: String },
    #[error("matrix is scalar")]
    ScalarMatrix,
    #[error("dimension {0} is too small: unimodular prescription requires n >= 3, and the bound is necessary (use decide-2x2 for 2x2 inputs)")]
    DimensionTooSmall(usize),
    #[error("the nonscalarity ideal is ({0}), not the whole ring")]
    IdealNotUnit(String),
    #[error("search exhausted after {candidates} candidates: {diagnostics}")]
    SearchExhausted { candidates: usize, diagnostics: String },
    #[error("cyclic decomposition search exhausted after {0} candidates")]
    DecompositionSearchExhausted(usize),
    #[error("integrality violation: {0}")]
    IntegralityViolation(String),
    #[error("minimal polynomial has degree {0}, expected 2")]
    MinpolyDegreeNotTwo(usize),
    #[error("unsupported ring for this operation: {0}")]
    UnsupportedRing(String),
    #[error("constraint unsatisfiable within {0} attempts")]
    ConstraintUnsatisfiableWithinCap(usize),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal defect: {0}")]
    Defect(String),
}

/// Coarse classification used for exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// The input violates a documented precondition.
    Precondition,
    /// A bounded search ran out of candidates.
    Exhausted,
    /// Something that should be impossible happened.
    Defect,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::SearchExhausted { .. } => ErrorKind::Exhausted,
            Error::DecompositionSearchExhausted(_) | Error::IntegralityViolation(_) | Error::Defect(_) => {
                ErrorKind::Defect
            }
            _ => ErrorKind::Precondition,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
