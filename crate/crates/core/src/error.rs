use thiserror::Error;

use crate::poly::Exp;

/// Every failure the library can report.
///
/// [`Error::code`] gives a stable machine-readable identifier that the CLI
/// surfaces alongside the human message.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("coefficient domains differ: {0} vs {1}")]
    DomainMismatch(String, String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("coefficient {0} is not valid in domain {1}")]
    InvalidCoefficient(String, String),
    #[error("operation requires a non-zero polynomial")]
    ZeroPolynomial,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("no exact quotient exists in the coefficient domain")]
    NotDivisible,
    #[error("matrix has determinant {0}, expected +1 or -1")]
    NotUnimodular(i64),
    #[error("direction ({0}, {1}) is not primitive")]
    NotPrimitive(i64, i64),
    #[error("polynomial has no term involving the eliminated variable")]
    VariableAbsent,
    #[error("operation requires a prime-field domain")]
    NotPrimeField,
    #[error("polynomial has non-integral coefficients")]
    NonIntegralCoefficients,
    #[error("arithmetic overflow while evaluating on a grid")]
    Overflow,

    #[error("shape must contain at least one cell")]
    EmptyShape,
    #[error("shape does not fit anywhere inside the patch")]
    ShapeTooLarge,
    #[error("valid region is empty")]
    EmptyValidRegion,
    #[error("grid must be rectangular and non-empty")]
    BadGrid,
    #[error("symbol {0} is not in the alphabet")]
    InvalidAlphabet(i64),
    #[error("pattern set is empty")]
    NoPatterns,
    #[error("{count} patterns exceed the shape size {size}")]
    NotLowComplexity { count: usize, size: usize },
    #[error("pattern has {got} values but the shape has {expected} cells")]
    PatternShapeMismatch { expected: usize, got: usize },
    #[error("pattern matrix is degenerate")]
    DegeneratePatterns,

    #[error("polynomial is not a line polynomial")]
    NotALinePolynomial,
    #[error("polynomial does not annihilate the configuration (witness cell {0:?})")]
    NotAnnihilated(Exp),

    #[error("alphabet must contain at least one symbol")]
    EmptyAlphabet,
    #[error("window {window} is smaller than the shape extent {extent}")]
    WindowSmallerThanShape { window: usize, extent: usize },

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::DomainMismatch(..) => "DomainMismatch",
            Error::NotPrime(_) => "NotPrime",
            Error::InvalidCoefficient(..) => "InvalidCoefficient",
            Error::ZeroPolynomial => "ZeroPolynomial",
            Error::DivisionByZero => "DivisionByZero",
            Error::NotDivisible => "NotDivisible",
            Error::NotUnimodular(_) => "NotUnimodular",
            Error::NotPrimitive(..) => "NotPrimitive",
            Error::VariableAbsent => "VariableAbsent",
            Error::NotPrimeField => "NotPrimeField",
            Error::NonIntegralCoefficients => "NonIntegralCoefficients",
            Error::Overflow => "Overflow",
            Error::EmptyShape => "EmptyShape",
            Error::ShapeTooLarge => "ShapeTooLarge",
            Error::EmptyValidRegion => "EmptyValidRegion",
            Error::BadGrid => "BadGrid",
            Error::InvalidAlphabet(_) => "InvalidAlphabet",
            Error::NoPatterns => "NoPatterns",
            Error::NotLowComplexity { .. } => "NotLowComplexity",
            Error::PatternShapeMismatch { .. } => "PatternShapeMismatch",
            Error::DegeneratePatterns => "DegeneratePatterns",
            Error::NotALinePolynomial => "NotALinePolynomial",
            Error::NotAnnihilated(_) => "NotAnnihilated",
            Error::EmptyAlphabet => "EmptyAlphabet",
            Error::WindowSmallerThanShape { .. } => "WindowSmallerThanShape",
            Error::Parse(_) => "ParseError",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
