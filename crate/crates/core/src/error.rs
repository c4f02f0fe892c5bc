use thiserror::Error;

use crate::field::Field;

/// Errors raised anywhere in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(Field, Field),
    #[error("modulus {0} is not prime")]
    CompositeModulus(u64),
    #[error("parse error{}: {message}", line.map(|l| format!(" on line {l}")).unwrap_or_default())]
    Parse { line: Option<usize>, message: String },
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("gcd of two zero polynomials is undefined")]
    BothZero,
    #[error("polynomials are not coprime")]
    NotCoprime,
    #[error("cannot factor a constant polynomial")]
    ConstantPolynomial,
    #[error("degree {degree} exceeds the rational factorization cap {cap}")]
    DegreeBoundExceeded { degree: usize, cap: usize },
    #[error("coefficient bound for rational factorization does not fit a machine-word prime")]
    CoefficientBoundExceeded,
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("linear system is inconsistent")]
    Inconsistent,
    #[error("subspace is not invariant under the given map")]
    NotInvariant,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("pairing between subspace and functionals is degenerate")]
    DegeneratePairing,
    #[error("polynomial does not divide the minimal polynomial")]
    NotAFactor,
    #[error("enumeration budget exceeded")]
    BudgetExceeded,
    #[error("enumeration requires a finite field")]
    InfiniteField,
    #[error("internal invariant violated: {0}")]
    InternalInvariantViolated(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn parse(line: Option<usize>, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }

    pub(crate) fn internal(message: impl Into<String>) -> Self {
        Error::InternalInvariantViolated(message.into())
    }
}
