use std::fmt;

/// Errors shared across the workbench.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Operand shapes are incompatible.
    DimensionMismatch(String),
    /// A matrix that must be invertible has determinant zero.
    SingularMatrix,
    /// A bilinear form failed the associativity check required for the
    /// tensorial permutation.
    UnverifiedPair,
    /// The tensorial convention needs a form but none was supplied.
    MissingForm,
    /// Clifford signature exceeds the generator bound.
    BoundExceeded { p: usize, q: usize, bound: usize },
    /// The unitalization point is not idempotent, so it cannot become the
    /// identity of the new product.
    UnitNotIdempotent,
    /// Malformed input text; line numbers are 1-based.
    Parse { line: usize, message: String },
    /// A descriptor violates its structural invariants.
    InvalidDescriptor(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch(detail) => write!(f, "dimension mismatch: {detail}"),
            Error::SingularMatrix => write!(f, "singular matrix"),
            Error::UnverifiedPair => {
                write!(
                    f,
                    "form does not satisfy the associativity condition for this algebra"
                )
            }
            Error::MissingForm => {
                write!(f, "the tensorial convention requires a bilinear form")
            }
            Error::BoundExceeded { p, q, bound } => {
                write!(f, "signature ({p},{q}) exceeds the generator bound {bound}")
            }
            Error::UnitNotIdempotent => {
                write!(f, "unitalization point e is not idempotent (e*e != e)")
            }
            Error::Parse { line, message } => write!(f, "line {line}: {message}"),
            Error::InvalidDescriptor(detail) => write!(f, "invalid descriptor: {detail}"),
        }
    }
}

impl std::error::Error for Error {}
