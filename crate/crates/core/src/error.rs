use thiserror::Error;

/// Errors raised by the library. Each variant carries a stable name (see
/// [`Error::name`]) that the command-line front end prints verbatim.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("row {row} has length {found}, expected {expected}")]
    RowLengthMismatch {
        row: usize,
        expected: usize,
        found: usize,
    },

    #[error("enumeration of 2^{dimension} codewords exceeds the cap of {cap}")]
    EnumerationCapExceeded { dimension: usize, cap: u64 },

    #[error("the bilinear form is degenerate (Gram determinant is zero)")]
    DegenerateLattice,

    #[error("the lattice is not positive definite")]
    NotPositiveDefinite,

    #[error("the lattice is not even")]
    NotEvenLattice,

    #[error("the code is not doubly even")]
    NotDoublyEven,

    #[error("leading coefficient {0} is not a unit")]
    NonUnitLeadingCoefficient(String),

    #[error("exponent {exponent} lies beyond the truncation order {order}")]
    ExponentBeyondTruncation { exponent: String, order: String },

    #[error("ill-formed quadratic form: {0}")]
    IllFormedQuadraticForm(String),

    #[error("the quadratic module has no lattice realization")]
    NoLatticeRealization,

    #[error("inclusion violated: {0}")]
    InclusionViolation(String),

    #[error("element {0} does not belong to the module")]
    ElementOutOfRange(String),

    #[error("sector data refers to a different module")]
    ModuleMismatch,

    #[error("invalid channel mask: {0}")]
    InvalidMask(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// Stable identifier of the error kind.
    pub fn name(&self) -> &'static str {
        match self {
            Error::RowLengthMismatch { .. } => "RowLengthMismatch",
            Error::EnumerationCapExceeded { .. } => "EnumerationCapExceeded",
            Error::DegenerateLattice => "DegenerateLattice",
            Error::NotPositiveDefinite => "NotPositiveDefinite",
            Error::NotEvenLattice => "NotEvenLattice",
            Error::NotDoublyEven => "NotDoublyEven",
            Error::NonUnitLeadingCoefficient(_) => "NonUnitLeadingCoefficient",
            Error::ExponentBeyondTruncation { .. } => "ExponentBeyondTruncation",
            Error::IllFormedQuadraticForm(_) => "IllFormedQuadraticForm",
            Error::NoLatticeRealization => "NoLatticeRealization",
            Error::InclusionViolation(_) => "InclusionViolation",
            Error::ElementOutOfRange(_) => "ElementOutOfRange",
            Error::ModuleMismatch => "ModuleMismatch",
            Error::InvalidMask(_) => "InvalidMask",
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::Parse { .. } => "ParseError",
            Error::InvalidArgument(_) => "InvalidArgument",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
