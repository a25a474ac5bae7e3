//! Crate-wide error type.
//!
//! Every fallible operation returns one of these variants; the CLI maps
//! them to a machine-readable `kind` string and exit code 1.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    MixedFields,
    #[error("characteristic {p} is too small for degree {degree} (need 0 or p > degree)")]
    CharacteristicTooSmall { p: u64, degree: u32 },
    #[error("{0} is not 0 or a prime <= 2^31")]
    InvalidCharacteristic(u64),
    #[error("syntax error at position {position}: {message}")]
    SyntaxError { position: usize, message: String },
    #[error("polynomial is not homogeneous: term degrees {0:?}")]
    NotHomogeneous(Vec<u32>),
    #[error("variable index {index} out of range for {nvars} variables")]
    IndexOutOfRange { index: usize, nvars: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("degree mismatch: expected {expected}, got {got}")]
    DegreeMismatch { expected: u32, got: u32 },
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("operation requires a binary form (2 variables)")]
    NotBinaryForm,
    #[error("polynomial is smooth; operation requires a singular input")]
    NotSingular,
    #[error("polynomial is singular; operation requires a smooth input")]
    NotSmooth,
    #[error("supplied singular point list failed verification: {0}")]
    IncompletePointList(String),
    #[error("multiplicity at the point is {0}, need >= 3")]
    MultiplicityTooLow(u32),
    #[error("multiplicity at the point is {got}, need exactly {expected}")]
    MultiplicityMismatch { expected: u32, got: u32 },
    #[error("1 + t is not a square in the coefficient field")]
    NotASquare,
    #[error("4a^3 + 27b^2 = 0: the cubic is singular")]
    SingularCubic,
    #[error("enumeration budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("the two forms share a nontrivial factor")]
    NotCoprime,
    #[error("need at least 3 distinct points, got {0}")]
    TooFewPoints(usize),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// Stable machine-readable tag, used by the CLI's JSON error reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DivisionByZero => "DivisionByZero",
            Error::MixedFields => "MixedFields",
            Error::CharacteristicTooSmall { .. } => "CharacteristicTooSmall",
            Error::InvalidCharacteristic(_) => "InvalidCharacteristic",
            Error::SyntaxError { .. } => "SyntaxError",
            Error::NotHomogeneous(_) => "NotHomogeneous",
            Error::IndexOutOfRange { .. } => "IndexOutOfRange",
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::DegreeMismatch { .. } => "DegreeMismatch",
            Error::ZeroPolynomial => "ZeroPolynomial",
            Error::NotBinaryForm => "NotBinaryForm",
            Error::NotSingular => "NotSingular",
            Error::NotSmooth => "NotSmooth",
            Error::IncompletePointList(_) => "IncompletePointList",
            Error::MultiplicityTooLow(_) => "MultiplicityTooLow",
            Error::MultiplicityMismatch { .. } => "MultiplicityMismatch",
            Error::NotASquare => "NotASquare",
            Error::SingularCubic => "SingularCubic",
            Error::BudgetExceeded(_) => "BudgetExceeded",
            Error::NotCoprime => "NotCoprime",
            Error::TooFewPoints(_) => "TooFewPoints",
            Error::InvalidArgument(_) => "InvalidArgument",
        }
    }
}
