use thiserror::Error;

/// Errors raised by the algebraic routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands live in different rings")]
    RingMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("the base ring is not a field")]
    NotAField,
    #[error("the base ring is not perfect")]
    NotPerfect,
    #[error("element is not invertible")]
    NotInvertible,
    #[error("module is not free over its base ring: {0}")]
    NotFree(String),
    #[error("empty input")]
    EmptyInput,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("denominator is not in the multiplicative set")]
    DenominatorNotInS,
    #[error("module is not finite dimensional over the base field")]
    NotFiniteDimensional,
    #[error("degree bound must be at least 1")]
    BoundTooSmall,
    #[error("point {0} is not rational")]
    PointNotRational(usize),
    #[error("expected a single point, found {0}")]
    MultiplePoints(usize),
    #[error("block {0} has non-reduced scalars")]
    NonReduced(usize),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("invalid field specification: {0}")]
    InvalidField(String),
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("symbol '{0}' is not available in this ring")]
    UnknownSymbol(String),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

impl Error {
    /// Stable machine-readable code used in JSON error objects.
    pub fn code(&self) -> &'static str {
        match self {
            Error::RingMismatch => "RingMismatch",
            Error::DivisionByZero => "DivisionByZero",
            Error::NotAField => "NotAField",
            Error::NotPerfect => "NotPerfect",
            Error::NotInvertible => "NotInvertible",
            Error::NotFree(_) => "NotFree",
            Error::EmptyInput => "EmptyInput",
            Error::ZeroDenominator => "ZeroDenominator",
            Error::DenominatorNotInS => "DenominatorNotInS",
            Error::NotFiniteDimensional => "NotFiniteDimensional",
            Error::BoundTooSmall => "BoundTooSmall",
            Error::PointNotRational(_) => "PointNotRational",
            Error::MultiplePoints(_) => "MultiplePoints",
            Error::NonReduced(_) => "NonReduced",
            Error::InvalidParams(_) => "InvalidParams",
            Error::InvalidField(_) => "InvalidField",
            Error::InvalidModule(_) => "InvalidModule",
            Error::Syntax { .. } => "SyntaxError",
            Error::UnknownSymbol(_) => "UnknownSymbol",
            Error::Internal(_) => "Internal",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
