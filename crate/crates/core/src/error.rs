use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("invalid {name}: {reason}")]
    InvalidParameter { name: &'static str, reason: String },
    #[error("residue field of size {p}^{f} exceeds the 2^20 bound")]
    ResidueFieldTooLarge { p: u64, f: u32 },
    #[error("coefficient modulus {p}^{places} does not fit in 63 bits; lower the precision")]
    PrecisionOverflow { p: u64, places: u32 },
    #[error("internal error: {0}")]
    Internal(String),
    #[error("operands belong to different extensions")]
    SpecMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("first coordinate of a product point must be nonzero")]
    ZeroFirstCoordinate,
    #[error("requested pi-places up to {requested} but only {available} are carried")]
    PrecisionExceeded { requested: i64, available: i64 },
    #[error("{what} exceeds the bound {limit}")]
    SizeBound { what: String, limit: u64 },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("refinement must step from level {from} to {expected}, got {requested}")]
    NonIncrementalLevel { from: u32, expected: u32, requested: u32 },
    #[error("parse error: {0}")]
    Parse(String),
}

/// Coarse grouping of errors, used by the command line to pick exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    Usage,
    Bounds,
    Domain,
    Internal,
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::NotPrime(_)
            | Error::InvalidParameter { .. }
            | Error::Parse(_)
            | Error::NonIncrementalLevel { .. } => ErrorClass::Usage,
            Error::ResidueFieldTooLarge { .. }
            | Error::PrecisionOverflow { .. }
            | Error::PrecisionExceeded { .. }
            | Error::SizeBound { .. } => ErrorClass::Bounds,
            Error::SpecMismatch | Error::DivisionByZero | Error::ZeroFirstCoordinate | Error::Domain(_) => {
                ErrorClass::Domain
            }
            Error::Internal(_) => ErrorClass::Internal,
        }
    }

    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter { name, reason: reason.into() }
    }
}
