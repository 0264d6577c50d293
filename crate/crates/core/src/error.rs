use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("non-unit divisor: leading coefficient of the divisor is zero")]
    NonUnitDivisor,

    #[error("fractional residue: nonzero coefficient at exponent {exponent}/{denom}")]
    FractionalResidue { exponent: i64, denom: i64 },

    #[error("D-dependence violated: cells ({n1},{r1}) and ({n2},{r2}) share D = {d} but disagree")]
    DDependenceViolated {
        d: i64,
        n1: i64,
        r1: i64,
        n2: i64,
        r2: i64,
    },

    #[error("precision exhausted: requested {requested}, valid below {valid}")]
    PrecisionExhausted { requested: String, valid: String },

    #[error("insufficient precision: tail estimate {tail:e} exceeds tolerance {tol:e}")]
    InsufficientPrecision { tail: f64, tol: f64 },

    #[error("form ({0}, {1}, {2}) is not positive definite")]
    NotPositiveDefinite(i64, i64, i64),

    #[error("mismatched discriminants {0} and {1}")]
    MismatchedDiscriminant(i64, i64),

    #[error("non-maximal order unsupported: discriminant {0} is not fundamental")]
    NonMaximalOrder(i64),

    #[error("search bound exhausted: no odd prime found below {0}")]
    SearchBoundExhausted(i64),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("I/O error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn precision(requested: impl ToString, valid: impl ToString) -> Self {
        Error::PrecisionExhausted {
            requested: requested.to_string(),
            valid: valid.to_string(),
        }
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    /// Process exit code used by the command line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::PrecisionExhausted { .. } | Error::InsufficientPrecision { .. } => 4,
            Error::Io(_) => 1,
            _ => 3,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
