use thiserror::Error;

/// Failure modes shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed or mismatched input (wrong group, bad literal, composite prime).
    #[error("invalid input: {0}")]
    Input(String),
    /// The operation is not defined for this input, e.g. halving in a group of even order.
    #[error("unsupported operation: {0}")]
    Unsupported(String),
    /// A documented precondition does not hold.
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// An internal invariant failed. Always a bug or a theorem outside its scope.
    #[error("internal defect: {0}")]
    Defect(String),
    /// A size cap was exceeded.
    #[error("resource limit: {0}")]
    Resource(String),
}

pub type Result<T> = std::result::Result<T, Error>;

macro_rules! bail {
    ($kind:ident, $($arg:tt)*) => {
        return Err($crate::error::Error::$kind(format!($($arg)*)))
    };
}
pub(crate) use bail;
