use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// A subset or argument does not fit the operation's domain.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("set {set} has order {order}, which is not below the tangle order {tangle_order}")]
    OutOfOrder { set: String, order: u32, tangle_order: u32 },

    #[error("index {index} out of range (size {size})")]
    IndexOutOfRange { index: usize, size: usize },

    /// An exhaustive routine refused because the instance exceeds a size guard.
    #[error("size guard '{guard}' exceeded: {actual} > {limit}")]
    SizeGuard { guard: &'static str, actual: usize, limit: usize },

    #[error("unsupported: {0}")]
    Unsupported(String),

    /// An internal consistency check failed.
    #[error("integrity error: {0}")]
    Integrity(String),

    /// A precondition of a decomposition routine did not hold.
    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}
