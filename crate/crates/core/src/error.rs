use thiserror::Error;

/// Errors raised by graph operations, evaluators and the file format.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A caller-supplied argument is out of range or refers to a missing item.
    #[error("invalid argument: {0}")]
    Argument(String),
    /// The input graph does not belong to the class an operation is defined on.
    #[error("precondition violated: {0}")]
    Domain(String),
    /// A configured enumeration or size cap would be exceeded.
    #[error("resource limit exceeded: {0}")]
    Resource(String),
    /// Malformed graph file.
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    /// A closed form that must be an integer evaluated to a proper fraction.
    #[error("non-integral value: {0}")]
    NonIntegral(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn argument(msg: impl Into<String>) -> Error {
    Error::Argument(msg.into())
}

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
