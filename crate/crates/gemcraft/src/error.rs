//! Error type shared by the whole crate.
//!
//! The variants mirror the failure classes surfaced by the command-line tool:
//! parse/validation problems in input data, violated operation preconditions
//! (calling an operation on the wrong class of graph), and internal
//! consistency failures (a constructed object contradicting an invariant it
//! was required to satisfy — these are never silently ignored).

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// Input data could not be parsed; the message carries positional detail.
    #[error("parse error: {0}")]
    Parse(String),

    /// Structurally invalid graph or diagram data (bad colouring, repeated
    /// edge slots, disconnected graph, inconsistent rotations, ...).
    #[error("invalid input: {0}")]
    Invalid(String),

    /// An operation was invoked on an input outside its documented domain,
    /// e.g. asking for the boundary of a graph without boundary vertices.
    #[error("precondition not met: {0}")]
    Precondition(String),

    /// A constructed object failed a mandatory self-check. This indicates a
    /// bug or an inconsistency between redundant computations and is always
    /// reported rather than papered over.
    #[error("internal consistency failure: {0}")]
    Consistency(String),

    /// Underlying I/O failure while reading or writing files.
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Shorthand constructor for [`Error::Parse`].
    pub fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }

    /// Shorthand constructor for [`Error::Invalid`].
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    /// Shorthand constructor for [`Error::Precondition`].
    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    /// Shorthand constructor for [`Error::Consistency`].
    pub fn consistency(msg: impl Into<String>) -> Self {
        Error::Consistency(msg.into())
    }
}
