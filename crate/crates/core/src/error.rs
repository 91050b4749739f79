use std::io;

use thiserror::Error;

/// Errors raised by graph construction, scoring, sampling and the experiment harness.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument is outside the domain of the operation (bad vertex id, probability, eta, ...).
    #[error("domain error: {0}")]
    Domain(String),
    /// Input data violates a graph invariant (negative weight, self-loop, malformed token).
    #[error("data error: {0}")]
    Data(String),
    /// The request exceeds a configured enumeration limit or overflows exact arithmetic.
    #[error("resource limit: {0}")]
    Resource(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}

pub(crate) fn resource<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Resource(msg.into()))
}
