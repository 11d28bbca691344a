use thiserror::Error;

/// Errors raised by structure constructors and operations.
///
/// Axiom violations are never errors: checkers report them as failed axioms
/// with witnesses. Errors mean the data is too malformed for the operation to
/// make sense at all (mismatched carriers, non-total tables, and so on).
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("domain mismatch: {0}")]
    DomainMismatch(String),
    #[error("malformed data: {0}")]
    MalformedData(String),
    #[error("endpoint mismatch: {0}")]
    EndpointMismatch(String),
    #[error("malformed index family: {0}")]
    MalformedFamily(String),
    #[error("index family is not product-closed: {0}")]
    FamilyNotProductClosed(String),
    #[error("path bound {bound} exceeded by a path of length {len}")]
    BoundExceeded { bound: usize, len: usize },
    #[error("incoherent fiber data: {0}")]
    IncoherentFiberData(String),
    #[error("invalid multicategory data: {0}")]
    InvalidMulticatData(String),
}
