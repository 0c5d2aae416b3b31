use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("bound exceeded: {0}")]
    BoundExceeded(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("value is not real: {0}")]
    NotReal(String),
    #[error("index sets differ")]
    IndexMismatch,
    #[error("correlation is not group invariant")]
    NotInvariant,
    #[error("matrix is not doubly stochastic: {0}")]
    NotDoublyStochastic(String),
    #[error("not a bijective correlation on four points: {0}")]
    NotB4(String),
    #[error("not a magic unitary: {0}")]
    NotMagicUnitary(String),
    #[error("automorphisms are not pairwise disjoint")]
    NotDisjoint,
    #[error("not an automorphism: {0}")]
    NotAutomorphism(String),
    #[error("graphs must be connected and regular: {0}")]
    NotConnectedRegular(String),
    #[error("certificate failed verification: {0}")]
    CertificateFailed(String),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
