use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid class: {0}")]
    InvalidClass(String),

    #[error("invalid character: {0}")]
    InvalidCharacter(String),

    #[error("size mismatch: expected n = {expected}, got n = {found}")]
    SizeMismatch { expected: usize, found: usize },

    #[error("partition {0} is not self-adjoint")]
    NotSelfAdjoint(String),

    #[error("cannot combine values in Q(sqrt({0})) and Q(sqrt({1}))")]
    IncompatibleRadicands(i64, i64),

    #[error("empty normal set")]
    EmptySet,

    #[error("n = {n} exceeds the supported range (max {max}) for {what}")]
    Capability { n: usize, max: usize, what: &'static str },

    /// A result that must be exact (rational, integral, nonnegative) was not.
    #[error("internal consistency failure: {0}")]
    Inconsistency(String),
}
