use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("modulus {0} out of range (need 2 <= p < 2^31)")]
    ModulusOutOfRange(u64),

    #[error("instance too large: {what} = {size} exceeds cap {cap}")]
    InstanceTooLarge { what: String, size: u128, cap: u128 },

    #[error("power too large: {terms} terms exceeds cap {cap}")]
    PowerTooLarge { terms: usize, cap: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid input: {0}")]
    Input(String),

    #[error("validation failed: {0}")]
    Validation(String),

    #[error("not F-split at level e = {e}")]
    NotFSplit { e: u32 },

    #[error("non-Fano: v−δ = {coindex}")]
    NonFano { coindex: i64 },

    #[error("internal check failed: {0}")]
    InternalCheck(String),
}

impl Error {
    pub(crate) fn too_large(what: impl Into<String>, size: u128, cap: u128) -> Self {
        Error::InstanceTooLarge {
            what: what.into(),
            size,
            cap,
        }
    }
}
