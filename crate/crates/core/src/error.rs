use alloc::string::String;
use alloc::vec::Vec;

use crate::arrangement::Violation;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid arrangement: {0}")]
    InvalidArrangement(String),

    #[error("arrangement is not in generic position ({} violations)", .0.len())]
    NotGeneric(Vec<Violation>),

    #[error("singular linear system for hyperplanes {0:?}")]
    Singular(Vec<usize>),

    #[error("argument outside the domain: {0}")]
    Domain(String),

    #[error("branch continuation failed: {0}")]
    Branch(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("internal consistency check failed: {0}")]
    Internal(String),
}
