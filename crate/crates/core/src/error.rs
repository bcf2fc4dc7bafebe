use thiserror::Error;

use crate::perm::{Embedding, Permutation};

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid permutation word: {0}")]
    InvalidWord(String),

    #[error("expected {expected} blocks, got {got}")]
    Arity { expected: usize, got: usize },

    #[error("position {position} out of range for length {len}")]
    Index { position: usize, len: usize },

    /// The input falls outside the class an operation requires. When the
    /// class is a finitely based one, `witness` carries an occurrence of the
    /// offending basis element.
    #[error("{perm} is not in {class}{}", witness_suffix(.witness))]
    NotInClass {
        perm: Permutation,
        class: String,
        witness: Option<(Permutation, Embedding)>,
    },

    #[error("mark {mark} of {perm} is a left-to-right minimum")]
    MarkIsLrMinimum { perm: Permutation, mark: usize },

    #[error("operation not supported for {0}")]
    UnsupportedSpec(String),

    #[error("resource limit: {what} is {value}, limit {limit}")]
    ResourceLimit {
        what: &'static str,
        value: usize,
        limit: usize,
    },

    #[error("invalid basis: {0}")]
    InvalidBasis(String),

    #[error("malformed certificate: {0}")]
    Malformed(String),
}

fn witness_suffix(w: &Option<(Permutation, Embedding)>) -> String {
    match w {
        Some((p, e)) => format!(" (contains {p} at {:?})", e.indices()),
        None => String::new(),
    }
}
