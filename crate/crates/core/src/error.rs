use thiserror::Error;

use crate::quotients::Epimorphism;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("operation requires rank {expected} polynomials, got rank {found}")]
    UnsupportedRank { expected: usize, found: usize },

    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid monodromy: {0}")]
    InvalidMonodromy(String),

    #[error("generator index {index} out of range for {count} generators")]
    GeneratorOutOfRange { index: usize, count: usize },

    #[error("coset enumeration exceeded the budget of {budget} cosets")]
    IncompleteEnumeration { budget: usize },

    #[error("coset table is incomplete")]
    IncompleteTable,

    #[error("epimorphism search exhausted its budget of {budget} nodes after finding {}", found.len())]
    BudgetExhausted {
        budget: u64,
        found: Vec<Epimorphism>,
    },

    #[error("representation does not kill relator {relator}")]
    InvalidRepresentation { relator: usize },

    #[error("no generator has a nonzero correction determinant")]
    DegeneratePresentation,

    #[error("series diverges: {0}")]
    Divergence(String),

    #[error("unsupported first Betti number {0}")]
    UnsupportedBetti(usize),

    #[error("unknown group {0}")]
    UnknownGroup(String),
}
