//! Crate-wide error type.
//!
//! Every fallible operation returns one of these variants; the CLI maps
//! them onto process exit codes (validation 1, refuted certificate 2,
//! resource caps 3).

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invariant factor list is empty (the zero module is excluded)")]
    EmptyFactorList,

    #[error("invariant factors must form a divisibility chain: {0} does not divide {1}")]
    NonDividingChain(u64, u64),

    #[error("invariant factor {0} is below 2; normalize factor lists before construction")]
    InvalidFactor(u64),

    #[error("module order {order} exceeds the enumeration bound {cap}")]
    SizeCap { order: usize, cap: usize },

    #[error("operands belong to different modules ({left} vs {right})")]
    ParentMismatch { left: String, right: String },

    #[error("submodule is not proper in its parent")]
    NotProper,

    #[error("submodules are not coprime: K + N is a proper submodule")]
    NotCoprime,

    #[error("no element satisfies both congruences (parent is not a \u{3bc}-module)")]
    NoSolution,

    #[error("vector length {got} does not match ambient rank {rank}")]
    RankMismatch { rank: usize, got: usize },

    #[error("the zero lattice is not admitted here (coprime cosets require a nonzero submodule)")]
    ZeroSubmodule,

    #[error("not a refutation: {0}")]
    NotARefutation(String),

    #[error("coset family is not a basis: point {point} lies in an intersection with no member coset inside it")]
    NotABasis { point: String },

    #[error("open-set family exceeds the cap of {cap} opens")]
    OpenSetCap { cap: usize },

    #[error("{0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
