use alloc::string::String;
use alloc::vec::Vec;

use crate::perm::Permutation;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("not a permutation: {0:?}")]
    InvalidPermutation(Vec<u32>),
    #[error("cannot parse permutation from {0:?}")]
    PermutationSyntax(String),
    #[error("the empty permutation has no decomposition")]
    EmptyDecomposition,
    #[error("{0} contains the pattern 231")]
    Contains231(Permutation),
    #[error("{what} {value} exceeds the cap {cap}")]
    CapExceeded {
        what: &'static str,
        value: usize,
        cap: usize,
    },
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("order must be at least {min}, got {k}")]
    InvalidOrder { k: usize, min: usize },
    #[error("type saturation did not close after {0} rounds")]
    SaturationDiverged(usize),
    #[error("dependency graph has {0} terminal strongly connected components")]
    TerminalSccNotUnique(usize),
    #[error("sentence has quantifier depth {depth} but the type system has order {k}")]
    DepthExceedsOrder { depth: usize, k: usize },
    #[error("type {0} has fewer than {1} nonzero coefficients in range")]
    InsufficientSupport(usize, usize),
    #[error("coefficient table is too short: need order {needed}, have {have}")]
    TruncationTooShort { needed: usize, have: usize },
    #[error("epsilon must be positive")]
    NonPositiveEpsilon,
    #[error("target {0} is outside [0, 1]")]
    TargetOutOfRange(String),
    #[error("evaluation point {0} is outside (0, 1/4]")]
    EvaluationPoint(f64),
    #[error("matrix is not square or has negative entries")]
    InvalidMatrix,
}
