use thiserror::Error;

use crate::tree::MAX_DEGREE;

/// Errors raised by the group calculus.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree q must lie in 2..={max}, got {0}", max = MAX_DEGREE)]
    InvalidDegree(u32),
    #[error("number of trees r must lie in 1..=64, got {0}")]
    InvalidTreeCount(u32),
    #[error("invalid address `{0}`")]
    InvalidAddress(String),
    #[error("not a complete antichain: {0}")]
    NotAntichain(String),
    #[error("`{0}` is not a leaf of the antichain")]
    NotALeaf(String),
    #[error("operands live on different trees")]
    ShapeMismatch,
    #[error("invalid ray: {0}")]
    InvalidRay(String),
    #[error("domain has {0} leaves but range has {1}")]
    SizeMismatch(usize, usize),
    #[error("leaf bijection is not injective")]
    NotBijective,
    #[error("invalid local permutation at `{0}`")]
    InvalidPermutation(String),
    #[error("element is not induced by a tree automorphism")]
    NotAutomorphism,
    #[error("automorphism does not preserve vertex types")]
    NotTypePreserving,
    #[error("addresses `{0}` and `{1}` are comparable")]
    Comparable(String, String),
    #[error("transposition of `{0}` and `{1}` has full support")]
    FullSupport(String, String),
    #[error("leaf index {0} out of range")]
    InvalidIndex(usize),
    #[error("operation requires even q")]
    OddDegree,
    #[error("element is not a transposition")]
    NotATransposition,
    #[error("element is not a product of two disjoint transpositions with proper support")]
    NotPairProduct,
    #[error("`{0}` and `{1}` are not adjacent")]
    NotAdjacent(String, String),
    #[error("expected a forest of two trees, got {0}")]
    WrongForest(u8),
    #[error("invalid direction at `{0}`")]
    InvalidDirection(String),
    #[error("element is trivial")]
    TrivialElement,
    #[error("the whole boundary is not a basis ball")]
    RootBall,
    #[error("support is not contained in the ball `{0}`")]
    SupportViolation(String),
    #[error("no ball is displaced off itself by both elements")]
    NoDisplacingBall,
    #[error("elements commute")]
    Commuting,
    #[error("malformed word: {0}")]
    MalformedWord(String),
    #[error("verification failed: {0}")]
    VerificationFailed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
