use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid field data: {0}")]
    InvalidField(String),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("group closure exceeds {cap} elements")]
    ClosureOverflow { cap: usize },

    #[error("invalid weight: {0}")]
    InvalidWeight(String),

    #[error("weight has {got} embeddings, field has {expected}")]
    EmbeddingMismatch { expected: usize, got: usize },

    #[error("embedding {0} out of range")]
    NoSuchEmbedding(usize),

    #[error("not dominant: component at embedding {embedding} is not weakly decreasing")]
    NotDominant { embedding: usize },

    #[error("weight is not pure")]
    NotPure,

    #[error("purity weight is {0}, expected 0")]
    NonZeroPurity(String),

    #[error("weight is not parallel")]
    NotParallel,

    #[error("shape violation: {0}")]
    Shape(String),

    #[error("case mismatch: {0}")]
    CaseMismatch(String),

    #[error("embedding {embedding} is not a {expected} embedding")]
    PlaceKind { embedding: usize, expected: &'static str },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("search space of {size} weights exceeds cap {cap}")]
    SearchCap { size: u128, cap: u128 },

    #[error("invalid modular weights: {0}")]
    ModularWeights(String),
}

impl Error {
    /// Coarse classification used to pick process exit codes.
    pub fn is_resource(&self) -> bool {
        matches!(self, Error::ClosureOverflow { .. } | Error::SearchCap { .. })
    }

    pub fn is_case_mismatch(&self) -> bool {
        matches!(self, Error::CaseMismatch(_) | Error::PlaceKind { .. })
    }

    /// Malformed structure rather than a mathematically invalid value.
    pub fn is_input(&self) -> bool {
        matches!(
            self,
            Error::InvalidField(_)
                | Error::InvalidPermutation(_)
                | Error::InvalidWeight(_)
                | Error::EmbeddingMismatch { .. }
                | Error::NoSuchEmbedding(_)
        )
    }
}
