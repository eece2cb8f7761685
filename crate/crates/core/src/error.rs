use thiserror::Error;

/// Errors produced by the group, character and depth machinery.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("group order exceeds the configured cap of {cap}")]
    OrderCapExceeded { cap: usize },
    #[error("unknown group constructor `{0}`")]
    UnknownConstructor(String),
    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),
    #[error("not a subgroup: {0}")]
    NotASubgroup(String),
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("no prime p = 1 mod {exponent} above {lower_bound} found below {search_bound}")]
    PrimeSearchFailed {
        exponent: usize,
        lower_bound: u64,
        search_bound: u64,
    },
    #[error("character lift is inconsistent: {0}")]
    LiftInconsistent(String),
    #[error("class functions belong to different groups")]
    GroupMismatch,
    #[error("character tables do not belong to the embedding's groups")]
    TableMismatch,
    #[error("class function is not a character: {0}")]
    NotACharacter(String),
    #[error("character is not faithful (kernel of order {kernel_order})")]
    NotFaithful { kernel_order: usize },
    #[error("depth search did not terminate below the cap n = {cap}")]
    CapExceeded { cap: u32 },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("degenerate matrix: {0}")]
    DegenerateMatrix(String),
    #[error("malformed serialized data: {0}")]
    Malformed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
