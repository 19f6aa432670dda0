use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),
    #[error("unknown Dynkin type `{0}`")]
    UnknownType(String),
    #[error("family {0} has no quiver realization; only A, D and E support categorical operations")]
    NotSimplyLaced(char),
    #[error("vector length {got} does not match rank {rank}")]
    LengthMismatch { got: usize, rank: usize },
    #[error("cannot reflect along an isotropic vector")]
    Isotropic,
    #[error("{0:?} is not plus or minus a positive root")]
    NotARoot(Vec<i64>),
    #[error("no degree in {hint:?} has the parity required by class {class:?}")]
    NoMatchingDegree { class: Vec<i64>, hint: (i32, i32) },
    #[error("both degrees in {hint:?} match the parity of class {class:?}")]
    AmbiguousDegree { class: Vec<i64>, hint: (i32, i32) },
    #[error("sequence is not exceptional")]
    NotExceptional,
    #[error("expected a complete exceptional sequence of length {expected}, got length {got}")]
    Incomplete { expected: usize, got: usize },
    #[error("position {pos} out of range for a sequence of length {len}")]
    BadPosition { pos: usize, len: usize },
    #[error("predicate violated: {0}")]
    Predicate(String),
    #[error("Weyl group of order {0} is above the size guard")]
    WeylTooLarge(usize),
    #[error("element is not below the Coxeter element in absolute order")]
    NotBelowCoxeter,
    #[error("window margin too small: {0}")]
    MarginTooSmall(String),
    #[error("empty seed set")]
    EmptySeeds,
    #[error("invalid window: lo {lo} > hi {hi}")]
    BadWindow { lo: i32, hi: i32 },
    #[error("internal consistency failure: {0}")]
    Internal(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
