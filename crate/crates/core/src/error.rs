use thiserror::Error;

use crate::parse::ParseError;
use crate::poly::Poly;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("the zero element is not a valid query")]
    ZeroTarget,

    #[error("generator `{0}` is zero")]
    ZeroGenerator(String),

    #[error("duplicate generator name `{0}`")]
    DuplicateGenerator(String),

    #[error("unknown generator `{0}` in expression")]
    UnknownGenerator(String),

    #[error("flank `{which}` is not invariant under mu_{n}")]
    NonInvariantFlank { which: &'static str, n: u32 },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("derivative does not split over Q: irrational factor {0}")]
    UnsupportedFactorization(Poly),

    #[error("smallest base element {0} is not of the form c (x - a)^m + b")]
    InconsistentBase(Poly),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("generator file: {0}")]
    GenFile(String),
}

pub type Result<T> = std::result::Result<T, Error>;
