use num_rational::BigRational;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("series orders differ: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("logarithm needs constant term 1, found {0}")]
    LogConstantTerm(BigRational),

    #[error("exponential needs constant term 0, found {0}")]
    ExpConstantTerm(BigRational),

    #[error("partial Bell polynomial B({n},{k}) needs k <= n")]
    BellIndex { n: usize, k: usize },

    #[error("Bell polynomial of order {n} needs {needed} arguments, got {got}")]
    BellArity { n: usize, needed: usize, got: usize },

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error(
        "coefficients share the divisor {gcd}; counts only follow C*n^(r-1) \
         after averaging n over residues mod {gcd}, so no pointwise constant exists"
    )]
    NotCoprime { gcd: u64 },

    #[error("value table must be strictly increasing and start above 0 (position {position})")]
    NonIncreasingTable { position: usize },

    #[error("{path}: non-integral count at n = {n} (value {value})")]
    NonIntegral {
        path: &'static str,
        n: usize,
        value: String,
    },

    #[error("enumeration of {size} tuples exceeds the oracle guard of {limit}")]
    GuardExceeded { size: u128, limit: u128 },
}
