use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("a generalized theta graph needs at least two paths, got {0}")]
    TooFewPaths(usize),
    #[error("path lengths must be at least 1, got {0}")]
    ZeroLength(usize),
    #[error("{0} paths of length 1 would create a multigraph")]
    Multigraph(usize),
    #[error("cannot parse path lengths from {input:?}: {reason}")]
    ParseSpec { input: String, reason: String },
    #[error("lengths {0:?} violate the parity ordering convention")]
    NotCanonical(Vec<u32>),

    #[error("fold must be at least {min}, got {m}")]
    FoldTooSmall { m: u32, min: u32 },
    #[error("operation requires exactly {expected} paths, got {got}")]
    WrongPathCount { expected: usize, got: usize },
    #[error("split pair count vanishes on path {path}; the AM-GM bound is undefined")]
    VanishingSplitCount { path: usize },
    #[error("inexact division: {numerator} is not divisible by {divisor}")]
    InexactDivision { numerator: String, divisor: String },

    #[error("invalid permutation {0:?}")]
    InvalidPermutation(Vec<usize>),
    #[error("cannot parse signature {input:?}: {reason}")]
    ParseSignature { input: String, reason: String },
    #[error("signature has {got} permutations of [{got_fold}], expected {expected} of [{fold}]")]
    SignatureShape {
        expected: usize,
        got: usize,
        fold: u32,
        got_fold: u32,
    },

    #[error("cover file line {line}: {reason}")]
    ParseCover { line: usize, reason: String },
    #[error("cover violates the cover axioms: {0:?}")]
    InvalidCover(Vec<String>),

    #[error("search needs {required} evaluations but the budget is {budget}")]
    BudgetExceeded { required: u128, budget: u128 },

    #[error("rows must be nondecreasing; row {row} is not")]
    UnsortedRow { row: usize },
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("base ordering violated: first base {first} exceeds {other}")]
    BaseOrder { first: u64, other: u64 },
    #[error("N must be m or m(m-1) for m = {m}, got {n}")]
    InvalidBlockCount { m: u32, n: u64 },
    #[error("arithmetic overflow in rearrangement sum")]
    Overflow,
}

pub type Result<T> = std::result::Result<T, Error>;
