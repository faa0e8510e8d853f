use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid ground parameters n={n}, d={d}: need 1 <= d <= n-1")]
    InvalidParams { n: usize, d: usize },

    #[error("invalid subset {subset:?} for n={n}, d={d}")]
    InvalidSubset {
        subset: Vec<usize>,
        n: usize,
        d: usize,
    },

    #[error("{what} index {index} out of range [{min}, {max}]")]
    IndexOutOfRange {
        what: &'static str,
        index: usize,
        min: usize,
        max: usize,
    },

    #[error("argument out of range: {0}")]
    ArgumentOutOfRange(String),

    #[error("parameter mismatch: {0}")]
    ParamMismatch(String),

    #[error("sign function is not a co-signotope")]
    NotCoSignotope,

    #[error("plus count {plus_count} exceeds n-d = {bound}; component structure is only defined below that")]
    OutOfTheory { plus_count: usize, bound: usize },

    #[error("{parts:?} is not a sparse composition (two consecutive non-zero entries)")]
    NotSparse { parts: Vec<usize> },

    #[error("part {part} does not consist of a single component at source S_{part}")]
    WrongSource { part: usize },

    #[error("parts have overlapping plus-sets")]
    OverlappingParts,

    #[error("expected exactly one non-empty component at S_{index}")]
    NotSingleComponent { index: usize },

    #[error("point set is not a ({d},{i})-Ferrers diagram")]
    NotFerrers { d: usize, i: usize },

    #[error("lattice point {0:?} has the wrong dimension or a non-positive coordinate")]
    InvalidPoint(Vec<usize>),

    #[error(
        "refusing p={p} > min(n, n~)-d = {bound}: no level-preserving bijection exists beyond this bound"
    )]
    BeyondTightness { p: usize, bound: usize },

    #[error("brute-force guard exceeded: {candidates} candidates > limit {limit}")]
    GuardExceeded { candidates: u128, limit: u128 },

    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}
