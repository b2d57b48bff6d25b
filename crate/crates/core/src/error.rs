use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("duplicate element `{0}`")]
    DuplicateElement(String),
    #[error("at most 64 elements are supported, got {0}")]
    TooManyElements(usize),
    #[error("set is not contained in the ground set")]
    NotSubset,
    #[error("contracted and deleted sets overlap")]
    OverlappingMinor,
    #[error("rank < 3: all points are collinear or fewer than three points")]
    RankBelowThree,
    #[error("not a linear space: {0}")]
    NotLinearSpace(String),
    #[error("malformed matroid file: {0}")]
    Parse(String),
    #[error("monomial exponent exceeds the reflection cap: not reflectable")]
    NotReflectable,
    #[error("no value assigned to variable `{0}`")]
    MissingVariable(String),
    #[error("{{e, f, g}} must be dependent")]
    IndependentTriple,
    #[error("pair elements must be distinct")]
    PairNotDistinct,
    #[error("third element must differ from both pair elements")]
    ElementInPair,
    #[error("ansatz requires rank 3, matroid has rank {0}")]
    RankNotThree(usize),
    #[error("certificate Ansatz undefined above rank 3 (rank {0})")]
    RankAboveThree(usize),
    #[error("degenerate weights for pair")]
    DegenerateWeights,
    #[error("unknown catalog instance `{0}`")]
    UnknownName(String),
    #[error("ground set size {0} out of range")]
    OutOfRange(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
