use thiserror::Error;

/// Errors shared across the library. Variants suffixed "tripwire" guard
/// internal invariants that are guaranteed by theory and must never fire on
/// valid inputs; they exist so that a bug surfaces as a diagnosable error
/// instead of silently wrong output.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not a bijection on 1..=n: {0:?}")]
    NotABijection(Vec<usize>),
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("v is not below w in Bruhat order")]
    NotComparable,
    #[error("w contains a 3412 pattern (not covexillary)")]
    NotCovexillary,
    #[error("internal geometry violation: shifted essential box left the grid")]
    InternalGeometry,
    #[error("shape is empty; the smooth case must be handled by the caller")]
    EmptyShape,
    #[error("two incomparable maximal candidates at level {0}")]
    AmbiguousMaximum(usize),
    #[error("flag vector has {got} entries but the shape has {want} rows")]
    FlagMismatch { got: usize, want: usize },
    #[error("box ({0},{1}) outside the n x n grid")]
    BoxOutOfGrid(usize, usize),
    #[error("mu coefficient requires v strictly below w")]
    NotStrictlyBelow,
    #[error("bigrassmannian is not below the permutation even at distance 0")]
    NotBelow,
    #[error("negative exponent after prefactor (tripwire)")]
    NegativeExponent,
    #[error("half-integral power of q in the recursion (tripwire)")]
    InternalHalfPower,
    #[error("augmentation exceeded its iteration cap (tripwire)")]
    NonTermination,
    #[error("Euler characteristic contradicts the boundary-face classification (tripwire)")]
    ClassificationMismatch,
    #[error("no such vertex in the complex")]
    NoSuchVertex,
    #[error("parse error: {0}")]
    ParseError(String),
    #[error("rank {0} out of supported range 2..=7")]
    RankTooLarge(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
