use crate::rat::Rat;

/// Domain errors: violated preconditions of the correspondence machinery.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("segment [{begin}..{end}] has non-integral or negative length")]
    BadSegment { begin: Rat, end: Rat },
    #[error("group size mismatch: expected {expected}, multisegment has {found}")]
    SizeMismatch { expected: usize, found: usize },
    #[error("unsupported range n={n}, m={m}: explicit parameters need m >= n")]
    UnsupportedRange { n: usize, m: usize },
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("a != b ({a} != {b}): the pair cannot be theta-partners")]
    StripMismatch { a: usize, b: usize },
    #[error("point nu^{0} is exceptional for this instance")]
    ExceptionalPoint(Rat),
    #[error("expected a single point, got a segment of length {0}")]
    NotAPoint(Rat),
    #[error("multisegment is not H-class for n={n}, m={m}")]
    NotHClass { n: usize, m: usize },
    #[error("no strippable point in a multisegment of size {0}")]
    NoStrippablePoint(usize),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
