use thiserror::Error;

/// Everything that can go wrong between reading a plumbing graph and printing
/// a Pin(2) module.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed plumbing graph: {0}")]
    MalformedGraph(String),
    #[error("invalid Seifert data: {0}")]
    InvalidSeifertData(String),
    #[error("intersection form is not negative definite (inertia +{positive} -{negative} 0x{zero})")]
    NotNegativeDefinite { positive: usize, negative: usize, zero: usize },
    #[error("vector is not characteristic at vertex index {0}")]
    NotCharacteristic(usize),
    #[error("orbit is not self-conjugate")]
    NotSelfConjugate,
    #[error("no Wu representative found")]
    NoWuRepresentative,
    #[error("capacity exceeded: {0}")]
    CapacityExceeded(String),
    #[error("sublevel sets did not stabilize by level {0}")]
    StabilizationNotReached(i64),
    #[error("involution does not preserve the weight function")]
    SymmetryViolation,
    #[error("graph has {0} bad vertices; this operation allows at most one")]
    TooManyBadVertices(usize),
    #[error("graph has {0} bad vertices; at most two are supported")]
    MoreThanTwoBadVertices(usize),
    #[error("odd part is nonzero; its identification with the derived groups must be assumed explicitly")]
    ConjectureRequired,
    #[error("second derived ranks are not uniquely forced ({0} admissible solutions found)")]
    AmbiguousGysinData(usize),
    #[error("inconsistent ranks: {0}")]
    InconsistentRanks(String),
    #[error("tower bottom is not determined: {0}")]
    NotForced(String),
    #[error("parity mismatch: {0}")]
    ParityMismatch(String),
    #[error("internal mismatch: {0}")]
    InternalMismatch(String),
    #[error("{0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
