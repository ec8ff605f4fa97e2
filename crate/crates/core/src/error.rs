use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed graph document: {0}")]
    Malformed(String),
    #[error("self-edge must be a loop: [{0},{0}]")]
    SelfEdge(usize),
    #[error("duplicate {0}")]
    Duplicate(String),
    #[error("vertex {vertex} out of range 1..={count}")]
    VertexOutOfRange { vertex: usize, count: usize },
    #[error("graph has no edges or loops")]
    EmptyGraph,
    #[error("enumeration cap exceeded: {0}")]
    CapExceeded(String),
    #[error("rank bound {bound} out of range 1..={rank}")]
    RankBound { bound: usize, rank: usize },
    #[error("weight vector is zero")]
    ZeroWeight,
    #[error("weight vector has {got} entries, arrangement has {expected} hyperplanes")]
    LengthMismatch { expected: usize, got: usize },
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("arrangement is not graphic (hyperplanes carry no origin tags)")]
    NotGraphic,
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// One of the proven identities failed at runtime; this is a bug, not bad input.
    #[error("theorem violation: {0}")]
    TheoremViolation(String),
}

impl Error {
    /// True for failures that indicate an internal bug (a violated theorem or
    /// an impossible internal state) rather than bad input.
    pub fn is_sentinel(&self) -> bool {
        matches!(self, Error::TheoremViolation(_))
    }
}
