use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("non-hyperbolic trace |t| = {0}: no geodesic length for |t| <= 2")]
    NonHyperbolicTrace(u64),
    #[error("{0} must be positive")]
    NonPositive(&'static str),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("level {0} outside supported range {1}..={2}")]
    LevelOutOfRange(u64, u64, u64),
    #[error("oracle cap exceeded: level {0} > 64")]
    OracleCapExceeded(u64),
    #[error("inconsistent index for level {0}: {1}")]
    InconsistentIndex(u64, &'static str),
    #[error("degenerate genus at level {0}")]
    DegenerateGenus(u64),
    #[error("level {0}: prime closed forms do not apply; use signature_general")]
    PrimeFormulaInapplicable(u64),
    #[error("bound inapplicable: {0}")]
    BoundInapplicable(&'static str),
    #[error("word length cap exceeded: {0} > {1}")]
    DepthCapExceeded(u32, u32),
    #[error("trace cap {0} exhausted before a qualifying trace was found")]
    TraceCapExhausted(u64),
    #[error("invalid level range: {0}")]
    InvalidRange(String),
    #[error("alpha must lie in [0, 1): got {0}")]
    AlphaOutOfRange(f64),
    #[error("genus must be at least 2 for this bound: got {0}")]
    GenusTooSmall(u64),
}

pub type Result<T> = std::result::Result<T, Error>;
