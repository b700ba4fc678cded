use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    // field construction and arithmetic
    #[error("field bit-width {0} outside 2..=16 or polynomial degree does not match")]
    BadDegree(u32),
    #[error("polynomial {poly:#x} is not primitive for GF(2^{m})")]
    NonPrimitivePoly { m: u32, poly: u32 },
    #[error("division by zero")]
    DivideByZero,

    // ring
    #[error("{0} is not an odd prime")]
    NotPrime(usize),
    #[error("expected {expected} bytes, got {actual}")]
    WrongLength { expected: usize, actual: usize },
    #[error("1 + alpha^{0} is not invertible (shift is 0 mod p)")]
    BadShift(usize),

    // codes
    #[error("parameter mismatch: {0}")]
    ParamMismatch(String),
    #[error("position {0} listed more than once")]
    DuplicatePosition(usize),
    #[error("position {position} out of range (limit {limit})")]
    OutOfRange { position: usize, limit: usize },
    #[error("locator evaluates to zero at 1; inputs are corrupted")]
    InternalDegenerate,
    #[error("erasure system is singular for this view")]
    Unsolvable,

    // oracle
    #[error("erasure system does not have a unique solution (rank {rank} of {unknowns})")]
    NotUnique { rank: usize, unknowns: usize },
    #[error("erasure system is inconsistent")]
    Inconsistent,
    #[error("enumeration of {states} states exceeds the 2^30 cap")]
    TooLargeToEnumerate { states: u128 },
    #[error("adversary of size {size} reaches the threshold {threshold}")]
    AdversaryTooLarge { size: usize, threshold: usize },

    // scheme and file formats
    #[error("bad configuration: {0}")]
    BadConfig(String),
    #[error("unknown backend {0:?}")]
    UnknownBackend(String),
    #[error("randomness source exhausted")]
    RandomnessExhausted,
    #[error("need {threshold} shares, got {got}")]
    NotEnoughShares { threshold: usize, got: usize },
    #[error("artifacts belong to different packages")]
    HeaderMismatch,
    #[error("participant {0} supplied twice")]
    DuplicateShare(u16),
    #[error("CRC mismatch (stored {stored:#010x}, computed {computed:#010x})")]
    CrcMismatch { stored: u32, computed: u32 },
    #[error("bad magic")]
    BadMagic,
    #[error("unsupported format version {0}")]
    UnsupportedVersion(u8),
    #[error("unknown backend id {0}")]
    BadBackend(u8),
    #[error("artifact truncated or malformed")]
    Truncated,
}
