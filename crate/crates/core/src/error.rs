use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("group parameter m = {0} out of range (1 <= m <= {max})", max = crate::group::MAX_M)]
    OrderOutOfRange(u64),

    #[error("invalid subset literal: {0}")]
    SubsetLiteral(String),

    #[error("index {index} out of range for {field} (m = {m})")]
    IndexOutOfRange {
        field: &'static str,
        index: u64,
        m: u32,
    },

    #[error("subset belongs to a different group (m = {left} vs m = {right})")]
    GroupMismatch { left: u32, right: u32 },

    #[error("(l1, l2) = ({l1}, {l2}) is not an admissible profile for m = {m}: {reason}")]
    InadmissibleProfile {
        m: u64,
        l1: i64,
        l2: i64,
        reason: &'static str,
    },

    #[error("covalency l = {0} has no admissible split")]
    EmptyCovalency(i64),

    #[error("matrix of order {n} exceeds the oracle cap {cap}")]
    OracleTooLarge { n: usize, cap: usize },

    #[error("Jacobi iteration failed to converge after {sweeps} sweeps (off-diagonal norm {residual:e})")]
    NoConvergence { sweeps: usize, residual: f64 },

    #[error("every eigenvalue has absolute value equal to the degree {0}")]
    NoNontrivialEigenvalue(usize),

    #[error("m = {m} exceeds the exhaustive enumeration cap {cap}")]
    EnumerationCap { m: u32, cap: u32 },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("p = {0} is below 67, outside the range where the closed-form test is established")]
    OutOfTheoremScope(u64),

    #[error("c = {c} is not in C'_{r}")]
    NotAFamily { r: u32, c: i64 },

    #[error("threshold for (r, c) = ({r}, {c}) is not monotone: condition fails at k = {k} after holding earlier")]
    ThresholdInconsistent { r: u32, c: i64, k: u64 },

    #[error("arithmetic overflow evaluating f_({r},{c})({k})")]
    Overflow { r: u32, c: i64, k: u64 },

    #[error("fixture: {0}")]
    Fixture(String),
}
