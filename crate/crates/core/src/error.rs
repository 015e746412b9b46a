use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
#[non_exhaustive]
pub enum Error {
    #[error("invalid dyadic bias t={t}, m={m}: need m >= 1 and 1 <= t <= 2^(m-1) (p <= 1/2; use the dual function for p > 1/2)")]
    InvalidBias { t: u64, m: u32 },
    #[error("probability {0} is outside the admissible range")]
    InvalidProbability(f64),
    #[error("dimension {n} exceeds the supported maximum {max}")]
    DimensionTooLarge { n: u32, max: u32 },
    #[error("expected {expected} values for a function on {n} coordinates, got {got}")]
    ValueCount { n: u32, expected: usize, got: usize },
    #[error("value at point {index} is not finite")]
    NonFiniteValue { index: usize },
    #[error("unknown function family `{0}`")]
    UnknownFamily(alloc::string::String),
    #[error("invalid parameter for family `{family}`: {reason}")]
    InvalidFamilyParam { family: &'static str, reason: &'static str },
    #[error("coordinate {coord} is outside 1..={n}")]
    CoordinateOutOfRange { coord: usize, n: u32 },
    #[error("operation requires a {{0,1}}-valued function")]
    NotBoolean,
    #[error("operation requires a monotone function")]
    NotMonotone,
    #[error("measure of the set is {0}; the inequality needs 0 < mu(A) < 1")]
    DegenerateMeasure(f64),
    #[error("dense reduced table would have 2^{dimension} entries, above the dense cap 2^{cap}; use the implicit evaluator or raise the cap")]
    DenseCapExceeded { dimension: u32, cap: u32 },
    #[error("reduced function on {dimension} coordinates has no dense table")]
    NoDenseTable { dimension: u32 },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(&'static str),
    #[error("spectrum was taken against p={spectrum}, expected p={expected}")]
    MeasureMismatch { spectrum: f64, expected: f64 },
    #[error("level {level} is outside 0..={n}")]
    LevelOutOfRange { level: usize, n: u32 },
    #[error("function has Fourier weight above level {degree} (|coefficient| = {magnitude:e})")]
    DegreeExceeded { degree: usize, magnitude: f64 },
    #[error("norm exponent {0} is outside the admissible range")]
    InvalidExponent(f64),
    #[error("character sums need a nonempty subset of the block")]
    EmptySubset,
    #[error("exhaustive enumeration on {n} coordinates exceeds the cap {cap}")]
    EnumerationCap { n: u32, cap: u32 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),
}
