use std::path::PathBuf;

use thiserror::Error;

/// Errors produced by the analysis pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("input sample is empty")]
    EmptyInput,

    #[error("value at index {index} is not a finite positive number: {value}")]
    InvalidValue { index: usize, value: f64 },

    #[error("values are not sorted non-increasing at index {index}")]
    NotSorted { index: usize },

    #[error("need at least {need} points, got {got}")]
    TooFewPoints { need: usize, got: usize },

    #[error("need at least {need} bins, got {got}")]
    TooFewBins { need: usize, got: usize },

    #[error("all values are identical; range is too small to partition")]
    DegenerateRange,

    #[error("override edges do not cover the data range [{lo}, {hi}]")]
    EdgesDoNotCover { lo: f64, hi: f64 },

    #[error("override edges are not strictly increasing at index {index}")]
    EdgesNotIncreasing { index: usize },

    #[error("rank 1 has no finite model value")]
    DivergentRank,

    #[error("rank {rank} exceeds sample size {n}")]
    RankOutOfRange { rank: usize, n: usize },

    #[error("rate must be a finite positive number, got {0}")]
    NonPositiveRate(f64),

    #[error("dead time must be finite and non-negative, got {0}")]
    NegativeDeadTime(f64),

    #[error("sample mean {mean} does not exceed the dead time {dead_time}")]
    InconsistentDeadTime { mean: f64, dead_time: f64 },

    #[error("least-squares scale sum is not positive; data is inconsistent with the model")]
    NonPositiveScale,

    #[error("zero total variance; coefficient of determination is undefined")]
    DegenerateVariance,

    #[error("observed and predicted sequences differ in length ({observed} vs {predicted})")]
    LengthMismatch { observed: usize, predicted: usize },

    #[error("need {need} values for {q} subsamples of length {n}, got {got}")]
    InsufficientData {
        q: usize,
        n: usize,
        need: usize,
        got: usize,
    },

    #[error("need at least 2 subsamples, got {got}")]
    TooFewSubsamples { got: usize },

    #[error("rows must have at least 2 entries, got {got}")]
    RowsTooShort { got: usize },

    #[error("rows have unequal lengths ({expected} vs {got})")]
    UnequalRowLengths { expected: usize, got: usize },

    #[error("averaged row is constant; deviation denominator is zero")]
    DegenerateDenominator,

    #[error("efficiency must be in (0, 1], got {0}")]
    InvalidEfficiency(f64),

    #[error("event count must be at least 1")]
    NoEvents,

    #[error("{path}: line {line}: cannot parse a numeric value")]
    ParseError { path: PathBuf, line: usize },

    #[error("timestamps are not strictly increasing at entry {index}")]
    NonMonotonicTimestamps { index: usize },

    #[error("interval at entry {index} is not finite and positive")]
    InvalidInterval { index: usize },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
