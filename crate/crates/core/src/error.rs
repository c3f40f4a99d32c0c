use thiserror::Error;

/// Errors surfaced by digit arithmetic, dynamics, and the operator model.
///
/// Integer arithmetic is exact everywhere; anything that would wrap reports
/// [`Error::Overflow`] instead.
#[derive(Clone, Debug, PartialEq, Error)]
pub enum Error {
    #[error("radix schedule must contain at least one radix")]
    EmptySchedule,

    #[error("radix {radix} at position {position} is below the minimum of 2")]
    RadixTooSmall { position: usize, radix: u32 },

    #[error("digit {digit} at position {position} is out of range for radix {radix}")]
    DigitOutOfRange {
        position: usize,
        digit: u32,
        radix: u32,
    },

    #[error("value {value} does not fit in {level} digits (level size {size})")]
    ValueOutOfRange { value: u64, level: usize, size: u64 },

    #[error("integer overflow while computing {context}")]
    Overflow { context: &'static str },

    #[error("the partial odometer is undefined at the all-max point")]
    OdometerDomain,

    #[error("operator dimensions differ: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("index {index} is out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("|z| = {modulus} is not within tolerance of 1")]
    NotUnimodular { modulus: f64 },

    #[error("weight sequence must contain at least one weight")]
    EmptyWeights,

    #[error("spectral averaging needs at least {needed} sample points, got {samples}")]
    TooFewSamples { samples: usize, needed: usize },

    #[error("spectral degree {degree} is out of range for dimension {dim}")]
    DegreeOutOfRange { degree: i64, dim: usize },

    #[error("operator {name} is not diagonal within tolerance")]
    NotDiagonal { name: &'static str },

    #[error("operator {name} is not supported on the first subdiagonal band")]
    NotBandOne { name: &'static str },

    #[error("level function has {found} values but level {level} requires {expected}")]
    LevelSizeMismatch {
        level: usize,
        expected: u64,
        found: usize,
    },

    #[error("cannot refine from level {from} down to level {to}")]
    RefineDownward { from: usize, to: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal consistency failure: {0}")]
    Internal(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
