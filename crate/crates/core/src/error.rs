use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("class count must be at least {min}, got {n}")]
    TooFewClasses { n: usize, min: usize },

    #[error("expected {expected} cells for a {n}x{n} matrix, got {got}")]
    CellCount { n: usize, expected: usize, got: usize },

    #[error("row {row} has {got} cells, expected {n}")]
    RaggedRow { row: usize, got: usize, n: usize },

    #[error("class index {index} out of range for {n} classes")]
    ClassIndex { index: usize, n: usize },

    #[error("pair #{position} (predicted {predicted}, gold {gold}) is out of range for {n} classes")]
    PairOutOfRange {
        position: usize,
        predicted: usize,
        gold: usize,
        n: usize,
    },

    #[error("extremal configuration needs r + s = n, got r={r}, s={s}, n={n}")]
    ExtremalConfig { r: usize, s: usize, n: usize },

    #[error("invalid probability distribution: {0}")]
    Distribution(String),

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("statistic needs at least {min} values, got {got}")]
    TooFewSamples { min: usize, got: usize },

    #[error("sequence lengths differ: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("correlation undefined: zero variance")]
    ZeroVariance,
}

pub type Result<T> = std::result::Result<T, Error>;
