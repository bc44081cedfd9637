use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("row {row}, column {col}: entry {value} is negative")]
    NegativeEntry { row: usize, col: usize, value: f64 },
    #[error("row {row}, column {col}: entry {value} exceeds 1")]
    EntryAboveOne { row: usize, col: usize, value: f64 },
    #[error("row {row}, column {col}: entry is not a finite number")]
    NonFiniteEntry { row: usize, col: usize },
    #[error("row {row} sums to {sum}, expected 1")]
    RowSumViolation { row: usize, sum: f64 },
    #[error("component {index}: {source}")]
    Component {
        index: usize,
        #[source]
        source: Box<Error>,
    },
    #[error("a chain needs at least one component")]
    ZeroLength,
    #[error("component {index} is not covered by any segment")]
    GapInCoverage { index: usize },
    #[error("component {index} is covered by more than one segment")]
    OverlappingSegments { index: usize },
    #[error("segment [{from}, {to}] is outside 1..={n}")]
    IndexOutOfRange { from: usize, to: usize, n: usize },
    #[error("{name} = {value} must satisfy 1 <= {name} <= n = {n}")]
    InvalidThreshold {
        name: &'static str,
        value: usize,
        n: usize,
    },
    #[error("system has n = {spec} but the chain has {chain} components")]
    LengthMismatch { spec: usize, chain: usize },
    #[error("level j = {0} is not 1 or 2")]
    InvalidLevel(u8),
    #[error("state code {0} is not 0, 1 or 2")]
    InvalidState(u8),
    #[error("threshold {k} is outside 0..={max}")]
    ThresholdOutOfRange { k: usize, max: usize },
    #[error("the univariate path needs k1 <= k2, got k1 = {k1}, k2 = {k2}")]
    WrongStructure { k1: usize, k2: usize },
    #[error("{method} supports at most {limit} components, got {n}")]
    TooLarge {
        method: &'static str,
        n: usize,
        limit: usize,
    },
    #[error("Monte Carlo needs at least one sample")]
    ZeroSamples,
    #[error("unknown method `{0}`")]
    UnknownMethod(String),
}

impl Error {
    /// Errors caused by a backend's size guard rather than by the input itself.
    pub fn is_size_limit(&self) -> bool {
        matches!(self, Error::TooLarge { .. })
    }

    pub(crate) fn in_component(self, index: usize) -> Self {
        Error::Component {
            index,
            source: Box::new(self),
        }
    }
}
