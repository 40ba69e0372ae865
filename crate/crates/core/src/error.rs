use thiserror::Error;

use crate::pattern::Cell;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("coordinate overflow near the representable boundary")]
    CoordinateOverflow,

    #[error("torus must be at least 3x3, got {width}x{height}")]
    TorusTooSmall { width: usize, height: usize },

    #[error("cell ({}, {}) lies outside the {width}x{height} torus", cell.x, cell.y)]
    OutsideTorus {
        cell: Cell,
        width: usize,
        height: usize,
    },

    #[error(transparent)]
    Rle(#[from] RleError),

    #[error("generation budget must be positive")]
    ZeroGenerations,

    #[error("period must be positive")]
    ZeroPeriod,

    #[error("pattern does not return to itself after {period} generations")]
    NotPeriodic { period: u64 },

    #[error("{0}")]
    Synthesis(String),

    #[error("composition failed: {0}")]
    Compose(String),

    #[error("no stable cycle within {generations} generations")]
    Unresolved { generations: u64 },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("catalog: {0}")]
    Catalog(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RleError {
    #[error("missing `x = .., y = ..` header line")]
    MissingHeader,
    #[error("malformed header: {0}")]
    BadHeader(String),
    #[error("unsupported rule `{0}` (only B3/S23)")]
    UnsupportedRule(String),
    #[error("missing `!` terminator")]
    MissingTerminator,
    #[error("run count of zero at line {line}")]
    ZeroCount { line: usize },
    #[error("unexpected character `{ch}` at line {line}")]
    UnexpectedChar { ch: char, line: usize },
    #[error("run count too large at line {line}")]
    CountOverflow { line: usize },
    #[error("pattern body exceeds the declared height of {height}")]
    HeightExceeded { height: u64 },
}
