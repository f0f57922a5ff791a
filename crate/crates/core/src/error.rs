use thiserror::Error;

/// Errors raised by the library. Element indices carried here are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },
    #[error("not a bijection on 1..={n}: {reason}")]
    NotBijection { n: usize, reason: String },
    #[error("element {element} out of range 1..={n}")]
    ElementOutOfRange { element: usize, n: usize },
    #[error("table is empty")]
    EmptyTable,
    #[error("table is not square: row {row} has {len} entries, expected {n}")]
    NotSquare { row: usize, len: usize, n: usize },
    #[error("entry ({row},{col}) = {value} out of range 1..={n}")]
    EntryOutOfRange {
        row: usize,
        col: usize,
        value: usize,
        n: usize,
    },
    #[error("not idempotent: {0}*{0} != {0}")]
    NotIdempotent(usize),
    #[error("column {0} is not a bijection")]
    ColumnNotBijective(usize),
    #[error("not right-distributive: ({a}*{b})*{c} != ({a}*{c})*({b}*{c})")]
    NotRightDistributive { a: usize, b: usize, c: usize },
    #[error("quandle is not connected")]
    NotConnected,
    #[error("quandle is not naturally ordered")]
    NotNaturallyOrdered,
    #[error("order {n} exceeds the limit {max}")]
    OrderTooLarge { n: usize, max: usize },
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("invalid profile: {0}")]
    InvalidProfile(String),
}

pub type Result<T> = std::result::Result<T, Error>;
