use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not a permutation of 1..{len}: {values:?}")]
    InvalidPermutation { values: Vec<usize>, len: usize },

    #[error("column heights must be positive and weakly decreasing: {0:?}")]
    InvalidBoard(Vec<usize>),

    #[error("board has {rows} rows but the permutation has length {len}")]
    RowCountMismatch { rows: usize, len: usize },

    #[error("board has {columns} columns but the permutation has length {len}")]
    ColumnCountMismatch { columns: usize, len: usize },

    #[error("dot ({column}, {row}) lies outside the board (column height {height})")]
    DotOutsideBoard {
        column: usize,
        row: usize,
        height: usize,
    },

    #[error("pattern length k must be at least 2, got {0}")]
    PatternLengthTooSmall(usize),

    #[error("a pattern set needs at least one pattern")]
    EmptyPatternSet,

    #[error("patterns must have length at least 1")]
    EmptyPattern,

    #[error("board {0:?} is not self-conjugate")]
    NotSelfConjugate(Vec<usize>),

    #[error("pattern {pattern} does not start with 1 2 ... {k}")]
    MissingIncreasingPrefix { pattern: String, k: usize },

    #[error("cannot parse {what} from {input:?}")]
    Parse { what: &'static str, input: String },

    #[error("unknown output format {0:?}")]
    UnknownFormat(String),

    #[error("count overflowed")]
    CountOverflow,
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_k(k: usize) -> Result<()> {
    if k < 2 {
        Err(Error::PatternLengthTooSmall(k))
    } else {
        Ok(())
    }
}
