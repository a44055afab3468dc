//! Ferrers boards stored as column heights.
//!
//! Cell `(i, j)` is column `i` (0-based, from the left) and row `j`
//! (1-based, from the bottom). It belongs to the board iff `j <= heights[i]`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Board {
    column_heights: Vec<usize>,
}

impl Board {
    pub fn new(column_heights: Vec<usize>) -> Result<Self> {
        let ferrers = column_heights.iter().all(|&h| h >= 1)
            && column_heights.windows(2).all(|w| w[0] >= w[1]);
        if ferrers {
            Ok(Board { column_heights })
        } else {
            Err(Error::InvalidBoard(column_heights))
        }
    }

    pub fn square(n: usize) -> Self {
        Board {
            column_heights: vec![n; n],
        }
    }

    pub fn column_heights(&self) -> &[usize] {
        &self.column_heights
    }

    pub fn columns(&self) -> usize {
        self.column_heights.len()
    }

    pub fn rows(&self) -> usize {
        self.column_heights.first().copied().unwrap_or(0)
    }

    pub fn height(&self, column: usize) -> usize {
        self.column_heights[column]
    }

    /// Number of cells in row `row` (1-based), i.e. how many columns reach it.
    pub fn row_length(&self, row: usize) -> usize {
        self.column_heights.partition_point(|&h| h >= row)
    }

    pub fn contains_cell(&self, column: usize, row: usize) -> bool {
        row >= 1 && column < self.columns() && row <= self.column_heights[column]
    }

    pub fn is_square(&self) -> bool {
        self.column_heights.iter().all(|&h| h == self.columns())
    }

    /// Reflection through the main diagonal; the column heights of the
    /// result are the row lengths of `self`.
    pub fn conjugate(&self) -> Self {
        let column_heights = (1..=self.rows()).map(|r| self.row_length(r)).collect();
        Board { column_heights }
    }

    pub fn is_self_conjugate(&self) -> bool {
        *self == self.conjugate()
    }

    /// A full rook placement exists iff there are as many rows as columns
    /// and column `i` (0-based) has height at least `n - i`.
    pub fn admits_full_placement(&self) -> bool {
        let n = self.columns();
        self.rows() == n
            && self
                .column_heights
                .iter()
                .enumerate()
                .all(|(i, &h)| h >= n - i)
    }
}

impl fmt::Display for Board {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for h in &self.column_heights {
            if !first {
                f.write_str(",")?;
            }
            write!(f, "{h}")?;
            first = false;
        }
        Ok(())
    }
}

/// Comma-separated column heights, e.g. `"4,3,2,2"`. Whitespace is tolerated.
impl FromStr for Board {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim();
        if trimmed.is_empty() {
            return Ok(Board::square(0));
        }
        let heights = trimmed
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<usize>().map_err(|_| Error::Parse {
                    what: "board",
                    input: s.to_string(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Board::new(heights)
    }
}
