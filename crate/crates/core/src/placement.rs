//! Full rook placements and pattern containment under the rectangle rule.

use std::fmt;
use std::ops::ControlFlow;

use serde::Serialize;

use crate::board::Board;
use crate::error::{Error, Result};
use crate::perm::Permutation;

/// A full rook placement: column `i` holds its dot in row `perm.at(i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Placement {
    board: Board,
    perm: Permutation,
}

impl Placement {
    pub fn new(board: Board, perm: Permutation) -> Result<Self> {
        let n = perm.len();
        if board.columns() != n {
            return Err(Error::ColumnCountMismatch {
                columns: board.columns(),
                len: n,
            });
        }
        if board.rows() != n {
            return Err(Error::RowCountMismatch {
                rows: board.rows(),
                len: n,
            });
        }
        for (column, &row) in perm.values().iter().enumerate() {
            if row > board.height(column) {
                return Err(Error::DotOutsideBoard {
                    column: column + 1,
                    row,
                    height: board.height(column),
                });
            }
        }
        Ok(Placement { board, perm })
    }

    /// Placement on the `n x n` square.
    pub fn square(perm: Permutation) -> Self {
        Placement {
            board: Board::square(perm.len()),
            perm,
        }
    }

    pub(crate) fn from_parts_unchecked(board: Board, perm: Permutation) -> Self {
        debug_assert!(Placement::new(board.clone(), perm.clone()).is_ok());
        Placement { board, perm }
    }

    pub fn board(&self) -> &Board {
        &self.board
    }

    pub fn perm(&self) -> &Permutation {
        &self.perm
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    /// Reflection through the main diagonal.
    pub fn inverse(&self) -> Placement {
        Placement {
            board: self.board.conjugate(),
            perm: self.perm.inverse(),
        }
    }

    pub fn is_symmetric(&self) -> bool {
        self.board.is_self_conjugate() && self.perm.is_involution()
    }

    pub fn inversion_number(&self) -> usize {
        self.perm.inversions()
    }

    /// True iff an occurrence of `pattern` fits inside a rectangular sub-board.
    pub fn contains(&self, pattern: &Permutation) -> bool {
        first_occurrence(self.perm.values(), pattern.values(), |pos, max| {
            self.board.height(pos) >= max
        })
        .is_some()
    }

    /// Rectangle-valid occurrences of `pattern`, as 0-based position lists in
    /// lexicographic order, truncated to `limit` entries when given.
    pub fn find_occurrences(&self, pattern: &Permutation, limit: Option<usize>) -> Vec<Vec<usize>> {
        let mut found = Vec::new();
        if limit == Some(0) {
            return found;
        }
        let _ = for_each_occurrence(
            self.perm.values(),
            pattern.values(),
            &|pos, max| self.board.height(pos) >= max,
            &mut |occ| {
                found.push(occ.to_vec());
                if limit.is_some_and(|l| found.len() >= l) {
                    ControlFlow::Break(())
                } else {
                    ControlFlow::Continue(())
                }
            },
        );
        found
    }

    pub fn avoids_all(&self, patterns: &PatternSet) -> bool {
        patterns.iter().all(|tau| !self.contains(tau))
    }
}

impl fmt::Display for Placement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.board.is_square() {
            write!(f, "{}", self.perm)
        } else {
            write!(f, "{} on [{}]", self.perm, self.board)
        }
    }
}

/// Non-empty set of non-empty patterns.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct PatternSet {
    patterns: Vec<Permutation>,
}

impl PatternSet {
    pub fn new(patterns: Vec<Permutation>) -> Result<Self> {
        if patterns.is_empty() {
            return Err(Error::EmptyPatternSet);
        }
        if patterns.iter().any(|p| p.is_empty()) {
            return Err(Error::EmptyPattern);
        }
        Ok(PatternSet { patterns })
    }

    pub fn single(pattern: Permutation) -> Result<Self> {
        PatternSet::new(vec![pattern])
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Permutation> {
        self.patterns.iter()
    }

    pub fn patterns(&self) -> &[Permutation] {
        &self.patterns
    }

    pub fn len(&self) -> usize {
        self.patterns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.patterns.is_empty()
    }
}

impl fmt::Display for PatternSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, p) in self.patterns.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("}")
    }
}

/// `fits(pos, max)` must be monotone: false for `(pos, max)` implies false
/// for every later position and every larger maximum. It is checked on each
/// partial occurrence, which doubles as pruning.
pub(crate) fn first_occurrence(
    word: &[usize],
    pattern: &[usize],
    fits: impl Fn(usize, usize) -> bool,
) -> Option<Vec<usize>> {
    let mut found = None;
    let _ = for_each_occurrence(word, pattern, &fits, &mut |occ| {
        found = Some(occ.to_vec());
        ControlFlow::Break(())
    });
    found
}

fn for_each_occurrence(
    word: &[usize],
    pattern: &[usize],
    fits: &dyn Fn(usize, usize) -> bool,
    visit: &mut dyn FnMut(&[usize]) -> ControlFlow<()>,
) -> ControlFlow<()> {
    let mut chosen = Vec::with_capacity(pattern.len());
    extend(word, pattern, fits, visit, &mut chosen, 0)
}

fn extend(
    word: &[usize],
    pattern: &[usize],
    fits: &dyn Fn(usize, usize) -> bool,
    visit: &mut dyn FnMut(&[usize]) -> ControlFlow<()>,
    chosen: &mut Vec<usize>,
    max: usize,
) -> ControlFlow<()> {
    let j = chosen.len();
    if j == pattern.len() {
        return visit(chosen);
    }
    let remaining = pattern.len() - j;
    if word.len() < remaining {
        return ControlFlow::Continue(());
    }
    let start = chosen.last().map_or(0, |&q| q + 1);
    for pos in start..=word.len() - remaining {
        let v = word[pos];
        let order_ok = chosen
            .iter()
            .zip(pattern)
            .all(|(&q, &t)| (word[q] < v) == (t < pattern[j]));
        if !order_ok {
            continue;
        }
        let m = max.max(v);
        if !fits(pos, m) {
            continue;
        }
        chosen.push(pos);
        extend(word, pattern, fits, visit, chosen, m)?;
        chosen.pop();
    }
    ControlFlow::Continue(())
}
