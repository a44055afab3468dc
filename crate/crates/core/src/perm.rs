//! Permutations in one-line notation.
//!
//! Values are 1-based as in the usual one-line notation (`7 4 6 3 5 2 1`);
//! positions are 0-based slice indices.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

/// A bijection on `{1, ..., n}` written in one-line notation. Also used for patterns.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Permutation {
    values: Vec<usize>,
}

impl Permutation {
    pub fn new(values: Vec<usize>) -> Result<Self> {
        let n = values.len();
        let mut seen = vec![false; n + 1];
        for &v in &values {
            if v == 0 || v > n || seen[v] {
                return Err(Error::InvalidPermutation { values, len: n });
            }
            seen[v] = true;
        }
        Ok(Permutation { values })
    }

    /// Skips validation; callers guarantee `values` is a permutation of `1..=len`.
    pub(crate) fn from_vec_unchecked(values: Vec<usize>) -> Self {
        debug_assert!(Permutation::new(values.clone()).is_ok());
        Permutation { values }
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            values: (1..=n).collect(),
        }
    }

    /// The pattern `k ... 2 1`.
    pub fn decreasing(k: usize) -> Self {
        Permutation {
            values: (1..=k).rev().collect(),
        }
    }

    /// The pattern `(k-1) ... 2 1 k`.
    pub fn decreasing_then_max(k: usize) -> Self {
        let mut values: Vec<usize> = (1..k).rev().collect();
        values.push(k);
        Permutation { values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn into_values(self) -> Vec<usize> {
        self.values
    }

    /// Value at 0-based position `i`.
    pub fn at(&self, i: usize) -> usize {
        self.values[i]
    }

    /// 0-based position of each value: `positions()[v - 1]` is where `v` sits.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.values.len()];
        for (i, &v) in self.values.iter().enumerate() {
            pos[v - 1] = i;
        }
        pos
    }

    pub fn inverse(&self) -> Self {
        let values = self.positions().into_iter().map(|i| i + 1).collect();
        Permutation { values }
    }

    pub fn is_involution(&self) -> bool {
        self.values
            .iter()
            .enumerate()
            .all(|(i, &v)| self.values[v - 1] == i + 1)
    }

    /// Number of pairs `i < j` with `values[i] > values[j]`.
    pub fn inversions(&self) -> usize {
        // Fenwick tree over values, scanning right to left.
        let n = self.values.len();
        let mut tree = vec![0usize; n + 1];
        let mut count = 0;
        for &v in self.values.iter().rev() {
            let mut i = v - 1;
            while i > 0 {
                count += tree[i];
                i &= i - 1;
            }
            let mut i = v;
            while i <= n {
                tree[i] += 1;
                i += i & i.wrapping_neg();
            }
        }
        count
    }

    /// Classical containment: some subsequence is order-isomorphic to `pattern`.
    pub fn contains_pattern(&self, pattern: &Permutation) -> bool {
        crate::placement::first_occurrence(&self.values, pattern.values(), |_, _| true).is_some()
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in &self.values {
            if !first {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
            first = false;
        }
        Ok(())
    }
}

/// Accepts space- or comma-separated values (`"7 4 6 3 5 2 1"`, `"7,4,6"`),
/// or a run of single digits with no separator (`"321"`).
impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let err = || Error::Parse {
            what: "permutation",
            input: s.to_string(),
        };
        let trimmed = s.trim();
        let values: Vec<usize> = if trimmed.is_empty() {
            Vec::new()
        } else if trimmed.contains(|c: char| c == ',' || c.is_whitespace()) {
            trimmed
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<usize>().map_err(|_| err()))
                .collect::<Result<_>>()?
        } else {
            trimmed
                .chars()
                .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(err))
                .collect::<Result<_>>()?
        };
        Permutation::new(values)
    }
}
