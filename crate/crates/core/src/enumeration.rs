//! Exhaustive generation of placements, avoider counts, and checks of the
//! equinumerosity statements they support.

use std::collections::HashSet;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::Serialize;

use crate::board::Board;
use crate::error::{check_k, Error, Result};
use crate::perm::Permutation;
use crate::placement::{PatternSet, Placement};
use crate::shifts::{self, Shift};

/// All full placements on a board, in lexicographic order of the permutation.
pub struct Placements {
    board: Board,
    values: Vec<usize>,
    used: Vec<bool>,
    state: State,
}

#[derive(PartialEq, Eq)]
enum State {
    Fresh,
    Running,
    Done,
}

impl Placements {
    pub fn new(board: &Board) -> Self {
        let n = board.columns();
        let state = if board.admits_full_placement() {
            State::Fresh
        } else {
            State::Done
        };
        Placements {
            board: board.clone(),
            values: vec![0; n],
            used: vec![false; n + 1],
            state,
        }
    }

    /// Fills columns `i..` with the smallest admissible values, trying values
    /// `>= start` in column `i` and backtracking as needed.
    fn fill_from(&mut self, mut i: usize, mut start: usize) -> bool {
        let n = self.values.len();
        loop {
            let height = self.board.height(i);
            match (start..=height).find(|&v| !self.used[v]) {
                Some(v) => {
                    self.values[i] = v;
                    self.used[v] = true;
                    if i + 1 == n {
                        return true;
                    }
                    i += 1;
                    start = 1;
                }
                None => {
                    if i == 0 {
                        return false;
                    }
                    i -= 1;
                    let v = self.values[i];
                    self.used[v] = false;
                    start = v + 1;
                }
            }
        }
    }

    fn current(&self) -> Placement {
        Placement::from_parts_unchecked(
            self.board.clone(),
            Permutation::from_vec_unchecked(self.values.clone()),
        )
    }
}

impl Iterator for Placements {
    type Item = Placement;

    fn next(&mut self) -> Option<Placement> {
        let n = self.values.len();
        let found = match self.state {
            State::Done => return None,
            State::Fresh => {
                self.state = State::Running;
                n == 0 || self.fill_from(0, 1)
            }
            State::Running => {
                if n == 0 {
                    false
                } else {
                    let last = self.values[n - 1];
                    self.used[last] = false;
                    self.fill_from(n - 1, last + 1)
                }
            }
        };
        if found {
            Some(self.current())
        } else {
            self.state = State::Done;
            None
        }
    }
}

pub fn enumerate_placements(board: &Board) -> Placements {
    Placements::new(board)
}

/// Self-inverse placements on a self-conjugate board, lexicographic.
pub fn enumerate_symmetric_placements(board: &Board) -> Result<std::vec::IntoIter<Placement>> {
    if !board.is_self_conjugate() {
        return Err(Error::NotSelfConjugate(board.column_heights().to_vec()));
    }
    let n = board.columns();
    let mut out = Vec::new();
    if board.admits_full_placement() {
        let mut values = vec![0; n];
        involutions(board, &mut values, &mut out);
    }
    out.sort();
    Ok(out.into_iter())
}

fn involutions(board: &Board, values: &mut [usize], out: &mut Vec<Placement>) {
    let Some(i) = values.iter().position(|&v| v == 0) else {
        out.push(Placement::from_parts_unchecked(
            board.clone(),
            Permutation::from_vec_unchecked(values.to_vec()),
        ));
        return;
    };
    // Column i (0-based) holds row j (1-based) iff j <= height(i).
    if board.contains_cell(i, i + 1) {
        values[i] = i + 1;
        involutions(board, values, out);
        values[i] = 0;
    }
    for j in i + 1..values.len() {
        if values[j] == 0 && board.contains_cell(i, j + 1) && board.contains_cell(j, i + 1) {
            values[i] = j + 1;
            values[j] = i + 1;
            involutions(board, values, out);
            values[i] = 0;
            values[j] = 0;
        }
    }
}

/// Boards with `n` columns that admit a full placement, in lexicographic
/// order of their column heights.
pub fn boards_with_placements(n: usize) -> Vec<Board> {
    fn grow(n: usize, heights: &mut Vec<usize>, out: &mut Vec<Board>) {
        let i = heights.len();
        if i == n {
            out.push(Board::new(heights.clone()).expect("weakly decreasing"));
            return;
        }
        let max = if i == 0 { n } else { heights[i - 1] };
        let min = if i == 0 { n } else { n - i };
        for h in min..=max {
            heights.push(h);
            grow(n, heights, out);
            heights.pop();
        }
    }
    let mut out = Vec::new();
    grow(n, &mut Vec::with_capacity(n), &mut out);
    out
}

pub fn self_conjugate_boards(n: usize) -> Vec<Board> {
    boards_with_placements(n)
        .into_iter()
        .filter(Board::is_self_conjugate)
        .collect()
}

/// Every full placement on every board with `n` columns.
pub fn all_placements(n: usize) -> Vec<Placement> {
    boards_with_placements(n)
        .iter()
        .flat_map(enumerate_placements)
        .collect()
}

/// Placements on the `n x n` square, i.e. all of `S_n`.
pub fn square_placements(n: usize) -> Vec<Placement> {
    enumerate_placements(&Board::square(n)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountReport {
    pub board: Board,
    pub patterns: PatternSet,
    pub symmetric_only: bool,
    pub count: u64,
}

pub fn count_avoiders(
    board: &Board,
    patterns: &PatternSet,
    symmetric_only: bool,
) -> Result<CountReport> {
    let count = if symmetric_only {
        count_matching(enumerate_symmetric_placements(board)?, |p| {
            p.avoids_all(patterns)
        })?
    } else {
        count_matching(enumerate_placements(board), |p| p.avoids_all(patterns))?
    };
    Ok(CountReport {
        board: board.clone(),
        patterns: patterns.clone(),
        symmetric_only,
        count,
    })
}

fn count_matching(
    iter: impl Iterator<Item = Placement>,
    pred: impl Fn(&Placement) -> bool,
) -> Result<u64> {
    iter.filter(|p| pred(p)).try_fold(0u64, |acc, _| {
        acc.checked_add(1).ok_or(Error::CountOverflow)
    })
}

/// Outcome of checking that `phi*` maps one avoider class onto another.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BijectionCheck {
    pub k: usize,
    /// Placements avoiding `(k-1) ... 2 1 k`.
    pub domain_size: u64,
    /// Placements avoiding `k ... 2 1`.
    pub target_size: u64,
    pub injective: bool,
    pub image_is_target: bool,
    /// Only checked for symmetric placements.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub preserves_symmetry: Option<bool>,
}

impl BijectionCheck {
    pub fn holds(&self) -> bool {
        self.injective && self.image_is_target && self.preserves_symmetry.unwrap_or(true)
    }
}

fn check_transfer(pool: Vec<Placement>, k: usize, symmetric: bool) -> Result<BijectionCheck> {
    check_k(k)?;
    let source = Permutation::decreasing_then_max(k);
    let sink = Permutation::decreasing(k);
    let domain: Vec<&Placement> = pool.iter().filter(|p| !p.contains(&source)).collect();
    let target: HashSet<&Placement> = pool.iter().filter(|p| !p.contains(&sink)).collect();
    let images = domain
        .par_iter()
        .map(|p| shifts::iterate(p, k, Shift::Phi, Some(0)).map(|(q, _)| q))
        .collect::<Result<Vec<_>>>()?;
    let image_set: HashSet<&Placement> = images.iter().collect();
    let image_is_target =
        image_set.len() == target.len() && image_set.iter().all(|q| target.contains(q));
    Ok(BijectionCheck {
        k,
        domain_size: domain.len() as u64,
        target_size: target.len() as u64,
        injective: image_set.len() == domain.len(),
        image_is_target,
        preserves_symmetry: symmetric.then(|| images.iter().all(Placement::is_symmetric)),
    })
}

/// `phi*` restricted to `(k-1) ... 2 1 k`-avoiders on `board` is a bijection
/// onto the `k ... 2 1`-avoiders.
pub fn verify_bwx_bijection(board: &Board, k: usize) -> Result<BijectionCheck> {
    check_transfer(enumerate_placements(board).collect(), k, false)
}

/// Same, restricted to symmetric placements on a self-conjugate board.
pub fn verify_involution_transfer(board: &Board, k: usize) -> Result<BijectionCheck> {
    check_k(k)?;
    check_transfer(enumerate_symmetric_placements(board)?.collect(), k, true)
}

/// Replaces the prefix `1 2 ... k` of every pattern by `k ... 2 1`.
pub fn replace_increasing_prefix(patterns: &PatternSet, k: usize) -> Result<PatternSet> {
    check_k(k)?;
    let replaced = patterns
        .iter()
        .map(|tau| {
            let v = tau.values();
            if v.len() < k || v[..k].iter().enumerate().any(|(i, &x)| x != i + 1) {
                return Err(Error::MissingIncreasingPrefix {
                    pattern: tau.to_string(),
                    k,
                });
            }
            let mut values = v.to_vec();
            values[..k].reverse();
            Ok(Permutation::from_vec_unchecked(values))
        })
        .collect::<Result<Vec<_>>>()?;
    PatternSet::new(replaced)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WilfReport {
    pub n: usize,
    pub k: usize,
    pub patterns: PatternSet,
    pub replaced: PatternSet,
    pub count_t: u64,
    pub count_t_prime: u64,
    pub equal: bool,
}

/// Counts involutions of `S_n` avoiding `patterns` and the prefix-replaced set.
pub fn verify_wilf_set(n: usize, patterns: &PatternSet, k: usize) -> Result<WilfReport> {
    let replaced = replace_increasing_prefix(patterns, k)?;
    let board = Board::square(n);
    let count_t = count_avoiders(&board, patterns, true)?.count;
    let count_t_prime = count_avoiders(&board, &replaced, true)?.count;
    Ok(WilfReport {
        n,
        k,
        patterns: patterns.clone(),
        replaced,
        count_t,
        count_t_prime,
        equal: count_t == count_t_prime,
    })
}

fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::from(1u32), |acc, i| acc * i)
}

/// `M_n = sum_{j=0}^{floor(n/2)} n! / (j! (j+1)! (n-2j)!)`.
pub fn motzkin(n: usize) -> BigUint {
    let top = factorial(n);
    (0..=n / 2)
        .map(|j| &top / (factorial(j) * factorial(j + 1) * factorial(n - 2 * j)))
        .sum()
}

/// The four length-4 patterns whose involution avoiders are counted by `M_n`.
pub const MOTZKIN_PATTERNS: [&str; 4] = ["1234", "4321", "2143", "3214"];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MotzkinRow {
    pub n: usize,
    pub motzkin: u64,
    /// Involution avoider counts, aligned with [`MOTZKIN_PATTERNS`].
    pub counts: Vec<u64>,
}

impl MotzkinRow {
    pub fn holds(&self) -> bool {
        self.counts.iter().all(|&c| c == self.motzkin)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MotzkinReport {
    pub rows: Vec<MotzkinRow>,
}

impl MotzkinReport {
    pub fn holds(&self) -> bool {
        self.rows.iter().all(MotzkinRow::holds)
    }
}

pub fn verify_motzkin_identities(n_max: usize) -> Result<MotzkinReport> {
    let patterns: Vec<PatternSet> = MOTZKIN_PATTERNS
        .iter()
        .map(|s| PatternSet::single(s.parse().expect("literal pattern")))
        .collect::<Result<_>>()?;
    let rows = (1..=n_max)
        .map(|n| {
            let board = Board::square(n);
            let counts = patterns
                .iter()
                .map(|t| count_avoiders(&board, t, true).map(|r| r.count))
                .collect::<Result<Vec<_>>>()?;
            let motzkin = u64::try_from(motzkin(n)).map_err(|_| Error::CountOverflow)?;
            Ok(MotzkinRow { n, motzkin, counts })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(MotzkinReport { rows })
}

/// Result of running a predicate over a family of placements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepOutcome {
    pub checked: u64,
    /// Smallest failing placement in `(board, permutation)` order.
    pub counterexample: Option<Placement>,
}

impl SweepOutcome {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Runs `check` over `placements` in parallel on the current rayon pool.
pub fn sweep<F>(placements: &[Placement], check: F) -> Result<SweepOutcome>
where
    F: Fn(&Placement) -> Result<bool> + Sync,
{
    let failures = placements
        .par_iter()
        .map(|p| check(p).map(|ok| (!ok).then_some(p)))
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepOutcome {
        checked: placements.len() as u64,
        counterexample: failures.into_iter().flatten().min().cloned(),
    })
}
