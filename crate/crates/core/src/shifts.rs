//! Labels, A- and B-sequences, and the shift maps built from them.
//!
//! The A-shift (`phi`) picks the lexicographically smallest rectangle-valid
//! occurrence of `k ... 2 1` and rotates its dots into an occurrence of
//! `(k-1) ... 2 1 k`. The B-shift (`psi`) is its mirror image through the
//! main diagonal. Both are identities on placements avoiding `k ... 2 1`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{check_k, Error, Result};
use crate::perm::Permutation;
use crate::placement::Placement;

/// One of the two elementary maps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Shift {
    /// A-shift.
    Phi,
    /// B-shift.
    Psi,
}

impl Shift {
    pub fn other(self) -> Shift {
        match self {
            Shift::Phi => Shift::Psi,
            Shift::Psi => Shift::Phi,
        }
    }
}

impl fmt::Display for Shift {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Shift::Phi => "phi",
            Shift::Psi => "psi",
        })
    }
}

impl FromStr for Shift {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "phi" | "φ" | "a" | "A" => Ok(Shift::Phi),
            "psi" | "ψ" | "b" | "B" => Ok(Shift::Psi),
            _ => Err(Error::Parse {
                what: "shift",
                input: s.to_string(),
            }),
        }
    }
}

/// `labels[i]` is the length of the longest decreasing subsequence starting at position `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LabelSequence(Vec<usize>);

impl LabelSequence {
    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn get(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Labels of a word with distinct letters: the last letter gets 1, and every
/// other letter gets one more than the largest label among later, smaller letters.
pub fn label_sequence(word: &[usize]) -> LabelSequence {
    let n = word.len();
    let mut labels = vec![1; n];
    for i in (0..n).rev() {
        labels[i] = 1
            + (i + 1..n)
                .filter(|&m| word[m] < word[i])
                .map(|m| labels[m])
                .max()
                .unwrap_or(0);
    }
    LabelSequence(labels)
}

/// Positions `s_m, ..., s_1` starting at `start`, each the leftmost later
/// letter whose label is one less than the previous.
pub fn successor_sequence(word: &[usize], start: usize) -> Vec<usize> {
    let labels = label_sequence(word);
    let mut seq = vec![start];
    let mut cur = start;
    while labels.get(cur) > 1 {
        let want = labels.get(cur) - 1;
        cur = (cur + 1..word.len())
            .find(|&q| labels.get(q) == want)
            .expect("a letter with label l > 1 has a later letter labelled l - 1");
        seq.push(cur);
    }
    seq
}

/// Labels of the letters in columns `0..width` with value at most `height`;
/// letters outside the rectangle get 0.
fn rectangle_start_labels(word: &[usize], width: usize, height: usize) -> Vec<usize> {
    let mut labels = vec![0; width];
    for i in (0..width).rev() {
        if word[i] > height {
            continue;
        }
        labels[i] = 1
            + (i + 1..width)
                .filter(|&m| word[m] < word[i])
                .map(|m| labels[m])
                .max()
                .unwrap_or(0);
    }
    labels
}

/// Longest decreasing subsequence ending at each letter, restricted as above.
fn rectangle_end_labels(word: &[usize], width: usize, height: usize) -> Vec<usize> {
    let mut labels = vec![0; width];
    for i in 0..width {
        if word[i] > height {
            continue;
        }
        labels[i] = 1
            + (0..i)
                .filter(|&m| word[m] > word[i] && word[m] <= height)
                .map(|m| labels[m])
                .max()
                .unwrap_or(0);
    }
    labels
}

#[derive(Clone, Copy)]
enum NextDot {
    Lowest,
    Leftmost,
}

fn a_sequence_with(p: &Placement, k: usize, next: NextDot) -> Option<Vec<usize>> {
    let word = p.perm().values();
    let positions = p.perm().positions();
    let board = p.board();
    // The lowest admissible top dot fixes the rectangle; the rest is a greedy
    // walk inside it.
    for top in 1..=word.len() {
        let col = positions[top - 1];
        let width = board.row_length(top);
        if col >= width {
            continue;
        }
        let labels = rectangle_start_labels(word, width, top);
        if labels[col] < k {
            continue;
        }
        let mut seq = Vec::with_capacity(k);
        seq.push(col);
        for need in (1..k).rev() {
            let cur = seq[seq.len() - 1];
            let mut candidates =
                (cur + 1..width).filter(|&q| word[q] < word[cur] && labels[q] >= need);
            let chosen = match next {
                NextDot::Lowest => candidates.min_by_key(|&q| word[q]),
                NextDot::Leftmost => candidates.next(),
            };
            seq.push(chosen.expect("label bound guarantees an extension"));
        }
        return Some(seq);
    }
    None
}

/// Columns (0-based, increasing) of the A-sequence `a_k ... a_1`, or `None`
/// if `p` avoids `k ... 2 1`. Each dot after the first is the lowest one that
/// still extends to a full occurrence.
pub fn a_sequence(p: &Placement, k: usize) -> Result<Option<Vec<usize>>> {
    check_k(k)?;
    Ok(a_sequence_with(p, k, NextDot::Lowest))
}

/// Same as [`a_sequence`] but each dot after the first is chosen as far left
/// as possible. The two constructions always agree.
pub fn a_sequence_leftmost(p: &Placement, k: usize) -> Result<Option<Vec<usize>>> {
    check_k(k)?;
    Ok(a_sequence_with(p, k, NextDot::Leftmost))
}

/// Width and height of the A-rectangle: the largest sub-board rectangle
/// whose top row holds `a_k`.
pub fn a_rectangle(p: &Placement, k: usize) -> Result<Option<(usize, usize)>> {
    Ok(a_sequence(p, k)?.map(|seq| {
        let top = p.perm().at(seq[0]);
        (p.board().row_length(top), top)
    }))
}

/// Columns (0-based, increasing) of the B-sequence `b_k ... b_1`, or `None`
/// if `p` avoids `k ... 2 1`. `b_1` is the leftmost dot ending an occurrence;
/// each `b_j` is then the leftmost dot with `b_j ... b_1` ending one.
pub fn b_sequence(p: &Placement, k: usize) -> Result<Option<Vec<usize>>> {
    check_k(k)?;
    let word = p.perm().values();
    let board = p.board();
    for last in 0..word.len() {
        let height = board.height(last);
        let ends = rectangle_end_labels(word, last + 1, height);
        if ends[last] < k {
            continue;
        }
        let mut seq = Vec::with_capacity(k);
        seq.push(last);
        for need in (1..k).rev() {
            let cur = seq[seq.len() - 1];
            let chosen = (0..cur)
                .find(|&q| word[q] > word[cur] && word[q] <= height && ends[q] >= need)
                .expect("label bound guarantees an extension");
            seq.push(chosen);
        }
        seq.reverse();
        return Ok(Some(seq));
    }
    Ok(None)
}

pub fn sequence(p: &Placement, k: usize, op: Shift) -> Result<Option<Vec<usize>>> {
    match op {
        Shift::Phi => a_sequence(p, k),
        Shift::Psi => b_sequence(p, k),
    }
}

/// Moves the values at `columns` (a decreasing run, columns increasing) so
/// that they read `(k-1) ... 2 1 k`: every value slides one column left and
/// the largest goes to the last column.
fn rotate(perm: &Permutation, columns: &[usize]) -> Permutation {
    let mut values = perm.values().to_vec();
    let largest = values[columns[0]];
    for w in columns.windows(2) {
        values[w[0]] = values[w[1]];
    }
    values[columns[columns.len() - 1]] = largest;
    Permutation::from_vec_unchecked(values)
}

/// Audit record of one non-trivial shift.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShiftStep {
    pub op: Shift,
    /// 0-based columns of the rotated dots.
    pub moved_positions: Vec<usize>,
    pub perm_before: Permutation,
    pub perm_after: Permutation,
    pub inv_before: usize,
    pub inv_after: usize,
}

/// Steps of an iterated run. With a cap, at most `cap` steps are retained
/// but every step is counted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShiftTrace {
    k: usize,
    steps: Vec<ShiftStep>,
    step_count: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    cap: Option<usize>,
}

impl ShiftTrace {
    pub fn new(k: usize) -> Self {
        ShiftTrace::with_cap(k, None)
    }

    pub fn with_cap(k: usize, cap: Option<usize>) -> Self {
        ShiftTrace {
            k,
            steps: Vec::new(),
            step_count: 0,
            cap,
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn push(&mut self, step: ShiftStep) {
        debug_assert!(self
            .steps
            .last()
            .is_none_or(|prev| prev.perm_after == step.perm_before));
        self.step_count += 1;
        if self.cap.is_none_or(|cap| self.steps.len() < cap) {
            self.steps.push(step);
        }
    }

    pub fn steps(&self) -> &[ShiftStep] {
        &self.steps
    }

    /// Number of steps taken, including any not retained.
    pub fn step_count(&self) -> usize {
        self.step_count
    }

    pub fn is_truncated(&self) -> bool {
        self.steps.len() < self.step_count
    }
}

/// One shift; `None` when `p` avoids `k ... 2 1` (the shift is the identity).
pub fn shift_step(p: &Placement, k: usize, op: Shift) -> Result<Option<(Placement, ShiftStep)>> {
    let Some(columns) = sequence(p, k, op)? else {
        return Ok(None);
    };
    let perm_after = rotate(p.perm(), &columns);
    let step = ShiftStep {
        op,
        inv_before: p.perm().inversions(),
        inv_after: perm_after.inversions(),
        moved_positions: columns,
        perm_before: p.perm().clone(),
        perm_after: perm_after.clone(),
    };
    Ok(Some((
        Placement::from_parts_unchecked(p.board().clone(), perm_after),
        step,
    )))
}

pub fn apply(p: &Placement, k: usize, op: Shift) -> Result<Placement> {
    Ok(shift_step(p, k, op)?.map_or_else(|| p.clone(), |(q, _)| q))
}

/// The A-shift `phi`.
pub fn a_shift(p: &Placement, k: usize) -> Result<Placement> {
    apply(p, k, Shift::Phi)
}

/// The B-shift `psi`, rotating the B-sequence directly. Equal to
/// reflecting, A-shifting and reflecting back.
pub fn b_shift(p: &Placement, k: usize) -> Result<Placement> {
    apply(p, k, Shift::Psi)
}

/// Applies `op` until the placement avoids `k ... 2 1`.
pub fn iterate(
    p: &Placement,
    k: usize,
    op: Shift,
    cap: Option<usize>,
) -> Result<(Placement, ShiftTrace)> {
    check_k(k)?;
    let mut trace = ShiftTrace::with_cap(k, cap);
    let mut cur = p.clone();
    while let Some((next, step)) = shift_step(&cur, k, op)? {
        trace.push(step);
        cur = next;
    }
    Ok((cur, trace))
}

pub fn phi_star(p: &Placement, k: usize) -> Result<(Placement, ShiftTrace)> {
    iterate(p, k, Shift::Phi, None)
}

pub fn psi_star(p: &Placement, k: usize) -> Result<(Placement, ShiftTrace)> {
    iterate(p, k, Shift::Psi, None)
}

pub fn inversion_number(p: &Placement) -> usize {
    p.inversion_number()
}
