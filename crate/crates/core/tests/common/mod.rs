//! Brute-force oracles and invariant checks shared by the integration tests.
//! Nothing here calls the sequence-finding code it is used to check, except
//! where a check is explicitly about that code's output.

#![allow(dead_code)]

use ferrers_core::enumeration::enumerate_placements;
use ferrers_core::shifts::{self, label_sequence, ShiftStep};
use ferrers_core::{Board, Permutation, Placement};
use itertools::Itertools;

pub fn sq(s: &str) -> Placement {
    Placement::square(s.parse().unwrap())
}

/// All rectangle-valid occurrences of `k ... 2 1`, as column lists.
pub fn decreasing_occurrences(p: &Placement, k: usize) -> Vec<Vec<usize>> {
    let w = p.perm().values();
    (0..w.len())
        .combinations(k)
        .filter(|c| c.windows(2).all(|x| w[x[0]] > w[x[1]]))
        .filter(|c| p.board().height(c[k - 1]) >= w[c[0]])
        .collect()
}

/// Lexicographically smallest occurrence, comparing value sequences.
pub fn brute_a_sequence(p: &Placement, k: usize) -> Option<Vec<usize>> {
    let w = p.perm().values();
    decreasing_occurrences(p, k)
        .into_iter()
        .min_by_key(|c| c.iter().map(|&i| w[i]).collect::<Vec<_>>())
}

/// Greedy "leftmost b_1, then leftmost b_2, ..." is the lexicographic
/// minimum of the column list read from the right.
pub fn brute_b_sequence(p: &Placement, k: usize) -> Option<Vec<usize>> {
    decreasing_occurrences(p, k)
        .into_iter()
        .min_by_key(|c| c.iter().rev().copied().collect::<Vec<_>>())
}

pub fn brute_contains(p: &Placement, tau: &Permutation) -> bool {
    let w = p.perm().values();
    let t = tau.values();
    (0..w.len()).combinations(t.len()).any(|c| {
        let iso = (0..t.len())
            .tuple_combinations()
            .all(|(x, y)| (w[c[x]] < w[c[y]]) == (t[x] < t[y]));
        let max = c.iter().map(|&i| w[i]).max().unwrap_or(0);
        iso && c.last().is_none_or(|&last| p.board().height(last) >= max)
    })
}

/// Full placements on `board` by trying every permutation.
pub fn brute_placements(board: &Board) -> Vec<Permutation> {
    let n = board.columns();
    (1..=n)
        .permutations(n)
        .filter(|v| v.iter().enumerate().all(|(i, &r)| r <= board.height(i)))
        .filter(|_| board.rows() == n)
        .map(|v| Permutation::new(v).unwrap())
        .collect()
}

/// Every weakly decreasing height vector with `cols` columns and heights in `1..=max`.
pub fn all_boards(cols: usize, max: usize) -> Vec<Board> {
    if cols == 0 {
        return vec![Board::square(0)];
    }
    (1..=max)
        .combinations_with_replacement(cols)
        .map(|mut v| {
            v.reverse();
            Board::new(v).unwrap()
        })
        .collect()
}

pub fn brute_conjugate(b: &Board) -> Board {
    let rows = b.column_heights().iter().copied().max().unwrap_or(0);
    let heights = (1..=rows)
        .map(|r| (0..b.columns()).filter(|&c| b.height(c) >= r).count())
        .collect();
    Board::new(heights).unwrap()
}

pub fn pair_inversions(perm: &Permutation) -> usize {
    let w = perm.values();
    (0..w.len())
        .tuple_combinations()
        .filter(|&(i, j)| w[i] > w[j])
        .count()
}

/// `k - 1 + 2 * sum_m #{i : i_m < i < i_{m+1}, pi(i_1) > pi(i) > pi(i_{m+1})}`
/// from the columns of the rotated A-sequence.
pub fn inversion_drop_formula(step: &ShiftStep) -> usize {
    let w = step.perm_before.values();
    let cols = &step.moved_positions;
    let k = cols.len();
    let top = w[cols[0]];
    let correction: usize = cols
        .windows(2)
        .map(|pair| {
            (pair[0] + 1..pair[1])
                .filter(|&i| top > w[i] && w[i] > w[pair[1]])
                .count()
        })
        .sum();
    k - 1 + 2 * correction
}

/// Number of Motzkin paths of length `n`, by enumerating step words.
pub fn motzkin_paths(n: usize) -> u64 {
    (0..n)
        .map(|_| [-1i32, 0, 1])
        .multi_cartesian_product()
        .filter(|steps| {
            let mut h = 0;
            for s in steps {
                h += s;
                if h < 0 {
                    return false;
                }
            }
            h == 0
        })
        .count()
        .max(usize::from(n == 0)) as u64
}

pub fn all_boards_placements(max_n: usize) -> Vec<Placement> {
    (0..=max_n)
        .flat_map(ferrers_core::enumeration::all_placements)
        .collect()
}

pub fn square_up_to(max_n: usize) -> Vec<Placement> {
    (0..=max_n)
        .flat_map(|n| enumerate_placements(&Board::square(n)))
        .collect()
}

fn letters(p: &Placement, cols: &[usize]) -> Vec<usize> {
    cols.iter().map(|&c| p.perm().at(c)).collect()
}

fn label_of(p: &Placement, letter: usize) -> usize {
    let labels = label_sequence(p.perm().values());
    labels.get(p.perm().positions()[letter - 1])
}

/// Checks every label and sequence invariant that applies to a permutation
/// (square board) for one `k`. Returns a description of the first failure.
pub fn permutation_invariants(p: &Placement, k: usize) -> Result<(), String> {
    assert!(p.board().is_square());
    let fail = |what: &str| Err(format!("{what} fails for {} with k={k}", p.perm()));
    let Some(a_cols) = shifts::a_sequence(p, k).unwrap() else {
        return Ok(());
    };
    let b_cols = shifts::b_sequence(p, k).unwrap().unwrap();
    let a = letters(p, &a_cols);
    let b = letters(p, &b_cols);
    let word = p.perm().values();
    let labels = label_sequence(word);

    // Labels along A are k, ..., 1 and A is the successor sequence of a_k.
    if a_cols.iter().map(|&c| labels.get(c)).ne((1..=k).rev()) {
        return fail("labels along the A-sequence");
    }
    if shifts::successor_sequence(word, a_cols[0]) != a_cols {
        return fail("A-sequence as successor sequence");
    }

    let after_psi = shifts::b_shift(p, k).unwrap();
    let after_phi = shifts::a_shift(p, k).unwrap();

    // Labels of b_m, m < k, survive the B-shift.
    if b[1..]
        .iter()
        .any(|&x| label_of(p, x) != label_of(&after_psi, x))
    {
        return fail("labels of B below b_k");
    }
    // No letter <= b_k gains label under psi.
    if (1..=b[0]).any(|x| label_of(&after_psi, x) > label_of(p, x)) {
        return fail("no label increase for letters <= b_k");
    }

    // Index of a letter in A or B as the subscript m of a_m / b_m.
    let a_index = |x: usize| a.iter().position(|&y| y == x).map(|i| k - i);
    let common: Vec<usize> = a.iter().copied().filter(|x| b.contains(x)).collect();

    // Intersection is a contiguous run of both sequences.
    for seq in [&a, &b] {
        let idx: Vec<usize> = seq
            .iter()
            .enumerate()
            .filter(|(_, x)| common.contains(x))
            .map(|(i, _)| i)
            .collect();
        if idx.windows(2).any(|w| w[1] != w[0] + 1) {
            return fail("contiguous intersection");
        }
    }

    if a == b {
        return Ok(());
    }

    let a_after = shifts::a_sequence(&after_psi, k).unwrap();
    let b_after = shifts::b_sequence(&after_phi, k).unwrap();
    let (Some(a_after), Some(b_after)) = (a_after, b_after) else {
        return fail("both shifts still contain the pattern");
    };
    let new_a = letters(&after_psi, &a_after);
    let new_b = letters(&after_phi, &b_after);

    if a.iter().any(|&x| label_of(p, x) != label_of(&after_psi, x)) {
        return fail("labels of A unchanged by psi");
    }

    if common.is_empty() {
        if new_a != a {
            return fail("A unchanged by psi when A and B are disjoint");
        }
        return Ok(());
    }

    // a_i = b_j first common letter, a_d = b_e last.
    let i = a_index(common[0]).unwrap();
    let d = a_index(*common.last().unwrap()).unwrap();
    let j = k - b.iter().position(|&y| y == common[0]).unwrap();
    let e = k - b
        .iter()
        .position(|&y| y == *common.last().unwrap())
        .unwrap();

    let a_before_count = k - i;
    let b_before_count = k - j;
    let a_after_count = d - 1;
    let b_after_count = e - 1;
    if a_after_count <= b_after_count || b_before_count <= a_before_count {
        return fail("A longer after the intersection, B longer before");
    }

    // A(psi(p)) starts with a_k ... a_i and ends with a_{d-1} ... a_1.
    if new_a[..=k - i] != a[..=k - i] {
        return fail("prefix of A kept by psi");
    }
    if new_a[k - d + 1..] != a[k - d + 1..] {
        return fail("suffix of A kept by psi");
    }
    // B(phi(p)) starts with b_k ... b_{j+1} and ends with a_{d-1} b_{e-1} ... b_1.
    if new_b[..k - j] != b[..k - j] {
        return fail("prefix of B kept by phi");
    }
    if new_b[k - e] != a[k - d + 1] || new_b[k - e + 1..] != b[k - e + 1..] {
        return fail("suffix of B after phi");
    }

    // Middle letters x_{i-1} ... x_d agree in value and column.
    for m in d..i {
        let ai = k - m;
        let bi = k - (m + e - d + 1);
        if new_a[ai] != new_b[bi] || a_after[ai] != b_after[bi] {
            return fail("middle of the new sequences");
        }
    }
    Ok(())
}

/// Letters sharing a label appear left to right in increasing order.
pub fn same_label_increasing(word: &[usize]) -> bool {
    let labels = label_sequence(word);
    (0..word.len())
        .tuple_combinations()
        .all(|(x, y)| labels.get(x) != labels.get(y) || word[x] < word[y])
}

/// Statements that hold on every board: A-sequence from three constructions,
/// B-sequence directly and by reflection, and the prefix of A after psi.
pub fn board_invariants(p: &Placement, k: usize) -> Result<(), String> {
    let fail = |what: &str| Err(format!("{what} fails for {p} with k={k}"));
    let a = shifts::a_sequence(p, k).unwrap();
    if a != brute_a_sequence(p, k) {
        return fail("A-sequence vs brute-force lexicographic minimum");
    }
    if a != shifts::a_sequence_leftmost(p, k).unwrap() {
        return fail("lowest vs leftmost A-sequence");
    }
    let b = shifts::b_sequence(p, k).unwrap();
    if b != brute_b_sequence(p, k) {
        return fail("B-sequence vs brute force");
    }
    let reflected = shifts::a_sequence(&p.inverse(), k).unwrap().map(|cols| {
        let inv = p.inverse();
        let mut rows: Vec<usize> = cols.iter().map(|&c| inv.perm().at(c) - 1).collect();
        rows.sort_unstable();
        rows
    });
    if b != reflected {
        return fail("B-sequence as reflected A-sequence");
    }
    let psi = shifts::b_shift(p, k).unwrap();
    if psi != shifts::a_shift(&p.inverse(), k).unwrap().inverse() {
        return fail("direct psi vs reflected phi");
    }
    if let (Some(a), Some(b)) = (&a, &b) {
        if a != b {
            let Some(new_a) = shifts::a_sequence(&psi, k).unwrap() else {
                return fail("psi(p) still contains the pattern");
            };
            if psi.perm().at(new_a[0]) != p.perm().at(a[0]) {
                return fail("A(psi(p)) begins with a_k");
            }
        }
    }
    Ok(())
}
