mod common;

use common::*;
use ferrers_core::enumeration::{
    boards_with_placements, count_avoiders, enumerate_placements, enumerate_symmetric_placements,
};
use ferrers_core::shifts::{self, label_sequence, Shift};
use ferrers_core::{Board, PatternSet, Permutation, Placement};
use itertools::Itertools;
use proptest::prelude::*;

fn patterns_up_to(len: usize) -> Vec<Permutation> {
    (1..=len)
        .flat_map(|m| (1..=m).permutations(m))
        .map(|v| Permutation::new(v).unwrap())
        .collect()
}

#[test]
fn containment_matches_brute_force() {
    let taus = patterns_up_to(3);
    for p in all_boards_placements(5) {
        for tau in &taus {
            assert_eq!(p.contains(tau), brute_contains(&p, tau), "{p} / {tau}");
        }
    }
}

#[test]
fn square_containment_is_classical() {
    let taus = patterns_up_to(4);
    for p in square_up_to(6) {
        for tau in &taus {
            assert_eq!(p.contains(tau), p.perm().contains_pattern(tau));
        }
    }
}

#[test]
fn containment_commutes_with_reflection() {
    let taus = patterns_up_to(3);
    for p in all_boards_placements(5) {
        assert_eq!(p.inverse().inverse(), p);
        for tau in &taus {
            assert_eq!(p.contains(tau), p.inverse().contains(&tau.inverse()));
        }
    }
}

#[test]
fn occurrence_lists_match_brute_force() {
    let tau: Permutation = "21".parse().unwrap();
    for p in all_boards_placements(5) {
        assert_eq!(
            p.find_occurrences(&tau, None),
            decreasing_occurrences(&p, 2)
        );
    }
}

#[test]
fn boards_and_placements_match_brute_force() {
    for cols in 0..=5 {
        for board in all_boards(cols, 6) {
            let brute = brute_placements(&board);
            assert_eq!(board.admits_full_placement(), !brute.is_empty(), "{board}");
            assert_eq!(board.conjugate(), brute_conjugate(&board));
            let ours: Vec<Permutation> = enumerate_placements(&board)
                .map(|p| p.perm().clone())
                .collect();
            assert_eq!(ours, brute, "{board}");
        }
    }
}

#[test]
fn catalan_many_boards() {
    let counts: Vec<usize> = (0..=7).map(|n| boards_with_placements(n).len()).collect();
    assert_eq!(counts, vec![1, 1, 2, 5, 14, 42, 132, 429]);
}

#[test]
fn symmetric_enumeration_filters_all() {
    for n in 0..=6 {
        for board in boards_with_placements(n) {
            let filtered: Vec<Placement> = enumerate_placements(&board)
                .filter(Placement::is_symmetric)
                .collect();
            match enumerate_symmetric_placements(&board) {
                Ok(it) => assert_eq!(it.collect::<Vec<_>>(), filtered),
                Err(_) => assert!(!board.is_self_conjugate()),
            }
        }
    }
}

#[test]
fn counts_match_filtering() {
    let t = PatternSet::new(vec!["321".parse().unwrap(), "2143".parse().unwrap()]).unwrap();
    for n in 0..=6 {
        for board in boards_with_placements(n) {
            let direct = enumerate_placements(&board)
                .filter(|p| t.iter().all(|tau| !brute_contains(p, tau)))
                .count() as u64;
            assert_eq!(count_avoiders(&board, &t, false).unwrap().count, direct);
        }
    }
}

#[test]
fn sequences_on_every_board() {
    for p in all_boards_placements(6) {
        for k in 2..=4 {
            board_invariants(&p, k).unwrap();
        }
    }
}

#[test]
fn inversion_drop_on_every_board() {
    for p in all_boards_placements(6) {
        for k in 2..=4 {
            for op in [Shift::Phi, Shift::Psi] {
                if let Some((q, step)) = shifts::shift_step(&p, k, op).unwrap() {
                    let drop = step.inv_before - step.inv_after;
                    assert_eq!(step.inv_before, pair_inversions(p.perm()));
                    assert_eq!(step.inv_after, pair_inversions(q.perm()));
                    if op == Shift::Phi {
                        assert_eq!(drop, inversion_drop_formula(&step), "{p} k={k}");
                    } else {
                        assert!(drop >= k - 1);
                    }
                }
            }
        }
    }
}

#[test]
fn invariants_on_small_permutations() {
    for p in square_up_to(6) {
        for k in 2..=p.len().max(2) {
            permutation_invariants(&p, k).unwrap();
        }
    }
}

#[test]
fn same_label_increasing_for_small_words() {
    for n in 0..=7 {
        for w in (1..=n).permutations(n) {
            assert!(same_label_increasing(&w), "{w:?}");
        }
    }
}

fn longest_decreasing_from(word: &[usize], i: usize) -> usize {
    1 + (i + 1..word.len())
        .filter(|&j| word[j] < word[i])
        .map(|j| longest_decreasing_from(word, j))
        .max()
        .unwrap_or(0)
}

fn perm_strategy(max: usize) -> impl Strategy<Value = Vec<usize>> {
    (0..=max).prop_flat_map(|n| Just((1..=n).collect::<Vec<_>>()).prop_shuffle())
}

proptest! {
    #[test]
    fn labels_are_longest_decreasing(w in perm_strategy(10)) {
        let labels = label_sequence(&w);
        for i in 0..w.len() {
            prop_assert_eq!(labels.get(i), longest_decreasing_from(&w, i));
        }
    }

    #[test]
    fn display_parse_round_trip(w in perm_strategy(12)) {
        let p = Permutation::new(w).unwrap();
        prop_assert_eq!(p.to_string().parse::<Permutation>().unwrap(), p.clone());
        prop_assert_eq!(p.inversions(), pair_inversions(&p));
        prop_assert_eq!(p.inverse().inverse(), p);
    }

    #[test]
    fn invariants_on_larger_permutations(w in perm_strategy(11), k in 2usize..6) {
        let p = Placement::square(Permutation::new(w).unwrap());
        prop_assert!(permutation_invariants(&p, k).is_ok(), "{:?}", permutation_invariants(&p, k));
        prop_assert!(same_label_increasing(p.perm().values()));
    }

    #[test]
    fn phi_star_avoids_and_drops(w in perm_strategy(10), k in 2usize..5) {
        let p = Placement::square(Permutation::new(w).unwrap());
        let tau = Permutation::decreasing(k);
        let (q, trace) = shifts::phi_star(&p, k).unwrap();
        prop_assert!(!q.contains(&tau));
        prop_assert!(q.inversion_number() + trace.step_count() * (k - 1) <= p.inversion_number());
        let (r, _) = shifts::psi_star(&p, k).unwrap();
        prop_assert_eq!(q.clone(), r);
        prop_assert_eq!(shifts::phi_star(&p.inverse(), k).unwrap().0, q.inverse());
    }
}

#[test]
fn non_square_board_example() {
    let board: Board = "4,3,2,2".parse().unwrap();
    let p = Placement::new(board, "4 3 1 2".parse().unwrap()).unwrap();
    assert_eq!(shifts::a_sequence(&p, 2).unwrap(), None);
    assert_eq!(shifts::phi_star(&p, 2).unwrap().0, p);
}
