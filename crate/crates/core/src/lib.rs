//! Shift maps on full rook placements on Ferrers boards.
//!
//! A placement is a Ferrers board with one dot per row and column. The
//! A-shift [`shifts::a_shift`] rotates the lexicographically smallest
//! occurrence of `k ... 2 1` into `(k-1) ... 2 1 k`; iterating it gives
//! [`shifts::phi_star`], which maps every placement to one avoiding
//! `k ... 2 1`. The B-shift is the same map conjugated by diagonal
//! reflection. [`rewriting`] treats the two shifts as a rewriting system and
//! [`enumeration`] provides the exhaustive counting used to check the
//! resulting equinumerosity statements.

pub mod board;
pub mod enumeration;
pub mod error;
pub mod perm;
pub mod placement;
pub mod rewriting;
pub mod shifts;

pub use board::Board;
pub use error::{Error, Result};
pub use perm::Permutation;
pub use placement::{PatternSet, Placement};
pub use rewriting::{
    apply_program, export_graph, global_commutation_check, local_commutation_check, normal_form,
    GraphFormat, LocalCommutationReport, RewriteGraph, RewriteNode, ShiftProgram, Strategy,
};
pub use shifts::{
    a_sequence, a_shift, b_sequence, b_shift, label_sequence, phi_star, psi_star,
    successor_sequence, LabelSequence, Shift, ShiftStep, ShiftTrace,
};
