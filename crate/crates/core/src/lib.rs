//! Semi-canonical and canonical binary matrices under row and column
//! permutation.
//!
//! * [`matrix`]: word-per-row binary matrices, row/column codes, permutations.
//! * [`canonical`]: semi-canonical test, canonical form, equivalence.
//! * [`enumerate`]: bitwise generator of all `n x n` semi-canonical matrices
//!   and the per-ones-count tables.
//! * [`graph`]: bipartite graphs, isomorphism via canonical forms.
//! * [`sperm`]: S-permutation matrices and Sudoku composition.
//! * [`format`]: plain-text matrix formats.

pub mod canonical;
pub mod enumerate;
pub mod error;
pub mod format;
pub mod graph;
pub mod matrix;
pub mod sperm;

pub use canonical::{
    canonical_form, class_report, equivalent, is_canonical, is_semi_canonical,
    structural_profile, EquivalenceClassReport,
};
pub use enumerate::{
    count_canonical, count_semi_canonical, enumerate_canonical, enumerate_semi_canonical,
    CountTable, Enumerator, SemiCanonicalStream,
};
pub use error::{Error, Result};
pub use graph::{count_graph_classes, isomorphic, BipartiteGraph, IsoVerdict};
pub use matrix::{compare_lex, BinaryMatrix, ColTuple, Permutation, RowTuple, Transposition};
pub use sperm::{
    compose_sudoku, disjoint, enumerate_s_permutations, find_disjoint_families, is_s_permutation,
    SPermCandidate, SudokuMatrix,
};
