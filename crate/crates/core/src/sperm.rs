//! S-permutation matrices and Sudoku composition.
//!
//! An `n^2 x n^2` binary matrix is an S-permutation matrix when every row,
//! every column and every aligned `n x n` block holds exactly one 1. A Sudoku
//! matrix of base `n` is exactly `sum_k k * A_k` for `n^2` pairwise disjoint
//! S-permutation matrices `A_1 .. A_{n^2}`, and each `A_k` is recovered as the
//! support of symbol `k`.

use std::fmt;

use crate::error::{Error, Result};
use crate::format::to_compact;
use crate::matrix::BinaryMatrix;

/// Largest base whose `n^2` side fits a row word.
pub const MAX_BASE: usize = 7;

fn side_of(base: usize) -> Result<usize> {
    if base == 0 || base > MAX_BASE {
        return Err(Error::OrderOutOfRange {
            n: base,
            min: 1,
            max: MAX_BASE,
        });
    }
    Ok(base * base)
}

/// A square binary matrix of side `base^2`, not yet known to be an
/// S-permutation matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SPermCandidate {
    base: usize,
    matrix: BinaryMatrix,
}

impl SPermCandidate {
    pub fn new(base: usize, matrix: BinaryMatrix) -> Result<Self> {
        let side = side_of(base)?;
        for actual in [matrix.n(), matrix.m()] {
            if actual != side {
                return Err(Error::SizeMismatch {
                    expected: side,
                    actual,
                });
            }
        }
        Ok(Self { base, matrix })
    }

    /// Infers the base from the side length.
    pub fn from_matrix(matrix: BinaryMatrix) -> Result<Self> {
        let base = (1..=MAX_BASE)
            .find(|b| b * b == matrix.n())
            .ok_or(Error::SizeMismatch {
                expected: 0,
                actual: matrix.n(),
            })?;
        Self::new(base, matrix)
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn matrix(&self) -> &BinaryMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> BinaryMatrix {
        self.matrix
    }
}

/// First constraint an S-permutation candidate breaks. Indices are 0-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SPermViolation {
    Row { index: usize, ones: u32 },
    Column { index: usize, ones: u32 },
    Block { row: usize, col: usize, ones: u32 },
}

impl fmt::Display for SPermViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            SPermViolation::Row { index, ones } => {
                write!(f, "row {} has {ones} ones", index + 1)
            }
            SPermViolation::Column { index, ones } => {
                write!(f, "column {} has {ones} ones", index + 1)
            }
            SPermViolation::Block { row, col, ones } => {
                write!(f, "block ({}, {}) has {ones} ones", row + 1, col + 1)
            }
        }
    }
}

pub fn s_permutation_violation(a: &BinaryMatrix, base: usize) -> Result<Option<SPermViolation>> {
    let side = side_of(base)?;
    if a.n() != side || a.m() != side {
        return Err(Error::SizeMismatch {
            expected: side,
            actual: if a.n() != side { a.n() } else { a.m() },
        });
    }
    if let Some((index, ones)) = a
        .rows()
        .iter()
        .map(|r| r.count_ones())
        .enumerate()
        .find(|&(_, c)| c != 1)
    {
        return Ok(Some(SPermViolation::Row { index, ones }));
    }
    if let Some((index, ones)) = a
        .col_code()
        .values()
        .iter()
        .map(|c| c.count_ones())
        .enumerate()
        .find(|&(_, c)| c != 1)
    {
        return Ok(Some(SPermViolation::Column { index, ones }));
    }
    let block_mask = (1u64 << base) - 1;
    for row in 0..base {
        for col in 0..base {
            let shift = side - base * (col + 1);
            let ones: u32 = a.rows()[row * base..(row + 1) * base]
                .iter()
                .map(|r| ((r >> shift) & block_mask).count_ones())
                .sum();
            if ones != 1 {
                return Ok(Some(SPermViolation::Block { row, col, ones }));
            }
        }
    }
    Ok(None)
}

pub fn is_s_permutation(a: &BinaryMatrix, base: usize) -> Result<bool> {
    s_permutation_violation(a, base).map(|v| v.is_none())
}

/// No position carries a 1 in both.
pub fn disjoint(a: &SPermCandidate, b: &SPermCandidate) -> Result<bool> {
    if a.base != b.base {
        return Err(Error::SizeMismatch {
            expected: a.base * a.base,
            actual: b.base * b.base,
        });
    }
    Ok(first_overlap(&a.matrix, &b.matrix).is_none())
}

fn first_overlap(a: &BinaryMatrix, b: &BinaryMatrix) -> Option<(usize, usize)> {
    let m = a.m();
    a.rows()
        .iter()
        .zip(b.rows())
        .enumerate()
        .find_map(|(i, (x, y))| {
            let both = x & y;
            (both != 0).then(|| (i, m - 1 - (63 - both.leading_zeros() as usize)))
        })
}

/// Every S-permutation matrix of the given base (2 or 3), in increasing
/// row-code order.
pub fn enumerate_s_permutations(base: usize) -> Result<std::vec::IntoIter<SPermCandidate>> {
    if !(2..=3).contains(&base) {
        return Err(Error::OrderOutOfRange {
            n: base,
            min: 2,
            max: 3,
        });
    }
    let side = base * base;
    let mut out = Vec::new();
    let mut rows = Vec::with_capacity(side);
    place_rows(base, side, 0, 0, &mut rows, &mut out);
    Ok(out.into_iter())
}

/// `used_cols` has bit `c` for every taken column; blocks in the current band
/// follow from the columns taken since the band started.
fn place_rows(
    base: usize,
    side: usize,
    used_cols: u64,
    band_blocks: u64,
    rows: &mut Vec<u64>,
    out: &mut Vec<SPermCandidate>,
) {
    let i = rows.len();
    if i == side {
        let m = BinaryMatrix::from_parts_unchecked(side, side, rows.clone());
        out.push(SPermCandidate { base, matrix: m });
        return;
    }
    let band_blocks = if i % base == 0 { 0 } else { band_blocks };
    // Highest column first gives the smallest row word first.
    for c in (0..side).rev() {
        let block = c / base;
        if used_cols >> c & 1 == 1 || band_blocks >> block & 1 == 1 {
            continue;
        }
        rows.push(1u64 << (side - 1 - c));
        place_rows(
            base,
            side,
            used_cols | 1 << c,
            band_blocks | 1 << block,
            rows,
            out,
        );
        rows.pop();
    }
}

/// An `n^2 x n^2` grid over `1..=n^2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SudokuMatrix {
    base: usize,
    entries: Vec<Vec<u32>>,
}

/// Every row, column and block is a permutation of `1..=base^2`.
pub fn is_valid_sudoku(base: usize, entries: &[Vec<u32>]) -> bool {
    let side = base * base;
    if entries.len() != side || entries.iter().any(|r| r.len() != side) {
        return false;
    }
    let full: u64 = ((1u64 << side) - 1) << 1;
    let is_perm = |cells: &mut dyn Iterator<Item = u32>| {
        let mut seen = 0u64;
        for v in cells {
            if v == 0 || v as usize > side || seen >> v & 1 == 1 {
                return false;
            }
            seen |= 1 << v;
        }
        seen == full
    };
    (0..side).all(|i| is_perm(&mut entries[i].iter().copied()))
        && (0..side).all(|j| is_perm(&mut entries.iter().map(|r| r[j])))
        && (0..base).all(|br| {
            (0..base).all(|bc| {
                is_perm(&mut (0..side).map(|k| {
                    entries[br * base + k / base][bc * base + k % base]
                }))
            })
        })
}

impl SudokuMatrix {
    pub fn new(base: usize, entries: Vec<Vec<u32>>) -> Result<Self> {
        let side = side_of(base)?;
        if entries.len() != side {
            return Err(Error::SizeMismatch {
                expected: side,
                actual: entries.len(),
            });
        }
        if !is_valid_sudoku(base, &entries) {
            return Err(Error::Parse {
                line: 0,
                message: "grid is not a valid Sudoku matrix".into(),
            });
        }
        Ok(Self { base, entries })
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn entries(&self) -> &[Vec<u32>] {
        &self.entries
    }

    /// Indicator matrices of symbols `1..=n^2`, in symbol order.
    pub fn decompose(&self) -> Vec<SPermCandidate> {
        let side = self.base * self.base;
        (1..=side as u32)
            .map(|k| {
                let m = BinaryMatrix::from_fn(side, side, |i, j| self.entries[i][j] == k)
                    .expect("side within word cap");
                SPermCandidate {
                    base: self.base,
                    matrix: m,
                }
            })
            .collect()
    }

    /// `n^2` lines of `n^2` space-separated integers.
    pub fn parse(text: &str) -> Result<Self> {
        let mut entries = Vec::new();
        for (idx, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let row = line
                .split_whitespace()
                .map(|t| {
                    t.parse::<u32>().map_err(|_| Error::Parse {
                        line: idx + 1,
                        message: format!("{t:?} is not an integer"),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            entries.push(row);
        }
        let base = (1..=MAX_BASE)
            .find(|b| b * b == entries.len())
            .ok_or(Error::Parse {
                line: 0,
                message: format!("{} rows is not a square side", entries.len()),
            })?;
        Self::new(base, entries)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for row in &self.entries {
            let line: Vec<String> = row.iter().map(u32::to_string).collect();
            s.push_str(&line.join(" "));
            s.push('\n');
        }
        s
    }
}

/// `M = 1 * A_1 + 2 * A_2 + ..`: part `k` (0-based) supplies symbol `k + 1`.
pub fn compose_sudoku(parts: &[SPermCandidate]) -> Result<SudokuMatrix> {
    let first = parts.first().ok_or(Error::FamilySize {
        expected: 1,
        actual: 0,
    })?;
    let base = first.base;
    let side = base * base;
    if parts.len() != side {
        return Err(Error::FamilySize {
            expected: side,
            actual: parts.len(),
        });
    }
    for (index, part) in parts.iter().enumerate() {
        if part.base != base {
            return Err(Error::SizeMismatch {
                expected: side,
                actual: part.base * part.base,
            });
        }
        if let Some(v) = s_permutation_violation(&part.matrix, base)? {
            return Err(Error::NotSPermutation {
                index,
                reason: v.to_string(),
            });
        }
    }
    for first in 0..side {
        for second in first + 1..side {
            if let Some((row, col)) = first_overlap(&parts[first].matrix, &parts[second].matrix) {
                return Err(Error::Overlap {
                    first,
                    second,
                    row,
                    col,
                });
            }
        }
    }
    let mut entries = vec![vec![0u32; side]; side];
    for (k, part) in parts.iter().enumerate() {
        for (i, row) in entries.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                if part.matrix.get(i, j) {
                    *cell = k as u32 + 1;
                }
            }
        }
    }
    debug_assert!(is_valid_sudoku(base, &entries));
    Ok(SudokuMatrix { base, entries })
}

/// One line, members in compact format separated by ` ; `.
pub fn family_to_line(family: &[SPermCandidate]) -> String {
    family
        .iter()
        .map(|p| to_compact(&p.matrix))
        .collect::<Vec<_>>()
        .join(" ; ")
}

/// Streams every set of `n^2` mutually disjoint S-permutation matrices, each
/// set once, members sorted by row code.
///
/// Members of a family occupy distinct columns of the first row, and sorting
/// by row code orders them by that column from right to left, so depth `d` of
/// the search only draws from matrices whose first-row 1 sits in column
/// `n^2 - 1 - d`.
pub struct FamilyStream {
    side: usize,
    buckets: Vec<Vec<SPermCandidate>>,
    stack: Vec<usize>,
    occupied: Vec<Vec<u64>>,
    started: bool,
    done: bool,
}

/// Base 2 always; base 3 only with `allow_long_running`.
pub fn find_disjoint_families(base: usize, allow_long_running: bool) -> Result<FamilyStream> {
    let max = if allow_long_running { 3 } else { 2 };
    if base < 2 || base > max {
        return Err(Error::OrderOutOfRange {
            n: base,
            min: 2,
            max,
        });
    }
    let side = base * base;
    let mut buckets = vec![Vec::new(); side];
    for p in enumerate_s_permutations(base)? {
        // first-row 1 in column side - 1 - d
        let depth = p.matrix.rows()[0].trailing_zeros() as usize;
        buckets[depth].push(p);
    }
    Ok(FamilyStream {
        side,
        buckets,
        stack: Vec::with_capacity(side),
        occupied: vec![vec![0; side]; side + 1],
        started: false,
        done: false,
    })
}

impl Iterator for FamilyStream {
    type Item = Vec<SPermCandidate>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        let mut cursor = if self.started {
            self.stack.pop().map_or(0, |k| k + 1)
        } else {
            self.started = true;
            0
        };
        loop {
            let depth = self.stack.len();
            let occ = &self.occupied[depth];
            let found = self.buckets[depth][cursor..]
                .iter()
                .position(|p| p.matrix.rows().iter().zip(occ).all(|(r, o)| r & o == 0))
                .map(|off| cursor + off);
            match found {
                Some(k) => {
                    let next: Vec<u64> = self.buckets[depth][k]
                        .matrix
                        .rows()
                        .iter()
                        .zip(&self.occupied[depth])
                        .map(|(r, o)| r | o)
                        .collect();
                    self.occupied[depth + 1] = next;
                    self.stack.push(k);
                    if self.stack.len() == self.side {
                        return Some(
                            self.stack
                                .iter()
                                .enumerate()
                                .map(|(d, &k)| self.buckets[d][k].clone())
                                .collect(),
                        );
                    }
                    cursor = 0;
                }
                None => match self.stack.pop() {
                    Some(k) => cursor = k + 1,
                    None => {
                        self.done = true;
                        return None;
                    }
                },
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::Permutation;
    use std::collections::HashSet;

    fn at(side: usize, ones: &[(usize, usize)]) -> BinaryMatrix {
        BinaryMatrix::from_fn(side, side, |i, j| ones.contains(&(i, j))).unwrap()
    }

    /// All 4x4 permutation matrices passing the block condition.
    fn oracle_sperms_base2() -> Vec<BinaryMatrix> {
        Permutation::all(4)
            .map(|p| at(4, &(0..4).map(|i| (i, p.apply(i))).collect::<Vec<_>>()))
            .filter(|m| {
                (0..2).all(|br| {
                    (0..2).all(|bc| {
                        (0..4)
                            .filter(|k| m.get(br * 2 + k / 2, bc * 2 + k % 2))
                            .count()
                            == 1
                    })
                })
            })
            .collect()
    }

    #[test]
    fn s_permutation_examples() {
        let id = BinaryMatrix::identity(4).unwrap();
        assert!(!is_s_permutation(&id, 2).unwrap());
        assert_eq!(
            s_permutation_violation(&id, 2).unwrap(),
            Some(SPermViolation::Block { row: 0, col: 0, ones: 2 })
        );
        let good = at(4, &[(0, 0), (1, 2), (2, 1), (3, 3)]);
        assert!(is_s_permutation(&good, 2).unwrap());
        let zero_row = at(4, &[(0, 0), (1, 2), (2, 1)]);
        assert!(!is_s_permutation(&zero_row, 2).unwrap());
        assert!(is_s_permutation(&BinaryMatrix::zeros(3, 3).unwrap(), 2).is_err());
        assert!(is_s_permutation(&BinaryMatrix::ones(1, 1).unwrap(), 1).unwrap());
    }

    #[test]
    fn enumeration_matches_oracle() {
        let ours: Vec<BinaryMatrix> = enumerate_s_permutations(2)
            .unwrap()
            .map(SPermCandidate::into_matrix)
            .collect();
        assert_eq!(ours.len(), 16);
        let a: HashSet<_> = ours.iter().cloned().collect();
        let b: HashSet<_> = oracle_sperms_base2().into_iter().collect();
        assert_eq!(a, b);
        assert!(ours.windows(2).all(|w| w[0].rows() < w[1].rows()));
        assert!(ours.iter().all(|m| is_s_permutation(m, 2).unwrap()));
    }

    #[test]
    fn base_three_enumeration() {
        let all: Vec<_> = enumerate_s_permutations(3).unwrap().collect();
        assert_eq!(all.len(), 46656);
        assert!(all.iter().take(500).all(|p| is_s_permutation(p.matrix(), 3).unwrap()));
        assert!(all.windows(2).all(|w| w[0].matrix().rows() < w[1].matrix().rows()));
        assert!(enumerate_s_permutations(4).is_err());
        assert!(enumerate_s_permutations(1).is_err());
    }

    #[test]
    fn disjointness() {
        let all: Vec<_> = enumerate_s_permutations(2).unwrap().collect();
        assert!(!disjoint(&all[0], &all[0]).unwrap());
        let mut pairs = 0;
        for (i, a) in all.iter().enumerate() {
            for b in &all[i + 1..] {
                let d = disjoint(a, b).unwrap();
                assert_eq!(d, disjoint(b, a).unwrap());
                if d {
                    pairs += 1;
                    let or: u32 = a
                        .matrix()
                        .rows()
                        .iter()
                        .zip(b.matrix().rows())
                        .map(|(x, y)| (x | y).count_ones())
                        .sum();
                    assert_eq!(or, 8);
                }
            }
        }
        assert_eq!(pairs, 56);
        let nine = SPermCandidate::new(3, BinaryMatrix::zeros(9, 9).unwrap()).unwrap();
        assert!(disjoint(&all[0], &nine).is_err());
    }

    #[test]
    fn candidate_dimensions() {
        assert!(SPermCandidate::new(2, BinaryMatrix::zeros(4, 3).unwrap()).is_err());
        assert!(SPermCandidate::from_matrix(BinaryMatrix::zeros(5, 5).unwrap()).is_err());
        assert_eq!(
            SPermCandidate::from_matrix(BinaryMatrix::zeros(9, 9).unwrap())
                .unwrap()
                .base(),
            3
        );
    }

    #[test]
    fn families_base_two() {
        let families: Vec<_> = find_disjoint_families(2, false).unwrap().collect();
        assert_eq!(families.len(), 12);
        let keys: HashSet<Vec<Vec<u64>>> = families
            .iter()
            .map(|f| f.iter().map(|p| p.matrix().rows().to_vec()).collect())
            .collect();
        assert_eq!(keys.len(), 12);
        for f in &families {
            assert!(f.windows(2).all(|w| w[0].matrix().rows() < w[1].matrix().rows()));
            let grid = compose_sudoku(f).unwrap();
            assert!(is_valid_sudoku(2, grid.entries()));
            assert_eq!(&grid.decompose(), f);
        }
        assert!(find_disjoint_families(3, false).is_err());
        assert!(find_disjoint_families(4, true).is_err());
    }

    #[test]
    fn base_three_families_stream() {
        let some: Vec<_> = find_disjoint_families(3, true).unwrap().take(3).collect();
        assert_eq!(some.len(), 3);
        for f in &some {
            assert!(is_valid_sudoku(3, compose_sudoku(f).unwrap().entries()));
        }
    }

    #[test]
    fn compose_errors() {
        let families: Vec<_> = find_disjoint_families(2, false).unwrap().collect();
        let mut clash = families[0].clone();
        clash[3] = clash[1].clone();
        assert!(matches!(
            compose_sudoku(&clash),
            Err(Error::Overlap { first: 1, second: 3, row: 0, .. })
        ));
        assert!(matches!(
            compose_sudoku(&families[0][..3]),
            Err(Error::FamilySize { expected: 4, actual: 3 })
        ));
        let mut bad = families[0].clone();
        bad[2] = SPermCandidate::new(2, BinaryMatrix::identity(4).unwrap()).unwrap();
        assert!(matches!(compose_sudoku(&bad), Err(Error::NotSPermutation { index: 2, .. })));
        assert!(compose_sudoku(&[]).is_err());
    }

    #[test]
    fn reordering_parts_relabels_symbols() {
        let f = find_disjoint_families(2, false).unwrap().next().unwrap();
        let base_grid = compose_sudoku(&f).unwrap();
        let order = [2usize, 0, 3, 1];
        let permuted: Vec<_> = order.iter().map(|&k| f[k].clone()).collect();
        let grid = compose_sudoku(&permuted).unwrap();
        assert!(is_valid_sudoku(2, grid.entries()));
        for i in 0..4 {
            for j in 0..4 {
                let sym = base_grid.entries()[i][j] as usize - 1;
                let pos = order.iter().position(|&k| k == sym).unwrap();
                assert_eq!(grid.entries()[i][j] as usize, pos + 1);
            }
        }
    }

    #[test]
    fn sudoku_text_round_trip() {
        let f = find_disjoint_families(2, false).unwrap().next().unwrap();
        let grid = compose_sudoku(&f).unwrap();
        assert_eq!(SudokuMatrix::parse(&grid.to_text()).unwrap(), grid);
        assert!(SudokuMatrix::parse("1 2\n2 1\n").is_err());
        assert!(SudokuMatrix::parse("1 1 1 1\n2 2 2 2\n3 3 3 3\n4 4 4 4\n").is_err());
    }

    #[test]
    fn validity_checker_catches_each_constraint() {
        let good = vec![
            vec![1, 2, 3, 4],
            vec![3, 4, 1, 2],
            vec![2, 1, 4, 3],
            vec![4, 3, 2, 1],
        ];
        assert!(is_valid_sudoku(2, &good));
        // rows and columns are permutations but the top-left block repeats 1
        let latin = vec![
            vec![1, 2, 3, 4],
            vec![2, 1, 4, 3],
            vec![3, 4, 1, 2],
            vec![4, 3, 2, 1],
        ];
        assert!(!is_valid_sudoku(2, &latin));
        let mut col_bad = good.clone();
        col_bad.swap(0, 1);
        col_bad[0] = vec![1, 2, 3, 4];
        assert!(!is_valid_sudoku(2, &col_bad));
        assert!(!is_valid_sudoku(2, &good[..3]));
    }
}
