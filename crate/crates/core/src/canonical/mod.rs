//! Semi-canonical and canonical matrices.
//!
//! A matrix is semi-canonical when both its row code and its column code are
//! nondecreasing. It is canonical when its row code is the lexicographic
//! minimum over its equivalence class (all matrices reachable by permuting
//! rows and columns). Every canonical matrix is semi-canonical; the converse
//! fails, so finding the representative takes a real search.

pub mod chain;

use std::collections::{HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{BinaryMatrix, Permutation, Transposition};

/// Largest row or column count accepted by [`canonical_form`].
pub const CANONICAL_BOUND: usize = 8;

/// Largest row or column count accepted by [`class_report`].
pub const CLASS_REPORT_BOUND: usize = 4;

/// First place where a code fails to be nondecreasing. Indices are 0-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SemiViolation {
    Rows { index: usize, before: u64, after: u64 },
    Columns { index: usize, before: u64, after: u64 },
}

impl fmt::Display for SemiViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (what, index, before, after) = match *self {
            SemiViolation::Rows {
                index,
                before,
                after,
            } => ("row", index, before, after),
            SemiViolation::Columns {
                index,
                before,
                after,
            } => ("column", index, before, after),
        };
        write!(
            f,
            "{what} codes decrease at {what}s {} and {}: {before} > {after}",
            index + 1,
            index + 2
        )
    }
}

pub fn semi_canonical_violation(a: &BinaryMatrix) -> Option<SemiViolation> {
    if let Some(index) = first_descent(a.rows()) {
        return Some(SemiViolation::Rows {
            index,
            before: a.rows()[index],
            after: a.rows()[index + 1],
        });
    }
    let cols = a.col_code();
    first_descent(cols.values()).map(|index| SemiViolation::Columns {
        index,
        before: cols.values()[index],
        after: cols.values()[index + 1],
    })
}

fn first_descent(values: &[u64]) -> Option<usize> {
    values.windows(2).position(|w| w[0] > w[1])
}

pub fn is_semi_canonical(a: &BinaryMatrix) -> bool {
    semi_canonical_violation(a).is_none()
}

/// `(s, t)` with `x_1 = 2^s - 1` and `y_1 = 2^t - 1`.
///
/// The first row of a semi-canonical matrix is a run of zeros followed by a
/// run of ones, and likewise its first column.
pub fn structural_profile(a: &BinaryMatrix) -> Result<(u32, u32)> {
    if !is_semi_canonical(a) {
        return Err(Error::NotSemiCanonical);
    }
    let x1 = a.rows()[0];
    let y1 = a.col_code().values()[0];
    let s = x1.count_ones();
    let t = y1.count_ones();
    debug_assert_eq!(x1, (1u64 << s) - 1);
    debug_assert_eq!(y1, (1u64 << t) - 1);
    Ok((s, t))
}

/// Row and column permutations that carry a matrix onto its canonical form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalLabeling {
    pub rows: Permutation,
    pub cols: Permutation,
    pub form: BinaryMatrix,
}

fn check_bound(a: &BinaryMatrix, bound: usize, what: &'static str) -> Result<()> {
    if a.n() > bound || a.m() > bound {
        return Err(Error::DimensionBound {
            what,
            rows: a.n(),
            cols: a.m(),
            bound,
        });
    }
    Ok(())
}

pub fn canonical_labeling(a: &BinaryMatrix) -> Result<CanonicalLabeling> {
    check_bound(a, CANONICAL_BOUND, "canonical form")?;
    let mut search = Search::new(a, Goal::Minimize);
    search.run();
    let best = search.best.expect("search always reaches a leaf");
    let mut rows = vec![0; a.n()];
    for (pos, &orig) in best.row_order.iter().enumerate() {
        rows[orig] = pos;
    }
    let mut cols = vec![0; a.m()];
    for (pos, &orig) in best.col_order.iter().enumerate() {
        cols[orig] = pos;
    }
    let rows = Permutation::new(rows)?;
    let cols = Permutation::new(cols)?;
    let form = a.permute(&rows, &cols)?;
    debug_assert_eq!(form.rows(), &best.code[..]);
    Ok(CanonicalLabeling { rows, cols, form })
}

/// The equivalent matrix with lexicographically smallest row code.
pub fn canonical_form(a: &BinaryMatrix) -> Result<BinaryMatrix> {
    canonical_labeling(a).map(|l| l.form)
}

pub fn is_canonical(a: &BinaryMatrix) -> Result<bool> {
    check_bound(a, CANONICAL_BOUND, "canonical form")?;
    let mut search = Search::new(a, Goal::BeatTarget);
    search.run();
    Ok(!search.beaten)
}

pub fn equivalent(a: &BinaryMatrix, b: &BinaryMatrix) -> Result<bool> {
    if a.n() != b.n() {
        return Err(Error::SizeMismatch {
            expected: a.n(),
            actual: b.n(),
        });
    }
    if a.m() != b.m() {
        return Err(Error::SizeMismatch {
            expected: a.m(),
            actual: b.m(),
        });
    }
    if a.count_ones() != b.count_ones() {
        return Ok(false);
    }
    Ok(canonical_form(a)? == canonical_form(b)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivalenceClassReport {
    pub representative: BinaryMatrix,
    pub class_size: usize,
    /// Sorted by row code.
    pub semi_canonical_members: Vec<BinaryMatrix>,
}

/// Walks the whole orbit of `a` under adjacent row and column swaps.
pub fn class_report(a: &BinaryMatrix) -> Result<EquivalenceClassReport> {
    check_bound(a, CLASS_REPORT_BOUND, "class report")?;
    let row_swaps: Vec<_> = (1..a.n())
        .map(|i| Transposition::new(i - 1, i).unwrap())
        .collect();
    let col_swaps: Vec<_> = (1..a.m())
        .map(|j| Transposition::new(j - 1, j).unwrap())
        .collect();
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(a.clone());
    queue.push_back(a.clone());
    while let Some(cur) = queue.pop_front() {
        let neighbours = row_swaps
            .iter()
            .map(|&t| cur.apply_row_transposition(t))
            .chain(col_swaps.iter().map(|&t| cur.apply_column_transposition(t)));
        for next in neighbours {
            let next = next?;
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    let representative = seen
        .iter()
        .min_by(|x, y| x.rows().cmp(y.rows()))
        .cloned()
        .expect("orbit contains a");
    let mut semi_canonical_members: Vec<_> =
        seen.iter().filter(|m| is_semi_canonical(m)).cloned().collect();
    semi_canonical_members.sort_by(|x, y| x.rows().cmp(y.rows()));
    Ok(EquivalenceClassReport {
        representative,
        class_size: seen.len(),
        semi_canonical_members,
    })
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Goal {
    /// Find the smallest reachable row code.
    Minimize,
    /// Stop as soon as some reachable row code is below the input's own.
    BeatTarget,
}

struct Leaf {
    code: Vec<u64>,
    row_order: Vec<usize>,
    col_order: Vec<usize>,
}

/// Row-by-row branch and bound over the orbit.
///
/// The state is the list of rows placed so far together with an ordered
/// partition of the columns: any column order that keeps the cells in sequence
/// (in any internal order) reproduces the placed prefix. A candidate row's
/// best value puts its zeros ahead of its ones inside every cell. Only rows
/// reaching the minimum value are branched on, identical rows once, and the
/// chosen row then splits every cell into its zero part followed by its one
/// part.
struct Search<'a> {
    a: &'a BinaryMatrix,
    goal: Goal,
    target: &'a [u64],
    prefix: Vec<u64>,
    row_order: Vec<usize>,
    used: Vec<bool>,
    best: Option<Leaf>,
    beaten: bool,
}

type Cells = Vec<Vec<usize>>;

impl<'a> Search<'a> {
    fn new(a: &'a BinaryMatrix, goal: Goal) -> Self {
        Self {
            a,
            goal,
            target: a.rows(),
            prefix: Vec::with_capacity(a.n()),
            row_order: Vec::with_capacity(a.n()),
            used: vec![false; a.n()],
            best: None,
            beaten: false,
        }
    }

    fn run(&mut self) {
        let cells = vec![(0..self.a.m()).collect::<Vec<_>>()];
        self.descend(&cells);
    }

    fn best_value(&self, row: u64, cells: &Cells) -> u64 {
        let m = self.a.m();
        cells.iter().fold(0u64, |acc, cell| {
            let ones = cell
                .iter()
                .filter(|&&j| (row >> (m - 1 - j)) & 1 == 1)
                .count();
            (acc << cell.len()) | ((1u64 << ones) - 1)
        })
    }

    fn refine(&self, row: u64, cells: &Cells) -> Cells {
        let m = self.a.m();
        let mut out = Vec::with_capacity(cells.len() * 2);
        for cell in cells {
            let (ones, zeros): (Vec<usize>, Vec<usize>) =
                cell.iter().partition(|&&j| (row >> (m - 1 - j)) & 1 == 1);
            if !zeros.is_empty() {
                out.push(zeros);
            }
            if !ones.is_empty() {
                out.push(ones);
            }
        }
        out
    }

    fn descend(&mut self, cells: &Cells) {
        let depth = self.prefix.len();
        let n = self.a.n();
        if depth == n {
            self.record_leaf(cells);
            return;
        }

        let mut min_value = u64::MAX;
        let mut candidates: Vec<usize> = Vec::new();
        for i in (0..n).filter(|&i| !self.used[i]) {
            let word = self.a.rows()[i];
            if candidates.iter().any(|&c| self.a.rows()[c] == word) {
                continue;
            }
            let v = self.best_value(word, cells);
            if v < min_value {
                min_value = v;
                candidates.clear();
                candidates.push(i);
            } else if v == min_value {
                candidates.push(i);
            }
        }

        match self.goal {
            Goal::BeatTarget => {
                let want = self.target[depth];
                if min_value < want {
                    self.beaten = true;
                    return;
                }
                if min_value > want {
                    return;
                }
            }
            Goal::Minimize => {
                if let Some(best) = &self.best {
                    self.prefix.push(min_value);
                    let worse = self.prefix[..] > best.code[..=depth];
                    self.prefix.pop();
                    if worse {
                        return;
                    }
                }
            }
        }

        for i in candidates {
            let refined = self.refine(self.a.rows()[i], cells);
            self.prefix.push(min_value);
            self.row_order.push(i);
            self.used[i] = true;
            self.descend(&refined);
            self.used[i] = false;
            self.row_order.pop();
            self.prefix.pop();
            if self.beaten {
                return;
            }
        }
    }

    fn record_leaf(&mut self, cells: &Cells) {
        if self.goal != Goal::Minimize {
            return;
        }
        if let Some(best) = &self.best {
            if self.prefix >= best.code {
                return;
            }
        }
        self.best = Some(Leaf {
            code: self.prefix.clone(),
            row_order: self.row_order.clone(),
            col_order: cells.iter().flatten().copied().collect(),
        });
    }
}
