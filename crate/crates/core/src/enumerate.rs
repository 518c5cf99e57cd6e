//! Bitwise generation of all `n x n` semi-canonical matrices.
//!
//! Candidates are the nondecreasing row tuples `x_1 <= .. <= x_n` whose first
//! entry has the form `2^s - 1`. For every `s = 0..=n` all rows are seeded
//! with `2^s - 1`; then the last position that can still grow is incremented
//! and copied into every later position. Each candidate's column codes are
//! built in one bit-scan from the leftmost column, stopping at the first
//! decrease. Output is in strictly increasing row-code order.
//!
//! The tuple space is a disjoint union over row prefixes `(x_1, x_2)`, which
//! is what the parallel counters split on.

use std::ops::AddAssign;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::canonical::{is_canonical, CANONICAL_BOUND};
use crate::error::{Error, Result};
use crate::matrix::{BinaryMatrix, MAX_WIDTH};

/// Default cap on the matrix order for semi-canonical enumeration.
pub const DEFAULT_MAX_ORDER: usize = 7;

/// Default cap on the matrix order for canonical enumeration.
pub const CANONICAL_MAX_ORDER: usize = 6;

/// `counts[i]` is the number of matrices with exactly `i` ones.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountTable {
    n: usize,
    counts: Vec<u64>,
}

impl CountTable {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            counts: vec![0; n * n + 1],
        }
    }

    /// Fails unless `counts.len() == n * n + 1`.
    pub fn from_counts(n: usize, counts: Vec<u64>) -> Result<Self> {
        if counts.len() != n * n + 1 {
            return Err(Error::SizeMismatch {
                expected: n * n + 1,
                actual: counts.len(),
            });
        }
        Ok(Self { n, counts })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn get(&self, ones: usize) -> Option<u64> {
        self.counts.get(ones).copied()
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn is_palindromic(&self) -> bool {
        self.counts.iter().eq(self.counts.iter().rev())
    }

    fn bump(&mut self, ones: u32) {
        self.counts[ones as usize] += 1;
    }
}

impl AddAssign<&CountTable> for CountTable {
    fn add_assign(&mut self, rhs: &CountTable) {
        assert_eq!(self.n, rhs.n, "count tables of different orders");
        for (a, b) in self.counts.iter_mut().zip(&rhs.counts) {
            *a += b;
        }
    }
}

/// Ones count of the matrix with rows `x` if its column codes are
/// nondecreasing, `None` at the first column that drops.
pub fn check(x: &[u64], n: usize) -> Option<u32> {
    let mut prev = 0u64;
    for j in (0..n).rev() {
        let mut y = 0u64;
        for (i, &row) in x.iter().enumerate() {
            y |= ((row >> j) & 1) << (n - 1 - i);
        }
        if y < prev {
            return None;
        }
        prev = y;
    }
    Some(x.iter().map(|r| r.count_ones()).sum())
}

/// Odometer over nondecreasing tuples with a fixed prefix.
#[derive(Clone, Debug)]
struct TupleWalker {
    x: Vec<u64>,
    fixed: usize,
    xmax: u64,
    fresh: bool,
}

impl TupleWalker {
    /// Positions `prefix.len()..n` start equal to the last prefix entry.
    fn new(n: usize, prefix: &[u64]) -> Self {
        let last = *prefix.last().expect("non-empty prefix");
        let mut x = prefix.to_vec();
        x.resize(n, last);
        Self {
            x,
            fixed: prefix.len(),
            xmax: crate::matrix::mask(n),
            fresh: true,
        }
    }

    fn next_tuple(&mut self) -> Option<&[u64]> {
        if self.fresh {
            self.fresh = false;
            return Some(&self.x);
        }
        let n = self.x.len();
        let p = (self.fixed..n).rev().find(|&p| self.x[p] < self.xmax)?;
        self.x[p] += 1;
        let v = self.x[p];
        self.x[p + 1..].iter_mut().for_each(|e| *e = v);
        Some(&self.x)
    }

    fn for_each_semi(mut self, n: usize, mut f: impl FnMut(&[u64], u32)) {
        while let Some(x) = self.next_tuple() {
            if let Some(ones) = check(x, n) {
                f(x, ones);
            }
        }
    }
}

fn seed(s: usize) -> u64 {
    (1u64 << s) - 1
}

/// Work items for parallel runs: every `(x_1, x_2)` prefix in order, or just
/// `x_1` when `n == 1`.
fn prefixes(n: usize) -> Vec<Vec<u64>> {
    let xmax = crate::matrix::mask(n);
    let mut out = Vec::new();
    for s in 0..=n {
        let x1 = seed(s);
        if n == 1 {
            out.push(vec![x1]);
        } else {
            out.extend((x1..=xmax).map(|x2| vec![x1, x2]));
        }
    }
    out
}

/// Enumeration driver for one matrix order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Enumerator {
    n: usize,
}

impl Enumerator {
    /// Order `n` within [`DEFAULT_MAX_ORDER`].
    pub fn new(n: usize) -> Result<Self> {
        Self::with_cap(n, DEFAULT_MAX_ORDER)
    }

    /// Order `n` with an explicit cap; the cap itself may not exceed the word
    /// width.
    pub fn with_cap(n: usize, cap: usize) -> Result<Self> {
        let max = cap.min(MAX_WIDTH);
        if n == 0 || n > max {
            return Err(Error::OrderOutOfRange { n, min: 1, max });
        }
        Ok(Self { n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn semi_canonical(&self) -> SemiCanonicalStream {
        SemiCanonicalStream {
            n: self.n,
            next_seed: 0,
            walker: None,
        }
    }

    /// Calls `f(rows, ones)` for every semi-canonical matrix, in order,
    /// without allocating a matrix per hit.
    pub fn for_each_semi_canonical(&self, mut f: impl FnMut(&[u64], u32)) {
        for s in 0..=self.n {
            TupleWalker::new(self.n, &[seed(s)]).for_each_semi(self.n, &mut f);
        }
    }

    pub fn count_semi_canonical(&self) -> CountTable {
        let mut table = CountTable::zeros(self.n);
        self.for_each_semi_canonical(|_, ones| table.bump(ones));
        table
    }

    /// Same table as [`Self::count_semi_canonical`], split over `jobs` threads.
    pub fn par_count_semi_canonical(&self, jobs: usize) -> CountTable {
        let n = self.n;
        self.par_count(jobs, move |prefix, table| {
            TupleWalker::new(n, prefix).for_each_semi(n, |_, ones| table.bump(ones));
        })
    }

    fn check_canonical_order(&self) -> Result<()> {
        if self.n > CANONICAL_BOUND {
            return Err(Error::OrderOutOfRange {
                n: self.n,
                min: 1,
                max: CANONICAL_BOUND,
            });
        }
        Ok(())
    }

    /// One representative per equivalence class, in increasing row-code order.
    pub fn canonical(&self) -> Result<impl Iterator<Item = BinaryMatrix>> {
        self.check_canonical_order()?;
        Ok(self
            .semi_canonical()
            .filter(|a| is_canonical(a).expect("order within canonical bound")))
    }

    pub fn count_canonical(&self) -> Result<CountTable> {
        self.check_canonical_order()?;
        let n = self.n;
        let mut table = CountTable::zeros(n);
        self.for_each_semi_canonical(|x, ones| {
            if is_canonical_rows(n, x) {
                table.bump(ones);
            }
        });
        Ok(table)
    }

    pub fn par_count_canonical(&self, jobs: usize) -> Result<CountTable> {
        self.check_canonical_order()?;
        let n = self.n;
        Ok(self.par_count(jobs, move |prefix, table| {
            TupleWalker::new(n, prefix).for_each_semi(n, |x, ones| {
                if is_canonical_rows(n, x) {
                    table.bump(ones);
                }
            });
        }))
    }

    fn par_count<F>(&self, jobs: usize, work: F) -> CountTable
    where
        F: Fn(&[u64], &mut CountTable) + Sync,
    {
        let n = self.n;
        let run = || {
            prefixes(n)
                .par_iter()
                .fold(
                    || CountTable::zeros(n),
                    |mut table, prefix| {
                        work(prefix, &mut table);
                        table
                    },
                )
                .reduce(
                    || CountTable::zeros(n),
                    |mut a, b| {
                        a += &b;
                        a
                    },
                )
        };
        match rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build()
        {
            Ok(pool) => pool.install(run),
            Err(_) => run(),
        }
    }
}

fn is_canonical_rows(n: usize, x: &[u64]) -> bool {
    let a = BinaryMatrix::from_parts_unchecked(n, n, x.to_vec());
    is_canonical(&a).expect("order within canonical bound")
}

/// Streaming iterator over the semi-canonical matrices of one order.
#[derive(Clone, Debug)]
pub struct SemiCanonicalStream {
    n: usize,
    next_seed: usize,
    walker: Option<TupleWalker>,
}

impl SemiCanonicalStream {
    pub fn n(&self) -> usize {
        self.n
    }
}

impl Iterator for SemiCanonicalStream {
    type Item = BinaryMatrix;

    fn next(&mut self) -> Option<BinaryMatrix> {
        let n = self.n;
        loop {
            if self.walker.is_none() {
                if self.next_seed > n {
                    return None;
                }
                self.walker = Some(TupleWalker::new(n, &[seed(self.next_seed)]));
                self.next_seed += 1;
            }
            let walker = self.walker.as_mut().unwrap();
            match walker.next_tuple() {
                Some(x) => {
                    if check(x, n).is_some() {
                        return Some(BinaryMatrix::from_parts_unchecked(n, n, x.to_vec()));
                    }
                }
                None => self.walker = None,
            }
        }
    }
}

pub fn enumerate_semi_canonical(n: usize) -> Result<SemiCanonicalStream> {
    Ok(Enumerator::new(n)?.semi_canonical())
}

pub fn count_semi_canonical(n: usize) -> Result<CountTable> {
    Ok(Enumerator::new(n)?.count_semi_canonical())
}

pub fn enumerate_canonical(n: usize) -> Result<impl Iterator<Item = BinaryMatrix>> {
    Enumerator::with_cap(n, CANONICAL_MAX_ORDER)?.canonical()
}

pub fn count_canonical(n: usize) -> Result<CountTable> {
    Enumerator::with_cap(n, CANONICAL_MAX_ORDER)?.count_canonical()
}
