//! Binary matrices stored as one machine word per row, the row and column
//! integer codes, and the row/column permutation action.
//!
//! Bit convention: entry `a[i][j]` of an `n x m` matrix lives at bit
//! `m - 1 - j` of `rows[i]`, so the leftmost column is the most significant
//! bit of the row code. Column codes read the rows top to bottom with the
//! first row as the most significant bit, which makes
//! `col_code(A) == row_code(transpose(A))`.

use std::cmp::Ordering;
use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported row or column count; codes must fit one `u64`.
pub const MAX_WIDTH: usize = 63;

#[inline]
pub(crate) fn mask(width: usize) -> u64 {
    (1u64 << width) - 1
}

fn check_width(width: usize) -> Result<()> {
    if width > MAX_WIDTH {
        return Err(Error::WidthTooLarge {
            width,
            cap: MAX_WIDTH,
        });
    }
    Ok(())
}

fn check_values(values: &[u64], width: usize) -> Result<()> {
    let limit = mask(width);
    match values.iter().position(|&v| v > limit) {
        Some(index) => Err(Error::ValueOutOfRange {
            index,
            value: values[index],
            width,
        }),
        None => Ok(()),
    }
}

/// An `n x m` matrix over `{0, 1}`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BinaryMatrix {
    n: usize,
    m: usize,
    rows: Vec<u64>,
}

impl BinaryMatrix {
    /// Builds a matrix from raw row words. `rows.len()` is the row count.
    pub fn new(m: usize, rows: Vec<u64>) -> Result<Self> {
        let n = rows.len();
        if n == 0 || m == 0 {
            return Err(Error::EmptyDimension { rows: n, cols: m });
        }
        check_width(n)?;
        check_width(m)?;
        check_values(&rows, m)?;
        Ok(Self { n, m, rows })
    }

    /// Row words that are already known to be valid.
    pub(crate) fn from_parts_unchecked(n: usize, m: usize, rows: Vec<u64>) -> Self {
        debug_assert_eq!(rows.len(), n);
        debug_assert!(rows.iter().all(|&r| r <= mask(m)));
        Self { n, m, rows }
    }

    pub fn zeros(n: usize, m: usize) -> Result<Self> {
        Self::new(m, vec![0; n])
    }

    pub fn ones(n: usize, m: usize) -> Result<Self> {
        check_width(m)?;
        Self::new(m, vec![mask(m); n])
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::from_fn(n, n, |i, j| i == j)
    }

    pub fn from_fn(n: usize, m: usize, f: impl Fn(usize, usize) -> bool) -> Result<Self> {
        check_width(m)?;
        let rows = (0..n)
            .map(|i| {
                (0..m).fold(0u64, |acc, j| {
                    if f(i, j) {
                        acc | 1 << (m - 1 - j)
                    } else {
                        acc
                    }
                })
            })
            .collect();
        Self::new(m, rows)
    }

    /// Uniformly random matrix.
    pub fn random<R: Rng + ?Sized>(n: usize, m: usize, rng: &mut R) -> Result<Self> {
        check_width(m)?;
        let rows = (0..n).map(|_| rng.gen::<u64>() & mask(m)).collect();
        Self::new(m, rows)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    /// Entry `a[i][j]`, 0-indexed.
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        (self.rows[i] >> (self.m - 1 - j)) & 1 == 1
    }

    pub fn count_ones(&self) -> u32 {
        self.rows.iter().map(|r| r.count_ones()).sum()
    }

    pub fn is_square(&self) -> bool {
        self.n == self.m
    }

    pub fn row_code(&self) -> RowTuple {
        RowTuple {
            values: self.rows.clone(),
            width: self.m,
        }
    }

    pub fn col_code(&self) -> ColTuple {
        ColTuple {
            values: column_words(&self.rows, self.m),
            width: self.n,
        }
    }

    pub fn from_row_code(code: &RowTuple) -> Result<Self> {
        Self::new(code.width, code.values.clone())
    }

    pub fn transpose(&self) -> Self {
        Self::from_parts_unchecked(self.m, self.n, column_words(&self.rows, self.m))
    }

    /// Complement every entry.
    pub fn complement(&self) -> Self {
        let full = mask(self.m);
        Self::from_parts_unchecked(self.n, self.m, self.rows.iter().map(|r| !r & full).collect())
    }

    /// Moves entry `(i, j)` to `(rows(i), cols(j))`.
    pub fn permute(&self, rows: &Permutation, cols: &Permutation) -> Result<Self> {
        if rows.len() != self.n {
            return Err(Error::SizeMismatch {
                expected: self.n,
                actual: rows.len(),
            });
        }
        if cols.len() != self.m {
            return Err(Error::SizeMismatch {
                expected: self.m,
                actual: cols.len(),
            });
        }
        let mut out = vec![0u64; self.n];
        for (i, &word) in self.rows.iter().enumerate() {
            out[rows.apply(i)] = permute_bits(word, cols, self.m);
        }
        Ok(Self::from_parts_unchecked(self.n, self.m, out))
    }

    pub fn apply_row_transposition(&self, t: Transposition) -> Result<Self> {
        t.check(self.n)?;
        let mut rows = self.rows.clone();
        rows.swap(t.u, t.v);
        Ok(Self::from_parts_unchecked(self.n, self.m, rows))
    }

    pub fn apply_column_transposition(&self, t: Transposition) -> Result<Self> {
        t.check(self.m)?;
        let bu = self.m - 1 - t.u;
        let bv = self.m - 1 - t.v;
        let rows = self
            .rows
            .iter()
            .map(|&r| {
                let diff = ((r >> bu) ^ (r >> bv)) & 1;
                r ^ (diff << bu) ^ (diff << bv)
            })
            .collect();
        Ok(Self::from_parts_unchecked(self.n, self.m, rows))
    }
}

impl fmt::Debug for BinaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinaryMatrix({}x{}; {:?})", self.n, self.m, self.rows)
    }
}

/// Rows as strings of `0`/`1`, one per line.
impl fmt::Display for BinaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, &r) in self.rows.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{:0width$b}", r, width = self.m)?;
        }
        Ok(())
    }
}

/// Column `j` of the word-per-row matrix, first row as the top bit.
pub(crate) fn column_words(rows: &[u64], m: usize) -> Vec<u64> {
    let n = rows.len();
    (0..m)
        .map(|j| {
            let shift = m - 1 - j;
            rows.iter()
                .enumerate()
                .fold(0u64, |acc, (i, &r)| acc | ((r >> shift) & 1) << (n - 1 - i))
        })
        .collect()
}

fn permute_bits(word: u64, cols: &Permutation, m: usize) -> u64 {
    let mut out = 0u64;
    for j in 0..m {
        if (word >> (m - 1 - j)) & 1 == 1 {
            out |= 1 << (m - 1 - cols.apply(j));
        }
    }
    out
}

macro_rules! code_tuple {
    ($(#[$doc:meta])* $name:ident) => {
        $(#[$doc])*
        #[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
        pub struct $name {
            values: Vec<u64>,
            width: usize,
        }

        impl $name {
            pub fn new(values: Vec<u64>, width: usize) -> Result<Self> {
                if values.is_empty() {
                    return Err(Error::EmptyDimension { rows: 0, cols: width });
                }
                if width == 0 {
                    return Err(Error::EmptyDimension { rows: values.len(), cols: 0 });
                }
                check_width(width)?;
                check_values(&values, width)?;
                Ok(Self { values, width })
            }

            #[inline]
            pub fn values(&self) -> &[u64] {
                &self.values
            }

            /// Number of bits each value occupies.
            #[inline]
            pub fn width(&self) -> usize {
                self.width
            }

            pub fn len(&self) -> usize {
                self.values.len()
            }

            pub fn is_empty(&self) -> bool {
                self.values.is_empty()
            }

            /// Nondecreasing from left to right.
            pub fn is_sorted(&self) -> bool {
                self.values.windows(2).all(|w| w[0] <= w[1])
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "<")?;
                for (i, v) in self.values.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{v}")?;
                }
                write!(f, ">")
            }
        }
    };
}

code_tuple!(
    /// `r(A)`: one value per row, leftmost column most significant.
    RowTuple
);
code_tuple!(
    /// `c(A)`: one value per column, top row most significant.
    ColTuple
);

/// Lexicographic comparison of two equal-length tuples.
pub fn compare_lex(a: &[u64], b: &[u64]) -> Result<Ordering> {
    if a.len() != b.len() {
        return Err(Error::SizeMismatch {
            expected: a.len(),
            actual: b.len(),
        });
    }
    Ok(a.cmp(b))
}

/// A bijection on `{0, .., k-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Permutation {
    map: Vec<usize>,
}

impl Permutation {
    pub fn identity(k: usize) -> Self {
        Self {
            map: (0..k).collect(),
        }
    }

    pub fn new(map: Vec<usize>) -> Result<Self> {
        let k = map.len();
        let mut seen = vec![false; k];
        for &image in &map {
            if image >= k {
                return Err(Error::IndexOutOfRange {
                    index: image,
                    size: k,
                });
            }
            if std::mem::replace(&mut seen[image], true) {
                return Err(Error::NotABijection(image));
            }
        }
        Ok(Self { map })
    }

    pub fn random<R: Rng + ?Sized>(k: usize, rng: &mut R) -> Self {
        let mut map: Vec<usize> = (0..k).collect();
        map.shuffle(rng);
        Self { map }
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.map[i]
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.map
    }

    pub fn inverse(&self) -> Self {
        let mut map = vec![0; self.map.len()];
        for (i, &image) in self.map.iter().enumerate() {
            map[image] = i;
        }
        Self { map }
    }

    /// `self ∘ first`: apply `first`, then `self`.
    pub fn compose(&self, first: &Permutation) -> Result<Self> {
        if self.len() != first.len() {
            return Err(Error::SizeMismatch {
                expected: self.len(),
                actual: first.len(),
            });
        }
        Ok(Self {
            map: first.map.iter().map(|&i| self.map[i]).collect(),
        })
    }

    /// All `k!` permutations in lexicographic order of their image lists.
    pub fn all(k: usize) -> AllPermutations {
        AllPermutations {
            next: Some((0..k).collect()),
        }
    }
}

impl From<Transposition> for Permutation {
    fn from(t: Transposition) -> Self {
        let mut map: Vec<usize> = (0..=t.u.max(t.v)).collect();
        map.swap(t.u, t.v);
        Self { map }
    }
}

/// Iterator returned by [`Permutation::all`].
pub struct AllPermutations {
    next: Option<Vec<usize>>,
}

impl Iterator for AllPermutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        if next_permutation(&mut succ) {
            self.next = Some(succ);
        }
        Some(Permutation { map: current })
    }
}

fn next_permutation(a: &mut [usize]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let Some(i) = (0..a.len() - 1).rev().find(|&i| a[i] < a[i + 1]) else {
        return false;
    };
    let j = (i + 1..a.len()).rev().find(|&j| a[j] > a[i]).unwrap();
    a.swap(i, j);
    a[i + 1..].reverse();
    true
}

/// Swap of two distinct indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Transposition {
    u: usize,
    v: usize,
}

impl Transposition {
    pub fn new(u: usize, v: usize) -> Result<Self> {
        if u == v {
            return Err(Error::DegenerateTransposition(u));
        }
        Ok(Self { u, v })
    }

    pub fn u(&self) -> usize {
        self.u
    }

    pub fn v(&self) -> usize {
        self.v
    }

    fn check(&self, size: usize) -> Result<()> {
        for index in [self.u, self.v] {
            if index >= size {
                return Err(Error::IndexOutOfRange { index, size });
            }
        }
        Ok(())
    }
}
