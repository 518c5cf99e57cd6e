//! Monotone transposition chains.
//!
//! If a sequence of row swaps strictly decreases the row code at every step,
//! the column code of the final matrix is strictly below that of the start.
//! The column version swaps columns, drives the column code and concludes on
//! the row code. Both hold with every `<` replaced by `>`.
//!
//! The column version is read with column codes throughout the chain,
//! `c(A Y_1 .. Y_t) < .. < c(A Y_t) < c(A)`, and concludes
//! `r(A Y_1 .. Y_t) < r(A)`.

use std::cmp::Ordering;
use std::fmt;

use rand::Rng;

use crate::matrix::{BinaryMatrix, Transposition};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axis {
    /// Swap rows, drive `r`, conclude on `c`.
    Rows,
    /// Swap columns, drive `c`, conclude on `r`.
    Columns,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Decreasing,
    Increasing,
}

impl Direction {
    fn ordering(self) -> Ordering {
        match self {
            Direction::Decreasing => Ordering::Less,
            Direction::Increasing => Ordering::Greater,
        }
    }
}

#[derive(Clone, Debug)]
pub struct TranspositionChain {
    pub axis: Axis,
    pub direction: Direction,
    pub start: BinaryMatrix,
    /// In application order: `steps[0]` acts on `start` first.
    pub steps: Vec<Transposition>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ChainViolation {
    /// The driven code did not move in the chain's direction at this step.
    NotMonotone { step: usize },
    /// The driven code moved as required but the other code did not follow.
    Conclusion { start: Vec<u64>, end: Vec<u64> },
}

impl fmt::Display for ChainViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChainViolation::NotMonotone { step } => {
                write!(f, "driven code not strictly monotone at step {step}")
            }
            ChainViolation::Conclusion { start, end } => {
                write!(f, "conclusion failed: start {start:?}, end {end:?}")
            }
        }
    }
}

fn apply(a: &BinaryMatrix, axis: Axis, t: Transposition) -> BinaryMatrix {
    match axis {
        Axis::Rows => a.apply_row_transposition(t),
        Axis::Columns => a.apply_column_transposition(t),
    }
    .expect("transposition within bounds")
}

fn driven(a: &BinaryMatrix, axis: Axis) -> Vec<u64> {
    match axis {
        Axis::Rows => a.rows().to_vec(),
        Axis::Columns => a.col_code().values().to_vec(),
    }
}

fn concluded(a: &BinaryMatrix, axis: Axis) -> Vec<u64> {
    match axis {
        Axis::Rows => a.col_code().values().to_vec(),
        Axis::Columns => a.rows().to_vec(),
    }
}

/// Rejection-samples a chain: propose a uniformly random transposition and
/// keep it only if the driven code moves strictly in `direction`. At most
/// `n * m` proposals are made.
pub fn sample_chain<R: Rng + ?Sized>(
    a: &BinaryMatrix,
    axis: Axis,
    direction: Direction,
    rng: &mut R,
) -> TranspositionChain {
    let size = match axis {
        Axis::Rows => a.n(),
        Axis::Columns => a.m(),
    };
    let mut steps = Vec::new();
    if size >= 2 {
        let mut cur = a.clone();
        let mut code = driven(&cur, axis);
        for _ in 0..a.n() * a.m() {
            let u = rng.gen_range(0..size);
            let mut v = rng.gen_range(0..size - 1);
            if v >= u {
                v += 1;
            }
            let t = Transposition::new(u, v).expect("distinct indices");
            let next = apply(&cur, axis, t);
            let next_code = driven(&next, axis);
            if next_code.cmp(&code) == direction.ordering() {
                steps.push(t);
                cur = next;
                code = next_code;
            }
        }
    }
    TranspositionChain {
        axis,
        direction,
        start: a.clone(),
        steps,
    }
}

impl TranspositionChain {
    pub fn end(&self) -> BinaryMatrix {
        self.steps
            .iter()
            .fold(self.start.clone(), |cur, &t| apply(&cur, self.axis, t))
    }

    /// Recomputes every step from `start`. An empty chain is vacuously fine.
    pub fn verify(&self) -> Result<(), ChainViolation> {
        let want = self.direction.ordering();
        let mut cur = self.start.clone();
        let mut code = driven(&cur, self.axis);
        for (step, &t) in self.steps.iter().enumerate() {
            let next = apply(&cur, self.axis, t);
            let next_code = driven(&next, self.axis);
            if next_code.cmp(&code) != want {
                return Err(ChainViolation::NotMonotone { step });
            }
            cur = next;
            code = next_code;
        }
        if self.steps.is_empty() {
            return Ok(());
        }
        let start = concluded(&self.start, self.axis);
        let end = concluded(&cur, self.axis);
        if end.cmp(&start) != want {
            return Err(ChainViolation::Conclusion { start, end });
        }
        Ok(())
    }
}
