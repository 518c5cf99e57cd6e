//! Independent oracles shared by the integration suites. None of these go
//! through the enumerator or the canonical search.

#![allow(dead_code)]

use std::collections::{HashMap, HashSet};

use semicanon::{BinaryMatrix, Permutation};

/// The paper-published semi-canonical counts, index = number of ones.
pub const KAPPA_2: [u64; 5] = [1, 1, 3, 1, 1];
pub const KAPPA_3: [u64; 10] = [1, 1, 3, 8, 10, 9, 8, 3, 1, 1];
pub const KAPPA_4: [u64; 17] = [1, 1, 3, 8, 25, 49, 84, 107, 121, 101, 72, 41, 24, 8, 3, 1, 1];
pub const KAPPA_5: [u64; 26] = [
    1, 1, 3, 8, 25, 80, 220, 524, 1057, 1806, 2671, 3365, 3680, 3468, 2865, 2072, 1314, 723, 362,
    166, 72, 24, 8, 3, 1, 1,
];
pub const KAPPA_6: [u64; 37] = [
    1, 1, 3, 8, 25, 80, 283, 925, 2839, 7721, 18590, 39522, 74677, 125449, 188290, 252954,
    305561, 332402, 326650, 290171, 233656, 170704, 113448, 68677, 37996, 19188, 8910, 3847,
    1588, 613, 299, 72, 24, 8, 3, 1, 1,
];

pub fn kappa(n: usize) -> &'static [u64] {
    match n {
        2 => &KAPPA_2,
        3 => &KAPPA_3,
        4 => &KAPPA_4,
        5 => &KAPPA_5,
        6 => &KAPPA_6,
        _ => panic!("no published table for n={n}"),
    }
}

/// Every `n x m` matrix, cell `(i, j)` taken from bit `i * m + j`.
pub fn all_matrices(n: usize, m: usize) -> Vec<BinaryMatrix> {
    (0u64..1 << (n * m))
        .map(|b| BinaryMatrix::from_fn(n, m, |i, j| (b >> (i * m + j)) & 1 == 1).unwrap())
        .collect()
}

/// Rows and columns compared as strings.
pub fn semi_by_strings(a: &BinaryMatrix) -> bool {
    let (n, m) = (a.n(), a.m());
    let row = |i: usize| (0..m).map(|j| a.get(i, j)).collect::<Vec<_>>();
    let col = |j: usize| (0..n).map(|i| a.get(i, j)).collect::<Vec<_>>();
    (1..n).all(|i| row(i - 1) <= row(i)) && (1..m).all(|j| col(j - 1) <= col(j))
}

/// Smallest row code over all `n! * m!` permuted copies.
pub fn brute_force_canonical(a: &BinaryMatrix) -> BinaryMatrix {
    let cols: Vec<Permutation> = Permutation::all(a.m()).collect();
    let mut best: Option<BinaryMatrix> = None;
    for rho in Permutation::all(a.n()) {
        for sigma in &cols {
            let b = a.permute(&rho, sigma).unwrap();
            if best.as_ref().map_or(true, |x| b.rows() < x.rows()) {
                best = Some(b);
            }
        }
    }
    best.unwrap()
}

/// Orbits of all `n x m` matrices, found by flood fill with full permutation sets.
pub fn orbit_partition(n: usize, m: usize) -> Vec<Vec<BinaryMatrix>> {
    let rows: Vec<Permutation> = Permutation::all(n).collect();
    let cols: Vec<Permutation> = Permutation::all(m).collect();
    let mut assigned: HashSet<BinaryMatrix> = HashSet::new();
    let mut classes = Vec::new();
    for a in all_matrices(n, m) {
        if assigned.contains(&a) {
            continue;
        }
        let mut orbit: HashSet<BinaryMatrix> = HashSet::new();
        for rho in &rows {
            for sigma in &cols {
                orbit.insert(a.permute(rho, sigma).unwrap());
            }
        }
        assigned.extend(orbit.iter().cloned());
        classes.push(orbit.into_iter().collect());
    }
    classes
}

fn partitions(n: usize, max: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for k in (1..=n.min(max)).rev() {
        for mut rest in partitions(n - k, k) {
            rest.insert(0, k);
            out.push(rest);
        }
    }
    out
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

fn class_size(p: &[usize]) -> u128 {
    let mut mult: HashMap<usize, usize> = HashMap::new();
    for &k in p {
        *mult.entry(k).or_default() += 1;
    }
    let denom: u128 = mult
        .iter()
        .map(|(&k, &c)| (k as u128).pow(c as u32) * factorial(c))
        .product();
    factorial(p.iter().sum()) / denom
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Number of row/column-permutation classes of `n x m` matrices with `k` ones,
/// by Burnside's lemma over `S_n x S_m` acting on the cells.
pub fn burnside_classes(n: usize, m: usize) -> Vec<u128> {
    let cells = n * m;
    let mut total = vec![0u128; cells + 1];
    for p in partitions(n, n) {
        for q in partitions(m, m) {
            let mut poly = vec![0u128; cells + 1];
            poly[0] = 1;
            for &a in &p {
                for &b in &q {
                    let g = gcd(a, b);
                    let len = a * b / g;
                    for _ in 0..g {
                        for i in (len..=cells).rev() {
                            poly[i] += poly[i - len];
                        }
                    }
                }
            }
            let w = class_size(&p) * class_size(&q);
            for (t, c) in total.iter_mut().zip(&poly) {
                *t += w * c;
            }
        }
    }
    let order = factorial(n) * factorial(m);
    total.iter().map(|t| {
        assert_eq!(t % order, 0);
        t / order
    }).collect()
}

/// Each row, column and block is a permutation of `1..=n^2`.
pub fn sudoku_ok(base: usize, grid: &[Vec<u32>]) -> bool {
    let side = base * base;
    let want: HashSet<u32> = (1..=side as u32).collect();
    let rows = (0..side).all(|i| grid[i].iter().copied().collect::<HashSet<_>>() == want);
    let cols = (0..side).all(|j| grid.iter().map(|r| r[j]).collect::<HashSet<_>>() == want);
    let blocks = (0..base).all(|br| {
        (0..base).all(|bc| {
            let mut s = HashSet::new();
            for i in 0..base {
                for j in 0..base {
                    s.insert(grid[br * base + i][bc * base + j]);
                }
            }
            s == want
        })
    });
    grid.len() == side && rows && cols && blocks
}

/// 4x4 S-permutation matrices: permutation matrices of order 4 with one 1 per
/// 2x2 block.
pub fn sperms_base2() -> Vec<BinaryMatrix> {
    Permutation::all(4)
        .map(|p| BinaryMatrix::from_fn(4, 4, |i, j| p.apply(i) == j).unwrap())
        .filter(|a| {
            (0..4).all(|b| {
                let (br, bc) = (b / 2, b % 2);
                (0..4)
                    .filter(|k| a.get(br * 2 + k / 2, bc * 2 + k % 2))
                    .count()
                    == 1
            })
        })
        .collect()
}

pub fn and_is_zero(a: &BinaryMatrix, b: &BinaryMatrix) -> bool {
    (0..a.n()).all(|i| (0..a.m()).all(|j| !(a.get(i, j) && b.get(i, j))))
}
