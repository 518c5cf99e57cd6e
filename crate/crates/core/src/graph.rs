//! Bipartite graphs as binary matrices.
//!
//! Row `i` of the matrix is the vertex `r_i`, column `j` is `c_j`, and
//! `a[i][j] = 1` exactly when the edge `(r_i, c_j)` is present. Two graphs are
//! isomorphic when one matrix is obtained from the other by permuting rows and
//! columns separately. The two sides never swap roles.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use crate::canonical::canonical_form;
use crate::enumerate::count_canonical;
use crate::error::{Error, Result};
use crate::matrix::BinaryMatrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteGraph {
    r_vertices: Vec<String>,
    c_vertices: Vec<String>,
    edges: BTreeSet<(usize, usize)>,
}

impl BipartiteGraph {
    /// Edges are 0-based `(r-index, c-index)` pairs.
    pub fn new(
        r_vertices: Vec<String>,
        c_vertices: Vec<String>,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        if r_vertices.is_empty() {
            return Err(Error::EmptySide("R"));
        }
        if c_vertices.is_empty() {
            return Err(Error::EmptySide("C"));
        }
        let labels: HashSet<&String> = r_vertices.iter().collect();
        if let Some(shared) = c_vertices.iter().find(|c| labels.contains(c)) {
            return Err(Error::SharedVertex(shared.clone()));
        }
        let mut set = BTreeSet::new();
        for (i, j) in edges {
            if i >= r_vertices.len() {
                return Err(Error::IndexOutOfRange {
                    index: i,
                    size: r_vertices.len(),
                });
            }
            if j >= c_vertices.len() {
                return Err(Error::IndexOutOfRange {
                    index: j,
                    size: c_vertices.len(),
                });
            }
            if !set.insert((i, j)) {
                return Err(Error::RepeatedEdge(i, j));
            }
        }
        Ok(Self {
            r_vertices,
            c_vertices,
            edges: set,
        })
    }

    /// Sides labelled `r1..` and `c1..`.
    pub fn with_default_labels(
        n_r: usize,
        n_c: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let r = (1..=n_r).map(|i| format!("r{i}")).collect();
        let c = (1..=n_c).map(|j| format!("c{j}")).collect();
        Self::new(r, c, edges)
    }

    pub fn r_vertices(&self) -> &[String] {
        &self.r_vertices
    }

    pub fn c_vertices(&self) -> &[String] {
        &self.c_vertices
    }

    pub fn edges(&self) -> &BTreeSet<(usize, usize)> {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Sorted degrees of the R side and of the C side.
    pub fn degree_sequences(&self) -> (Vec<usize>, Vec<usize>) {
        let mut r = vec![0; self.r_vertices.len()];
        let mut c = vec![0; self.c_vertices.len()];
        for &(i, j) in &self.edges {
            r[i] += 1;
            c[j] += 1;
        }
        r.sort_unstable();
        c.sort_unstable();
        (r, c)
    }

    /// Edge-list text: `n_r n_c`, then one `i j` line per edge, 1-based.
    pub fn parse_edge_list(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty());
        let (first_no, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            message: "empty edge list".into(),
        })?;
        let (n_r, n_c) = parse_pair(first_no + 1, header)?;
        let mut edges = Vec::new();
        for (idx, line) in lines {
            let (i, j) = parse_pair(idx + 1, line)?;
            if i == 0 || j == 0 {
                return Err(Error::Parse {
                    line: idx + 1,
                    message: "edge indices are 1-based".into(),
                });
            }
            edges.push((i - 1, j - 1));
        }
        Self::with_default_labels(n_r, n_c, edges)
    }

    pub fn to_edge_list(&self) -> String {
        let mut s = format!("{} {}\n", self.r_vertices.len(), self.c_vertices.len());
        for &(i, j) in &self.edges {
            s.push_str(&format!("{} {}\n", i + 1, j + 1));
        }
        s
    }
}

fn parse_pair(line: usize, text: &str) -> Result<(usize, usize)> {
    let nums: Vec<&str> = text.split_whitespace().collect();
    let bad = |message: String| Error::Parse { line, message };
    if nums.len() != 2 {
        return Err(bad(format!("expected two integers, got {:?}", text.trim())));
    }
    let parse = |s: &str| {
        s.parse::<usize>()
            .map_err(|_| bad(format!("{s:?} is not a non-negative integer")))
    };
    Ok((parse(nums[0])?, parse(nums[1])?))
}

pub fn graph_to_matrix(g: &BipartiteGraph) -> Result<BinaryMatrix> {
    BinaryMatrix::from_fn(g.r_vertices.len(), g.c_vertices.len(), |i, j| {
        g.edges.contains(&(i, j))
    })
}

pub fn matrix_to_graph(a: &BinaryMatrix) -> BipartiteGraph {
    let edges = (0..a.n())
        .flat_map(|i| (0..a.m()).map(move |j| (i, j)))
        .filter(|&(i, j)| a.get(i, j));
    BipartiteGraph::with_default_labels(a.n(), a.m(), edges).expect("matrix sides are non-empty")
}

/// Why two graphs were found not isomorphic.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NotIsomorphicReason {
    RSideSize,
    CSideSize,
    EdgeCount,
    CanonicalForm,
}

impl fmt::Display for NotIsomorphicReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NotIsomorphicReason::RSideSize => "R sides differ in size",
            NotIsomorphicReason::CSideSize => "C sides differ in size",
            NotIsomorphicReason::EdgeCount => "edge counts differ",
            NotIsomorphicReason::CanonicalForm => "canonical forms differ",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IsoVerdict {
    Isomorphic,
    NotIsomorphic(NotIsomorphicReason),
}

impl IsoVerdict {
    pub fn is_isomorphic(self) -> bool {
        self == IsoVerdict::Isomorphic
    }
}

/// Compares canonical forms of the adjacency matrices. Side-size mismatches
/// come back as a verdict, not an error; oversized sides are an error.
pub fn isomorphic(g: &BipartiteGraph, h: &BipartiteGraph) -> Result<IsoVerdict> {
    use NotIsomorphicReason::*;
    if g.r_vertices.len() != h.r_vertices.len() {
        return Ok(IsoVerdict::NotIsomorphic(RSideSize));
    }
    if g.c_vertices.len() != h.c_vertices.len() {
        return Ok(IsoVerdict::NotIsomorphic(CSideSize));
    }
    if g.edge_count() != h.edge_count() {
        return Ok(IsoVerdict::NotIsomorphic(EdgeCount));
    }
    let a = canonical_form(&graph_to_matrix(g)?)?;
    let b = canonical_form(&graph_to_matrix(h)?)?;
    Ok(if a == b {
        IsoVerdict::Isomorphic
    } else {
        IsoVerdict::NotIsomorphic(CanonicalForm)
    })
}

/// Bipartite graphs with both sides of size `n` and `k` edges, up to
/// isomorphism.
pub fn count_graph_classes(n: usize, k: usize) -> Result<u64> {
    let table = count_canonical(n)?;
    table.get(k).ok_or(Error::IndexOutOfRange {
        index: k,
        size: n * n + 1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canonical::equivalent;
    use crate::matrix::Permutation;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn labels(prefix: &str, k: usize) -> Vec<String> {
        (0..k).map(|i| format!("{prefix}{i}")).collect()
    }

    #[test]
    fn graph_matrix_examples() {
        let g = BipartiteGraph::with_default_labels(2, 2, [(0, 0), (1, 1)]).unwrap();
        assert_eq!(graph_to_matrix(&g).unwrap(), BinaryMatrix::identity(2).unwrap());
        let empty = BipartiteGraph::with_default_labels(3, 2, []).unwrap();
        assert_eq!(graph_to_matrix(&empty).unwrap(), BinaryMatrix::zeros(3, 2).unwrap());
        assert_eq!(matrix_to_graph(&BinaryMatrix::identity(2).unwrap()), g);
        assert_eq!(matrix_to_graph(&BinaryMatrix::zeros(3, 2).unwrap()), empty);
    }

    #[test]
    fn exhaustive_round_trip_b3() {
        for bitsv in 0u64..512 {
            let a = BinaryMatrix::from_fn(3, 3, |i, j| (bitsv >> (3 * i + j)) & 1 == 1).unwrap();
            let g = matrix_to_graph(&a);
            assert_eq!(g.edge_count() as u32, a.count_ones());
            assert_eq!(graph_to_matrix(&g).unwrap(), a);
            assert_eq!(matrix_to_graph(&graph_to_matrix(&g).unwrap()), g);
        }
    }

    #[test]
    fn construction_errors() {
        assert_eq!(
            BipartiteGraph::new(vec![], labels("c", 1), []),
            Err(Error::EmptySide("R"))
        );
        assert_eq!(
            BipartiteGraph::new(labels("r", 1), vec![], []),
            Err(Error::EmptySide("C"))
        );
        assert_eq!(
            BipartiteGraph::new(labels("v", 2), labels("v", 2), []),
            Err(Error::SharedVertex("v0".into()))
        );
        assert_eq!(
            BipartiteGraph::with_default_labels(2, 2, [(0, 1), (0, 1)]),
            Err(Error::RepeatedEdge(0, 1))
        );
        assert!(BipartiteGraph::with_default_labels(2, 2, [(2, 0)]).is_err());
    }

    #[test]
    fn edge_list_format() {
        let g = BipartiteGraph::parse_edge_list("2 3\n1 1\n2 3\n").unwrap();
        assert_eq!(g.edges().iter().copied().collect::<Vec<_>>(), vec![(0, 0), (1, 2)]);
        assert_eq!(BipartiteGraph::parse_edge_list(&g.to_edge_list()).unwrap(), g);
        assert!(BipartiteGraph::parse_edge_list("2 2\n0 1\n").is_err());
        assert!(BipartiteGraph::parse_edge_list("2 2\n1\n").is_err());
        assert!(BipartiteGraph::parse_edge_list("").is_err());
    }

    #[test]
    fn example_one_graphs_are_isomorphic() {
        let a = BinaryMatrix::new(4, vec![3, 3, 4, 8]).unwrap();
        let b = BinaryMatrix::new(4, vec![1, 6, 6, 8]).unwrap();
        let verdict = isomorphic(&matrix_to_graph(&a), &matrix_to_graph(&b)).unwrap();
        assert_eq!(verdict, IsoVerdict::Isomorphic);
    }

    #[test]
    fn relabelled_graph_is_isomorphic() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let a = BinaryMatrix::random(4, 5, &mut rng).unwrap();
        let g = matrix_to_graph(&a);
        let rho = Permutation::random(4, &mut rng);
        let sigma = Permutation::random(5, &mut rng);
        let mut r = labels("x", 4);
        r.shuffle(&mut rng);
        let h = BipartiteGraph::new(
            r,
            labels("y", 5),
            g.edges().iter().map(|&(i, j)| (rho.apply(i), sigma.apply(j))),
        )
        .unwrap();
        assert!(isomorphic(&g, &h).unwrap().is_isomorphic());
    }

    #[test]
    fn sides_do_not_swap() {
        let shared_r = BipartiteGraph::with_default_labels(2, 2, [(0, 0), (0, 1)]).unwrap();
        let shared_c = BipartiteGraph::with_default_labels(2, 2, [(0, 0), (1, 0)]).unwrap();
        assert_eq!(
            isomorphic(&shared_r, &shared_c).unwrap(),
            IsoVerdict::NotIsomorphic(NotIsomorphicReason::CanonicalForm)
        );
    }

    #[test]
    fn size_mismatch_reasons() {
        let g = BipartiteGraph::with_default_labels(2, 2, [(0, 0)]).unwrap();
        let h = BipartiteGraph::with_default_labels(3, 2, [(0, 0)]).unwrap();
        let k = BipartiteGraph::with_default_labels(2, 3, [(0, 0)]).unwrap();
        let e = BipartiteGraph::with_default_labels(2, 2, [(0, 0), (1, 1)]).unwrap();
        use NotIsomorphicReason::*;
        assert_eq!(isomorphic(&g, &h).unwrap(), IsoVerdict::NotIsomorphic(RSideSize));
        assert_eq!(isomorphic(&g, &k).unwrap(), IsoVerdict::NotIsomorphic(CSideSize));
        assert_eq!(isomorphic(&g, &e).unwrap(), IsoVerdict::NotIsomorphic(EdgeCount));
        let big = BipartiteGraph::with_default_labels(9, 1, [(0, 0)]).unwrap();
        assert!(isomorphic(&big, &big).is_err());
    }

    #[test]
    fn agrees_with_matrix_equivalence_on_b2() {
        let all: Vec<_> = (0u64..16)
            .map(|b| BinaryMatrix::from_fn(2, 2, |i, j| (b >> (2 * i + j)) & 1 == 1).unwrap())
            .collect();
        for a in &all {
            for b in &all {
                let iso = isomorphic(&matrix_to_graph(a), &matrix_to_graph(b))
                    .unwrap()
                    .is_isomorphic();
                assert_eq!(iso, equivalent(a, b).unwrap());
            }
        }
    }

    #[test]
    fn equivalence_relation_and_degrees() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..200 {
            let n = rng.gen_range(1..=3);
            let m = rng.gen_range(1..=3);
            let gs: Vec<_> = (0..3)
                .map(|_| matrix_to_graph(&BinaryMatrix::random(n, m, &mut rng).unwrap()))
                .collect();
            let iso = |x: &BipartiteGraph, y: &BipartiteGraph| isomorphic(x, y).unwrap().is_isomorphic();
            assert!(iso(&gs[0], &gs[0]));
            assert_eq!(iso(&gs[0], &gs[1]), iso(&gs[1], &gs[0]));
            if iso(&gs[0], &gs[1]) && iso(&gs[1], &gs[2]) {
                assert!(iso(&gs[0], &gs[2]));
            }
            if iso(&gs[0], &gs[1]) {
                assert_eq!(gs[0].edge_count(), gs[1].edge_count());
                assert_eq!(gs[0].degree_sequences(), gs[1].degree_sequences());
            }
        }
    }

    #[test]
    fn class_counts() {
        assert_eq!(count_graph_classes(2, 2), Ok(3));
        assert_eq!(count_graph_classes(3, 0), Ok(1));
        assert_eq!(count_graph_classes(3, 9), Ok(1));
        assert!(count_graph_classes(3, 10).is_err());
        assert!(count_graph_classes(7, 1).is_err());
    }
}
