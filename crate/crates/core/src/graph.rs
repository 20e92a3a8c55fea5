//! Simple undirected graphs, port sets, Laplacian and stochastic matrices,
//! seeded random instances and the plain-text edge-list format.
//!
//! Node labels are 1-based everywhere in the public API.

use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap};
use std::fmt;

use num_traits::Num;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::SymMatrix;
use crate::scalar::Scalar;

/// Resampling budget for [`random_connected_graph`].
pub const GENERATION_RETRY_LIMIT: usize = 10_000;

/// Simple undirected graph on nodes `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl Graph {
    /// Builds a graph, normalising each pair to `(min, max)`.
    ///
    /// Self-loops, duplicates and out-of-range labels are rejected.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidOrder { n, reason: "a graph needs at least one node" });
        }
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            for w in [u, v] {
                if w == 0 || w > n {
                    return Err(Error::IndexOutOfRange { index: w, n });
                }
            }
            if u == v {
                return Err(Error::InvalidParameter { name: "edges", reason: format!("self-loop at node {u}") });
            }
            if !set.insert((u.min(v), u.max(v))) {
                return Err(Error::InvalidParameter { name: "edges", reason: format!("duplicate edge ({u}, {v})") });
            }
        }
        Ok(Self { n, edges: set })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    /// Degree of every node, indexed from 0 for node 1.
    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for &(u, v) in &self.edges {
            d[u - 1] += 1;
            d[v - 1] += 1;
        }
        d
    }

    pub fn degree(&self, node: usize) -> Result<usize> {
        if node == 0 || node > self.n {
            return Err(Error::IndexOutOfRange { index: node, n: self.n });
        }
        Ok(self.degrees()[node - 1])
    }

    pub fn max_degree(&self) -> usize {
        self.degrees().into_iter().max().unwrap_or(0)
    }

    /// Union-find connectivity check.
    pub fn is_connected(&self) -> bool {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut components = self.n;
        for &(u, v) in &self.edges {
            let (a, b) = (find(&mut parent, u - 1), find(&mut parent, v - 1));
            if a != b {
                parent[a] = b;
                components -= 1;
            }
        }
        components == 1
    }

    /// Relabels node `i` as `perm[i - 1]` (a permutation of `1..=n`).
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        check_permutation(perm, self.n)?;
        Self::new(self.n, self.edges.iter().map(|&(u, v)| (perm[u - 1], perm[v - 1])))
    }

    /// Disjoint union: nodes of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Self {
        let shift = self.n;
        let edges =
            self.edges.iter().copied().chain(other.edges.iter().map(|&(u, v)| (u + shift, v + shift))).collect();
        Self { n: self.n + other.n, edges }
    }

    /// Copy with one extra edge.
    pub fn with_edge(&self, u: usize, v: usize) -> Result<Self> {
        Self::new(self.n, self.edges.iter().copied().chain(std::iter::once((u, v))))
    }
}

fn check_permutation(perm: &[usize], n: usize) -> Result<()> {
    let mut seen = vec![false; n];
    if perm.len() != n {
        return Err(Error::Shape(format!("permutation of length {} for {n} nodes", perm.len())));
    }
    for &p in perm {
        if p == 0 || p > n || std::mem::replace(&mut seen[p - 1], true) {
            return Err(Error::InvalidParameter { name: "perm", reason: "not a permutation of 1..=n".into() });
        }
    }
    Ok(())
}

/// Strictly increasing list of 1-based node indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct PortSet {
    indices: Vec<usize>,
}

impl PortSet {
    /// Port set for selection on `n` nodes: `1 <= k < n`, indices distinct
    /// and in range. The input is sorted.
    pub fn new(n: usize, indices: impl IntoIterator<Item = usize>) -> Result<Self> {
        let s = Self::covering(n, indices)?;
        if s.k() >= n {
            return Err(Error::InvalidPortSet(format!("k = {} must be below n = {n}", s.k())));
        }
        Ok(s)
    }

    /// Like [`PortSet::new`] but admits `k = n` (energy functionals accept
    /// every node as a port).
    pub fn covering(n: usize, indices: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut v: Vec<usize> = indices.into_iter().collect();
        if v.is_empty() {
            return Err(Error::InvalidPortSet("empty port set".into()));
        }
        v.sort_unstable();
        if let Some(&bad) = v.iter().find(|&&j| j == 0 || j > n) {
            return Err(Error::IndexOutOfRange { index: bad, n });
        }
        if v.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidPortSet(format!("repeated index in {v:?}")));
        }
        Ok(Self { indices: v })
    }

    pub(crate) fn from_sorted_unchecked(indices: Vec<usize>) -> Self {
        Self { indices }
    }

    pub fn k(&self) -> usize {
        self.indices.len()
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn contains(&self, node: usize) -> bool {
        self.indices.binary_search(&node).is_ok()
    }

    /// Largest index; used to validate against a matrix dimension.
    pub fn max_index(&self) -> usize {
        *self.indices.last().expect("nonempty by construction")
    }

    /// Image under the relabelling `i -> perm[i - 1]`.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        let mut v: Vec<usize> = self.indices.iter().map(|&i| perm[i - 1]).collect();
        v.sort_unstable();
        Self { indices: v }
    }
}

impl fmt::Display for PortSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, j) in self.indices.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{j}")?;
        }
        write!(f, "}}")
    }
}

/// The path `1 - 2 - ... - n`.
pub fn path_graph(n: usize) -> Result<Graph> {
    if n < 2 {
        return Err(Error::InvalidOrder { n, reason: "a path needs at least two nodes" });
    }
    Graph::new(n, (1..n).map(|i| (i, i + 1)))
}

/// The 11-node example graph used to illustrate one- and two-center choices.
pub fn figure1_graph() -> Graph {
    const EDGES: [(usize, usize); 11] =
        [(1, 2), (2, 3), (3, 4), (3, 5), (5, 6), (5, 7), (7, 8), (8, 9), (8, 10), (9, 10), (10, 11)];
    Graph::new(11, EDGES).expect("static edge list is valid")
}

/// Graph Laplacian `D - A`, in any numeric type (integers give an exact
/// matrix).
pub fn laplacian<T: Copy + Num>(g: &Graph) -> SymMatrix<T> {
    let mut l = SymMatrix::zeros(g.n());
    for (u, v) in g.edges() {
        let (a, b) = (u - 1, v - 1);
        l.add_to_diagonal(a, T::one());
        l.add_to_diagonal(b, T::one());
        l.set(a, b, T::zero() - T::one());
    }
    l
}

pub fn max_degree(g: &Graph) -> usize {
    g.max_degree()
}

/// Checks `0 < tau <= 1/Δ` (the boundary is admitted).
pub fn check_tau<T: Scalar>(g: &Graph, tau: T) -> Result<()> {
    let delta = g.max_degree();
    let ok = tau > T::zero()
        && tau.is_finite()
        && (delta == 0 || tau * T::of_usize(delta) <= T::one() + T::epsilon() * T::of(4.0));
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidParameter { name: "tau", reason: format!("{tau} outside (0, 1/{delta}]") })
    }
}

/// Doubly stochastic matrix `Z = I - τL`.
pub fn stochastic<T: Scalar>(g: &Graph, tau: T) -> Result<SymMatrix<T>> {
    check_tau(g, tau)?;
    let l: SymMatrix<T> = laplacian(g);
    SymMatrix::identity(g.n()).combine(T::one(), &l, -tau)
}

/// Uniform labelled tree by Prüfer decoding, driven by `rng`.
pub fn random_tree_with<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Graph> {
    if n < 2 {
        return Err(Error::InvalidOrder { n, reason: "a tree sample needs at least two nodes" });
    }
    let seq: Vec<usize> = (0..n - 2).map(|_| rng.random_range(1..=n)).collect();
    Graph::new(n, prufer_decode(n, &seq))
}

/// Deterministic uniform labelled tree for a seed.
pub fn random_tree(n: usize, seed: u64) -> Result<Graph> {
    random_tree_with(n, &mut ChaCha8Rng::seed_from_u64(seed))
}

fn prufer_decode(n: usize, seq: &[usize]) -> Vec<(usize, usize)> {
    let mut remaining = vec![1usize; n + 1];
    for &s in seq {
        remaining[s] += 1;
    }
    let mut leaves: BinaryHeap<Reverse<usize>> = (1..=n).filter(|&v| remaining[v] == 1).map(Reverse).collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &s in seq {
        let Reverse(leaf) = leaves.pop().expect("a Prüfer sequence always leaves a leaf");
        edges.push((leaf, s));
        remaining[s] -= 1;
        if remaining[s] == 1 {
            leaves.push(Reverse(s));
        }
    }
    let Reverse(a) = leaves.pop().expect("two leaves remain");
    let Reverse(b) = leaves.pop().expect("two leaves remain");
    edges.push((a, b));
    edges
}

/// `G(n, p)` conditioned on connectivity by rejection, driven by `rng`.
pub fn random_connected_graph_with<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Result<Graph> {
    if n < 2 {
        return Err(Error::InvalidOrder { n, reason: "a random graph needs at least two nodes" });
    }
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::InvalidParameter { name: "p", reason: format!("{p} outside (0, 1)") });
    }
    for _ in 0..GENERATION_RETRY_LIMIT {
        let mut edges = Vec::new();
        for u in 1..=n {
            for v in u + 1..=n {
                if rng.random_bool(p) {
                    edges.push((u, v));
                }
            }
        }
        let g = Graph::new(n, edges)?;
        if g.is_connected() {
            return Ok(g);
        }
    }
    Err(Error::GenerationFailure { attempts: GENERATION_RETRY_LIMIT })
}

/// Deterministic connected `G(n, p)` sample for a seed.
pub fn random_connected_graph(n: usize, p: f64, seed: u64) -> Result<Graph> {
    random_connected_graph_with(n, p, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// Parses the edge-list format: a first line holding `n`, then one `u v`
/// pair per line. Blank lines and lines starting with `#` are skipped.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines =
        text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (first, header) = lines.next().ok_or(Error::Parse { line: 1, reason: "missing node count".into() })?;
    let n: usize =
        header.parse().map_err(|_| Error::Parse { line: first, reason: format!("bad node count '{header}'") })?;
    if n == 0 {
        return Err(Error::Parse { line: first, reason: "node count must be positive".into() });
    }
    let mut edges = BTreeSet::new();
    for (line, l) in lines {
        let fields: Vec<&str> = l.split_whitespace().collect();
        let bad = |reason: String| Error::Parse { line, reason };
        if fields.len() != 2 {
            return Err(bad(format!("expected two indices, found '{l}'")));
        }
        let parse = |s: &str| s.parse::<usize>().map_err(|_| bad(format!("bad index '{s}'")));
        let (u, v) = (parse(fields[0])?, parse(fields[1])?);
        for w in [u, v] {
            if w == 0 || w > n {
                return Err(bad(format!("index {w} outside 1..={n}")));
            }
        }
        if u == v {
            return Err(bad(format!("self-loop at node {u}")));
        }
        if u > v {
            return Err(bad(format!("pair ({u}, {v}) must be written with u < v")));
        }
        if !edges.insert((u, v)) {
            return Err(bad(format!("duplicate edge ({u}, {v})")));
        }
    }
    Graph::new(n, edges)
}

pub fn serialize_edge_list(g: &Graph) -> String {
    let mut s = format!("{}\n", g.n());
    for (u, v) in g.edges() {
        s.push_str(&format!("{u} {v}\n"));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_edges() {
        let g = path_graph(3).unwrap();
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(1, 2), (2, 3)]);
        assert_eq!(path_graph(11).unwrap().edge_count(), 10);
        assert!(matches!(path_graph(1), Err(Error::InvalidOrder { .. })));
    }

    #[test]
    fn figure1_degrees() {
        let g = figure1_graph();
        assert_eq!((g.n(), g.edge_count()), (11, 11));
        // node 1 only touches node 2; degrees sum to 2 * 11
        assert_eq!(g.degrees(), vec![1, 2, 3, 1, 3, 1, 2, 3, 2, 3, 1]);
        assert_eq!(g.degrees().iter().sum::<usize>(), 22);
        assert_eq!(g.max_degree(), 3);
        assert!(g.is_connected());
    }

    #[test]
    fn laplacian_small_paths() {
        let l2: SymMatrix<i64> = laplacian(&path_graph(2).unwrap());
        assert_eq!(l2.to_dense(), crate::linalg::Matrix::from_rows(&[vec![1, -1], vec![-1, 1]]).unwrap());
        let l3: SymMatrix<i64> = laplacian(&path_graph(3).unwrap());
        let expect = [[1, -1, 0], [-1, 2, -1], [0, -1, 1]];
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(l3.get(i, j), expect[i][j]);
            }
        }
    }

    #[test]
    fn stochastic_examples() {
        let g = path_graph(3).unwrap();
        let z = stochastic(&g, 0.25).unwrap();
        assert_eq!([z.get(0, 0), z.get(1, 1), z.get(2, 2)], [0.75, 0.5, 0.75]);
        assert_eq!((z.get(0, 1), z.get(0, 2)), (0.25, 0.0));
        let z = stochastic(&g, 0.5).unwrap();
        assert_eq!([z.get(0, 0), z.get(1, 1), z.get(0, 1)], [0.5, 0.0, 0.5]);
        let z = stochastic(&g, 1e-300).unwrap();
        assert!(z.combine(1.0, &SymMatrix::identity(3), -1.0).unwrap().frobenius() < 1e-299);
        assert!(stochastic(&g, 0.51).is_err());
        assert!(stochastic(&g, 0.0).is_err());
    }

    #[test]
    fn random_tree_properties() {
        assert_eq!(random_tree(2, 7).unwrap().edges().collect::<Vec<_>>(), vec![(1, 2)]);
        let a = random_tree(9, 42).unwrap();
        assert_eq!(a, random_tree(9, 42).unwrap());
        assert_eq!(a.edge_count(), 8);
        assert!(a.is_connected());
    }

    #[test]
    fn random_graph_properties() {
        let g = random_connected_graph(7, 0.4, 3).unwrap();
        assert_eq!(g, random_connected_graph(7, 0.4, 3).unwrap());
        assert!(g.is_connected() && g.edge_count() >= 6);
        assert!(random_connected_graph(2, 0.99, 1).unwrap().has_edge(1, 2));
        assert!(random_connected_graph(5, 1.0, 1).is_err());
    }

    #[test]
    fn edge_list_format() {
        assert_eq!(parse_edge_list("3\n1 2\n2 3\n").unwrap(), path_graph(3).unwrap());
        assert_eq!(serialize_edge_list(&path_graph(2).unwrap()), "2\n1 2\n");
        assert!(matches!(parse_edge_list("3\n1 1\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_edge_list("3\n1 2\n# c\n1 2\n"), Err(Error::Parse { line: 4, .. })));
        assert!(matches!(parse_edge_list("3\n1 4\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_edge_list("3\n1 x\n"), Err(Error::Parse { line: 2, .. })));
    }

    #[test]
    fn port_set_validation() {
        assert_eq!(PortSet::new(5, [4, 2]).unwrap().indices(), &[2, 4]);
        assert!(PortSet::new(3, [1, 2, 3]).is_err());
        assert!(PortSet::covering(3, [1, 2, 3]).is_ok());
        assert!(PortSet::new(3, [2, 2]).is_err());
        assert!(matches!(PortSet::new(3, [4]), Err(Error::IndexOutOfRange { .. })));
    }
}
