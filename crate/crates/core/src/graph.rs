//! Immutable simple undirected graphs and edge subsets over them.
//!
//! Vertices are dense indices `0..n`. Edges receive dense [`EdgeId`]s in
//! input order, and that order is the canonical tie-breaking order used by
//! every deterministic rule in the solver.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

/// Dense vertex index in `0..n`.
pub type VertexId = usize;

/// Dense edge index in `0..m`, assigned in input order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub u32);

impl EdgeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl From<usize> for EdgeId {
    fn from(i: usize) -> Self {
        EdgeId(i as u32)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(VertexId),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(VertexId, VertexId),
    #[error("vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { vertex: VertexId, n: usize },
}

/// A simple undirected graph. Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(VertexId, VertexId)>,
    adjacency: Vec<Vec<(VertexId, EdgeId)>>,
    index: HashMap<(VertexId, VertexId), EdgeId>,
}

#[inline]
fn ordered(u: VertexId, v: VertexId) -> (VertexId, VertexId) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

impl Graph {
    /// Builds a graph on `n` vertices. Edge `i` of `edge_list` gets `EdgeId(i)`;
    /// endpoints are stored as given.
    pub fn new(n: usize, edge_list: &[(VertexId, VertexId)]) -> Result<Self, GraphError> {
        let mut adjacency = vec![Vec::new(); n];
        let mut index = HashMap::with_capacity(edge_list.len());
        for (i, &(u, v)) in edge_list.iter().enumerate() {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            let id = EdgeId::from(i);
            if index.insert(ordered(u, v), id).is_some() {
                return Err(GraphError::DuplicateEdge(u, v));
            }
            adjacency[u].push((v, id));
            adjacency[v].push((u, id));
        }
        Ok(Graph {
            n,
            edges: edge_list.to_vec(),
            adjacency,
            index,
        })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    #[inline]
    pub fn endpoints(&self, e: EdgeId) -> (VertexId, VertexId) {
        self.edges[e.index()]
    }

    /// The endpoint of `e` opposite to `v`.
    #[inline]
    pub fn other(&self, e: EdgeId, v: VertexId) -> VertexId {
        let (a, b) = self.edges[e.index()];
        if a == v {
            b
        } else {
            a
        }
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.edges.len()).map(EdgeId::from)
    }

    #[inline]
    pub fn neighbors(&self, v: VertexId) -> &[(VertexId, EdgeId)] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adjacency[v].len()
    }

    /// Resolves an unordered vertex pair to its edge id.
    pub fn edge_between(&self, u: VertexId, v: VertexId) -> Option<EdgeId> {
        self.index.get(&ordered(u, v)).copied()
    }

    pub fn full_subset(&self) -> EdgeSubset {
        EdgeSubset::full(self.m())
    }

    pub fn empty_subset(&self) -> EdgeSubset {
        EdgeSubset::empty(self.m())
    }

    /// Edges at `u` that are not in `f`.
    pub fn nonsolution_incident_edges(&self, f: &EdgeSubset, u: VertexId) -> EdgeSubset {
        let mut out = self.empty_subset();
        for &(_, e) in self.neighbors(u) {
            if !f.contains(e) {
                out.insert(e);
            }
        }
        out
    }

    /// Number of `f`-edges at `v`.
    pub fn degree_in_subset(&self, f: &EdgeSubset, v: VertexId) -> usize {
        self.neighbors(v)
            .iter()
            .filter(|&&(_, e)| f.contains(e))
            .count()
    }

    /// Degree of every vertex in `(V, f)`.
    pub fn degrees_in_subset(&self, f: &EdgeSubset) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for e in f.iter() {
            let (u, v) = self.endpoints(e);
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }

    /// Endpoint pairs of `f`, normalized so the smaller endpoint comes first.
    pub fn pairs(&self, f: &EdgeSubset) -> Vec<(VertexId, VertexId)> {
        f.iter().map(|e| ordered_pair(self.endpoints(e))).collect()
    }

    /// Builds the subset containing the given vertex pairs.
    pub fn subset_from_pairs(&self, pairs: &[(VertexId, VertexId)]) -> Option<EdgeSubset> {
        let mut out = self.empty_subset();
        for &(u, v) in pairs {
            out.insert(self.edge_between(u, v)?);
        }
        Some(out)
    }
}

#[inline]
pub fn ordered_pair((u, v): (VertexId, VertexId)) -> (VertexId, VertexId) {
    ordered(u, v)
}

/// A set of edge ids of one graph, stored as a bitset.
///
/// Iteration is ascending in [`EdgeId`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct EdgeSubset {
    words: Vec<u64>,
    universe: usize,
}

impl EdgeSubset {
    pub fn empty(universe: usize) -> Self {
        EdgeSubset {
            words: vec![0; universe.div_ceil(64)],
            universe,
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut s = Self::empty(universe);
        for i in 0..universe {
            s.insert(EdgeId::from(i));
        }
        s
    }

    pub fn from_ids<I: IntoIterator<Item = EdgeId>>(universe: usize, ids: I) -> Self {
        let mut s = Self::empty(universe);
        for e in ids {
            s.insert(e);
        }
        s
    }

    /// Size of the edge-id universe this subset lives in.
    pub fn universe(&self) -> usize {
        self.universe
    }

    #[inline]
    pub fn contains(&self, e: EdgeId) -> bool {
        let i = e.index();
        i < self.universe && self.words[i / 64] >> (i % 64) & 1 == 1
    }

    /// Returns `true` if the edge was not already present.
    #[inline]
    pub fn insert(&mut self, e: EdgeId) -> bool {
        let i = e.index();
        assert!(
            i < self.universe,
            "edge {e} outside universe {}",
            self.universe
        );
        let was = self.words[i / 64] >> (i % 64) & 1 == 1;
        self.words[i / 64] |= 1 << (i % 64);
        !was
    }

    /// Returns `true` if the edge was present.
    #[inline]
    pub fn remove(&mut self, e: EdgeId) -> bool {
        let i = e.index();
        if i >= self.universe {
            return false;
        }
        let was = self.words[i / 64] >> (i % 64) & 1 == 1;
        self.words[i / 64] &= !(1 << (i % 64));
        was
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> Iter<'_> {
        Iter {
            words: &self.words,
            word: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }

    pub fn to_vec(&self) -> Vec<EdgeId> {
        self.iter().collect()
    }

    pub fn union(&self, other: &EdgeSubset) -> EdgeSubset {
        let mut out = self.clone();
        out.union_with(other);
        out
    }

    pub fn union_with(&mut self, other: &EdgeSubset) {
        debug_assert_eq!(self.universe, other.universe);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn difference(&self, other: &EdgeSubset) -> EdgeSubset {
        let mut out = self.clone();
        for (a, b) in out.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
        out
    }

    pub fn intersection(&self, other: &EdgeSubset) -> EdgeSubset {
        let mut out = self.clone();
        for (a, b) in out.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
        out
    }

    pub fn is_subset(&self, other: &EdgeSubset) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }
}

impl fmt::Debug for EdgeSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter().map(|e| e.0)).finish()
    }
}

pub struct Iter<'a> {
    words: &'a [u64],
    word: usize,
    current: u64,
}

impl Iterator for Iter<'_> {
    type Item = EdgeId;

    fn next(&mut self) -> Option<EdgeId> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(EdgeId::from(self.word * 64 + bit));
            }
            self.word += 1;
            if self.word >= self.words.len() {
                return None;
            }
            self.current = self.words[self.word];
        }
    }
}

impl<'a> IntoIterator for &'a EdgeSubset {
    type Item = EdgeId;
    type IntoIter = Iter<'a>;

    fn into_iter(self) -> Iter<'a> {
        self.iter()
    }
}

/// Small named graphs used throughout tests, examples and docs.
pub mod named {
    use super::{Graph, VertexId};

    pub fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::new(n, &edges).expect("cycle is simple")
    }

    pub fn complete(n: usize) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Graph::new(n, &edges).expect("complete graph is simple")
    }

    /// `K_{a,b}` with parts `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Graph {
        let mut edges = Vec::new();
        for u in 0..a {
            for v in a..a + b {
                edges.push((u, v));
            }
        }
        Graph::new(a + b, &edges).expect("complete bipartite graph is simple")
    }

    /// Two triangles sharing vertex 0: `0-1-2-0` and `0-3-4-0`.
    pub fn bowtie() -> Graph {
        let edges: [(VertexId, VertexId); 6] = [(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)];
        Graph::new(5, &edges).expect("bowtie is simple")
    }

    /// Triangles `0-1-2` and `3-4-5` joined by the bridge `(2, 3)`.
    pub fn bridged_triangles() -> Graph {
        let edges = [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 3)];
        Graph::new(6, &edges).expect("bridged triangles are simple")
    }

    /// Hubs 0 and 3 joined by the paths `0-1-3`, `0-2-3` and the edge `0-3`.
    pub fn theta() -> Graph {
        let edges = [(0, 1), (1, 3), (0, 2), (2, 3), (0, 3)];
        Graph::new(4, &edges).expect("theta is simple")
    }
}

#[cfg(test)]
mod tests {
    use super::named::*;
    use super::*;

    #[test]
    fn builds_c4() {
        let g = Graph::new(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert_eq!(g.n(), 4);
        assert_eq!(g.m(), 4);
        assert_eq!(g.edge_between(0, 3), Some(EdgeId(3)));
    }

    #[test]
    fn rejects_non_simple_input() {
        assert_eq!(
            Graph::new(3, &[(0, 1), (1, 1)]),
            Err(GraphError::SelfLoop(1))
        );
        assert_eq!(
            Graph::new(3, &[(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge(1, 0))
        );
        assert_eq!(
            Graph::new(3, &[(0, 3)]),
            Err(GraphError::VertexOutOfRange { vertex: 3, n: 3 })
        );
    }

    #[test]
    fn nonsolution_edges() {
        let c4 = cycle(4);
        assert!(c4
            .nonsolution_incident_edges(&c4.full_subset(), 0)
            .is_empty());

        let k4 = complete(4);
        let f = k4
            .subset_from_pairs(&[(0, 1), (1, 2), (2, 3), (3, 0)])
            .unwrap();
        let at1 = k4.nonsolution_incident_edges(&f, 1);
        assert_eq!(k4.pairs(&at1), vec![(1, 3)]);
        let at0 = k4.nonsolution_incident_edges(&f, 0);
        assert_eq!(k4.pairs(&at0), vec![(0, 2)]);
    }

    #[test]
    fn subset_degrees() {
        let c4 = cycle(4);
        assert_eq!(c4.degree_in_subset(&c4.full_subset(), 2), 2);
        let k4 = complete(4);
        assert_eq!(k4.degree_in_subset(&k4.full_subset(), 0), 3);
        let f = k4.subset_from_pairs(&[(0, 1)]).unwrap();
        assert_eq!(k4.degree_in_subset(&f, 3), 0);
    }

    #[test]
    fn bitset_ops_across_word_boundary() {
        let mut s = EdgeSubset::empty(130);
        for i in [0usize, 63, 64, 65, 129] {
            assert!(s.insert(EdgeId::from(i)));
        }
        assert!(!s.insert(EdgeId(64)));
        assert_eq!(s.len(), 5);
        assert_eq!(s.to_vec(), [0, 63, 64, 65, 129].map(EdgeId::from).to_vec());
        assert!(s.remove(EdgeId(63)));
        assert!(!s.contains(EdgeId(63)));
        let full = EdgeSubset::full(130);
        assert!(s.is_subset(&full));
        assert_eq!(full.difference(&s).len(), 126);
        assert_eq!(full.intersection(&s), s);
    }

    mod props {
        use super::super::*;
        use proptest::prelude::*;

        fn graph_and_subset() -> impl Strategy<Value = (Graph, EdgeSubset)> {
            (3usize..12)
                .prop_flat_map(|n| {
                    let pairs: Vec<(usize, usize)> = (0..n)
                        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                        .collect();
                    let k = pairs.len();
                    (
                        Just(n),
                        proptest::sample::subsequence(pairs, 0..=k),
                        proptest::collection::vec(any::<bool>(), k),
                    )
                })
                .prop_map(|(n, edges, mask)| {
                    let g = Graph::new(n, &edges).unwrap();
                    let f = EdgeSubset::from_ids(g.m(), g.edge_ids().filter(|e| mask[e.index()]));
                    (g, f)
                })
        }

        proptest! {
            #[test]
            fn edge_identity_round_trips((g, _f) in graph_and_subset()) {
                for e in g.edge_ids() {
                    let (u, v) = g.endpoints(e);
                    prop_assert_eq!(g.edge_between(u, v), Some(e));
                    prop_assert_eq!(g.edge_between(v, u), Some(e));
                }
            }

            #[test]
            fn handshake((g, f) in graph_and_subset()) {
                let total: usize = (0..g.n()).map(|v| g.degree_in_subset(&f, v)).sum();
                prop_assert_eq!(total, 2 * f.len());
            }

            #[test]
            fn iteration_is_ascending((_g, f) in graph_and_subset()) {
                let ids = f.to_vec();
                prop_assert!(ids.windows(2).all(|w| w[0] < w[1]));
            }
        }
    }
}
