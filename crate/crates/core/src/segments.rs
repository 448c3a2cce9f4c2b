//! Segments of a solution: maximal paths whose internal vertices have
//! degree two in `(V, F)`, with length classes, strength and side vertices.

use std::fmt;

use thiserror::Error;

use crate::connectivity::is_two_connected_on;
use crate::graph::{EdgeId, EdgeSubset, Graph, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SegmentError {
    #[error("vertex {0} has degree below 2 in the solution")]
    NotSpanning(VertexId),
    #[error("solution contains a cycle component without a high-degree vertex")]
    DetachedCycle,
    #[error("a trivial segment has no side vertices")]
    TrivialSegment,
}

/// Direction-independent identity of a segment: its vertex sequence read
/// from the lexicographically smaller end.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SegmentKey(pub Vec<VertexId>);

impl fmt::Display for SegmentKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("-")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SegmentStrength {
    Weak,
    Strong,
}

/// A maximal plain path `v1 .. vk` with its `k - 1` edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Segment {
    vertices: Vec<VertexId>,
    edges: Vec<EdgeId>,
}

impl Segment {
    /// Builds a segment from a walk, re-oriented into canonical direction.
    pub fn from_walk(mut vertices: Vec<VertexId>, mut edges: Vec<EdgeId>) -> Self {
        assert_eq!(
            vertices.len(),
            edges.len() + 1,
            "a walk has one more vertex than edges"
        );
        let reversed = vertices.iter().rev();
        if reversed.lt(vertices.iter()) {
            vertices.reverse();
            edges.reverse();
        }
        Segment { vertices, edges }
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.len() == 1
    }

    /// Length 2 to 4.
    pub fn is_short(&self) -> bool {
        (2..=4).contains(&self.len())
    }

    pub fn is_long(&self) -> bool {
        self.len() >= 5
    }

    pub fn ends(&self) -> (VertexId, VertexId) {
        (self.vertices[0], *self.vertices.last().unwrap())
    }

    pub fn internal_vertices(&self) -> &[VertexId] {
        &self.vertices[1..self.vertices.len() - 1]
    }

    pub fn key(&self) -> SegmentKey {
        SegmentKey(self.vertices.clone())
    }

    /// The internal vertices next to the ends, ascending and deduplicated.
    pub fn side_vertices(&self) -> Result<Vec<VertexId>, SegmentError> {
        if self.len() < 2 {
            return Err(SegmentError::TrivialSegment);
        }
        let k = self.vertices.len();
        let mut sides = vec![self.vertices[1], self.vertices[k - 2]];
        sides.sort_unstable();
        sides.dedup();
        Ok(sides)
    }
}

/// Canonical identity of a segment.
pub fn canonical_key(s: &Segment) -> SegmentKey {
    s.key()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SegmentDecomposition {
    /// Ordered by smallest edge id.
    pub segments: Vec<Segment>,
    edge_segment: Vec<Option<usize>>,
    pub is_hamiltonian_cycle: bool,
}

impl SegmentDecomposition {
    /// Index into `segments` of the segment holding `e`.
    pub fn segment_of(&self, e: EdgeId) -> Option<usize> {
        self.edge_segment.get(e.index()).copied().flatten()
    }

    pub fn keys(&self) -> impl Iterator<Item = SegmentKey> + '_ {
        self.segments.iter().map(Segment::key)
    }
}

/// Splits `f` into segments.
///
/// Every vertex must have degree at least 2 in `(V, F)`. When no vertex has
/// degree 3 or more, `f` is a Hamiltonian cycle (for connected `f`), the
/// flag is set and no segments are reported.
pub fn decompose(g: &Graph, f: &EdgeSubset) -> Result<SegmentDecomposition, SegmentError> {
    let deg = g.degrees_in_subset(f);
    if let Some(v) = (0..g.n()).find(|&v| deg[v] < 2) {
        return Err(SegmentError::NotSpanning(v));
    }
    let mut edge_segment = vec![None; g.m()];
    if deg.iter().all(|&d| d == 2) {
        return Ok(SegmentDecomposition {
            segments: Vec::new(),
            edge_segment,
            is_hamiltonian_cycle: true,
        });
    }

    // the other solution edge at a degree-2 vertex
    let step = |v: VertexId, came: EdgeId| -> EdgeId {
        g.neighbors(v)
            .iter()
            .map(|&(_, e)| e)
            .find(|&e| e != came && f.contains(e))
            .expect("degree-2 vertex has a second solution edge")
    };

    let mut segments = Vec::new();
    for e in f.iter() {
        if edge_segment[e.index()].is_some() {
            continue;
        }
        let (a, b) = g.endpoints(e);
        let mut forward_v = vec![b];
        let mut forward_e = Vec::new();
        let (mut cur, mut came) = (b, e);
        while deg[cur] == 2 {
            let next = step(cur, came);
            if next == e {
                return Err(SegmentError::DetachedCycle);
            }
            cur = g.other(next, cur);
            came = next;
            forward_v.push(cur);
            forward_e.push(next);
        }
        let mut back_v = vec![a];
        let mut back_e = Vec::new();
        let (mut cur, mut came) = (a, e);
        while deg[cur] == 2 {
            let next = step(cur, came);
            cur = g.other(next, cur);
            came = next;
            back_v.push(cur);
            back_e.push(next);
        }
        back_v.reverse();
        back_e.reverse();
        back_v.extend(forward_v);
        back_e.push(e);
        back_e.extend(forward_e);

        let idx = segments.len();
        for &se in &back_e {
            edge_segment[se.index()] = Some(idx);
        }
        segments.push(Segment::from_walk(back_v, back_e));
    }

    Ok(SegmentDecomposition {
        segments,
        edge_segment,
        is_hamiltonian_cycle: false,
    })
}

/// Strength of `s` on `f`: removing its edges and internal vertices must
/// leave a 2-connected graph on the remaining vertices for it to be strong.
pub fn strength(g: &Graph, f: &EdgeSubset, s: &Segment) -> SegmentStrength {
    let mut active = vec![true; g.n()];
    for &v in s.internal_vertices() {
        active[v] = false;
    }
    let mut rest = f.clone();
    for &e in s.edges() {
        rest.remove(e);
    }
    if is_two_connected_on(g, &rest, Some(&active)) {
        SegmentStrength::Strong
    } else {
        SegmentStrength::Weak
    }
}

pub fn is_weak(g: &Graph, f: &EdgeSubset, s: &Segment) -> bool {
    strength(g, f, s) == SegmentStrength::Weak
}

pub fn is_strong_short(g: &Graph, f: &EdgeSubset, s: &Segment) -> bool {
    s.is_short() && strength(g, f, s) == SegmentStrength::Strong
}
