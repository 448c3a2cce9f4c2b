//! Feasibility oracles and structural queries on subgraphs `(V, F)`.
//!
//! Bridges, cut vertices and blocks come from a single iterative lowpoint
//! traversal. The global minimum cut is Stoer-Wagner over exact rationals.

use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use crate::graph::{EdgeId, EdgeSubset, Graph, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConnectivityError {
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph has fewer than two vertices")]
    TooSmall,
}

/// Blocks of a connected graph. Bridges appear as single-edge blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockDecomposition {
    pub blocks: Vec<Block>,
    pub cut_vertices: Vec<VertexId>,
    pub bridge_edges: EdgeSubset,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    /// Sorted ascending.
    pub vertices: Vec<VertexId>,
    pub edges: EdgeSubset,
}

struct LowLink {
    components: usize,
    active_vertices: usize,
    bridges: EdgeSubset,
    cut: Vec<bool>,
    blocks: Vec<Vec<EdgeId>>,
}

const UNSEEN: usize = usize::MAX;

/// Lowpoint traversal of `(active, F)`. Edges with an inactive endpoint are
/// ignored. Vertices are visited in ascending order, neighbors in adjacency
/// order, so the output is deterministic.
fn lowlink(g: &Graph, f: &EdgeSubset, active: Option<&[bool]>, want_blocks: bool) -> LowLink {
    let n = g.n();
    let is_active = |v: VertexId| active.is_none_or(|a| a[v]);
    let mut disc = vec![UNSEEN; n];
    let mut low = vec![0usize; n];
    let mut cut = vec![false; n];
    let mut bridges = EdgeSubset::empty(g.m());
    let mut blocks = Vec::new();
    let mut edge_stack: Vec<EdgeId> = Vec::new();
    let mut time = 0;
    let mut components = 0;
    let mut active_vertices = 0;

    // (vertex, edge used to enter it, next adjacency position)
    let mut stack: Vec<(VertexId, Option<EdgeId>, usize)> = Vec::new();

    for root in 0..n {
        if !is_active(root) {
            continue;
        }
        active_vertices += 1;
        if disc[root] != UNSEEN {
            continue;
        }
        components += 1;
        disc[root] = time;
        low[root] = time;
        time += 1;
        let mut root_children = 0;
        stack.push((root, None, 0));

        while let Some(frame) = stack.last_mut() {
            let (v, parent_edge, pos) = *frame;
            let adj = g.neighbors(v);
            if pos < adj.len() {
                frame.2 += 1;
                let (w, e) = adj[pos];
                if !f.contains(e) || !is_active(w) || Some(e) == parent_edge {
                    continue;
                }
                if disc[w] == UNSEEN {
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    if want_blocks {
                        edge_stack.push(e);
                    }
                    if v == root {
                        root_children += 1;
                    }
                    stack.push((w, Some(e), 0));
                } else if disc[w] < disc[v] {
                    low[v] = low[v].min(disc[w]);
                    if want_blocks {
                        edge_stack.push(e);
                    }
                }
            } else {
                stack.pop();
                let Some(e) = parent_edge else { continue };
                let u = g.other(e, v);
                low[u] = low[u].min(low[v]);
                if low[v] > disc[u] {
                    bridges.insert(e);
                }
                if low[v] >= disc[u] {
                    if u != root {
                        cut[u] = true;
                    }
                    if want_blocks {
                        let mut block = Vec::new();
                        while let Some(top) = edge_stack.pop() {
                            block.push(top);
                            if top == e {
                                break;
                            }
                        }
                        block.sort_unstable();
                        blocks.push(block);
                    }
                }
            }
        }
        if root_children >= 2 {
            cut[root] = true;
        }
    }

    LowLink {
        components,
        active_vertices,
        bridges,
        cut,
        blocks,
    }
}

/// Edges of `(V, F)` whose removal increases the number of components.
pub fn find_bridges(g: &Graph, f: &EdgeSubset) -> EdgeSubset {
    lowlink(g, f, None, false).bridges
}

/// Articulation points of `(V, F)`, ascending.
pub fn find_cut_vertices(g: &Graph, f: &EdgeSubset) -> Vec<VertexId> {
    let ll = lowlink(g, f, None, false);
    (0..g.n()).filter(|&v| ll.cut[v]).collect()
}

/// Number of connected components of `(V, F)`, isolated vertices included.
pub fn component_count(g: &Graph, f: &EdgeSubset) -> usize {
    lowlink(g, f, None, false).components
}

pub fn is_connected(g: &Graph, f: &EdgeSubset) -> bool {
    component_count(g, f) <= 1
}

/// `(V, F)` is connected, spans every vertex and has no bridge.
pub fn is_2ecss(g: &Graph, f: &EdgeSubset) -> bool {
    if g.n() < 2 {
        return false;
    }
    let ll = lowlink(g, f, None, false);
    ll.components == 1 && ll.bridges.is_empty()
}

/// `(V, F)` has at least three vertices, is connected and has no cut vertex.
pub fn is_2vcss(g: &Graph, f: &EdgeSubset) -> bool {
    is_two_connected_on(g, f, None)
}

/// 2-connectivity of the subgraph induced by `F` on the active vertex set.
/// Fewer than three active vertices never counts as 2-connected.
pub fn is_two_connected_on(g: &Graph, f: &EdgeSubset, active: Option<&[bool]>) -> bool {
    let ll = lowlink(g, f, active, false);
    ll.active_vertices >= 3 && ll.components == 1 && !ll.cut.iter().any(|&c| c)
}

/// Blocks, cut vertices and bridges of a connected graph.
pub fn block_decomposition(g: &Graph) -> Result<BlockDecomposition, ConnectivityError> {
    let all = g.full_subset();
    let ll = lowlink(g, &all, None, true);
    if ll.components > 1 {
        return Err(ConnectivityError::Disconnected);
    }
    let mut blocks: Vec<Block> = ll
        .blocks
        .into_iter()
        .map(|edges| {
            let mut vertices: Vec<VertexId> = edges
                .iter()
                .flat_map(|&e| {
                    let (u, v) = g.endpoints(e);
                    [u, v]
                })
                .collect();
            vertices.sort_unstable();
            vertices.dedup();
            Block {
                vertices,
                edges: EdgeSubset::from_ids(g.m(), edges),
            }
        })
        .collect();
    blocks.sort_by_key(|b| b.edges.iter().next());
    Ok(BlockDecomposition {
        blocks,
        cut_vertices: (0..g.n()).filter(|&v| ll.cut[v]).collect(),
        bridge_edges: ll.bridges,
    })
}

/// A minimum-weight global cut of `g` under nonnegative edge weights.
///
/// Returns the cut value and the side containing vertex 0, sorted. Runs
/// Stoer-Wagner; within a phase the most tightly connected vertex is chosen
/// with ties broken by smallest index, and only a strictly smaller phase cut
/// replaces the incumbent.
pub fn min_global_cut(
    g: &Graph,
    weights: &[BigRational],
) -> Result<(BigRational, Vec<VertexId>), ConnectivityError> {
    let n = g.n();
    if n < 2 {
        return Err(ConnectivityError::TooSmall);
    }
    if !is_connected(g, &g.full_subset()) {
        return Err(ConnectivityError::Disconnected);
    }
    assert_eq!(weights.len(), g.m(), "one weight per edge");

    let mut w = vec![vec![BigRational::zero(); n]; n];
    for e in g.edge_ids() {
        let (u, v) = g.endpoints(e);
        w[u][v] += &weights[e.index()];
        w[v][u] += &weights[e.index()];
    }
    // members[v]: original vertices merged into super-vertex v
    let mut members: Vec<Vec<VertexId>> = (0..n).map(|v| vec![v]).collect();
    let mut alive: Vec<VertexId> = (0..n).collect();
    let mut best: Option<(BigRational, Vec<VertexId>)> = None;

    while alive.len() > 1 {
        let mut in_a = vec![false; n];
        let mut conn = vec![BigRational::zero(); n];
        let mut prev = alive[0];
        let mut last = alive[0];
        in_a[last] = true;
        for &v in &alive {
            conn[v] = w[last][v].clone();
        }
        for _ in 1..alive.len() {
            let mut pick: Option<VertexId> = None;
            for &v in &alive {
                if in_a[v] {
                    continue;
                }
                if pick.is_none_or(|p| conn[v] > conn[p]) {
                    pick = Some(v);
                }
            }
            let next = pick.expect("an unvisited vertex remains");
            prev = last;
            last = next;
            in_a[next] = true;
            for &v in &alive {
                if !in_a[v] {
                    let add = w[next][v].clone();
                    conn[v] += add;
                }
            }
        }
        let phase_value = conn[last].clone();
        if best.as_ref().is_none_or(|(b, _)| phase_value < *b) {
            best = Some((phase_value, members[last].clone()));
        }
        // merge `last` into `prev`
        let moved = std::mem::take(&mut members[last]);
        members[prev].extend(moved);
        for &v in &alive {
            if v != last && v != prev {
                let add = w[last][v].clone();
                w[prev][v] += &add;
                w[v][prev] += add;
            }
        }
        alive.retain(|&v| v != last);
    }

    let (value, side) = best.expect("at least one phase ran");
    let mut in_side = vec![false; n];
    for v in side {
        in_side[v] = true;
    }
    let keep = in_side[0];
    let side: Vec<VertexId> = (0..n).filter(|&v| in_side[v] == keep).collect();
    Ok((value, side))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;
    use num_bigint::BigInt;

    fn path3() -> (Graph, EdgeSubset) {
        let g = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        let f = g.full_subset();
        (g, f)
    }

    fn rat(num: i64, den: i64) -> BigRational {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    #[test]
    fn bridges_examples() {
        let (g, f) = path3();
        assert_eq!(find_bridges(&g, &f), f);
        let c4 = cycle(4);
        assert!(find_bridges(&c4, &c4.full_subset()).is_empty());
        let b = bowtie();
        assert!(find_bridges(&b, &b.full_subset()).is_empty());
        assert!(crate::reference::bridges(&b, &b.full_subset()).is_empty());
    }

    #[test]
    fn cut_vertex_examples() {
        let b = bowtie();
        assert_eq!(find_cut_vertices(&b, &b.full_subset()), vec![0]);
        let c4 = cycle(4);
        assert!(find_cut_vertices(&c4, &c4.full_subset()).is_empty());
        let (g, f) = path3();
        assert_eq!(find_cut_vertices(&g, &f), vec![1]);
    }

    #[test]
    fn block_examples() {
        let bd = block_decomposition(&bowtie()).unwrap();
        assert_eq!(bd.blocks.len(), 2);
        assert_eq!(bd.cut_vertices, vec![0]);
        assert!(bd.blocks.iter().all(|b| b.vertices.len() == 3));

        let c4 = cycle(4);
        let bd = block_decomposition(&c4).unwrap();
        assert_eq!(bd.blocks.len(), 1);
        assert_eq!(bd.blocks[0].edges, c4.full_subset());

        let g = bridged_triangles();
        let bd = block_decomposition(&g).unwrap();
        assert_eq!(bd.blocks.len(), 3);
        assert_eq!(g.pairs(&bd.bridge_edges), vec![(2, 3)]);
        assert_eq!(bd.cut_vertices, vec![2, 3]);

        let disconnected = Graph::new(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(
            block_decomposition(&disconnected),
            Err(ConnectivityError::Disconnected)
        );
    }

    #[test]
    fn feasibility_examples() {
        let c5 = cycle(5);
        let all = c5.full_subset();
        assert!(is_2ecss(&c5, &all));
        let mut less = all.clone();
        less.remove(EdgeId(0));
        assert!(!is_2ecss(&c5, &less));

        let b = bowtie();
        assert!(is_2ecss(&b, &b.full_subset()));
        assert!(!is_2vcss(&b, &b.full_subset()));

        let c4 = cycle(4);
        assert!(is_2vcss(&c4, &c4.full_subset()));
        let (g, f) = path3();
        assert!(!is_2vcss(&g, &f));

        let edge = Graph::new(2, &[(0, 1)]).unwrap();
        assert!(!is_2vcss(&edge, &edge.full_subset()));
    }

    #[test]
    fn two_connected_on_vertex_subset() {
        // C6 plus chord (0,3); drop internal vertices 1 and 2
        let g = Graph::new(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 3)]).unwrap();
        let mut f = g.full_subset();
        for e in [EdgeId(0), EdgeId(1), EdgeId(2)] {
            f.remove(e);
        }
        let active = [true, false, false, true, true, true];
        assert!(is_two_connected_on(&g, &f, Some(&active)));
        let tiny = [true, false, false, true, false, false];
        assert!(!is_two_connected_on(&g, &f, Some(&tiny)));
    }

    #[test]
    fn min_cut_examples() {
        let c4 = cycle(4);
        let (v, side) = min_global_cut(&c4, &vec![rat(1, 1); 4]).unwrap();
        assert_eq!(v, rat(2, 1));
        assert!(side.contains(&0) && side.len() < 4);

        let k4 = complete(4);
        let (v, _) = min_global_cut(&k4, &vec![rat(2, 3); 6]).unwrap();
        assert_eq!(v, rat(2, 1));

        // light edges (2,3) and (3,0): cutting both isolates vertex 3
        let weights = vec![rat(1, 1), rat(1, 1), rat(1, 2), rat(1, 2)];
        let (v, side) = min_global_cut(&c4, &weights).unwrap();
        assert_eq!(v, rat(1, 1));
        assert_eq!(side, vec![0, 1, 2]);

        let disconnected = Graph::new(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(
            min_global_cut(&disconnected, &[rat(1, 1), rat(1, 1)]),
            Err(ConnectivityError::Disconnected)
        );
    }
}
