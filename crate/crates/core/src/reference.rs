//! Brute-force reference oracles.
//!
//! Everything here is deliberately naive: deletion tests over union-find,
//! enumeration over all vertex sides or all edge subsets. None of it shares
//! code with the lowpoint traversal, Stoer-Wagner or the branch-and-bound
//! search it is used to cross-check. Only practical for small graphs.

use num_rational::BigRational;

use crate::graph::{EdgeId, EdgeSubset, Graph, VertexId};

/// Number of components of `(V ∖ {removed}, F)`, isolated vertices included.
pub fn components(g: &Graph, f: &EdgeSubset, removed: Option<VertexId>) -> usize {
    let n = g.n();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for e in f.iter() {
        let (u, v) = g.endpoints(e);
        if Some(u) == removed || Some(v) == removed {
            continue;
        }
        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
        if a != b {
            parent[a] = b;
        }
    }
    (0..n)
        .filter(|&v| Some(v) != removed)
        .filter(|&v| find(&mut parent, v) == v)
        .count()
}

/// Edges whose deletion increases the component count.
pub fn bridges(g: &Graph, f: &EdgeSubset) -> EdgeSubset {
    let base = components(g, f, None);
    let mut out = EdgeSubset::empty(g.m());
    for e in f.iter() {
        let mut less = f.clone();
        less.remove(e);
        if components(g, &less, None) > base {
            out.insert(e);
        }
    }
    out
}

/// Vertices whose deletion splits their own component, ascending.
pub fn cut_vertices(g: &Graph, f: &EdgeSubset) -> Vec<VertexId> {
    let base = components(g, f, None);
    (0..g.n())
        .filter(|&v| {
            // an isolated vertex takes its singleton component with it
            let expected = if g.degree_in_subset(f, v) == 0 {
                base - 1
            } else {
                base
            };
            components(g, f, Some(v)) > expected
        })
        .collect()
}

pub fn is_2ecss(g: &Graph, f: &EdgeSubset) -> bool {
    g.n() >= 2 && components(g, f, None) == 1 && bridges(g, f).is_empty()
}

pub fn is_2vcss(g: &Graph, f: &EdgeSubset) -> bool {
    g.n() >= 3 && components(g, f, None) == 1 && (0..g.n()).all(|v| components(g, f, Some(v)) == 1)
}

/// Minimum cut value over all `2^(n-1) - 1` sides containing vertex 0.
pub fn min_cut_value(g: &Graph, weights: &[BigRational]) -> BigRational {
    let n = g.n();
    assert!((2..=20).contains(&n), "brute-force cut needs 2 <= n <= 20");
    let full: u32 = (1 << n) - 1;
    let mut best: Option<BigRational> = None;
    // masks over vertices 1..n; vertex 0 always on the side
    for rest in 0..(1u32 << (n - 1)) {
        let side = 1 | (rest << 1);
        if side == full {
            continue;
        }
        let mut value = BigRational::from_integer(0.into());
        for e in g.edge_ids() {
            let (u, v) = g.endpoints(e);
            if (side >> u & 1) != (side >> v & 1) {
                value += &weights[e.index()];
            }
        }
        if best.as_ref().is_none_or(|b| value < *b) {
            best = Some(value);
        }
    }
    best.expect("n >= 2 gives a proper side")
}

/// Advances `idx` to the next `idx.len()`-combination of `0..m` in
/// lexicographic order. Returns `false` after the last one.
fn next_combination(idx: &mut [usize], m: usize) -> bool {
    let k = idx.len();
    for i in (0..k).rev() {
        if idx[i] < m - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Smallest feasible subset by size, then lexicographically by edge ids,
/// found by enumerating all subsets of each size in order.
pub fn min_feasible_subset(
    g: &Graph,
    feasible: impl Fn(&Graph, &EdgeSubset) -> bool,
) -> Option<EdgeSubset> {
    let m = g.m();
    for size in 0..=m {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            let s = EdgeSubset::from_ids(m, idx.iter().map(|&i| EdgeId::from(i)));
            if feasible(g, &s) {
                return Some(s);
            }
            if !next_combination(&mut idx, m) {
                break;
            }
        }
    }
    None
}
