//! Step 2: improvement processes.
//!
//! A process on a strong short segment `S` and a side vertex `u` first looks
//! for an improvement operation: add `k ∈ {1, 2}` critical edges from
//! `N(u)` (non-solution edges at `u`) and drop `k + 1` solution edges while
//! staying 2-connected. Failing that, for each critical edge set `H` it
//! recurses into the strong short segments of `F ∪ H` that are not segments
//! of `F`. When a recursive call improves, the caller reverse-deletes the
//! result, scanning edges of its own `F` before the newly added ones, and
//! keeps it only if it is strictly cheaper than `F`; otherwise `F` is
//! restored.

use std::collections::HashSet;

use crate::connectivity::is_2vcss;
use crate::graph::{EdgeId, EdgeSubset, Graph, VertexId};
use crate::segments::{decompose, strength, Segment, SegmentKey, SegmentStrength};

use super::steps::deletion_operation_ranked;
use super::{CallRegistry, ImprovementKind, ImprovementRecord, SolverConfig};

/// Lexicographic `k`-combinations of `items`, stopping at the first one
/// `accept` returns `true` for. `prune(prefix)` may cut a subtree when no
/// extension of the prefix can be accepted.
fn first_combination(
    items: &[EdgeId],
    k: usize,
    prune: &mut dyn FnMut(&[EdgeId]) -> bool,
    accept: &mut dyn FnMut(&[EdgeId]) -> bool,
) -> Option<Vec<EdgeId>> {
    fn rec(
        items: &[EdgeId],
        start: usize,
        k: usize,
        chosen: &mut Vec<EdgeId>,
        prune: &mut dyn FnMut(&[EdgeId]) -> bool,
        accept: &mut dyn FnMut(&[EdgeId]) -> bool,
    ) -> bool {
        if chosen.len() == k {
            return accept(chosen);
        }
        let need = k - chosen.len();
        for i in start..=items.len().saturating_sub(need) {
            if i >= items.len() {
                break;
            }
            chosen.push(items[i]);
            if !prune(chosen) && rec(items, i + 1, k, chosen, prune, accept) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    let mut chosen = Vec::with_capacity(k);
    rec(items, 0, k, &mut chosen, prune, accept).then_some(chosen)
}

/// Critical edge sets at `u`: all 1-subsets then all 2-subsets of `N(u)`,
/// each in ascending lexicographic edge-id order.
fn critical_sets(g: &Graph, f: &EdgeSubset, u: VertexId) -> Vec<Vec<EdgeId>> {
    let nu = g.nonsolution_incident_edges(f, u).to_vec();
    let mut out: Vec<Vec<EdgeId>> = nu.iter().map(|&e| vec![e]).collect();
    for (i, &a) in nu.iter().enumerate() {
        for &b in &nu[i + 1..] {
            out.push(vec![a, b]);
        }
    }
    out
}

/// Searches for an improvement operation at side vertex `u`.
///
/// Tries `k = 1` before `k = 2`; within a size, critical sets `H` and then
/// removal sets `D ⊆ F` (`|D| = k + 1`) in ascending lexicographic order.
/// Removal prefixes leaving some vertex with fewer than two edges in
/// `F ∪ H ∖ D` are skipped, which never skips a feasible `D`.
pub fn try_direct_improvement(
    g: &Graph,
    f: &EdgeSubset,
    s: &Segment,
    u: VertexId,
) -> Option<(EdgeSubset, EdgeSubset)> {
    debug_assert!(s.side_vertices().is_ok_and(|sv| sv.contains(&u)));
    let nu = g.nonsolution_incident_edges(f, u).to_vec();
    if nu.is_empty() {
        return None;
    }
    let solution = f.to_vec();
    let base_deg = g.degrees_in_subset(f);
    for k in 1..=2 {
        let mut found: Option<(Vec<EdgeId>, Vec<EdgeId>)> = None;
        first_combination(&nu, k, &mut |_| false, &mut |h| {
            let mut fh = f.clone();
            let mut deg = base_deg.clone();
            for &e in h {
                fh.insert(e);
                let (a, b) = g.endpoints(e);
                deg[a] += 1;
                deg[b] += 1;
            }
            let mut prune = |d: &[EdgeId]| {
                let mut dd = deg.clone();
                d.iter().any(|&e| {
                    let (a, b) = g.endpoints(e);
                    dd[a] -= 1;
                    dd[b] -= 1;
                    dd[a] < 2 || dd[b] < 2
                })
            };
            let mut accept = |d: &[EdgeId]| {
                let mut trial = fh.clone();
                for &e in d {
                    trial.remove(e);
                }
                is_2vcss(g, &trial)
            };
            match first_combination(&solution, k + 1, &mut prune, &mut accept) {
                Some(d) => {
                    found = Some((h.to_vec(), d));
                    true
                }
                None => false,
            }
        });
        if let Some((h, d)) = found {
            return Some((
                EdgeSubset::from_ids(g.m(), h),
                EdgeSubset::from_ids(g.m(), d),
            ));
        }
    }
    None
}

/// Improved solution from a process together with the records that led to it.
#[derive(Debug, Clone)]
struct Outcome {
    f: EdgeSubset,
    records: Vec<ImprovementRecord>,
    depth: usize,
}

/// State shared by every improvement process of one step-2 run.
#[derive(Debug)]
pub struct Improver<'g> {
    g: &'g Graph,
    rank: Vec<usize>,
    registry: CallRegistry,
    calls: usize,
    pairs_seen: HashSet<(SegmentKey, VertexId)>,
}

impl<'g> Improver<'g> {
    pub fn new(g: &'g Graph, cfg: &SolverConfig) -> Self {
        Improver {
            g,
            rank: cfg.deletion_order.ranks(g.m()),
            registry: CallRegistry::default(),
            calls: 0,
            pairs_seen: HashSet::new(),
        }
    }

    pub fn registry(&self) -> &CallRegistry {
        &self.registry
    }

    /// Number of improvement processes run so far.
    pub fn calls(&self) -> usize {
        self.calls
    }

    /// Distinct (strong short segment, side vertex) pairs encountered as
    /// candidates, registered or not.
    pub fn pairs_seen(&self) -> usize {
        self.pairs_seen.len()
    }

    fn note_pairs(&mut self, s: &Segment) {
        if let Ok(sides) = s.side_vertices() {
            for v in sides {
                self.pairs_seen.insert((s.key(), v));
            }
        }
    }

    /// Runs one improvement process. Returns the improved solution, or
    /// `None` when `f` is left as it was.
    pub fn process(
        &mut self,
        f: &EdgeSubset,
        s: &Segment,
        u: VertexId,
    ) -> Option<(EdgeSubset, Vec<ImprovementRecord>)> {
        self.process_at(f, s, u, 1).map(|o| (o.f, o.records))
    }

    fn process_at(
        &mut self,
        f: &EdgeSubset,
        s: &Segment,
        u: VertexId,
        level: usize,
    ) -> Option<Outcome> {
        let g = self.g;
        let key = s.key();
        let fresh = self.registry.register(key.clone(), u);
        debug_assert!(fresh, "process called twice on {key} at {u}");
        self.calls += 1;

        if let Some((h, d)) = try_direct_improvement(g, f, s, u) {
            let improved = f.union(&h).difference(&d);
            debug_assert!(is_2vcss(g, &improved));
            let record = ImprovementRecord {
                step: 2,
                kind: ImprovementKind::Direct { k: h.len() },
                level,
                added: h,
                removed: d,
                segment: Some(key),
                side_vertex: Some(u),
                cost_before: f.len(),
                cost_after: improved.len(),
            };
            return Some(Outcome {
                f: improved,
                records: vec![record],
                depth: level,
            });
        }

        let existing: HashSet<SegmentKey> = decompose(g, f)
            .expect("a 2-connected solution decomposes")
            .keys()
            .collect();

        for h in critical_sets(g, f, u) {
            let mut fh = f.clone();
            for &e in &h {
                fh.insert(e);
            }
            let dec = decompose(g, &fh).expect("a superset of a 2-connected solution decomposes");
            for t in dec.segments.iter().filter(|t| t.is_short()) {
                let t_key = t.key();
                if existing.contains(&t_key) {
                    continue;
                }
                let sides = t
                    .side_vertices()
                    .expect("short segments have side vertices");
                if sides.iter().all(|&v| self.registry.contains(&t_key, v)) {
                    continue;
                }
                if strength(g, &fh, t) != SegmentStrength::Strong {
                    continue;
                }
                self.note_pairs(t);
                for v in sides {
                    if self.registry.contains(&t_key, v) {
                        continue;
                    }
                    let Some(inner) = self.process_at(&fh, t, v, level + 1) else {
                        continue;
                    };
                    let newer = inner.f.difference(f);
                    let reduced = deletion_operation_ranked(g, &inner.f, &newer, &self.rank);
                    if reduced.len() >= f.len() {
                        return None;
                    }
                    debug_assert!(is_2vcss(g, &reduced));
                    let mut records = inner.records;
                    records.push(ImprovementRecord {
                        step: 2,
                        kind: ImprovementKind::Recursive { depth: inner.depth },
                        level,
                        added: reduced.difference(f),
                        removed: f.difference(&reduced),
                        segment: Some(key),
                        side_vertex: Some(u),
                        cost_before: f.len(),
                        cost_after: reduced.len(),
                    });
                    return Some(Outcome {
                        f: reduced,
                        records,
                        depth: inner.depth,
                    });
                }
            }
        }
        None
    }

    /// The first strong short segment of `f` with an unregistered side
    /// vertex, in segment order then ascending vertex.
    fn next_candidate(&mut self, f: &EdgeSubset) -> Option<(Segment, VertexId)> {
        let dec = decompose(self.g, f).expect("a 2-connected solution decomposes");
        if dec.is_hamiltonian_cycle {
            return None;
        }
        for s in dec.segments.into_iter().filter(Segment::is_short) {
            let key = s.key();
            let sides = s
                .side_vertices()
                .expect("short segments have side vertices");
            let Some(&u) = sides.iter().find(|&&v| !self.registry.contains(&key, v)) else {
                continue;
            };
            if strength(self.g, f, &s) == SegmentStrength::Strong {
                self.note_pairs(&s);
                return Some((s, u));
            }
        }
        None
    }

    /// Runs processes until every strong short segment / side vertex pair of
    /// the current solution has been tried.
    pub fn run(&mut self, f: &EdgeSubset) -> (EdgeSubset, Vec<ImprovementRecord>) {
        let mut f = f.clone();
        let mut trace = Vec::new();
        while let Some((s, u)) = self.next_candidate(&f) {
            if let Some((improved, records)) = self.process(&f, &s, u) {
                debug_assert!(improved.len() < f.len());
                debug_assert!(is_2vcss(self.g, &improved));
                f = improved;
                trace.extend(records);
            }
        }
        (f, trace)
    }
}

/// One improvement process on `(s, u)` with an explicit registry. Returns
/// the resulting solution and whether it improved.
pub fn improvement_process(
    g: &Graph,
    f: &EdgeSubset,
    s: &Segment,
    u: VertexId,
    registry: &mut CallRegistry,
    cfg: &SolverConfig,
) -> (EdgeSubset, bool) {
    let mut imp = Improver::new(g, cfg);
    imp.registry = std::mem::take(registry);
    let out = imp.process(f, s, u);
    *registry = std::mem::take(&mut imp.registry);
    match out {
        Some((improved, _)) => (improved, true),
        None => (f.clone(), false),
    }
}

/// Step 2 on its own.
pub fn improvement_loop(g: &Graph, f: &EdgeSubset, cfg: &SolverConfig) -> EdgeSubset {
    Improver::new(g, cfg).run(f).0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    #[test]
    fn combinations_are_lexicographic() {
        let items: Vec<EdgeId> = (0..4).map(EdgeId::from).collect();
        let mut seen = Vec::new();
        first_combination(&items, 2, &mut |_| false, &mut |c| {
            seen.push(c.iter().map(|e| e.0).collect::<Vec<_>>());
            false
        });
        assert_eq!(
            seen,
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
    }

    #[test]
    fn pruning_skips_subtrees() {
        let items: Vec<EdgeId> = (0..4).map(EdgeId::from).collect();
        let mut seen = Vec::new();
        first_combination(&items, 2, &mut |p| p[0] == EdgeId(0), &mut |c| {
            seen.push(c[0].0 * 10 + c[1].0);
            false
        });
        assert_eq!(seen, vec![12, 13, 23]);
    }

    #[test]
    fn empty_neighbourhood_gives_nothing() {
        // theta solution: 4-cycle plus chord removed; side vertex 1 only
        // touches solution edges
        let g = named::theta();
        let f = g.full_subset();
        let dec = decompose(&g, &f).unwrap();
        let s = dec
            .segments
            .iter()
            .find(|s| s.key().0 == vec![0, 1, 3])
            .unwrap();
        assert!(g.nonsolution_incident_edges(&f, 1).is_empty());
        assert_eq!(try_direct_improvement(&g, &f, s, 1), None);
        let mut reg = CallRegistry::default();
        let (out, improved) = improvement_process(&g, &f, s, 1, &mut reg, &SolverConfig::default());
        assert!(!improved);
        assert_eq!(out, f);
        assert!(reg.contains(&s.key(), 1));
    }

    #[test]
    fn hamiltonian_cycle_loop_is_noop() {
        let g = named::complete(5);
        let f = g
            .subset_from_pairs(&[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)])
            .unwrap();
        let mut imp = Improver::new(&g, &SolverConfig::default());
        let (out, trace) = imp.run(&f);
        assert_eq!(out, f);
        assert!(trace.is_empty());
        assert_eq!(imp.calls(), 0);
    }
}
