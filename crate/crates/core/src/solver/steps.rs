use crate::connectivity::{is_2ecss, is_2vcss};
use crate::graph::{EdgeSubset, Graph};

use super::{in_rank_order, ImprovementKind, ImprovementRecord, SolveError, SolverConfig};

/// Reverse-delete from `E` in deletion order while the result stays
/// 2-connected.
pub fn minimal_2vcss(g: &Graph, cfg: &SolverConfig) -> Result<EdgeSubset, SolveError> {
    let rank = cfg.deletion_order.ranks(g.m());
    minimal_2vcss_ranked(g, &rank)
}

pub(crate) fn minimal_2vcss_ranked(g: &Graph, rank: &[usize]) -> Result<EdgeSubset, SolveError> {
    let mut f = g.full_subset();
    if !is_2vcss(g, &f) {
        return Err(SolveError::NotTwoConnected);
    }
    for e in in_rank_order(g.edge_ids(), rank) {
        f.remove(e);
        if !is_2vcss(g, &f) {
            f.insert(e);
        }
    }
    Ok(f)
}

/// Greedy feasibility-preserving deletion over `base`: first the edges of
/// `base ∖ h`, then those of `h`, each group in deletion order.
pub fn deletion_operation(
    g: &Graph,
    base: &EdgeSubset,
    h: &EdgeSubset,
    cfg: &SolverConfig,
) -> EdgeSubset {
    let rank = cfg.deletion_order.ranks(g.m());
    deletion_operation_ranked(g, base, h, &rank)
}

pub(crate) fn deletion_operation_ranked(
    g: &Graph,
    base: &EdgeSubset,
    h: &EdgeSubset,
    rank: &[usize],
) -> EdgeSubset {
    debug_assert!(is_2vcss(g, base));
    let mut f = base.clone();
    let kept_back = h.intersection(base);
    let first = in_rank_order(base.difference(&kept_back).iter(), rank);
    let second = in_rank_order(kept_back.iter(), rank);
    for e in first.into_iter().chain(second) {
        f.remove(e);
        if !is_2vcss(g, &f) {
            f.insert(e);
        }
    }
    f
}

/// Step 3: repeatedly try adding one non-solution edge and greedily deleting
/// solution edges; keep the swap when at least two edges went.
pub fn final_improvement(g: &Graph, f: &EdgeSubset, cfg: &SolverConfig) -> EdgeSubset {
    let rank = cfg.deletion_order.ranks(g.m());
    final_improvement_ranked(g, f, &rank).0
}

pub(crate) fn final_improvement_ranked(
    g: &Graph,
    f: &EdgeSubset,
    rank: &[usize],
) -> (EdgeSubset, Vec<ImprovementRecord>) {
    let mut f = f.clone();
    let mut records = Vec::new();
    loop {
        let mut committed = false;
        for e in g.edge_ids() {
            if f.contains(e) {
                continue;
            }
            let mut trial = f.clone();
            trial.insert(e);
            let mut removed = g.empty_subset();
            for d in in_rank_order(f.iter(), rank) {
                trial.remove(d);
                if is_2vcss(g, &trial) {
                    removed.insert(d);
                } else {
                    trial.insert(d);
                }
            }
            if removed.len() >= 2 {
                let mut added = g.empty_subset();
                added.insert(e);
                records.push(ImprovementRecord {
                    step: 3,
                    kind: ImprovementKind::Final,
                    level: 0,
                    added,
                    removed,
                    segment: None,
                    side_vertex: None,
                    cost_before: f.len(),
                    cost_after: trial.len(),
                });
                debug_assert!(is_2vcss(g, &trial));
                f = trial;
                committed = true;
            }
        }
        if !committed {
            return (f, records);
        }
    }
}

/// Step 4: drop every edge whose removal keeps 2-edge-connectivity, scanning
/// in deletion order.
pub fn remove_redundant(g: &Graph, f: &EdgeSubset, cfg: &SolverConfig) -> EdgeSubset {
    let rank = cfg.deletion_order.ranks(g.m());
    remove_redundant_ranked(g, f, &rank)
}

pub(crate) fn remove_redundant_ranked(g: &Graph, f: &EdgeSubset, rank: &[usize]) -> EdgeSubset {
    let mut out = f.clone();
    for e in in_rank_order(f.iter(), rank) {
        out.remove(e);
        if !is_2ecss(g, &out) {
            out.insert(e);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    fn cfg() -> SolverConfig {
        SolverConfig::default()
    }

    #[test]
    fn minimal_examples() {
        let c5 = named::cycle(5);
        assert_eq!(minimal_2vcss(&c5, &cfg()).unwrap().len(), 5);

        let k4 = named::complete(4);
        let f = minimal_2vcss(&k4, &cfg()).unwrap();
        assert_eq!(f.len(), 4);
        assert!(is_2vcss(&k4, &f));

        let theta = named::theta();
        let f = minimal_2vcss(&theta, &cfg()).unwrap();
        assert_eq!(theta.pairs(&f), vec![(0, 1), (1, 3), (0, 2), (2, 3)]);

        assert_eq!(
            minimal_2vcss(&named::bowtie(), &cfg()),
            Err(SolveError::NotTwoConnected)
        );
    }

    #[test]
    fn deletion_operation_keeps_h_last() {
        let k4 = named::complete(4);
        let base = k4
            .subset_from_pairs(&[(0, 1), (1, 2), (2, 3), (0, 3), (0, 2)])
            .unwrap();
        let h = k4.subset_from_pairs(&[(0, 2)]).unwrap();
        let out = deletion_operation(&k4, &base, &h, &cfg());
        assert_eq!(
            out,
            k4.subset_from_pairs(&[(0, 1), (1, 2), (2, 3), (0, 3)])
                .unwrap()
        );

        let c5 = named::cycle(5);
        let all = c5.full_subset();
        assert_eq!(
            deletion_operation(&c5, &all, &c5.empty_subset(), &cfg()),
            all
        );
    }

    #[test]
    fn final_improvement_noop_cases() {
        let c5 = named::cycle(5);
        let all = c5.full_subset();
        assert_eq!(final_improvement(&c5, &all, &cfg()), all);

        // adding either chord to a Hamiltonian 4-cycle of K4 frees nothing
        let k4 = named::complete(4);
        let f = k4
            .subset_from_pairs(&[(0, 1), (1, 2), (2, 3), (0, 3)])
            .unwrap();
        assert_eq!(final_improvement(&k4, &f, &cfg()), f);
    }

    #[test]
    fn redundant_chord_removed() {
        let c5 = named::cycle(5);
        assert_eq!(remove_redundant(&c5, &c5.full_subset(), &cfg()).len(), 5);
        let k4 = named::complete(4);
        let f = k4
            .subset_from_pairs(&[(0, 1), (1, 2), (2, 3), (0, 3), (0, 2)])
            .unwrap();
        let out = remove_redundant(&k4, &f, &cfg());
        assert_eq!(k4.pairs(&out), vec![(0, 1), (0, 3), (1, 2), (2, 3)]);
    }
}
