//! Exact minimum 2-edge-connected / 2-connected spanning subgraphs by
//! branch and bound.
//!
//! Each node fixes some edges in and some out. A node is dropped when the
//! edges not yet excluded are already infeasible (both properties are
//! monotone under adding edges), or when the included edges plus half the
//! remaining degree deficit cannot beat the incumbent. Branching picks the
//! most constrained deficient vertex and splits on which of its open edges
//! is the next one taken.

use std::time::{Duration, Instant};

use crate::connectivity::{is_2ecss, is_2vcss};
use crate::graph::{EdgeId, EdgeSubset, Graph};

use super::BoundsError;

/// Default largest vertex count the exact oracles accept.
pub const DEFAULT_EXACT_LIMIT: usize = 14;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExactLimits {
    pub max_n: usize,
    /// Wall-clock cap for one search.
    pub budget: Option<Duration>,
}

impl Default for ExactLimits {
    fn default() -> Self {
        ExactLimits {
            max_n: DEFAULT_EXACT_LIMIT,
            budget: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Connectivity {
    TwoEdge,
    TwoVertex,
}

impl Connectivity {
    fn feasible(self, g: &Graph, f: &EdgeSubset) -> bool {
        match self {
            Connectivity::TwoEdge => is_2ecss(g, f),
            Connectivity::TwoVertex => is_2vcss(g, f),
        }
    }
}

/// Minimum 2-ECSS size and one optimal edge set.
pub fn exact_opt_2ecss(g: &Graph) -> Result<(usize, EdgeSubset), BoundsError> {
    exact_opt(g, Connectivity::TwoEdge, &ExactLimits::default())
}

/// Minimum 2-VCSS size and one optimal edge set.
pub fn exact_opt_2vcss(g: &Graph) -> Result<(usize, EdgeSubset), BoundsError> {
    exact_opt(g, Connectivity::TwoVertex, &ExactLimits::default())
}

pub fn exact_opt(
    g: &Graph,
    kind: Connectivity,
    limits: &ExactLimits,
) -> Result<(usize, EdgeSubset), BoundsError> {
    if g.n() > limits.max_n {
        return Err(BoundsError::TooLarge {
            n: g.n(),
            limit: limits.max_n,
        });
    }
    let all = g.full_subset();
    if !kind.feasible(g, &all) {
        return Err(BoundsError::Infeasible);
    }

    // reverse-delete incumbent
    let mut incumbent = all.clone();
    for e in g.edge_ids() {
        incumbent.remove(e);
        if !kind.feasible(g, &incumbent) {
            incumbent.insert(e);
        }
    }

    let mut search = Search {
        g,
        kind,
        best: incumbent,
        deadline: limits.budget.map(|b| Instant::now() + b),
        nodes: 0,
    };
    if search.best.len() > g.n() {
        let included = g.empty_subset();
        let deg = vec![0; g.n()];
        search.branch(&included, &all, &deg)?;
    }
    Ok((search.best.len(), search.best))
}

struct Search<'g> {
    g: &'g Graph,
    kind: Connectivity,
    best: EdgeSubset,
    deadline: Option<Instant>,
    nodes: u64,
}

impl Search<'_> {
    fn lower_bound(&self, included: &EdgeSubset, deg: &[usize]) -> usize {
        let deficit: usize = deg.iter().map(|&d| 2usize.saturating_sub(d)).sum();
        (included.len() + deficit.div_ceil(2)).max(self.g.n())
    }

    /// `included ⊆ available`; `deg` is the degree vector of `included`.
    fn branch(
        &mut self,
        included: &EdgeSubset,
        available: &EdgeSubset,
        deg: &[usize],
    ) -> Result<(), BoundsError> {
        self.nodes += 1;
        if self.nodes.is_multiple_of(1024) {
            if let Some(d) = self.deadline {
                if Instant::now() > d {
                    return Err(BoundsError::BudgetExceeded);
                }
            }
        }
        if self.best.len() <= self.g.n() {
            return Ok(());
        }
        if self.lower_bound(included, deg) >= self.best.len() {
            return Ok(());
        }
        if !self.kind.feasible(self.g, available) {
            return Ok(());
        }
        if self.kind.feasible(self.g, included) {
            self.best = included.clone();
            return Ok(());
        }

        let g = self.g;
        let open_at = |v: usize| -> Vec<EdgeId> {
            g.neighbors(v)
                .iter()
                .map(|&(_, e)| e)
                .filter(|&e| available.contains(e) && !included.contains(e))
                .collect()
        };

        // most constrained deficient vertex; ties by index
        let pick = (0..g.n())
            .filter(|&v| deg[v] < 2)
            .map(|v| (open_at(v).len(), v))
            .min();

        match pick {
            Some((_, v)) => {
                // branch i: take open edge i, drop open edges before it
                let open = open_at(v);
                let mut avail = available.clone();
                for &e in &open {
                    let mut inc = included.clone();
                    inc.insert(e);
                    let mut d = deg.to_vec();
                    let (a, b) = g.endpoints(e);
                    d[a] += 1;
                    d[b] += 1;
                    self.branch(&inc, &avail, &d)?;
                    avail.remove(e);
                }
            }
            None => {
                // every degree is fine but connectivity is not: split on the
                // first open edge
                let Some(e) = available.difference(included).iter().next() else {
                    return Ok(());
                };
                let mut inc = included.clone();
                inc.insert(e);
                let mut d = deg.to_vec();
                let (a, b) = g.endpoints(e);
                d[a] += 1;
                d[b] += 1;
                self.branch(&inc, available, &d)?;
                let mut avail = available.clone();
                avail.remove(e);
                self.branch(included, &avail, deg)?;
            }
        }
        Ok(())
    }
}
