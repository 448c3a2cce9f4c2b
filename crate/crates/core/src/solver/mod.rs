//! The four-step approximation pipeline and its block-level driver.
//!
//! Step 1 reverse-deletes to an inclusion-minimal 2-connected spanning
//! subgraph. Step 2 runs improvement processes at side vertices of strong
//! short segments ([`improve`]). Step 3 tries single-edge swaps that release
//! at least two solution edges. Step 4 strips edges that are redundant for
//! 2-edge-connectivity, producing `F̄`.

mod audit;
mod driver;
pub mod improve;
mod steps;
mod trace;

use std::collections::HashSet;
use std::time::Duration;

use thiserror::Error;

use crate::graph::{EdgeId, EdgeSubset, VertexId};
use crate::rng::SeededRng;
use crate::segments::SegmentKey;

pub use audit::audit;
pub use driver::{solve_block, solve_general};
pub use improve::{improvement_loop, improvement_process, try_direct_improvement, Improver};
pub use steps::{deletion_operation, final_improvement, minimal_2vcss, remove_redundant};
pub use trace::{format_trace, parse_trace_line, TraceLine, TraceParseError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("graph is not 2-connected")]
    NotTwoConnected,
    #[error("graph has a bridge, so no 2-edge-connected spanning subgraph exists")]
    Infeasible2ECSS,
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph needs at least 3 vertices")]
    TooSmall,
}

/// Order in which reverse-delete scans visit edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DeletionOrder {
    #[default]
    AscendingEdgeId,
    /// A Fisher-Yates permutation of the edge ids drawn from [`SeededRng`].
    SeededShuffle(u64),
}

impl DeletionOrder {
    /// `rank[e]` is the scan position of edge `e`.
    pub fn ranks(self, m: usize) -> Vec<usize> {
        match self {
            DeletionOrder::AscendingEdgeId => (0..m).collect(),
            DeletionOrder::SeededShuffle(seed) => {
                let mut order: Vec<usize> = (0..m).collect();
                SeededRng::new(seed).shuffle(&mut order);
                let mut rank = vec![0; m];
                for (pos, e) in order.into_iter().enumerate() {
                    rank[e] = pos;
                }
                rank
            }
        }
    }
}

/// Which steps after the initial minimal solution run. All on by default.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnabledSteps {
    pub improvements: bool,
    pub final_improvements: bool,
    pub cleanup: bool,
}

impl Default for EnabledSteps {
    fn default() -> Self {
        EnabledSteps {
            improvements: true,
            final_improvements: true,
            cleanup: true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TraceLevel {
    Off,
    #[default]
    Records,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SolverConfig {
    pub deletion_order: DeletionOrder,
    pub steps: EnabledSteps,
    pub trace: TraceLevel,
}

/// Pairs on which an improvement process has been called. Append-only for
/// the whole of step 2, shared by every recursion level.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CallRegistry {
    calls: HashSet<(SegmentKey, VertexId)>,
}

impl CallRegistry {
    pub fn contains(&self, key: &SegmentKey, v: VertexId) -> bool {
        self.calls.contains(&(key.clone(), v))
    }

    /// Returns `false` if the pair was already registered.
    pub fn register(&mut self, key: SegmentKey, v: VertexId) -> bool {
        self.calls.insert((key, v))
    }

    pub fn len(&self) -> usize {
        self.calls.len()
    }

    pub fn is_empty(&self) -> bool {
        self.calls.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ImprovementKind {
    /// Swap of `k` critical edges for `k + 1` solution edges.
    Direct { k: usize },
    /// Accepted improvement reached through recursion; `depth` counts levels
    /// of the call tree, the outermost process being depth 1.
    Recursive { depth: usize },
    /// Step 3 swap of one edge for at least two.
    Final,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImprovementRecord {
    /// Algorithm step that produced the record (2 or 3).
    pub step: u8,
    pub kind: ImprovementKind,
    /// Recursion level of the process that produced the record (0 for step 3).
    pub level: usize,
    pub added: EdgeSubset,
    pub removed: EdgeSubset,
    pub segment: Option<SegmentKey>,
    pub side_vertex: Option<VertexId>,
    pub cost_before: usize,
    pub cost_after: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct StepSizes {
    pub step1: usize,
    pub step2: usize,
    pub step3: usize,
    pub f_bar: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct StepTimings {
    pub step1: Duration,
    pub step2: Duration,
    pub step3: Duration,
    pub step4: Duration,
}

impl StepTimings {
    pub fn total(&self) -> Duration {
        self.step1 + self.step2 + self.step3 + self.step4
    }
}

/// Output of a solve. Equality ignores `timings`.
#[derive(Debug, Clone)]
pub struct SolveResult {
    /// 2-connected spanning subgraph (2-edge-connected only when
    /// `vcss_valid` is false).
    pub f: EdgeSubset,
    /// 2-edge-connected spanning subgraph, `f_bar ⊆ f`.
    pub f_bar: EdgeSubset,
    /// Solution after step 1.
    pub initial: EdgeSubset,
    pub sizes: StepSizes,
    pub timings: StepTimings,
    pub trace: Vec<ImprovementRecord>,
    /// Improvement processes invoked during step 2, recursion included.
    pub process_calls: usize,
    /// Distinct (segment, side vertex) pairs registered during step 2.
    pub registered_pairs: usize,
    pub vcss_valid: bool,
}

impl PartialEq for SolveResult {
    fn eq(&self, other: &Self) -> bool {
        self.f == other.f
            && self.f_bar == other.f_bar
            && self.initial == other.initial
            && self.sizes == other.sizes
            && self.trace == other.trace
            && self.process_calls == other.process_calls
            && self.registered_pairs == other.registered_pairs
            && self.vcss_valid == other.vcss_valid
    }
}

/// Sorts `ids` by scan rank.
pub(crate) fn in_rank_order(ids: impl IntoIterator<Item = EdgeId>, rank: &[usize]) -> Vec<EdgeId> {
    let mut v: Vec<EdgeId> = ids.into_iter().collect();
    v.sort_by_key(|e| rank[e.index()]);
    v
}
