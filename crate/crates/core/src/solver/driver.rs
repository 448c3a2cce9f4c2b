use std::time::Instant;

use crate::connectivity::{block_decomposition, is_2vcss, ConnectivityError};
use crate::graph::{EdgeId, EdgeSubset, Graph, VertexId};
use crate::segments::SegmentKey;

use super::improve::Improver;
use super::steps::{final_improvement_ranked, minimal_2vcss_ranked, remove_redundant_ranked};
use super::{
    ImprovementRecord, SolveError, SolveResult, SolverConfig, StepSizes, StepTimings, TraceLevel,
};

/// Runs all four steps on a 2-connected graph.
///
/// A Hamiltonian cycle after step 1 is optimal (`|F| = n`), so steps 2 to 4
/// are skipped and `F̄ = F`.
pub fn solve_block(g: &Graph, cfg: &SolverConfig) -> Result<SolveResult, SolveError> {
    if g.n() < 3 {
        return Err(SolveError::NotTwoConnected);
    }
    let rank = cfg.deletion_order.ranks(g.m());
    let mut timings = StepTimings::default();
    let mut trace = Vec::new();

    let t = Instant::now();
    let initial = minimal_2vcss_ranked(g, &rank)?;
    timings.step1 = t.elapsed();

    let mut f = initial.clone();
    let mut sizes = StepSizes {
        step1: f.len(),
        ..StepSizes::default()
    };
    let mut process_calls = 0;
    let mut registered_pairs = 0;
    let hamiltonian = f.len() == g.n();

    if cfg.steps.improvements && !hamiltonian {
        let t = Instant::now();
        let mut improver = Improver::new(g, cfg);
        let (improved, records) = improver.run(&f);
        f = improved;
        trace.extend(records);
        process_calls = improver.calls();
        registered_pairs = improver.registry().len();
        timings.step2 = t.elapsed();
    }
    sizes.step2 = f.len();

    if cfg.steps.final_improvements && !hamiltonian {
        let t = Instant::now();
        let (improved, records) = final_improvement_ranked(g, &f, &rank);
        f = improved;
        trace.extend(records);
        timings.step3 = t.elapsed();
    }
    sizes.step3 = f.len();

    let f_bar = if cfg.steps.cleanup && !hamiltonian {
        let t = Instant::now();
        let out = remove_redundant_ranked(g, &f, &rank);
        timings.step4 = t.elapsed();
        out
    } else {
        f.clone()
    };
    sizes.f_bar = f_bar.len();
    debug_assert!(is_2vcss(g, &f));

    if cfg.trace == TraceLevel::Off {
        trace.clear();
    }
    Ok(SolveResult {
        f,
        f_bar,
        initial,
        sizes,
        timings,
        trace,
        process_calls,
        registered_pairs,
        vcss_valid: true,
    })
}

/// Solves a connected graph block by block and takes the union.
///
/// Any bridge makes the instance infeasible. With more than one block the
/// union `F` is 2-edge-connected but not 2-connected, reported through
/// `vcss_valid = false`.
pub fn solve_general(g: &Graph, cfg: &SolverConfig) -> Result<SolveResult, SolveError> {
    if g.n() < 3 {
        return Err(SolveError::TooSmall);
    }
    let bd = block_decomposition(g).map_err(|e| match e {
        ConnectivityError::Disconnected => SolveError::Disconnected,
        ConnectivityError::TooSmall => SolveError::TooSmall,
    })?;
    if !bd.bridge_edges.is_empty() {
        return Err(SolveError::Infeasible2ECSS);
    }

    let mut total = SolveResult {
        f: g.empty_subset(),
        f_bar: g.empty_subset(),
        initial: g.empty_subset(),
        sizes: StepSizes::default(),
        timings: StepTimings::default(),
        trace: Vec::new(),
        process_calls: 0,
        registered_pairs: 0,
        vcss_valid: bd.blocks.len() == 1,
    };

    for block in &bd.blocks {
        let local_edges: Vec<EdgeId> = block.edges.to_vec();
        let position = |v: VertexId| block.vertices.binary_search(&v).expect("block vertex");
        let pairs: Vec<(VertexId, VertexId)> = local_edges
            .iter()
            .map(|&e| {
                let (u, v) = g.endpoints(e);
                (position(u), position(v))
            })
            .collect();
        let local = Graph::new(block.vertices.len(), &pairs).expect("a block is a simple graph");
        let r = solve_block(&local, cfg)?;

        let lift =
            |s: &EdgeSubset| EdgeSubset::from_ids(g.m(), s.iter().map(|e| local_edges[e.index()]));
        total.f.union_with(&lift(&r.f));
        total.f_bar.union_with(&lift(&r.f_bar));
        total.initial.union_with(&lift(&r.initial));
        total.sizes.step1 += r.sizes.step1;
        total.sizes.step2 += r.sizes.step2;
        total.sizes.step3 += r.sizes.step3;
        total.sizes.f_bar += r.sizes.f_bar;
        total.timings.step1 += r.timings.step1;
        total.timings.step2 += r.timings.step2;
        total.timings.step3 += r.timings.step3;
        total.timings.step4 += r.timings.step4;
        total.process_calls += r.process_calls;
        total.registered_pairs += r.registered_pairs;
        // block vertices are sorted, so relabelling keeps keys canonical
        total.trace.extend(r.trace.iter().map(|rec| {
            ImprovementRecord {
                added: lift(&rec.added),
                removed: lift(&rec.removed),
                segment: rec
                    .segment
                    .as_ref()
                    .map(|k| SegmentKey(k.0.iter().map(|&v| block.vertices[v]).collect())),
                side_vertex: rec.side_vertex.map(|v| block.vertices[v]),
                ..rec.clone()
            }
        }));
    }
    Ok(total)
}
