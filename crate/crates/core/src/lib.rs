//! Approximation of minimum 2-edge-connected and 2-connected spanning
//! subgraphs by local improvement over segments, together with the exact
//! oracles and cut-LP lower bounds used to check its 9/7 guarantee.
//!
//! The pipeline on a 2-connected graph is:
//!
//! 1. reverse-delete to an inclusion-minimal 2-connected spanning subgraph,
//! 2. improvement processes at side vertices of strong short segments,
//!    recursing into segments that appear when non-solution edges are added,
//! 3. single-edge swaps that release at least two solution edges,
//! 4. removal of edges redundant for 2-edge-connectivity.
//!
//! General connected graphs are split into blocks first; see
//! [`solver::solve_general`].

pub mod bounds;
pub mod connectivity;
pub mod graph;
pub mod instances;
pub mod reference;
pub mod rng;
pub mod segments;
pub mod solver;

pub use bounds::{
    bound_report, degree_lower_bound, exact_opt_2ecss, exact_opt_2vcss, lp_cut_bound, BoundReport,
    BoundsError, CutConstraint, LpState,
};
pub use connectivity::{
    block_decomposition, find_bridges, find_cut_vertices, is_2ecss, is_2vcss, min_global_cut,
    BlockDecomposition, ConnectivityError,
};
pub use graph::{EdgeId, EdgeSubset, Graph, GraphError, VertexId};
pub use instances::{
    enumerate_2connected, gen_cycle_plus_chords, gen_ear_graph, parse_instance, serialize_instance,
    CorpusSpec, Family, InstanceError,
};
pub use segments::{decompose, Segment, SegmentDecomposition, SegmentKey, SegmentStrength};
pub use solver::{solve_block, solve_general, SolveError, SolveResult, SolverConfig};
