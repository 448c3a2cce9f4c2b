//! Fixed inputs shared by the benchmarks.

use ecss_core::{CorpusSpec, Family, Graph};

/// Seeded cycle-plus-chords graphs with exactly `n` vertices.
pub fn cycle_chords(n: usize, count: usize) -> Vec<Graph> {
    corpus(Family::CycleChords, n, count)
}

/// Seeded ear-built graphs with exactly `n` vertices.
pub fn ears(n: usize, count: usize) -> Vec<Graph> {
    corpus(Family::Ear, n, count)
}

fn corpus(family: Family, n: usize, count: usize) -> Vec<Graph> {
    CorpusSpec {
        family,
        n_min: n,
        n_max: n,
        seed: 2024,
        count,
    }
    .generate()
    .expect("bench corpus")
    .into_iter()
    .map(|e| e.graph)
    .collect()
}
