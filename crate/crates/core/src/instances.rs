//! Instance files, generators and seeded corpora.
//!
//! File grammar, one item per line:
//!
//! ```text
//! c <free text>        comment, anywhere
//! p ec2 <n> <m>        header, before any edge
//! e <u> <v>            edge with 0-based endpoints, exactly m of them
//! ```
//!
//! Edge ids follow file order. The canonical form has no comments and lists
//! each edge once as `u < v`, sorted.
//!
//! Generators draw from [`SeededRng`]:
//!
//! * `cycle-chords`: the cycle `0-1-...-(n-1)-0`, then the non-cycle pairs in
//!   lexicographic order are shuffled and the first `c` kept. Edges are the
//!   cycle edges followed by the chosen chords in sorted order.
//! * `ear`: a base cycle of length `range_inclusive(3, min(n, 5))`, then
//!   ears until `n` vertices: endpoints `a = below(k)`, `b = below(k - 1)`
//!   (shifted past `a`), inner length `range_inclusive(0, min(n - k, 3))`.
//!   A zero-length ear between adjacent vertices is skipped.

use std::fmt::Write as _;

use thiserror::Error;

use crate::connectivity::is_2vcss;
use crate::graph::{ordered_pair, Graph, GraphError, VertexId};
use crate::rng::SeededRng;

/// Largest `n` accepted by [`enumerate_2connected`].
pub const MAX_ENUMERATION_N: usize = 7;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InstanceError {
    #[error("line {line}: {reason}")]
    Syntax { line: usize, reason: String },
    #[error("line {line}: self-loop at vertex {vertex}")]
    SelfLoop { line: usize, vertex: VertexId },
    #[error("line {line}: duplicate edge {u}-{v}")]
    DuplicateEdge {
        line: usize,
        u: VertexId,
        v: VertexId,
    },
    #[error("header declares {expected} edges, found {found}")]
    CountMismatch { expected: usize, found: usize },
    #[error("n={n} is outside the supported range {min}..={max}")]
    TooLarge { n: usize, min: usize, max: usize },
    #[error("{c} chords requested, at most {max} fit")]
    TooManyChords { c: usize, max: usize },
    #[error("generator needs n >= 3, got {0}")]
    TooSmall(usize),
    #[error("family {0} has no generator")]
    UnavailableFamily(&'static str),
}

pub fn parse_instance(text: &str) -> Result<Graph, InstanceError> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges: Vec<(VertexId, VertexId)> = Vec::new();
    let mut edge_lines: Vec<usize> = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let syntax = |reason: &str| InstanceError::Syntax {
            line,
            reason: reason.to_string(),
        };
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed == "c" || trimmed.starts_with("c ") {
            continue;
        }
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        match tokens[0] {
            "p" => {
                if header.is_some() {
                    return Err(syntax("second header"));
                }
                if tokens.len() != 4 || tokens[1] != "ec2" {
                    return Err(syntax("expected `p ec2 <n> <m>`"));
                }
                let n = tokens[2].parse().map_err(|_| syntax("bad vertex count"))?;
                let m = tokens[3].parse().map_err(|_| syntax("bad edge count"))?;
                header = Some((n, m));
            }
            "e" => {
                let Some((n, _)) = header else {
                    return Err(syntax("edge before header"));
                };
                if tokens.len() != 3 {
                    return Err(syntax("expected `e <u> <v>`"));
                }
                let u: VertexId = tokens[1].parse().map_err(|_| syntax("bad endpoint"))?;
                let v: VertexId = tokens[2].parse().map_err(|_| syntax("bad endpoint"))?;
                if u >= n || v >= n {
                    return Err(syntax("endpoint out of range"));
                }
                edges.push((u, v));
                edge_lines.push(line);
            }
            _ => return Err(syntax("unknown line type")),
        }
    }

    let Some((n, m)) = header else {
        return Err(InstanceError::Syntax {
            line: text.lines().count().max(1),
            reason: "missing header".into(),
        });
    };
    // self-loops and duplicates are reported before the count check so that
    // the line number points at the offending edge
    Graph::new(n, &edges)
        .map_err(|e| match e {
            GraphError::SelfLoop(v) => {
                let k = edges.iter().position(|&(a, b)| a == v && b == v).unwrap();
                InstanceError::SelfLoop {
                    line: edge_lines[k],
                    vertex: v,
                }
            }
            GraphError::DuplicateEdge(u, v) => {
                let k = edges
                    .iter()
                    .rposition(|&p| ordered_pair(p) == ordered_pair((u, v)));
                InstanceError::DuplicateEdge {
                    line: edge_lines[k.unwrap()],
                    u,
                    v,
                }
            }
            GraphError::VertexOutOfRange { .. } => unreachable!("checked per line"),
        })
        .and_then(|g| {
            if g.m() == m {
                Ok(g)
            } else {
                Err(InstanceError::CountMismatch {
                    expected: m,
                    found: g.m(),
                })
            }
        })
}

/// Canonical text for `pairs` on `n` vertices.
pub fn serialize_edges(n: usize, pairs: &[(VertexId, VertexId)]) -> String {
    let mut sorted: Vec<_> = pairs.iter().map(|&p| ordered_pair(p)).collect();
    sorted.sort_unstable();
    let mut out = format!("p ec2 {n} {}\n", sorted.len());
    for (u, v) in sorted {
        writeln!(out, "e {u} {v}").unwrap();
    }
    out
}

pub fn serialize_instance(g: &Graph) -> String {
    serialize_edges(g.n(), g.edges())
}

fn lex_pairs(n: usize) -> Vec<(VertexId, VertexId)> {
    (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect()
}

/// Every 2-connected labeled graph on `n` vertices, once each.
///
/// With the pairs `(0,1), (0,2), ..., (n-2,n-1)` numbered in that order, a
/// graph is the bitmask of its pairs; graphs come in ascending mask order and
/// edges are listed in pair order.
pub fn enumerate_2connected(n: usize) -> Result<impl Iterator<Item = Graph>, InstanceError> {
    if !(3..=MAX_ENUMERATION_N).contains(&n) {
        return Err(InstanceError::TooLarge {
            n,
            min: 3,
            max: MAX_ENUMERATION_N,
        });
    }
    let pairs = lex_pairs(n);
    let total: u64 = 1 << pairs.len();
    Ok((0..total).filter_map(move |mask| {
        if (mask.count_ones() as usize) < n {
            return None;
        }
        let mut deg = [0u8; MAX_ENUMERATION_N];
        let chosen: Vec<_> = pairs
            .iter()
            .enumerate()
            .filter(|&(i, _)| mask >> i & 1 == 1)
            .map(|(_, &p)| p)
            .collect();
        for &(u, v) in &chosen {
            deg[u] += 1;
            deg[v] += 1;
        }
        if deg[..n].iter().any(|&d| d < 2) {
            return None;
        }
        let g = Graph::new(n, &chosen).expect("distinct pairs");
        is_2vcss(&g, &g.full_subset()).then_some(g)
    }))
}

/// Largest chord count for [`gen_cycle_plus_chords`].
pub fn max_chords(n: usize) -> usize {
    n * (n.saturating_sub(3)) / 2
}

pub fn gen_cycle_plus_chords(n: usize, c: usize, seed: u64) -> Result<Graph, InstanceError> {
    if n < 3 {
        return Err(InstanceError::TooSmall(n));
    }
    if c > max_chords(n) {
        return Err(InstanceError::TooManyChords {
            c,
            max: max_chords(n),
        });
    }
    let mut edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    let mut chords: Vec<_> = lex_pairs(n)
        .into_iter()
        .filter(|&(u, v)| v != u + 1 && !(u == 0 && v == n - 1))
        .collect();
    SeededRng::new(seed).shuffle(&mut chords);
    chords.truncate(c);
    chords.sort_unstable();
    edges.extend(chords);
    Ok(Graph::new(n, &edges).expect("cycle plus distinct chords is simple"))
}

pub fn gen_ear_graph(n_target: usize, seed: u64) -> Result<Graph, InstanceError> {
    if n_target < 3 {
        return Err(InstanceError::TooSmall(n_target));
    }
    let mut rng = SeededRng::new(seed);
    let base = rng.range_inclusive(3, n_target.min(5) as u64) as usize;
    let mut edges: Vec<_> = (0..base).map(|i| (i, (i + 1) % base)).collect();
    let mut k = base;
    while k < n_target {
        let a = rng.below(k as u64) as usize;
        let mut b = rng.below(k as u64 - 1) as usize;
        if b >= a {
            b += 1;
        }
        let inner = rng.range_inclusive(0, (n_target - k).min(3) as u64) as usize;
        if inner == 0 {
            let p = ordered_pair((a, b));
            if !edges.iter().any(|&e| ordered_pair(e) == p) {
                edges.push((a, b));
            }
            continue;
        }
        let mut prev = a;
        for fresh in k..k + inner {
            edges.push((prev, fresh));
            prev = fresh;
        }
        edges.push((prev, b));
        k += inner;
    }
    Ok(Graph::new(n_target, &edges).expect("ears keep the graph simple"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// Seeded cycle plus `c ∈ [1, n]` chords.
    CycleChords,
    Ear,
    /// Slot for a known tight family; no generator is available.
    Tight,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::CycleChords => "cycle-chords",
            Family::Ear => "ear",
            Family::Tight => "tight",
        }
    }

    pub fn from_name(s: &str) -> Option<Family> {
        [Family::CycleChords, Family::Ear, Family::Tight]
            .into_iter()
            .find(|f| f.name() == s)
    }
}

/// `count` instances of one family with `n` drawn from `n_min..=n_max`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CorpusSpec {
    pub family: Family,
    pub n_min: usize,
    pub n_max: usize,
    pub seed: u64,
    pub count: usize,
}

#[derive(Debug, Clone)]
pub struct CorpusEntry {
    /// `<family>/<seed>-<index>.ec2`
    pub path: String,
    pub graph: Graph,
}

impl CorpusSpec {
    /// Instances in index order. A master generator seeded with `seed` draws,
    /// per instance, `n`, then (cycle-chords only) `c`, then the instance
    /// seed.
    pub fn generate(&self) -> Result<Vec<CorpusEntry>, InstanceError> {
        if self.family == Family::Tight {
            return Err(InstanceError::UnavailableFamily(self.family.name()));
        }
        if self.n_min < 3 || self.n_min > self.n_max {
            return Err(InstanceError::TooSmall(self.n_min));
        }
        let mut master = SeededRng::new(self.seed);
        (0..self.count)
            .map(|index| {
                let n = master.range_inclusive(self.n_min as u64, self.n_max as u64) as usize;
                let graph = match self.family {
                    Family::CycleChords => {
                        let c = master.range_inclusive(1, n.min(max_chords(n)).max(1) as u64);
                        let s = master.next_u64();
                        gen_cycle_plus_chords(n, (c as usize).min(max_chords(n)), s)?
                    }
                    Family::Ear => gen_ear_graph(n, master.next_u64())?,
                    Family::Tight => unreachable!(),
                };
                Ok(CorpusEntry {
                    path: format!("{}/{}-{index}.ec2", self.family.name(), self.seed),
                    graph,
                })
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_examples() {
        let g = parse_instance("p ec2 3 3\ne 0 1\ne 1 2\ne 2 0").unwrap();
        assert_eq!((g.n(), g.m()), (3, 3));
        assert_eq!(
            parse_instance("p ec2 3 3\ne 0 1\ne 1 2"),
            Err(InstanceError::CountMismatch {
                expected: 3,
                found: 2
            })
        );
        assert_eq!(
            parse_instance("p ec2 3 1\ne 0 0"),
            Err(InstanceError::SelfLoop { line: 2, vertex: 0 })
        );
        assert_eq!(
            parse_instance("c hi\np ec2 3 2\ne 0 1\ne 1 0"),
            Err(InstanceError::DuplicateEdge {
                line: 4,
                u: 1,
                v: 0
            })
        );
        assert!(matches!(
            parse_instance("e 0 1\np ec2 2 1"),
            Err(InstanceError::Syntax { line: 1, .. })
        ));
        assert!(matches!(
            parse_instance("p ec2 2 1\ne 0 5"),
            Err(InstanceError::Syntax { line: 2, .. })
        ));
    }

    #[test]
    fn canonical_round_trip() {
        let g = parse_instance("c x\np ec2 4 4\ne 3 2\ne 0 1\ne 1 2\ne 0 3\n").unwrap();
        let text = serialize_instance(&g);
        assert_eq!(text, "p ec2 4 4\ne 0 1\ne 0 3\ne 1 2\ne 2 3\n");
        assert_eq!(serialize_instance(&parse_instance(&text).unwrap()), text);
    }

    #[test]
    fn enumeration_bounds() {
        assert_eq!(enumerate_2connected(3).unwrap().count(), 1);
        assert!(enumerate_2connected(8).is_err());
        assert!(enumerate_2connected(2).is_err());
    }

    #[test]
    fn cycle_chords_examples() {
        let c5 = gen_cycle_plus_chords(5, 0, 9).unwrap();
        assert_eq!(c5.edges(), crate::graph::named::cycle(5).edges());
        assert_eq!(gen_cycle_plus_chords(4, 2, 3).unwrap().m(), 6);
        let g = gen_cycle_plus_chords(8, 3, 1).unwrap();
        assert_eq!(g.m(), 11);
        assert!(is_2vcss(&g, &g.full_subset()));
        assert_eq!(
            gen_cycle_plus_chords(4, 3, 0).unwrap_err(),
            InstanceError::TooManyChords { c: 3, max: 2 }
        );
    }

    #[test]
    fn ear_examples() {
        let t = gen_ear_graph(3, 42).unwrap();
        assert_eq!(t.m(), 3);
        let g = gen_ear_graph(6, 7).unwrap();
        assert_eq!(g.n(), 6);
        assert!(g.m() >= 6);
        assert!(is_2vcss(&g, &g.full_subset()));
    }

    #[test]
    fn corpus_is_seeded() {
        let spec = CorpusSpec {
            family: Family::CycleChords,
            n_min: 8,
            n_max: 14,
            seed: 5,
            count: 10,
        };
        let a = spec.generate().unwrap();
        let b = spec.generate().unwrap();
        assert_eq!(a.len(), 10);
        assert_eq!(a[3].path, "cycle-chords/5-3.ec2");
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(serialize_instance(&x.graph), serialize_instance(&y.graph));
        }
        let tight = CorpusSpec {
            family: Family::Tight,
            ..spec
        };
        assert!(tight.generate().is_err());
    }
}
