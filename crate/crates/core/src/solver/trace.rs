//! Text form of improvement records.
//!
//! One record per line, seven tab-separated fields:
//!
//! ```text
//! step  kind  k  added  removed  cost_before  cost_after
//! ```
//!
//! `kind` is `direct`, `recursive:<depth>` or `final`; `k` is the number of
//! added edges; edge lists are `u-v` pairs (smaller endpoint first) joined by
//! commas, or `-` when empty.

use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{ordered_pair, EdgeSubset, Graph, VertexId};

use super::{ImprovementKind, ImprovementRecord};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceLine {
    pub step: u8,
    pub kind: ImprovementKind,
    pub k: usize,
    pub added: Vec<(VertexId, VertexId)>,
    pub removed: Vec<(VertexId, VertexId)>,
    pub cost_before: usize,
    pub cost_after: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("trace line {line}: {reason}")]
pub struct TraceParseError {
    pub line: usize,
    pub reason: String,
}

fn edge_list(g: &Graph, s: &EdgeSubset) -> String {
    if s.is_empty() {
        return "-".to_string();
    }
    let mut out = String::new();
    for (i, e) in s.iter().enumerate() {
        let (u, v) = ordered_pair(g.endpoints(e));
        if i > 0 {
            out.push(',');
        }
        write!(out, "{u}-{v}").unwrap();
    }
    out
}

fn kind_token(kind: ImprovementKind) -> String {
    match kind {
        ImprovementKind::Direct { .. } => "direct".into(),
        ImprovementKind::Recursive { depth } => format!("recursive:{depth}"),
        ImprovementKind::Final => "final".into(),
    }
}

pub fn format_record(g: &Graph, r: &ImprovementRecord) -> String {
    format!(
        "{}\t{}\t{}\t{}\t{}\t{}\t{}",
        r.step,
        kind_token(r.kind),
        r.added.len(),
        edge_list(g, &r.added),
        edge_list(g, &r.removed),
        r.cost_before,
        r.cost_after
    )
}

/// All records, newline-terminated.
pub fn format_trace(g: &Graph, records: &[ImprovementRecord]) -> String {
    let mut out = String::new();
    for r in records {
        out.push_str(&format_record(g, r));
        out.push('\n');
    }
    out
}

fn parse_pairs(field: &str) -> Option<Vec<(VertexId, VertexId)>> {
    if field == "-" {
        return Some(Vec::new());
    }
    field
        .split(',')
        .map(|p| {
            let (u, v) = p.split_once('-')?;
            Some((u.parse().ok()?, v.parse().ok()?))
        })
        .collect()
}

/// Parses one line; `line` is only used for error messages.
pub fn parse_trace_line(text: &str, line: usize) -> Result<TraceLine, TraceParseError> {
    let err = |reason: &str| TraceParseError {
        line,
        reason: reason.to_string(),
    };
    let fields: Vec<&str> = text.split('\t').collect();
    if fields.len() != 7 {
        return Err(err("expected 7 tab-separated fields"));
    }
    let step: u8 = fields[0].parse().map_err(|_| err("bad step"))?;
    let k: usize = fields[2].parse().map_err(|_| err("bad k"))?;
    let kind = match fields[1] {
        "direct" => ImprovementKind::Direct { k },
        "final" => ImprovementKind::Final,
        other => {
            let depth = other
                .strip_prefix("recursive:")
                .and_then(|d| d.parse().ok())
                .ok_or_else(|| err("bad kind"))?;
            ImprovementKind::Recursive { depth }
        }
    };
    let added = parse_pairs(fields[3]).ok_or_else(|| err("bad added edge list"))?;
    let removed = parse_pairs(fields[4]).ok_or_else(|| err("bad removed edge list"))?;
    let cost_before = fields[5].parse().map_err(|_| err("bad cost_before"))?;
    let cost_after = fields[6].parse().map_err(|_| err("bad cost_after"))?;
    Ok(TraceLine {
        step,
        kind,
        k,
        added,
        removed,
        cost_before,
        cost_after,
    })
}
