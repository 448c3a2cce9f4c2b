//! `ecss bench`: solve a stream of instances, check every result and
//! summarize the worst ratios.
//!
//! Instances are processed in chunks; within a chunk they may run on
//! several threads, but lines are always printed in instance order.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use rayon::prelude::*;

use ecss_core::bounds::{assemble_report, check_report, BoundsError, ReportOptions};
use ecss_core::instances::{CorpusSpec, Family};
use ecss_core::solver::{audit, SolverConfig};
use ecss_core::{enumerate_2connected, parse_instance, solve_general, Graph};

use crate::commands::{report_options, skipped_token, solve_failure};
use crate::manifest::RunManifest;
use crate::{BenchArgs, CmdResult, Failure, EXIT_INFEASIBLE, EXIT_OK, EXIT_RATIO, EXIT_VERIFY};

const CHUNK: usize = 1024;

type Item = (String, Result<Graph, String>);
type Items = Box<dyn Iterator<Item = Item>>;

fn parse_corpus(spec: &str) -> Result<CorpusSpec, Failure> {
    let bad = || {
        Failure::usage(format!(
            "corpus spec {spec:?} is not FAMILY:N_MIN:N_MAX:SEED:COUNT"
        ))
    };
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 5 {
        return Err(bad());
    }
    let family = Family::from_name(parts[0]).ok_or_else(bad)?;
    let num = |s: &str| s.parse::<u64>().map_err(|_| bad());
    Ok(CorpusSpec {
        family,
        n_min: num(parts[1])? as usize,
        n_max: num(parts[2])? as usize,
        seed: num(parts[3])?,
        count: num(parts[4])? as usize,
    })
}

fn collect_files(root: &Path, dir: &Path, acc: &mut Vec<PathBuf>) -> Result<(), Failure> {
    let entries =
        fs::read_dir(dir).map_err(|e| Failure::usage(format!("{}: {e}", dir.display())))?;
    for entry in entries {
        let path = entry
            .map_err(|e| Failure::usage(format!("{}: {e}", dir.display())))?
            .path();
        if path.is_dir() {
            collect_files(root, &path, acc)?;
        } else if path.extension().is_some_and(|x| x == "ec2") {
            acc.push(path.strip_prefix(root).unwrap_or(&path).to_path_buf());
        }
    }
    Ok(())
}

/// All requested instances, lazily, in a fixed order: directory files by
/// relative path, then corpora, then enumerations.
fn sources(a: &BenchArgs) -> Result<(Vec<String>, Items), Failure> {
    let mut inputs = Vec::new();
    let mut iter: Items = Box::new(std::iter::empty());
    if a.dir.is_none() && a.corpora.is_empty() && a.enumerate.is_empty() {
        return Err(Failure::usage(
            "bench needs a directory, --corpus or --enumerate",
        ));
    }
    if a.sample == 0 {
        return Err(Failure::usage("--sample must be positive"));
    }
    if let Some(dir) = &a.dir {
        inputs.push(dir.display().to_string());
        let mut files = Vec::new();
        collect_files(dir, dir, &mut files)?;
        files.sort();
        let root = dir.clone();
        iter = Box::new(iter.chain(files.into_iter().map(move |rel| {
            let name = rel.display().to_string();
            let graph = fs::read_to_string(root.join(&rel))
                .map_err(|e| e.to_string())
                .and_then(|t| parse_instance(&t).map_err(|e| e.to_string()));
            (name, graph)
        })));
    }
    for spec in &a.corpora {
        inputs.push(format!("corpus:{spec}"));
        let entries = parse_corpus(spec)?
            .generate()
            .map_err(|e| Failure::usage(e.to_string()))?;
        iter = Box::new(iter.chain(entries.into_iter().map(|e| (e.path, Ok(e.graph)))));
    }
    for &n in &a.enumerate {
        inputs.push(format!("enumerate:{n}:sample={}", a.sample));
        let sample = a.sample;
        let graphs = enumerate_2connected(n).map_err(|e| Failure::usage(e.to_string()))?;
        iter = Box::new(
            iter.chain(
                graphs
                    .enumerate()
                    .filter(move |(i, _)| i % sample == 0)
                    .map(move |(i, g)| (format!("enum/n{n}/{i}"), Ok(g))),
            ),
        );
    }
    Ok((inputs, iter))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Status {
    Ok,
    Error,
    Invalid,
    Violation,
}

struct Outcome {
    line: String,
    status: Status,
    /// `(|F|, opt)` and `(|F̄|, opt)` when the optimum is known.
    ratios: Option<((usize, usize), (usize, usize))>,
    skipped: bool,
    elapsed: Duration,
}

fn evaluate(
    name: &str,
    graph: &Result<Graph, String>,
    cfg: &SolverConfig,
    opts: &ReportOptions,
) -> Outcome {
    let start = Instant::now();
    let token = |s: &str| s.replace(char::is_whitespace, "_");
    let fail = |status: Status, reason: String| Outcome {
        line: format!(
            "instance={name} status={} reason={}",
            status_name(status),
            token(&reason)
        ),
        status,
        ratios: None,
        skipped: false,
        elapsed: start.elapsed(),
    };
    let g = match graph {
        Ok(g) => g,
        Err(e) => return fail(Status::Error, e.clone()),
    };
    let r = match solve_general(g, cfg) {
        Ok(r) => r,
        Err(e) => return fail(Status::Error, solve_failure(e).message),
    };
    let report = match assemble_report(g, &r, opts) {
        Ok(rep) => rep,
        Err(e) => return fail(Status::Error, e.to_string()),
    };
    let failures = audit(g, &r);
    let (status, reason) = if !failures.is_empty() {
        (Status::Invalid, Some(failures.join("; ")))
    } else {
        match check_report(&report) {
            Ok(()) => (Status::Ok, None),
            Err(e @ BoundsError::RatioViolation { .. }) => (Status::Violation, Some(e.to_string())),
            Err(e) => (Status::Invalid, Some(e.to_string())),
        }
    };
    let mut line = format!(
        "instance={name} {} calls={} status={}",
        report.to_line(),
        r.process_calls,
        status_name(status)
    );
    if let Some(why) = skipped_token(&report) {
        line.push_str(&format!(" exact_skipped={why}"));
    }
    if let Some(reason) = reason {
        line.push_str(&format!(" reason={}", token(&reason)));
    }
    Outcome {
        line,
        status,
        ratios: report
            .exact_ec
            .map(|o| ((r.f.len(), o), (r.f_bar.len(), o))),
        skipped: report.exact_skipped.is_some(),
        elapsed: start.elapsed(),
    }
}

fn status_name(s: Status) -> &'static str {
    match s {
        Status::Ok => "ok",
        Status::Error => "error",
        Status::Invalid => "invalid",
        Status::Violation => "ratio_violation",
    }
}

/// Worst `size / opt` seen so far, compared exactly.
#[derive(Default)]
struct Worst {
    best: Option<(usize, usize, String)>,
}

impl Worst {
    fn offer(&mut self, (a, b): (usize, usize), name: &str) {
        let better = match &self.best {
            None => true,
            Some((c, d, _)) => a * d > c * b,
        };
        if better {
            self.best = Some((a, b, name.to_string()));
        }
    }

    fn tokens(&self, key: &str) -> String {
        match &self.best {
            None => format!("max_ratio_{key}=- max_ratio_{key}_exact=- worst_{key}=-"),
            Some((a, b, name)) => {
                let d = gcd(*a, *b);
                format!(
                    "max_ratio_{key}={:?} max_ratio_{key}_exact={}/{} worst_{key}={name}",
                    *a as f64 / *b as f64,
                    a / d,
                    b / d
                )
            }
        }
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn percentile(sorted: &[Duration], p: usize) -> Duration {
    if sorted.is_empty() {
        return Duration::ZERO;
    }
    sorted[((sorted.len() - 1) * p) / 100]
}

pub(crate) fn bench(a: &BenchArgs, out: &mut dyn Write) -> CmdResult {
    let (inputs, mut items) = sources(a)?;
    let mut manifest = RunManifest::new("bench", inputs, &a.flags);
    let cfg = a.flags.config();
    let opts = report_options(&a.flags)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(a.jobs.max(1))
        .build()
        .map_err(|e| Failure::usage(e.to_string()))?;
    let write = |out: &mut dyn Write, s: &str| {
        out.write_all(s.as_bytes())
            .map_err(|e| Failure::usage(format!("stdout: {e}")))
    };

    write(out, &manifest.to_lines())?;
    let start = Instant::now();
    let (mut total, mut errors, mut invalid, mut violations, mut exact_checked, mut skipped) =
        (0usize, 0usize, 0usize, 0usize, 0usize, 0usize);
    let mut worst_f = Worst::default();
    let mut worst_fbar = Worst::default();
    let mut elapsed = Vec::new();
    loop {
        let chunk: Vec<Item> = items.by_ref().take(CHUNK).collect();
        if chunk.is_empty() {
            break;
        }
        let outcomes: Vec<Outcome> = pool.install(|| {
            chunk
                .par_iter()
                .map(|(name, g)| evaluate(name, g, &cfg, &opts))
                .collect()
        });
        let mut text = String::new();
        for ((name, _), o) in chunk.iter().zip(&outcomes) {
            total += 1;
            match o.status {
                Status::Ok => {}
                Status::Error => errors += 1,
                Status::Invalid => invalid += 1,
                Status::Violation => violations += 1,
            }
            if let Some((f, fbar)) = o.ratios {
                exact_checked += 1;
                worst_f.offer(f, name);
                worst_fbar.offer(fbar, name);
            }
            skipped += usize::from(o.skipped);
            elapsed.push(o.elapsed);
            if !a.summary_only {
                if a.flags.pretty {
                    text.push_str(&pretty_row(&o.line));
                } else {
                    text.push_str(&o.line);
                    text.push('\n');
                }
            }
        }
        write(out, &text)?;
    }

    let summary = format!(
        "instances={total} errors={errors} invalid={invalid} violations={violations} exact_checked={exact_checked} exact_skipped={skipped} {} {}",
        worst_f.tokens("F"),
        worst_fbar.tokens("Fbar")
    );
    let mut text = if a.flags.pretty {
        format!("summary\n{}", crate::manifest::pretty(&summary))
    } else {
        format!("{summary}\n")
    };
    if a.flags.timings {
        elapsed.sort_unstable();
        manifest.timings = vec![
            ("total".into(), start.elapsed()),
            ("p50".into(), percentile(&elapsed, 50)),
            ("p90".into(), percentile(&elapsed, 90)),
            ("max".into(), elapsed.last().copied().unwrap_or_default()),
        ];
        text.push_str(&manifest.timing_line());
    }
    write(out, &text)?;

    Ok(if violations > 0 {
        EXIT_RATIO
    } else if invalid > 0 {
        EXIT_VERIFY
    } else if errors > 0 {
        EXIT_INFEASIBLE
    } else {
        EXIT_OK
    })
}

/// Fixed-width row of the most useful fields of an instance line.
fn pretty_row(line: &str) -> String {
    let get = |key: &str| {
        line.split_whitespace()
            .find_map(|t| t.strip_prefix(key).and_then(|r| r.strip_prefix('=')))
            .unwrap_or("-")
    };
    format!(
        "{:<28} n={:<3} m={:<3} F={:<3} Fbar={:<3} opt={:<3} ratio={:<20} {}\n",
        get("instance"),
        get("n"),
        get("m"),
        get("F"),
        get("Fbar"),
        get("opt_ec"),
        get("ratio_Fbar"),
        get("status")
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_specs_parse() {
        let s = parse_corpus("ear:6:14:3:100").unwrap();
        assert_eq!(
            (s.family, s.n_min, s.n_max, s.seed, s.count),
            (Family::Ear, 6, 14, 3, 100)
        );
        assert!(parse_corpus("ear:6:14:3").is_err());
        assert!(parse_corpus("star:6:14:3:1").is_err());
    }

    #[test]
    fn worst_ratio_is_exact() {
        let mut w = Worst::default();
        w.offer((8, 7), "a");
        w.offer((16, 14), "b");
        w.offer((18, 14), "c");
        assert_eq!(
            w.tokens("F"),
            "max_ratio_F=1.2857142857142858 max_ratio_F_exact=9/7 worst_F=c"
        );
    }

    #[test]
    fn percentiles_pick_lower_rank() {
        let d: Vec<Duration> = (1..=10).map(Duration::from_millis).collect();
        assert_eq!(percentile(&d, 50), Duration::from_millis(5));
        assert_eq!(percentile(&d, 90), Duration::from_millis(9));
        assert_eq!(percentile(&[], 50), Duration::ZERO);
    }
}
