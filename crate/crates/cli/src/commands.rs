use std::fs;
use std::io::Write;
use std::path::Path;
use std::time::Instant;

use ecss_core::bounds::{
    assemble_report, check_report, exact_opt, BoundReport, BoundsError, Connectivity, ReportOptions,
};
use ecss_core::connectivity::component_count;
use ecss_core::instances::{serialize_edges, CorpusSpec, Family};
use ecss_core::solver::{audit, format_trace, parse_trace_line, SolveError, SolveResult};
use ecss_core::{
    find_bridges, find_cut_vertices, gen_cycle_plus_chords, gen_ear_graph, lp_cut_bound,
    parse_instance, serialize_instance, solve_general, EdgeSubset, Graph,
};

use crate::manifest::{pretty, RunManifest};
use crate::{
    exact_limits, CmdResult, ExactArgs, Failure, GenCommand, LpArgs, Mode, SolveArgs, SolverFlags,
    VerifyArgs, EXIT_INFEASIBLE, EXIT_OK, EXIT_RATIO, EXIT_VERIFY,
};

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure::usage(format!("{}: {e}", path.display()))
}

pub(crate) fn read_instance(path: &Path) -> Result<Graph, Failure> {
    let text = fs::read_to_string(path).map_err(|e| io_failure(path, e))?;
    parse_instance(&text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| io_failure(dir, e))?;
    }
    fs::write(path, text).map_err(|e| io_failure(path, e))
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), Failure> {
    out.write_all(text.as_bytes())
        .map_err(|e| Failure::usage(format!("stdout: {e}")))
}

pub(crate) fn solve_failure(e: SolveError) -> Failure {
    let name = match e {
        SolveError::Infeasible2ECSS => "Infeasible2ECSS",
        SolveError::Disconnected => "Disconnected",
        SolveError::TooSmall => "TooSmall",
        SolveError::NotTwoConnected => "NotTwoConnected",
    };
    Failure::new(EXIT_INFEASIBLE, format!("{name}: {e}"))
}

pub(crate) fn bounds_failure(e: BoundsError) -> Failure {
    match e {
        BoundsError::Infeasible => Failure::new(EXIT_INFEASIBLE, e.to_string()),
        BoundsError::RatioViolation { .. } => Failure::new(EXIT_RATIO, e.to_string()),
        BoundsError::SandwichViolation(_) => Failure::new(EXIT_VERIFY, e.to_string()),
        BoundsError::TooLarge { .. } | BoundsError::BudgetExceeded => Failure::usage(e.to_string()),
    }
}

pub(crate) fn report_options(flags: &SolverFlags) -> Result<ReportOptions, Failure> {
    Ok(ReportOptions {
        exact: flags.exact,
        lp: flags.lp,
        limits: exact_limits(flags.exact_limit)?,
    })
}

pub(crate) fn skipped_token(report: &BoundReport) -> Option<&'static str> {
    report.exact_skipped.as_ref().map(|e| match e {
        BoundsError::TooLarge { .. } => "too_large",
        _ => "budget",
    })
}

/// Step sizes and process counters on one line.
pub(crate) fn steps_line(r: &SolveResult) -> String {
    format!(
        "step1={} step2={} step3={} improvements={} process_calls={} registered_pairs={} vcss_valid={}",
        r.sizes.step1,
        r.sizes.step2,
        r.sizes.step3,
        r.trace.len(),
        r.process_calls,
        r.registered_pairs,
        r.vcss_valid
    )
}

pub(crate) fn solve(a: &SolveArgs, out: &mut dyn Write) -> CmdResult {
    let g = read_instance(&a.instance)?;
    let mut manifest = RunManifest::new("solve", vec![a.instance.display().to_string()], &a.flags);
    let opts = report_options(&a.flags)?;
    let start = Instant::now();
    let r = solve_general(&g, &a.flags.config()).map_err(solve_failure)?;
    let bounds_start = Instant::now();
    let report = assemble_report(&g, &r, &opts).map_err(bounds_failure)?;
    if a.flags.timings {
        manifest.timings = vec![
            ("step1".into(), r.timings.step1),
            ("step2".into(), r.timings.step2),
            ("step3".into(), r.timings.step3),
            ("step4".into(), r.timings.step4),
            ("bounds".into(), bounds_start.elapsed()),
            ("total".into(), start.elapsed()),
        ];
    }

    let mut text = manifest.to_lines();
    let mut body = format!("{}\n{}\n", report.to_line(), steps_line(&r));
    if let Some(reason) = skipped_token(&report) {
        body.push_str(&format!("exact_skipped={reason}\n"));
    }
    if a.flags.pretty {
        body = body.lines().map(pretty).collect();
    }
    text.push_str(&body);
    text.push_str(&manifest.timing_line());
    emit(out, &text)?;

    if let Some(p) = &a.trace {
        write_file(p, &format_trace(&g, &r.trace))?;
    }
    if let Some(p) = &a.emit_f {
        write_file(p, &serialize_edges(g.n(), &g.pairs(&r.f)))?;
    }
    if let Some(p) = &a.emit_fbar {
        write_file(p, &serialize_edges(g.n(), &g.pairs(&r.f_bar)))?;
    }

    let failures = audit(&g, &r);
    if !failures.is_empty() {
        return Err(Failure::new(EXIT_VERIFY, failures.join("; ")));
    }
    check_report(&report).map_err(bounds_failure)?;
    Ok(EXIT_OK)
}

/// First violated condition of `f` as a spanning subgraph of `g`.
fn first_violation(g: &Graph, f: &EdgeSubset, mode: Mode) -> Option<String> {
    if mode == Mode::Vc && g.n() < 3 {
        return Some("too few vertices".into());
    }
    let parts = component_count(g, f);
    if parts != 1 {
        return Some(format!("disconnected: {parts} components"));
    }
    match mode {
        Mode::Ec => find_bridges(g, f).iter().next().map(|e| {
            let (u, v) = g.endpoints(e);
            format!("bridge found {}-{}", u.min(v), u.max(v))
        }),
        Mode::Vc => find_cut_vertices(g, f)
            .first()
            .map(|v| format!("cut vertex {v}")),
    }
}

fn check_trace(g: &Graph, text: &str) -> Result<usize, String> {
    let mut count = 0;
    for (i, line) in text.lines().enumerate() {
        let n = i + 1;
        let t = parse_trace_line(line, n).map_err(|e| e.to_string())?;
        if t.cost_after >= t.cost_before {
            return Err(format!("trace line {n}: cost does not decrease"));
        }
        if t.k != t.added.len() {
            return Err(format!("trace line {n}: k differs from added edges"));
        }
        if t.cost_before + t.added.len() != t.cost_after + t.removed.len() {
            return Err(format!("trace line {n}: edge counts do not match costs"));
        }
        if let Some((u, v)) = t
            .added
            .iter()
            .chain(&t.removed)
            .find(|&&(u, v)| g.edge_between(u, v).is_none())
        {
            return Err(format!("trace line {n}: {u}-{v} is not an instance edge"));
        }
        count += 1;
    }
    Ok(count)
}

pub(crate) fn verify(a: &VerifyArgs, out: &mut dyn Write) -> CmdResult {
    let g = read_instance(&a.instance)?;
    let s = read_instance(&a.solution)?;
    if s.n() != g.n() {
        return Err(Failure::usage(format!(
            "solution has {} vertices, instance has {}",
            s.n(),
            g.n()
        )));
    }
    if let Some(&(u, v)) = s
        .edges()
        .iter()
        .find(|&&(u, v)| g.edge_between(u, v).is_none())
    {
        return Err(Failure::usage(format!(
            "NotSubset: solution edge {u}-{v} is not in the instance"
        )));
    }
    let f = g
        .subset_from_pairs(s.edges())
        .expect("checked edge by edge");
    let mode = match a.mode {
        Mode::Ec => "ec",
        Mode::Vc => "vc",
    };
    if let Some(reason) = first_violation(&g, &f, a.mode) {
        emit(out, &format!("valid=false mode={mode} reason={reason}\n"))?;
        return Ok(EXIT_VERIFY);
    }
    let mut text = format!("valid=true mode={mode} edges={}\n", f.len());
    if let Some(p) = &a.trace {
        let trace = fs::read_to_string(p).map_err(|e| io_failure(p, e))?;
        match check_trace(&g, &trace) {
            Ok(k) => text.push_str(&format!("trace_records={k}\n")),
            Err(reason) => {
                text.push_str(&format!("trace_valid=false reason={reason}\n"));
                emit(out, &text)?;
                return Ok(EXIT_VERIFY);
            }
        }
    }
    emit(out, &text)?;
    Ok(EXIT_OK)
}

fn write_or_print(out: &mut dyn Write, path: &Option<std::path::PathBuf>, text: &str) -> CmdResult {
    match path {
        Some(p) => write_file(p, text)?,
        None => emit(out, text)?,
    }
    Ok(EXIT_OK)
}

pub(crate) fn gen(cmd: &GenCommand, out: &mut dyn Write) -> CmdResult {
    let bad = |e: ecss_core::InstanceError| Failure::usage(e.to_string());
    match cmd {
        GenCommand::CycleChords {
            n,
            c,
            seed,
            out: path,
        } => {
            let g = gen_cycle_plus_chords(*n, *c, *seed).map_err(bad)?;
            write_or_print(out, path, &serialize_instance(&g))
        }
        GenCommand::Ear { n, seed, out: path } => {
            let g = gen_ear_graph(*n, *seed).map_err(bad)?;
            write_or_print(out, path, &serialize_instance(&g))
        }
        GenCommand::Corpus {
            family,
            n_min,
            n_max,
            seed,
            count,
            out: dir,
        } => {
            let family = Family::from_name(family)
                .ok_or_else(|| Failure::usage(format!("unknown family {family}")))?;
            let spec = CorpusSpec {
                family,
                n_min: *n_min,
                n_max: *n_max,
                seed: *seed,
                count: *count,
            };
            let entries = spec.generate().map_err(bad)?;
            let mut text = String::new();
            for e in &entries {
                write_file(&dir.join(&e.path), &serialize_instance(&e.graph))?;
                text.push_str(&format!("file={}\n", e.path));
            }
            text.push_str(&format!("written={}\n", entries.len()));
            emit(out, &text)?;
            Ok(EXIT_OK)
        }
    }
}

pub(crate) fn exact(a: &ExactArgs, out: &mut dyn Write) -> CmdResult {
    let g = read_instance(&a.instance)?;
    let limits = exact_limits(a.exact_limit)?;
    let (ec, _) = exact_opt(&g, Connectivity::TwoEdge, &limits).map_err(bounds_failure)?;
    let vc = match exact_opt(&g, Connectivity::TwoVertex, &limits) {
        Ok((vc, _)) => vc.to_string(),
        Err(BoundsError::Infeasible) => "-".into(),
        Err(e) => return Err(bounds_failure(e)),
    };
    emit(out, &format!("opt_ec={ec} opt_vc={vc}\n"))?;
    Ok(EXIT_OK)
}

pub(crate) fn lp(a: &LpArgs, out: &mut dyn Write) -> CmdResult {
    let g = read_instance(&a.instance)?;
    let st = lp_cut_bound(&g).map_err(bounds_failure)?;
    emit(
        out,
        &format!("lp={} cuts={}\n", st.objective, st.active_constraints.len()),
    )?;
    Ok(EXIT_OK)
}
