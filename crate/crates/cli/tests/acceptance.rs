//! Acceptance suite. Prints one `A<k> PASS|FAIL` line per criterion and
//! exits nonzero if any fails. All comparisons are exact integer or
//! rational arithmetic; the tolerance is zero throughout.

use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;

use ecss_core::bounds::{check_ratio, exact_opt_2vcss};
use ecss_core::connectivity::is_connected;
use ecss_core::graph::named;
use ecss_core::reference;
use ecss_core::rng::SeededRng;
use ecss_core::solver::{audit, format_trace, ImprovementKind, SolveResult, SolverConfig};
use ecss_core::*;

/// Every `A1_SAMPLE`-th labeled 2-connected graph on 7 vertices is checked.
const A1_SAMPLE: usize = 10;
const A2_CHORDS: CorpusSpec = CorpusSpec {
    family: Family::CycleChords,
    n_min: 8,
    n_max: 14,
    seed: 1,
    count: 200,
};
const A2_EARS: CorpusSpec = CorpusSpec {
    family: Family::Ear,
    n_min: 6,
    n_max: 14,
    seed: 2,
    count: 100,
};

type Outcome = Result<String, String>;

/// Worst `size / opt` seen, kept as an exact fraction.
#[derive(Default, Clone)]
struct Worst {
    f: (usize, usize),
    f_bar: (usize, usize),
    where_f: String,
    where_f_bar: String,
}

impl Worst {
    fn offer(&mut self, name: &str, r: &SolveResult, opt: usize) {
        if self.f.1 == 0 || r.f.len() * self.f.1 > self.f.0 * opt {
            self.f = (r.f.len(), opt);
            self.where_f = name.to_string();
        }
        if self.f_bar.1 == 0 || r.f_bar.len() * self.f_bar.1 > self.f_bar.0 * opt {
            self.f_bar = (r.f_bar.len(), opt);
            self.where_f_bar = name.to_string();
        }
    }

    fn merge(&mut self, other: &Worst) {
        if other.f.1 > 0 && (self.f.1 == 0 || other.f.0 * self.f.1 > self.f.0 * other.f.1) {
            self.f = other.f;
            self.where_f = other.where_f.clone();
        }
        if other.f_bar.1 > 0
            && (self.f_bar.1 == 0 || other.f_bar.0 * self.f_bar.1 > self.f_bar.0 * other.f_bar.1)
        {
            self.f_bar = other.f_bar;
            self.where_f_bar = other.where_f_bar.clone();
        }
    }

    fn describe(&self) -> String {
        format!(
            "max |F|/opt = {}/{} ({}), max |F̄|/opt = {}/{} ({})",
            self.f.0, self.f.1, self.where_f, self.f_bar.0, self.f_bar.1, self.where_f_bar
        )
    }
}

/// Per-instance findings shared by the ratio, invariant and trace criteria.
#[derive(Default)]
struct Sweep {
    instances: usize,
    ratio_failures: Vec<String>,
    audit_failures: Vec<String>,
    trace_failures: Vec<String>,
    sandwich_failures: Vec<String>,
    sandwich_checked: usize,
    worst: Worst,
}

impl Sweep {
    fn check(&mut self, name: &str, g: &Graph, with_sandwich: bool) {
        self.instances += 1;
        let r = solve_block(g, &SolverConfig::default()).expect("2-connected input");
        let (opt, _) = exact_opt_2ecss(g).expect("exact optimum");
        for (which, size) in [("F", r.f.len()), ("Fbar", r.f_bar.len())] {
            if check_ratio(which, size, opt).is_err() || 7 * size > 9 * opt {
                self.ratio_failures
                    .push(format!("{name}: {which}={size} opt={opt}"));
            }
        }
        self.worst.offer(name, &r, opt);

        for f in audit(g, &r) {
            self.audit_failures.push(format!("{name}: {f}"));
        }
        // independent re-checks with the naive oracles
        if !reference::is_2vcss(g, &r.f) || !reference::is_2ecss(g, &r.f_bar) {
            self.audit_failures
                .push(format!("{name}: reference oracle rejects output"));
        }

        let s = r.sizes;
        if !(s.step1 >= s.step2 && s.step2 >= s.step3 && s.step3 >= s.f_bar) {
            self.trace_failures.push(format!("{name}: sizes {s:?}"));
        }
        for t in &r.trace {
            if t.cost_after >= t.cost_before {
                self.trace_failures.push(format!(
                    "{name}: record {} -> {}",
                    t.cost_before, t.cost_after
                ));
            }
        }

        if with_sandwich {
            self.sandwich_checked += 1;
            let lp = lp_cut_bound(g).expect("lp").objective;
            let (vc, _) = exact_opt_2vcss(g).expect("vc optimum");
            let int = |v: usize| BigRational::from_integer(BigInt::from(v));
            if !(int(g.n()) <= lp && lp <= int(opt) && opt <= vc) {
                self.sandwich_failures
                    .push(format!("{name}: n={} lp={lp} ec={opt} vc={vc}", g.n()));
            }
        }
    }

    fn merge(&mut self, other: Sweep) {
        self.instances += other.instances;
        self.ratio_failures.extend(other.ratio_failures);
        self.audit_failures.extend(other.audit_failures);
        self.trace_failures.extend(other.trace_failures);
        self.sandwich_failures.extend(other.sandwich_failures);
        self.sandwich_checked += other.sandwich_checked;
        self.worst.merge(&other.worst);
    }
}

fn first_few(v: &[String]) -> String {
    v.iter().take(3).cloned().collect::<Vec<_>>().join("; ")
}

fn sweep_exhaustive() -> Sweep {
    let mut sweep = Sweep::default();
    for n in 3..=7 {
        let step = if n == 7 { A1_SAMPLE } else { 1 };
        for (i, g) in enumerate_2connected(n).unwrap().enumerate() {
            if i % step == 0 {
                sweep.check(&format!("enum/n{n}/{i}"), &g, n <= 6);
            }
        }
    }
    sweep
}

fn a2_entries() -> Vec<instances::CorpusEntry> {
    let mut all = A2_CHORDS.generate().unwrap();
    all.extend(A2_EARS.generate().unwrap());
    all
}

fn sweep_random() -> Sweep {
    let mut sweep = Sweep::default();
    for e in a2_entries() {
        sweep.check(&e.path, &e.graph, false);
    }
    sweep
}

fn a1(s: &Sweep) -> Outcome {
    if s.ratio_failures.is_empty() {
        Ok(format!(
            "{} graphs (n<=6 all, n=7 every {A1_SAMPLE}th), 0 violations; {}",
            s.instances,
            s.worst.describe()
        ))
    } else {
        Err(format!(
            "{} violations: {}",
            s.ratio_failures.len(),
            first_few(&s.ratio_failures)
        ))
    }
}

fn a2(s: &Sweep) -> Outcome {
    if s.instances != 300 {
        return Err(format!("expected 300 instances, got {}", s.instances));
    }
    if s.ratio_failures.is_empty() {
        Ok(format!(
            "300 instances, 0 violations; {}",
            s.worst.describe()
        ))
    } else {
        Err(format!(
            "{} violations: {}",
            s.ratio_failures.len(),
            first_few(&s.ratio_failures)
        ))
    }
}

fn a3(s: &Sweep) -> Outcome {
    if s.audit_failures.is_empty() {
        Ok(format!(
            "{} instances: F 2-connected, F̄ 2-edge-connected, step-1 minimal, F̄ irredundant",
            s.instances
        ))
    } else {
        Err(first_few(&s.audit_failures))
    }
}

/// Random connected graph: a random tree plus each other pair with
/// probability `k / 8`, `k` drawn per graph.
fn random_connected(rng: &mut SeededRng, n: usize) -> Graph {
    let mut edges = Vec::new();
    for v in 1..n {
        edges.push((rng.below(v as u64) as usize, v));
    }
    let k = rng.range_inclusive(0, 6);
    for u in 0..n {
        for v in u + 1..n {
            if !edges.contains(&(u, v)) && rng.below(8) < k {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, &edges).unwrap()
}

fn a4() -> Outcome {
    let mut rng = SeededRng::new(4);
    for i in 0..500 {
        let n = rng.range_inclusive(3, 12) as usize;
        let g = random_connected(&mut rng, n);
        assert!(is_connected(&g, &g.full_subset()));
        let all = g.full_subset();
        if find_bridges(&g, &all) != reference::bridges(&g, &all) {
            return Err(format!("bridges differ on graph {i}: {:?}", g.edges()));
        }
        if find_cut_vertices(&g, &all) != reference::cut_vertices(&g, &all) {
            return Err(format!("cut vertices differ on graph {i}: {:?}", g.edges()));
        }
    }
    for i in 0..200 {
        let n = rng.range_inclusive(3, 10) as usize;
        let g = random_connected(&mut rng, n);
        let w: Vec<BigRational> = (0..g.m())
            .map(|_| {
                BigRational::new(
                    BigInt::from(rng.range_inclusive(0, 6)),
                    BigInt::from(rng.range_inclusive(1, 4)),
                )
            })
            .collect();
        let (value, side) = min_global_cut(&g, &w).unwrap();
        let naive = reference::min_cut_value(&g, &w);
        if value != naive {
            return Err(format!(
                "min cut {value} != {naive} on graph {i}: {:?}",
                g.edges()
            ));
        }
        let crossing = g
            .edge_ids()
            .filter(|&e| {
                let (a, b) = g.endpoints(e);
                side.contains(&a) != side.contains(&b)
            })
            .fold(BigRational::from_integer(0.into()), |acc, e| {
                acc + &w[e.index()]
            });
        if crossing != value {
            return Err(format!(
                "returned side does not realize the cut on graph {i}"
            ));
        }
    }
    Ok("500 bridge/cut-vertex graphs and 200 min-cut graphs match the naive oracles".into())
}

fn a5(s: &Sweep) -> Outcome {
    if !s.sandwich_failures.is_empty() {
        return Err(first_few(&s.sandwich_failures));
    }
    let int = |v: usize| BigRational::from_integer(BigInt::from(v));
    for n in 3..=12 {
        let v = lp_cut_bound(&named::cycle(n)).unwrap().objective;
        if v != int(n) {
            return Err(format!("lp(C{n}) = {v}"));
        }
    }
    let k4 = lp_cut_bound(&named::complete(4)).unwrap().objective;
    let k23 = lp_cut_bound(&named::complete_bipartite(2, 3))
        .unwrap()
        .objective;
    if k4 != int(4) || k23 != int(6) {
        return Err(format!("lp(K4) = {k4}, lp(K2,3) = {k23}"));
    }
    Ok(format!(
        "sandwich holds on {} graphs with n<=6; lp(C_n)=n for n in 3..=12, lp(K4)=4, lp(K2,3)=6",
        s.sandwich_checked
    ))
}

fn ecss(args: &[&str]) -> (i32, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_ecss"))
        .args(args)
        .output()
        .expect("run ecss");
    (out.status.code().unwrap_or(-1), out.stdout)
}

fn a6() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let root = dir.path().to_str().unwrap();
    for spec in [A2_CHORDS, A2_EARS] {
        let (code, _) = ecss(&[
            "gen",
            "corpus",
            "--family",
            spec.family.name(),
            "--n-min",
            &spec.n_min.to_string(),
            "--n-max",
            &spec.n_max.to_string(),
            "--seed",
            &spec.seed.to_string(),
            "--count",
            &spec.count.to_string(),
            "--out",
            root,
        ]);
        if code != 0 {
            return Err(format!("gen corpus exited {code}"));
        }
    }
    // the written files are the corpus itself
    for e in a2_entries() {
        let text = std::fs::read_to_string(dir.path().join(&e.path)).map_err(|e| e.to_string())?;
        if text != serialize_instance(&e.graph) {
            return Err(format!("{} differs from the in-memory corpus", e.path));
        }
    }
    let mut solves = 0;
    for e in a2_entries() {
        let path = dir.path().join(&e.path);
        let p = path.to_str().unwrap();
        let first = ecss(&["solve", p, "--exact"]);
        let second = ecss(&["solve", p, "--exact"]);
        if first.0 != 0 || first != second {
            return Err(format!("solve output differs or failed on {}", e.path));
        }
        solves += 1;
    }
    let one = ecss(&["bench", root, "--exact", "--lp"]);
    let two = ecss(&["bench", root, "--exact", "--lp"]);
    let threaded = ecss(&["bench", root, "--exact", "--lp", "--jobs", "4"]);
    if one.0 != 0 {
        return Err(format!("bench exited {}", one.0));
    }
    if one != two || one != threaded {
        return Err("bench output differs between runs".into());
    }
    Ok(format!(
        "{solves} solve pairs and 3 bench runs ({} bytes) byte-identical",
        one.1.len()
    ))
}

fn a7(s: &Sweep) -> Outcome {
    if s.trace_failures.is_empty() {
        Ok(format!(
            "{} instances: every record lowers cost, step sizes non-increasing",
            s.instances
        ))
    } else {
        Err(first_few(&s.trace_failures))
    }
}

fn fixture(name: &str) -> Graph {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "fixtures", name]
        .iter()
        .collect();
    parse_instance(&std::fs::read_to_string(Path::new(&path)).unwrap()).unwrap()
}

type FixtureCheck = (&'static str, fn(ImprovementKind) -> bool, &'static str);

fn a8(worst: &Worst) -> Outcome {
    let checks: [FixtureCheck; 3] = [
        (
            "direct-improvement.ec2",
            |k| matches!(k, ImprovementKind::Direct { .. }),
            "\tdirect\t",
        ),
        (
            "depth2-recursion.ec2",
            |k| matches!(k, ImprovementKind::Recursive { depth: 2 }),
            "\trecursive:2\t",
        ),
        (
            "step3-commit.ec2",
            |k| k == ImprovementKind::Final,
            "\tfinal\t",
        ),
    ];
    for (name, kind, token) in checks {
        let g = fixture(name);
        let r = solve_block(&g, &SolverConfig::default()).unwrap();
        let text = format_trace(&g, &r.trace);
        if !r.trace.iter().any(|t| kind(t.kind)) || !text.contains(token) {
            return Err(format!("{name} did not fire: {text:?}"));
        }
    }
    Ok(format!(
        "direct, depth-2 recursive and step-3 fixtures fire; tight family not reproducible, worst observed over A1-A2: {}",
        worst.describe()
    ))
}

fn main() {
    // `cargo test -- --list` and filters are not meaningful for this target
    if std::env::args().any(|a| a == "--list") {
        println!("acceptance: test");
        return;
    }
    let started = Instant::now();
    let exhaustive = sweep_exhaustive();
    let random = sweep_random();
    let mut both = Sweep::default();
    let mut worst = exhaustive.worst.clone();
    worst.merge(&random.worst);

    let mut results: Vec<(&str, Outcome)> = vec![("A1", a1(&exhaustive)), ("A2", a2(&random))];
    let a5_result = a5(&exhaustive);
    both.merge(exhaustive);
    both.merge(random);
    results.push(("A3", a3(&both)));
    results.push(("A4", a4()));
    results.push(("A5", a5_result));
    results.push(("A6", a6()));
    results.push(("A7", a7(&both)));
    results.push(("A8", a8(&worst)));

    let mut failed = 0;
    for (id, outcome) in &results {
        match outcome {
            Ok(detail) => println!("{id} PASS {detail}"),
            Err(detail) => {
                failed += 1;
                println!("{id} FAIL {detail}");
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed in {:.1}s",
        results.len() - failed,
        started.elapsed().as_secs_f64()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
