//! Frozen instances that exercise specific solver paths.

use ecss_core::solver::{format_trace, DeletionOrder, ImprovementKind, SolverConfig};
use ecss_core::*;

fn load(name: &str) -> Graph {
    let path = format!("{}/../../fixtures/{name}.ec2", env!("CARGO_MANIFEST_DIR"));
    parse_instance(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn solve(g: &Graph) -> SolveResult {
    solve_block(g, &SolverConfig::default()).unwrap()
}

#[test]
fn direct_improvement_fires() {
    let g = load("direct-improvement");
    let r = solve(&g);
    assert_eq!(
        format_trace(&g, &r.trace),
        "2\tdirect\t1\t0-1\t0-3,1-4\t6\t5\n"
    );
    assert_eq!(r.trace[0].kind, ImprovementKind::Direct { k: 1 });
    assert_eq!((r.sizes.step1, r.sizes.step2), (6, 5));
    assert!(is_2vcss(&g, &r.f));
}

#[test]
fn depth_two_recursion_fires() {
    let g = load("depth2-recursion");
    let r = solve(&g);
    assert_eq!(
        format_trace(&g, &r.trace),
        "2\tdirect\t1\t1-4\t0-1,1-5\t9\t8\n2\trecursive:2\t1\t1-4\t1-5,2-4\t8\t7\n"
    );
    let outer = &r.trace[1];
    assert_eq!(outer.level, 1);
    assert_eq!(r.trace[0].level, 2);
    assert_eq!((r.sizes.step1, r.f.len()), (8, 7));
}

#[test]
fn step_three_commit_fires() {
    let g = load("step3-commit");
    let r = solve(&g);
    assert_eq!(
        format_trace(&g, &r.trace),
        "3\tfinal\t1\t0-10\t0-6,4-10\t12\t11\n"
    );
    assert_eq!((r.sizes.step2, r.sizes.step3), (12, 11));
    assert_eq!(r.f.len(), g.n());
}

#[test]
fn cleanup_drops_an_edge() {
    let g = load("redundant-cleanup");
    let r = solve(&g);
    assert_eq!((r.f.len(), r.f_bar.len()), (9, 8));
    let dropped: Vec<_> = r.f.difference(&r.f_bar).iter().collect();
    assert_eq!(dropped.len(), 1);
    assert!(is_2ecss(&g, &r.f_bar));
    assert!(!is_2vcss(&g, &r.f_bar));
}

#[test]
fn initial_solution_depends_on_deletion_order() {
    let g = load("order-dependent");
    let asc = solve(&g);
    let shuffled = solve_block(
        &g,
        &SolverConfig {
            deletion_order: DeletionOrder::SeededShuffle(1),
            ..SolverConfig::default()
        },
    )
    .unwrap();
    assert_eq!((asc.initial.len(), shuffled.initial.len()), (7, 8));
}
