use crate::connectivity::{is_2ecss, is_2vcss};
use crate::graph::{EdgeSubset, Graph};

use super::SolveResult;

fn without(f: &EdgeSubset, e: crate::graph::EdgeId) -> EdgeSubset {
    let mut h = f.clone();
    h.remove(e);
    h
}

/// Checks a solve result from scratch and returns every failed property.
///
/// Covered: `F` is 2-connected (2-edge-connected for multi-block input),
/// `F̄ ⊆ F` is 2-edge-connected without redundant edges, every step-1
/// block solution is inclusion-minimal, the step sizes do not increase and
/// every trace record lowers its cost.
pub fn audit(g: &Graph, r: &SolveResult) -> Vec<String> {
    let mut failures = Vec::new();
    let f_ok = if r.vcss_valid {
        is_2vcss(g, &r.f)
    } else {
        is_2ecss(g, &r.f)
    };
    if !f_ok {
        failures.push("F infeasible".to_string());
    }
    if !is_2ecss(g, &r.f_bar) {
        failures.push("Fbar infeasible".to_string());
    }
    if !r.f_bar.is_subset(&r.f) {
        failures.push("Fbar not inside F".to_string());
    }
    if let Some(e) = r.f_bar.iter().find(|&e| is_2ecss(g, &without(&r.f_bar, e))) {
        failures.push(format!("Fbar keeps redundant edge {e}"));
    }
    // with several blocks, minimality is per block; the union is still
    // minimal for 2-edge-connectivity only, which audit does not assume
    if r.vcss_valid {
        if let Some(e) = r
            .initial
            .iter()
            .find(|&e| is_2vcss(g, &without(&r.initial, e)))
        {
            failures.push(format!("initial solution not minimal at {e}"));
        }
    }
    let s = r.sizes;
    if !(s.step1 >= s.step2 && s.step2 >= s.step3 && s.step3 >= s.f_bar) {
        failures.push(format!(
            "step sizes increase: {} {} {} {}",
            s.step1, s.step2, s.step3, s.f_bar
        ));
    }
    if let Some(rec) = r.trace.iter().find(|t| t.cost_after >= t.cost_before) {
        failures.push(format!(
            "trace record does not improve: {} -> {}",
            rec.cost_before, rec.cost_after
        ));
    }
    failures
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;
    use crate::solver::{solve_block, solve_general, SolverConfig};

    #[test]
    fn clean_results_pass() {
        let g = named::complete(5);
        assert!(audit(&g, &solve_block(&g, &SolverConfig::default()).unwrap()).is_empty());
        let b = named::bowtie();
        assert!(audit(&b, &solve_general(&b, &SolverConfig::default()).unwrap()).is_empty());
    }

    #[test]
    fn tampering_is_caught() {
        let g = named::complete(4);
        let mut r = solve_block(&g, &SolverConfig::default()).unwrap();
        r.f_bar = g.full_subset();
        r.sizes.step2 = r.sizes.step1 + 1;
        let failures = audit(&g, &r);
        assert!(failures
            .iter()
            .any(|f| f.starts_with("Fbar keeps redundant")));
        assert!(failures.iter().any(|f| f.starts_with("Fbar not inside")));
        assert!(failures.iter().any(|f| f.starts_with("step sizes")));
    }
}
