//! Lower bounds and exact optima for checking solver output.

mod exact;
mod lp;

use std::fmt::Write as _;

use num_rational::BigRational;
use thiserror::Error;

use crate::graph::{EdgeSubset, Graph};
use crate::solver::SolveResult;

pub use exact::{
    exact_opt, exact_opt_2ecss, exact_opt_2vcss, Connectivity, ExactLimits, DEFAULT_EXACT_LIMIT,
};
pub use lp::{lp_cut_bound, lp_full_enumeration, CutConstraint, LpState};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundsError {
    #[error("no feasible subgraph exists")]
    Infeasible,
    #[error("n={n} exceeds the exact limit {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("exact search ran out of time")]
    BudgetExceeded,
    #[error("ratio violated: 7*{size} > 9*{opt} for {which}")]
    RatioViolation {
        which: &'static str,
        size: usize,
        opt: usize,
    },
    #[error("bounds out of order: {0}")]
    SandwichViolation(String),
}

/// Every vertex needs two incident edges, so `opt >= n`.
pub fn degree_lower_bound(g: &Graph) -> usize {
    g.n()
}

/// `7 * size <= 9 * opt`, in integers.
pub fn check_ratio(which: &'static str, size: usize, opt: usize) -> Result<(), BoundsError> {
    if 7 * size <= 9 * opt {
        Ok(())
    } else {
        Err(BoundsError::RatioViolation { which, size, opt })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ReportOptions {
    pub exact: bool,
    pub lp: bool,
    pub limits: ExactLimits,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundReport {
    pub n: usize,
    pub m: usize,
    pub f: usize,
    pub f_bar: usize,
    pub degree_bound: usize,
    pub lp_value: Option<BigRational>,
    pub exact_ec: Option<usize>,
    /// `None` when not requested or when the graph is not 2-connected.
    pub exact_vc: Option<usize>,
    pub witness_ec: Option<EdgeSubset>,
    pub witness_vc: Option<EdgeSubset>,
    /// Why an exact optimum is missing although it was requested.
    pub exact_skipped: Option<BoundsError>,
}

impl BoundReport {
    /// `|F| / opt_ec`, when the optimum is known.
    pub fn ratio_f(&self) -> Option<f64> {
        self.exact_ec.map(|o| self.f as f64 / o as f64)
    }

    pub fn ratio_f_bar(&self) -> Option<f64> {
        self.exact_ec.map(|o| self.f_bar as f64 / o as f64)
    }

    /// Checks `degree_bound <= lp <= opt_ec <= opt_vc` over present fields.
    pub fn check_sandwich(&self) -> Result<(), BoundsError> {
        let deg = BigRational::from_integer(self.degree_bound.into());
        if let Some(lp) = &self.lp_value {
            if *lp < deg {
                return Err(BoundsError::SandwichViolation(format!(
                    "lp {lp} < degree bound {}",
                    self.degree_bound
                )));
            }
            if let Some(ec) = self.exact_ec {
                if *lp > BigRational::from_integer(ec.into()) {
                    return Err(BoundsError::SandwichViolation(format!(
                        "lp {lp} > opt_ec {ec}"
                    )));
                }
            }
        }
        if let Some(ec) = self.exact_ec {
            if ec < self.degree_bound {
                return Err(BoundsError::SandwichViolation(format!(
                    "opt_ec {ec} < degree bound {}",
                    self.degree_bound
                )));
            }
            if let Some(vc) = self.exact_vc {
                if vc < ec {
                    return Err(BoundsError::SandwichViolation(format!(
                        "opt_vc {vc} < opt_ec {ec}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Space-separated `key=value` pairs on one line; absent values are `-`.
    pub fn to_line(&self) -> String {
        fn opt<T: std::fmt::Display>(v: &Option<T>) -> String {
            v.as_ref()
                .map_or_else(|| "-".to_string(), |x| x.to_string())
        }
        fn ratio(v: Option<f64>) -> String {
            v.map_or_else(|| "-".to_string(), |r| format!("{r:?}"))
        }
        let mut out = String::new();
        write!(
            out,
            "n={} m={} F={} Fbar={} degree_bound={} lp={} opt_ec={} opt_vc={} ratio_F={} ratio_Fbar={}",
            self.n,
            self.m,
            self.f,
            self.f_bar,
            self.degree_bound,
            opt(&self.lp_value),
            opt(&self.exact_ec),
            opt(&self.exact_vc),
            ratio(self.ratio_f()),
            ratio(self.ratio_f_bar()),
        )
        .unwrap();
        out
    }
}

/// Collects the requested bounds for `g` and checks the solver output
/// against them. Ratio and sandwich violations are errors.
pub fn bound_report(
    g: &Graph,
    result: &SolveResult,
    opts: &ReportOptions,
) -> Result<BoundReport, BoundsError> {
    let report = assemble_report(g, result, opts)?;
    check_report(&report)?;
    Ok(report)
}

/// Like [`bound_report`] without the checks. An exact search that is too
/// large or runs out of time leaves the optima empty and sets
/// `exact_skipped`.
pub fn assemble_report(
    g: &Graph,
    result: &SolveResult,
    opts: &ReportOptions,
) -> Result<BoundReport, BoundsError> {
    let mut report = BoundReport {
        n: g.n(),
        m: g.m(),
        f: result.f.len(),
        f_bar: result.f_bar.len(),
        degree_bound: degree_lower_bound(g),
        lp_value: None,
        exact_ec: None,
        exact_vc: None,
        witness_ec: None,
        witness_vc: None,
        exact_skipped: None,
    };
    if opts.lp {
        report.lp_value = Some(lp_cut_bound(g)?.objective);
    }
    if opts.exact {
        match exact_opt(g, Connectivity::TwoEdge, &opts.limits) {
            Ok((ec, w)) => {
                report.exact_ec = Some(ec);
                report.witness_ec = Some(w);
            }
            Err(e @ (BoundsError::TooLarge { .. } | BoundsError::BudgetExceeded)) => {
                report.exact_skipped = Some(e);
                return Ok(report);
            }
            Err(e) => return Err(e),
        }
        match exact_opt(g, Connectivity::TwoVertex, &opts.limits) {
            Ok((vc, w)) => {
                report.exact_vc = Some(vc);
                report.witness_vc = Some(w);
            }
            Err(BoundsError::Infeasible) => {}
            Err(e @ BoundsError::BudgetExceeded) => report.exact_skipped = Some(e),
            Err(e) => return Err(e),
        }
    }
    Ok(report)
}

/// Ratio and sandwich checks on an assembled report.
pub fn check_report(report: &BoundReport) -> Result<(), BoundsError> {
    if let Some(opt) = report.exact_ec {
        check_ratio("F", report.f, opt)?;
        check_ratio("Fbar", report.f_bar, opt)?;
    }
    report.check_sandwich()
}
