//! The cut LP relaxation of 2-ECSS, solved exactly.
//!
//! ```text
//! minimize  Σ_e x_e
//! subject   Σ_{e ∈ δ(S)} x_e ≥ 2   for all ∅ ⊂ S ⊂ V
//!           0 ≤ x_e ≤ 1
//! ```
//!
//! Constraints are generated lazily: start from the singleton cuts, solve the
//! restricted LP, ask [`min_global_cut`] for the lightest cut under `x`, add
//! it while it weighs less than 2. The restricted LP is solved by a dense
//! primal simplex over `BigRational` with Bland's rule, after substituting
//! `y = 1 - x` so that the origin is feasible.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::connectivity::{is_2ecss, min_global_cut};
use crate::graph::{Graph, VertexId};

use super::BoundsError;

/// A cut side `S`, stored as the sorted side that contains vertex 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CutConstraint {
    side: Vec<VertexId>,
}

impl CutConstraint {
    /// Canonicalizes `side` (either shore) of a proper cut of `0..n`.
    /// Returns `None` for the empty set or all of `V`.
    pub fn new(n: usize, side: &[VertexId]) -> Option<Self> {
        let mut in_side = vec![false; n];
        for &v in side {
            in_side[v] = true;
        }
        let count = in_side.iter().filter(|&&b| b).count();
        if count == 0 || count == n {
            return None;
        }
        let keep = in_side[0];
        Some(CutConstraint {
            side: (0..n).filter(|&v| in_side[v] == keep).collect(),
        })
    }

    pub fn side(&self) -> &[VertexId] {
        &self.side
    }

    fn crossing(&self, g: &Graph) -> Vec<usize> {
        let mut in_side = vec![false; g.n()];
        for &v in &self.side {
            in_side[v] = true;
        }
        g.edge_ids()
            .filter(|&e| {
                let (u, v) = g.endpoints(e);
                in_side[u] != in_side[v]
            })
            .map(|e| e.index())
            .collect()
    }
}

/// Optimal point of the restricted LP over `active_constraints`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpState {
    pub x: Vec<BigRational>,
    pub active_constraints: Vec<CutConstraint>,
    pub objective: BigRational,
}

fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Maximizes `Σ y` subject to `rows[i] · y ≤ rhs[i]`, `y ≥ 0`, with
/// `rhs ≥ 0`. Returns the optimal `y`.
fn simplex_max_sum(
    rows: &[Vec<BigRational>],
    rhs: &[BigRational],
    vars: usize,
) -> Vec<BigRational> {
    let r = rows.len();
    let cols = vars + r;
    // tableau rows: [coefficients (vars + slacks) | rhs]
    let mut t: Vec<Vec<BigRational>> = rows
        .iter()
        .zip(rhs)
        .enumerate()
        .map(|(i, (row, b))| {
            let mut line = row.clone();
            line.resize(cols, BigRational::zero());
            line[vars + i] = BigRational::one();
            line.push(b.clone());
            line
        })
        .collect();
    // reduced costs of the maximization, z - Σ y = 0
    let mut z: Vec<BigRational> = (0..=cols)
        .map(|j| {
            if j < vars {
                -BigRational::one()
            } else {
                BigRational::zero()
            }
        })
        .collect();
    let mut basis: Vec<usize> = (vars..cols).collect();

    // Bland: smallest improving column, then smallest basic index on ties
    while let Some(enter) = (0..cols).find(|&j| z[j].is_negative()) {
        let mut leave: Option<(usize, BigRational)> = None;
        for i in 0..r {
            if !t[i][enter].is_positive() {
                continue;
            }
            let ratio = &t[i][cols] / &t[i][enter];
            let better = match &leave {
                None => true,
                Some((li, best)) => ratio < *best || (ratio == *best && basis[i] < basis[*li]),
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        let (p, _) = leave.expect("objective is bounded by the y <= 1 rows");

        let pivot = t[p][enter].clone();
        for v in t[p].iter_mut() {
            *v /= &pivot;
        }
        let prow = t[p].clone();
        for (i, row) in t.iter_mut().enumerate() {
            if i == p || row[enter].is_zero() {
                continue;
            }
            let factor = row[enter].clone();
            for (a, b) in row.iter_mut().zip(&prow) {
                if !b.is_zero() {
                    *a -= &factor * b;
                }
            }
        }
        if !z[enter].is_zero() {
            let factor = z[enter].clone();
            for (a, b) in z.iter_mut().zip(&prow) {
                if !b.is_zero() {
                    *a -= &factor * b;
                }
            }
        }
        basis[p] = enter;
    }

    let mut y = vec![BigRational::zero(); vars];
    for (i, &b) in basis.iter().enumerate() {
        if b < vars {
            y[b] = t[i][cols].clone();
        }
    }
    y
}

/// Solves the LP restricted to `cuts`. Every cut must cross at least two
/// edges.
fn solve_restricted(g: &Graph, cuts: &[CutConstraint]) -> (Vec<BigRational>, BigRational) {
    let m = g.m();
    let mut rows = Vec::with_capacity(cuts.len() + m);
    let mut rhs = Vec::with_capacity(cuts.len() + m);
    for c in cuts {
        let crossing = c.crossing(g);
        debug_assert!(crossing.len() >= 2);
        let mut row = vec![BigRational::zero(); m];
        for &e in &crossing {
            row[e] = BigRational::one();
        }
        rows.push(row);
        // Σ (1 - y_e) ≥ 2  ⇔  Σ y_e ≤ |δ(S)| - 2
        rhs.push(int(crossing.len() as i64 - 2));
    }
    for e in 0..m {
        let mut row = vec![BigRational::zero(); m];
        row[e] = BigRational::one();
        rows.push(row);
        rhs.push(BigRational::one());
    }
    let y = simplex_max_sum(&rows, &rhs, m);
    let x: Vec<BigRational> = y.iter().map(|v| BigRational::one() - v).collect();
    let objective = x.iter().fold(BigRational::zero(), |acc, v| acc + v);
    (x, objective)
}

fn check_feasible(g: &Graph) -> Result<(), BoundsError> {
    if is_2ecss(g, &g.full_subset()) {
        Ok(())
    } else {
        Err(BoundsError::Infeasible)
    }
}

/// Optimum of the cut LP by constraint generation.
pub fn lp_cut_bound(g: &Graph) -> Result<LpState, BoundsError> {
    check_feasible(g)?;
    let n = g.n();
    let mut cuts: Vec<CutConstraint> = (0..n)
        .map(|v| CutConstraint::new(n, &[v]).expect("n >= 2"))
        .collect();
    let two = int(2);
    loop {
        let (x, objective) = solve_restricted(g, &cuts);
        let (value, side) = min_global_cut(g, &x).map_err(|_| BoundsError::Infeasible)?;
        if value >= two {
            return Ok(LpState {
                x,
                active_constraints: cuts,
                objective,
            });
        }
        let cut = CutConstraint::new(n, &side).expect("minimum cut side is proper");
        assert!(!cuts.contains(&cut), "violated cut was already active");
        cuts.push(cut);
    }
}

/// Optimum of the cut LP with all `2^(n-1) - 1` cuts written out.
pub fn lp_full_enumeration(g: &Graph) -> Result<BigRational, BoundsError> {
    check_feasible(g)?;
    let n = g.n();
    assert!(n <= 16, "full cut enumeration is exponential in n");
    let cuts: Vec<CutConstraint> = (0..(1u32 << (n - 1)) - 1)
        .map(|rest| {
            let side: Vec<VertexId> = std::iter::once(0)
                .chain((1..n).filter(|&v| rest >> (v - 1) & 1 == 1))
                .collect();
            CutConstraint::new(n, &side).expect("proper side")
        })
        .collect();
    Ok(solve_restricted(g, &cuts).1)
}
