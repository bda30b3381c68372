//! Objective-space digging: reads nondominated monomials directly off the
//! substituted generating function.
//!
//! After the substitution `z_i -> z_i t^{C e_i}`, every feasible point `x`
//! appears as `z^x t^{Cx}` with net coefficient 1. Each term spans a
//! candidate grid `lambda >= 0`; scanning the grids from the top of the
//! objective order and keeping per-term nondominated monomials yields
//! candidate points whose feasibility is then checked directly. Monomials of
//! infeasible points (present only through cancellation between terms) are
//! banned and the scan repeats until it stabilizes.

use super::{dominates, MoilpError, MoilpProblem, ParetoSet};
use crate::exactmath::{rat_ceil, rat_floor, Int, IntVec, Rat};
use crate::genfun::{
    normalize_signs, polytope_genfun, substitute_objectives, ObjGenFunTerm,
};
use crate::polytope::{feasible_point, maximize, LpOutcome};
use num_traits::{One, Zero};
use std::collections::BTreeSet;

#[derive(Debug, Clone)]
pub struct DiggingOptions {
    /// Skip candidate subgrids whose objective upper bound is strictly
    /// dominated by an already-kept monomial. Sound in all cases; disabling
    /// it forces a full grid scan (useful for validating the pruning).
    pub prune: bool,
}

impl Default for DiggingOptions {
    fn default() -> Self {
        DiggingOptions { prune: true }
    }
}

#[derive(Debug, Clone, Default)]
pub struct DiggingStats {
    /// Number of generating-function terms after substitution.
    pub terms: usize,
    /// Candidate-grid volume per term (0 when the term contributes none).
    pub box_volumes: Vec<Int>,
    /// Grid points evaluated per term, maximized over sweeps; never exceeds
    /// the corresponding volume.
    pub iterations: Vec<u64>,
    /// Scan passes until no new infeasible candidate appeared.
    pub sweeps: usize,
    /// Candidate points refuted by the feasibility check.
    pub banned: usize,
}

/// Integer bounds `[m_j, M_j]` for each grid coordinate of one term: the
/// smallest box containing `{lambda >= 0 : values + sum lambda_j w_j >= 0}`.
/// `None` when that region is empty; an error when it is unbounded, which
/// happens exactly when some step has `w_j = 0`.
pub fn digging_bounds(term: &ObjGenFunTerm) -> Result<Option<Vec<(Int, Int)>>, MoilpError> {
    let d = term.dens.len();
    if d == 0 {
        return Ok(Some(Vec::new()));
    }
    let k = term.values.len();
    for (index, (_, w)) in term.dens.iter().enumerate() {
        if w.is_zero() {
            return Err(MoilpError::UnboundedCandidateBox { index });
        }
    }
    let mut rows = Vec::with_capacity(k + d);
    let mut rhs = Vec::with_capacity(k + d);
    for s in 0..k {
        rows.push(IntVec(term.dens.iter().map(|(_, w)| -&w.0[s]).collect()));
        rhs.push(Rat::from_integer(term.values.0[s].clone()));
    }
    for j in 0..d {
        rows.push(IntVec::unit(d, j).neg());
        rhs.push(Rat::zero());
    }
    if feasible_point(&rows, &rhs, d).is_none() {
        return Ok(None);
    }
    let mut bounds = Vec::with_capacity(d);
    for j in 0..d {
        let mut obj = vec![Rat::zero(); d];
        obj[j] = Rat::one();
        let hi = match maximize(&rows, &rhs, &obj) {
            LpOutcome::Optimal { value, .. } => rat_floor(&value),
            LpOutcome::Unbounded => {
                return Err(MoilpError::UnboundedCandidateBox { index: j })
            }
            LpOutcome::Infeasible => unreachable!("feasibility checked above"),
        };
        obj[j] = -Rat::one();
        let lo = match maximize(&rows, &rhs, &obj) {
            LpOutcome::Optimal { value, .. } => rat_ceil(&-value),
            _ => unreachable!("minimum exists on a nonempty subset of lambda >= 0"),
        };
        bounds.push((lo, hi));
    }
    Ok(Some(bounds))
}

/// Per-term enumeration grid used by the solver: the public bound polytope
/// relaxed by the least objective value attainable in the feasible box, then
/// intersected with the preimage of that box. The preimage keeps the grid
/// finite even for steps with `w_j = 0` and never excludes a feasible point.
fn solver_bounds(
    term: &ObjGenFunTerm,
    value_lb: &IntVec,
    lo: &IntVec,
    hi: &IntVec,
) -> Option<(Vec<Int>, Vec<Int>)> {
    let d = term.dens.len();
    if d == 0 {
        return Some((Vec::new(), Vec::new()));
    }
    let k = term.values.len();
    let n = term.point.len();
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for s in 0..k {
        rows.push(IntVec(term.dens.iter().map(|(_, w)| -&w.0[s]).collect()));
        rhs.push(Rat::from_integer(&term.values.0[s] - &value_lb.0[s]));
    }
    for i in 0..n {
        let step_row: Vec<Int> = term.dens.iter().map(|(v, _)| v.0[i].clone()).collect();
        rows.push(IntVec(step_row.iter().map(|e| -e).collect()));
        rhs.push(Rat::from_integer(&term.point.0[i] - &lo.0[i]));
        rows.push(IntVec(step_row));
        rhs.push(Rat::from_integer(&hi.0[i] - &term.point.0[i]));
    }
    for j in 0..d {
        rows.push(IntVec::unit(d, j).neg());
        rhs.push(Rat::zero());
    }
    feasible_point(&rows, &rhs, d)?;
    let mut grid_lo = Vec::with_capacity(d);
    let mut grid_hi = Vec::with_capacity(d);
    for j in 0..d {
        let mut obj = vec![Rat::zero(); d];
        obj[j] = Rat::one();
        let top = match maximize(&rows, &rhs, &obj) {
            LpOutcome::Optimal { value, .. } => rat_floor(&value),
            // The box-preimage rows bound every coordinate.
            _ => unreachable!("grid polytope is bounded and feasible"),
        };
        obj[j] = -Rat::one();
        let bottom = match maximize(&rows, &rhs, &obj) {
            LpOutcome::Optimal { value, .. } => rat_ceil(&-value),
            _ => unreachable!("grid polytope is bounded and feasible"),
        };
        if bottom > top {
            return None;
        }
        grid_lo.push(bottom);
        grid_hi.push(top);
    }
    Some((grid_lo, grid_hi))
}

/// One term's scan state.
struct TermGrid<'a> {
    term: &'a ObjGenFunTerm,
    lo: Vec<Int>,
    hi: Vec<Int>,
}

impl TermGrid<'_> {
    /// Componentwise objective upper bound over a subgrid.
    fn value_upper_bound(&self, lo: &[Int], hi: &[Int]) -> IntVec {
        let k = self.term.values.len();
        let mut ub = self.term.values.clone();
        for (j, (_, w)) in self.term.dens.iter().enumerate() {
            for s in 0..k {
                let a = &w.0[s] * &lo[j];
                let b = &w.0[s] * &hi[j];
                ub.0[s] += a.max(b);
            }
        }
        ub
    }

    fn monomial_at(&self, lambda: &[Int]) -> (IntVec, IntVec) {
        let mut value = self.term.values.clone();
        let mut point = self.term.point.clone();
        for (j, (v, w)) in self.term.dens.iter().enumerate() {
            point = point.add(&v.scale(&lambda[j]));
            value = value.add(&w.scale(&lambda[j]));
        }
        (value, point)
    }

    /// Depth-first scan of a subgrid. Keeps `gamma` as the nondominated
    /// monomials seen so far (ties kept); `banned` points are skipped but
    /// never influence dominance.
    fn scan(
        &self,
        lo: &mut Vec<Int>,
        hi: &mut Vec<Int>,
        banned: &BTreeSet<IntVec>,
        prune: bool,
        gamma: &mut Vec<(IntVec, IntVec)>,
        iterations: &mut u64,
    ) {
        let split = (0..lo.len()).max_by_key(|&j| (&hi[j] - &lo[j]).max(Int::zero()));
        let split = match split {
            Some(j) if hi[j] > lo[j] => Some(j),
            _ => None,
        };
        let Some(j) = split else {
            // Single grid point.
            *iterations += 1;
            let (value, point) = self.monomial_at(lo);
            if banned.contains(&point) {
                return;
            }
            if gamma.iter().any(|(g, _)| dominates(g, &value)) {
                return;
            }
            gamma.retain(|(g, _)| !dominates(&value, g));
            gamma.push((value, point));
            return;
        };
        if prune && !gamma.is_empty() {
            let ub = self.value_upper_bound(lo, hi);
            if gamma.iter().any(|(g, _)| dominates(g, &ub)) {
                return;
            }
        }
        // Steps are sign-normalized downward in the objective order, so lower
        // lambda tends to carry larger values: scan it first.
        let lo_j = lo[j].clone();
        let hi_j = hi[j].clone();
        let mid = (&lo_j + &hi_j) / Int::from(2);
        hi[j] = mid.clone();
        self.scan(lo, hi, banned, prune, gamma, iterations);
        hi[j] = hi_j;
        lo[j] = &mid + Int::one();
        self.scan(lo, hi, banned, prune, gamma, iterations);
        lo[j] = lo_j;
    }
}

pub fn digging_solve(prob: &MoilpProblem) -> Result<ParetoSet, MoilpError> {
    digging_solve_with(prob, &DiggingOptions::default()).map(|(p, _)| p)
}

pub fn digging_solve_with(
    prob: &MoilpProblem,
    opts: &DiggingOptions,
) -> Result<(ParetoSet, DiggingStats), MoilpError> {
    let p = prob.constraints();
    let g = polytope_genfun(p)?;
    let mut stats = DiggingStats::default();
    if g.terms.is_empty() {
        return Ok((ParetoSet::empty(), stats));
    }
    let og = normalize_signs(&substitute_objectives(&g, prob.objectives()));
    let (lo, hi) = p
        .integer_bounding_box()
        .expect("nonzero genfun implies lattice points");
    // Least objective values over the bounding box: feasible candidates can
    // never fall below these, so grids may be clipped there.
    let value_lb = IntVec(
        prob.objectives()
            .iter()
            .map(|c| {
                c.0.iter()
                    .zip(lo.0.iter().zip(&hi.0))
                    .map(|(a, (l, h))| (a * l).min(a * h))
                    .sum()
            })
            .collect(),
    );
    stats.terms = og.terms.len();
    let grids: Vec<Option<TermGrid>> = og
        .terms
        .iter()
        .map(|term| {
            solver_bounds(term, &value_lb, &lo, &hi)
                .map(|(glo, ghi)| TermGrid { term, lo: glo, hi: ghi })
        })
        .collect();
    stats.box_volumes = grids
        .iter()
        .map(|g| match g {
            None => Int::zero(),
            Some(grid) => grid
                .lo
                .iter()
                .zip(&grid.hi)
                .map(|(l, h)| h - l + Int::one())
                .product(),
        })
        .collect();
    stats.iterations = vec![0; grids.len()];
    let mut banned: BTreeSet<IntVec> = BTreeSet::new();
    let gammas = loop {
        stats.sweeps += 1;
        let mut gammas: Vec<Vec<(IntVec, IntVec)>> = Vec::with_capacity(grids.len());
        for (i, grid) in grids.iter().enumerate() {
            let mut gamma = Vec::new();
            if let Some(grid) = grid {
                let mut iterations = 0u64;
                let mut glo = grid.lo.clone();
                let mut ghi = grid.hi.clone();
                grid.scan(&mut glo, &mut ghi, &banned, opts.prune, &mut gamma, &mut iterations);
                stats.iterations[i] = stats.iterations[i].max(iterations);
            }
            gammas.push(gamma);
        }
        let mut changed = false;
        for gamma in &gammas {
            for (_, point) in gamma {
                if !p.contains_int(point) && banned.insert(point.clone()) {
                    changed = true;
                }
            }
        }
        if !changed {
            break gammas;
        }
    };
    stats.banned = banned.len();
    let mut pool = Vec::new();
    for gamma in gammas {
        for (value, point) in gamma {
            debug_assert_eq!(value, prob.objective_values(&point));
            pool.push((value, point));
        }
    }
    Ok((ParetoSet::from_candidates(pool), stats))
}
