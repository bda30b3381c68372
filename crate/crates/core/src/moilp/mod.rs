//! Multiobjective integer linear programs and their exact Pareto solvers.
//!
//! A problem maximizes `Cx` over the lattice points of a bounded polytope
//! `{x : Ax <= b}`. A point is *nondominated* when no feasible point is at
//! least as good in every objective and strictly better in one; the solvers
//! return the maximal complete set: every nondominated objective vector
//! together with **all** points attaining it.
//!
//! Three independent routes compute that set: objective-space digging over a
//! substituted generating function ([`digging_solve`]), recursive hyperbox
//! search with exact lattice counts ([`box_search_solve`]), and a
//! prefix-pruned enumeration oracle ([`brute_force_pareto`]) used for
//! cross-validation.

mod boxsearch;
mod digging;

pub use boxsearch::{box_search_solve, box_search_solve_with, BoxSearchOptions, BoxSearchStats};
pub use digging::{digging_bounds, digging_solve, digging_solve_with, DiggingOptions, DiggingStats};

use crate::exactmath::{Int, IntVec};
use crate::genfun::{count, polytope_genfun};
use crate::polytope::{HPolytope, PolytopeError};
use num_traits::{Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoilpError {
    #[error("problem needs at least one objective row")]
    NoObjectives,
    #[error("objective row {row} has {got} entries, expected {expected}")]
    Shape { row: usize, expected: usize, got: usize },
    #[error("feasible region extends below zero in coordinate {coordinate}")]
    NegativeRegion { coordinate: usize },
    #[error("point {0} is not feasible")]
    InfeasiblePoint(IntVec),
    #[error("enumeration budget of {0} nodes exceeded")]
    BudgetExceeded(u64),
    #[error("candidate box is unbounded: objective step {index} is zero")]
    UnboundedCandidateBox { index: usize },
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
}

/// `a` dominates `b`: at least as large in every coordinate, larger in one.
pub fn dominates(a: &IntVec, b: &IntVec) -> bool {
    a.ge(b) && a != b
}

/// A maximization problem `max Cx` over the lattice points of a bounded
/// polytope with nonnegative coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoilpProblem {
    constraints: HPolytope,
    objectives: Vec<IntVec>,
}

impl MoilpProblem {
    /// Validates shapes and that the feasible region lies in the nonnegative
    /// orthant (nonnegativity rows are part of the constraint system).
    pub fn new(constraints: HPolytope, objectives: Vec<IntVec>) -> Result<Self, MoilpError> {
        if objectives.is_empty() {
            return Err(MoilpError::NoObjectives);
        }
        let n = constraints.dim();
        for (row, c) in objectives.iter().enumerate() {
            if c.len() != n {
                return Err(MoilpError::Shape { row, expected: n, got: c.len() });
            }
        }
        if let Some((lo, _)) = constraints.integer_bounding_box() {
            for (coordinate, e) in lo.0.iter().enumerate() {
                if e.is_negative() {
                    return Err(MoilpError::NegativeRegion { coordinate });
                }
            }
        }
        Ok(MoilpProblem { constraints, objectives })
    }

    pub fn constraints(&self) -> &HPolytope {
        &self.constraints
    }

    pub fn objectives(&self) -> &[IntVec] {
        &self.objectives
    }

    /// Number of decision variables.
    pub fn dim(&self) -> usize {
        self.constraints.dim()
    }

    /// Number of objective rows.
    pub fn num_objectives(&self) -> usize {
        self.objectives.len()
    }

    /// The objective vector `Cx`.
    pub fn objective_values(&self, x: &IntVec) -> IntVec {
        IntVec(self.objectives.iter().map(|c| c.dot(x)).collect())
    }
}

/// The maximal complete set of nondominated solutions: all efficient points
/// (lexicographically sorted, duplicates removed) and the distinct objective
/// vectors they attain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParetoSet {
    pub points: Vec<IntVec>,
    pub values: Vec<IntVec>,
}

impl ParetoSet {
    pub fn empty() -> Self {
        ParetoSet { points: Vec::new(), values: Vec::new() }
    }

    /// Filters `(value, point)` candidates down to the nondominated ones,
    /// keeping every point of every surviving value.
    pub(crate) fn from_candidates(candidates: Vec<(IntVec, IntVec)>) -> Self {
        let mut frontier = ValueFrontier::new();
        for (value, point) in candidates {
            frontier.offer(value, point);
        }
        frontier.into_pareto()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Streaming Pareto filter over `(value, point)` pairs: keeps all maximal
/// values and every point per kept value.
pub(crate) struct ValueFrontier {
    entries: Vec<(IntVec, Vec<IntVec>)>,
}

impl ValueFrontier {
    pub fn new() -> Self {
        ValueFrontier { entries: Vec::new() }
    }

    pub fn offer(&mut self, value: IntVec, point: IntVec) {
        for (v, points) in &mut self.entries {
            if *v == value {
                if !points.contains(&point) {
                    points.push(point);
                }
                return;
            }
            if dominates(v, &value) {
                return;
            }
        }
        self.entries.retain(|(v, _)| !dominates(&value, v));
        self.entries.push((value, vec![point]));
    }

    /// Currently maximal values, in insertion order.
    pub fn values(&self) -> impl Iterator<Item = &IntVec> {
        self.entries.iter().map(|(v, _)| v)
    }

    pub fn into_pareto(self) -> ParetoSet {
        let mut points = Vec::new();
        let mut values = Vec::new();
        for (v, pts) in self.entries {
            values.push(v);
            points.extend(pts);
        }
        points.sort();
        points.dedup();
        values.sort();
        values.dedup();
        ParetoSet { points, values }
    }
}

/// Walks all lattice points of `p` in lexicographic order, pruning any prefix
/// that cannot be completed feasibly. `budget` caps the number of visited
/// enumeration nodes (partial assignments), not just feasible points.
pub(crate) fn walk_lattice(
    p: &HPolytope,
    budget: u64,
    visit: &mut dyn FnMut(IntVec),
) -> Result<u64, MoilpError> {
    let Some((lo, hi)) = p.integer_bounding_box() else {
        return Ok(0);
    };
    let n = p.dim();
    let rows = p.rows();
    let rhs = p.rhs();
    // suffix_min[r][d] = least possible contribution of coordinates d.. to
    // row r, given the bounding box.
    let mut suffix_min: Vec<Vec<Int>> = vec![vec![Int::zero(); n + 1]; rows.len()];
    for (r, row) in rows.iter().enumerate() {
        for d in (0..n).rev() {
            let a = &row.0[d];
            let c = (a * &lo.0[d]).min(a * &hi.0[d]);
            suffix_min[r][d] = &suffix_min[r][d + 1] + c;
        }
    }
    let mut x = lo.clone();
    let mut nodes: u64 = 0;
    let mut partial: Vec<Vec<Int>> = vec![vec![Int::zero(); rows.len()]; n + 1];
    fn descend(
        rows: &[IntVec],
        rhs: &[Int],
        suffix_min: &[Vec<Int>],
        lo: &IntVec,
        hi: &IntVec,
        n: usize,
        d: usize,
        x: &mut IntVec,
        partial: &mut Vec<Vec<Int>>,
        nodes: &mut u64,
        budget: u64,
        visit: &mut dyn FnMut(IntVec),
    ) -> Result<(), MoilpError> {
        if d == n {
            visit(x.clone());
            return Ok(());
        }
        let mut v = lo.0[d].clone();
        let mut acc: Vec<Int> = (0..rows.len())
            .map(|r| &partial[d][r] + &rows[r].0[d] * &v)
            .collect();
        while v <= hi.0[d] {
            *nodes += 1;
            if *nodes > budget {
                return Err(MoilpError::BudgetExceeded(budget));
            }
            let ok = (0..rows.len()).all(|r| &acc[r] + &suffix_min[r][d + 1] <= rhs[r]);
            if ok {
                x.0[d] = v.clone();
                partial[d + 1] = acc.clone();
                descend(rows, rhs, suffix_min, lo, hi, n, d + 1, x, partial, nodes, budget, visit)?;
            }
            for (r, row) in rows.iter().enumerate() {
                acc[r] += &row.0[d];
            }
            v += 1;
        }
        x.0[d] = lo.0[d].clone();
        Ok(())
    }
    descend(
        rows, rhs, &suffix_min, &lo, &hi, n, 0, &mut x, &mut partial, &mut nodes, budget, visit,
    )?;
    Ok(nodes)
}

/// All lattice points of `p`, in lexicographic order. Errors when the
/// enumeration tree exceeds `budget` nodes.
pub fn enumerate_feasible(p: &HPolytope, budget: u64) -> Result<Vec<IntVec>, MoilpError> {
    let mut out = Vec::new();
    walk_lattice(p, budget, &mut |x| out.push(x))?;
    Ok(out)
}

/// Reference solver: enumerates every feasible point and filters dominated
/// values on the fly. Exact but exponential; the budget guards runaway
/// instances.
pub fn brute_force_pareto(prob: &MoilpProblem, budget: u64) -> Result<ParetoSet, MoilpError> {
    let mut frontier = ValueFrontier::new();
    walk_lattice(prob.constraints(), budget, &mut |x| {
        let value = prob.objective_values(&x);
        frontier.offer(value, x);
    })?;
    Ok(frontier.into_pareto())
}

/// Decides whether some feasible point dominates `v` by counting the lattice
/// points of `{u in P : Cu >= Cv, sum(Cu) >= sum(Cv) + 1}`; the sum row makes
/// "greater and not equal" a closed condition. Errors when `v` is not
/// feasible.
pub fn dominated_point_test(prob: &MoilpProblem, v: &IntVec) -> Result<bool, MoilpError> {
    if !prob.constraints().contains_int(v) {
        return Err(MoilpError::InfeasiblePoint(v.clone()));
    }
    let p = prob.constraints();
    let mut rows = p.rows().to_vec();
    let mut rhs = p.rhs().to_vec();
    let values = prob.objective_values(v);
    let mut sigma = IntVec::zero(p.dim());
    let mut sigma_v = Int::zero();
    for (c, cv) in prob.objectives().iter().zip(&values.0) {
        rows.push(c.neg());
        rhs.push(-cv);
        sigma = sigma.add(c);
        sigma_v += cv;
    }
    rows.push(sigma.neg());
    rhs.push(-sigma_v - Int::from(1));
    let q = HPolytope::new_bounded_unchecked(p.dim(), rows, rhs);
    Ok(count(&polytope_genfun(&q)?).is_positive())
}

/// The dominance-pair polytope in `2n` variables `(u, v)`: both points
/// feasible and `Cu` strictly dominating `Cv`. Its lattice-point count is the
/// number of ordered dominating pairs, a useful instance diagnostic.
pub fn build_pc(prob: &MoilpProblem) -> Result<HPolytope, MoilpError> {
    let p = prob.constraints();
    let n = p.dim();
    let pad = |left: &IntVec, right: &IntVec| {
        let mut entries = left.0.clone();
        entries.extend(right.0.iter().cloned());
        IntVec(entries)
    };
    let zero = IntVec::zero(n);
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for (a, b) in p.rows().iter().zip(p.rhs()) {
        rows.push(pad(a, &zero));
        rhs.push(b.clone());
    }
    for (a, b) in p.rows().iter().zip(p.rhs()) {
        rows.push(pad(&zero, a));
        rhs.push(b.clone());
    }
    let mut sigma = IntVec::zero(n);
    for c in prob.objectives() {
        rows.push(pad(&c.neg(), c));
        rhs.push(Int::zero());
        sigma = sigma.add(c);
    }
    rows.push(pad(&sigma.neg(), &sigma));
    rhs.push(Int::from(-1));
    Ok(HPolytope::new(2 * n, rows, rhs)?)
}

/// Maximizes a single linear objective over the lattice points of `p`,
/// returning the optimum and every point attaining it.
pub fn solve_single_objective(
    p: &HPolytope,
    c: &IntVec,
) -> Result<(Int, Vec<IntVec>), MoilpError> {
    let prob = MoilpProblem::new(p.clone(), vec![c.clone()])?;
    let pareto = box_search_solve(&prob)?;
    if pareto.is_empty() {
        return Err(MoilpError::Polytope(PolytopeError::Empty));
    }
    let value = c.dot(&pareto.points[0]);
    Ok((value, pareto.points))
}

/// Maximizes `nu . x` over the Pareto set of `prob`: returns the optimum, all
/// nondominated points attaining it, and the Pareto set itself.
pub fn optimize_over_pareto(
    prob: &MoilpProblem,
    nu: &IntVec,
) -> Result<(Int, Vec<IntVec>, ParetoSet), MoilpError> {
    let pareto = box_search_solve(prob)?;
    if pareto.is_empty() {
        return Err(MoilpError::Polytope(PolytopeError::Empty));
    }
    let best = pareto
        .points
        .iter()
        .map(|x| nu.dot(x))
        .max()
        .expect("nonempty pareto set");
    let argmax = pareto
        .points
        .iter()
        .filter(|x| nu.dot(x) == best)
        .cloned()
        .collect();
    Ok((best, argmax, pareto))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn iv(v: &[i64]) -> IntVec {
        IntVec::from_i64(v)
    }

    fn pentagon() -> HPolytope {
        crate::polytope::tests::sample_pentagon()
    }

    fn pentagon_problem(objectives: Vec<IntVec>) -> MoilpProblem {
        MoilpProblem::new(pentagon(), objectives).unwrap()
    }

    #[test]
    fn dominance_is_strict() {
        assert!(dominates(&iv(&[2, 3]), &iv(&[2, 2])));
        assert!(dominates(&iv(&[3, 3]), &iv(&[2, 2])));
        assert!(!dominates(&iv(&[2, 2]), &iv(&[2, 2])));
        assert!(!dominates(&iv(&[3, 1]), &iv(&[2, 2])));
    }

    #[test]
    fn problem_validation() {
        assert!(matches!(
            MoilpProblem::new(pentagon(), vec![]),
            Err(MoilpError::NoObjectives)
        ));
        assert!(matches!(
            MoilpProblem::new(pentagon(), vec![iv(&[1])]),
            Err(MoilpError::Shape { row: 0, expected: 2, got: 1 })
        ));
        let shifted = HPolytope::new(
            1,
            vec![iv(&[1]), iv(&[-1])],
            vec![Int::from(4), Int::from(2)],
        )
        .unwrap();
        assert!(matches!(
            MoilpProblem::new(shifted, vec![iv(&[1])]),
            Err(MoilpError::NegativeRegion { coordinate: 0 })
        ));
    }

    #[test]
    fn pentagon_enumeration_is_lexicographic_and_complete() {
        let points = enumerate_feasible(&pentagon(), 1_000).unwrap();
        assert_eq!(points.len(), 10);
        assert_eq!(points[0], iv(&[1, 1]));
        assert_eq!(points[9], iv(&[4, 1]));
        let mut sorted = points.clone();
        sorted.sort();
        assert_eq!(points, sorted);
        for x in &points {
            assert!(pentagon().contains_int(x));
        }
    }

    #[test]
    fn enumeration_budget_is_enforced() {
        assert!(matches!(
            enumerate_feasible(&pentagon(), 2),
            Err(MoilpError::BudgetExceeded(2))
        ));
    }

    #[test]
    fn brute_force_pentagon_frontier() {
        let prob = pentagon_problem(vec![iv(&[1, 0]), iv(&[0, 1])]);
        let pareto = brute_force_pareto(&prob, 1_000).unwrap();
        assert_eq!(pareto.points, vec![iv(&[2, 3]), iv(&[3, 2]), iv(&[4, 1])]);
        assert_eq!(pareto.values, pareto.points);
    }

    #[test]
    fn frontier_keeps_ties_and_drops_dominated() {
        let mut f = ValueFrontier::new();
        f.offer(iv(&[5]), iv(&[2, 3]));
        f.offer(iv(&[4]), iv(&[3, 1]));
        f.offer(iv(&[5]), iv(&[3, 2]));
        f.offer(iv(&[5]), iv(&[2, 3]));
        let pareto = f.into_pareto();
        assert_eq!(pareto.values, vec![iv(&[5])]);
        assert_eq!(pareto.points, vec![iv(&[2, 3]), iv(&[3, 2])]);
    }

    #[test]
    fn dominated_point_test_matches_definition() {
        let prob = pentagon_problem(vec![iv(&[1, 0]), iv(&[0, 1])]);
        assert!(dominated_point_test(&prob, &iv(&[1, 1])).unwrap());
        assert!(dominated_point_test(&prob, &iv(&[2, 2])).unwrap());
        assert!(!dominated_point_test(&prob, &iv(&[2, 3])).unwrap());
        assert!(!dominated_point_test(&prob, &iv(&[4, 1])).unwrap());
        assert!(matches!(
            dominated_point_test(&prob, &iv(&[0, 0])),
            Err(MoilpError::InfeasiblePoint(_))
        ));
    }

    #[test]
    fn dominance_pair_polytope_counts_ordered_pairs() {
        let prob = pentagon_problem(vec![iv(&[1, 0]), iv(&[0, 1])]);
        let pc = build_pc(&prob).unwrap();
        let pairs = count(&polytope_genfun(&pc).unwrap());
        // Independent oracle: test all ordered pairs of feasible points.
        let points = enumerate_feasible(prob.constraints(), 1_000).unwrap();
        let mut expected = Int::zero();
        for u in &points {
            for v in &points {
                if dominates(&prob.objective_values(u), &prob.objective_values(v)) {
                    expected += Int::one();
                }
            }
        }
        assert_eq!(expected, Int::from(28));
        assert_eq!(pairs, expected);
    }

    #[test]
    fn single_objective_optima_with_ties() {
        let (best, points) = solve_single_objective(&pentagon(), &iv(&[1, 1])).unwrap();
        assert_eq!(best, Int::from(5));
        assert_eq!(points, vec![iv(&[2, 3]), iv(&[3, 2]), iv(&[4, 1])]);
        let (best, points) = solve_single_objective(&pentagon(), &iv(&[0, 1])).unwrap();
        assert_eq!(best, Int::from(3));
        assert_eq!(points, vec![iv(&[1, 3]), iv(&[2, 3])]);
    }

    #[test]
    fn single_objective_on_empty_region_errors() {
        let empty = HPolytope::new(
            1,
            vec![iv(&[1]), iv(&[-1])],
            vec![Int::from(-1), Int::zero()],
        )
        .unwrap();
        assert!(matches!(
            solve_single_objective(&empty, &iv(&[1])),
            Err(MoilpError::Polytope(PolytopeError::Empty))
        ));
    }

    #[test]
    fn linear_reoptimization_over_the_frontier() {
        let prob = pentagon_problem(vec![iv(&[1, 0]), iv(&[0, 1])]);
        let (best, argmax, pareto) = optimize_over_pareto(&prob, &iv(&[1, 0])).unwrap();
        assert_eq!(best, Int::from(4));
        assert_eq!(argmax, vec![iv(&[4, 1])]);
        assert_eq!(pareto.len(), 3);
        let (best, argmax, _) = optimize_over_pareto(&prob, &iv(&[1, 1])).unwrap();
        assert_eq!(best, Int::from(5));
        assert_eq!(argmax.len(), 3);
    }
}
