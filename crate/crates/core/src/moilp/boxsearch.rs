//! Hyperbox search: recursive bisection of the feasible box with exact
//! lattice counts at every node.
//!
//! Each node intersects the constraints with an integer box and counts the
//! lattice points through the generating function. Empty boxes and boxes
//! whose best possible objective vector is already dominated by a confirmed
//! nondominated value are discarded; boxes with few points are enumerated
//! directly, and each candidate is confirmed or refuted by an exact
//! dominated-point count over the full feasible region. Confirmation is
//! global, so traversal order affects only how much gets pruned, never the
//! answer.
//!
//! Pruning and candidate dismissal compare against every feasible value the
//! search has encountered, confirmed or not: dominance by a feasible witness
//! is exact regardless of whether the witness itself survives. Counting
//! tests therefore run only for genuinely new maximal values. Before the
//! descent the confirmed frontier is additionally seeded with provably
//! nondominated values from scalarized single-objective solves, which pins
//! the frontier's extremes and lets equal values inherit confirmation.

use super::{
    dominated_point_test, dominates, walk_lattice, MoilpError, MoilpProblem, ParetoSet,
    ValueFrontier,
};
use crate::exactmath::{Int, IntVec, Rat};
use crate::genfun::{count, polytope_genfun};
use crate::polytope::{HPolytope, PolytopeError, Vertex};
use num_traits::{One, Zero};
use std::collections::{BTreeMap, BTreeSet};

#[derive(Debug, Clone)]
pub struct BoxSearchOptions {
    /// Boxes holding at most this many lattice points are enumerated instead
    /// of split further.
    pub tau: u64,
    /// Node budget for each leaf enumeration.
    pub enum_budget: u64,
}

impl Default for BoxSearchOptions {
    fn default() -> Self {
        BoxSearchOptions { tau: 64, enum_budget: 1_000_000_000 }
    }
}

#[derive(Debug, Clone, Default)]
pub struct BoxSearchStats {
    /// Boxes visited.
    pub nodes: u64,
    /// Deepest visited node; the root sits at depth 0.
    pub max_depth: usize,
    /// Boxes enumerated point by point.
    pub leaves: u64,
    /// Lattice points enumerated at leaves.
    pub candidates: u64,
    /// Dominated-point counting tests run (one per surviving value).
    pub tests: u64,
    /// Candidate points confirmed nondominated.
    pub confirmed: u64,
    /// Nondominated points contributed by the scalarized warm start.
    pub seeds: u64,
}

struct Search<'a> {
    prob: &'a MoilpProblem,
    tau: Int,
    enum_budget: u64,
    depth_limit: usize,
    /// Confirmed nondominated values with every point achieving them; this
    /// becomes the answer.
    frontier: ValueFrontier,
    /// Maximal values of ALL feasible points encountered, confirmed or not.
    /// Dominance against any feasible witness is exact, so this frontier
    /// prunes boxes and dismisses candidates without counting tests.
    seen: ValueFrontier,
    /// Values a counting test has refuted; repeats skip the test.
    refuted: BTreeSet<IntVec>,
    stats: BoxSearchStats,
}

impl Search<'_> {
    /// Componentwise objective maximum over the box.
    fn value_upper_bound(&self, lo: &IntVec, hi: &IntVec) -> IntVec {
        IntVec(
            self.prob
                .objectives()
                .iter()
                .map(|c| {
                    c.0.iter()
                        .zip(lo.0.iter().zip(&hi.0))
                        .map(|(a, (l, h))| (a * l).max(a * h))
                        .sum()
                })
                .collect(),
        )
    }

    /// Componentwise floor of the objective maxima over the relaxation
    /// vertices; exact because a bounded LP attains its maximum at a vertex,
    /// and sound for pruning because every lattice point obeys it.
    fn relaxation_upper_bound(&self, vs: &[Vertex]) -> IntVec {
        IntVec(
            self.prob
                .objectives()
                .iter()
                .map(|c| {
                    vs.iter()
                        .map(|v| {
                            c.0.iter()
                                .zip(&v.point)
                                .map(|(a, x)| Rat::from_integer(a.clone()) * x)
                                .sum::<Rat>()
                        })
                        .max()
                        .expect("counted box has vertices")
                        .floor()
                        .to_integer()
                })
                .collect(),
        )
    }

    /// Seeds the frontier with provably nondominated values before the
    /// descent. A maximizer of the objective sum is nondominated, since a
    /// dominating point would raise the sum; likewise, per objective, a
    /// sum-maximizer within that objective's maximizer slice (a dominating
    /// point would stay in the slice and raise the sum). When the rows sum
    /// to zero no point can dominate another, so there is nothing to seed.
    /// Each seed costs one or two single-objective searches whose rows stay
    /// as small as the objective rows themselves; large scalarization
    /// weights would instead blow up the determinants in the confirmation
    /// counts.
    fn seed_frontier(&mut self, opts: &BoxSearchOptions) -> Result<(), MoilpError> {
        let p = self.prob.constraints();
        let total = self
            .prob
            .objectives()
            .iter()
            .fold(IntVec::zero(self.prob.dim()), |acc, c| acc.add(c));
        if total.is_zero() {
            return Ok(());
        }
        self.offer_seeds(scalar_maximizers(p, &total, opts)?);
        let mut done = vec![total.clone()];
        for c in self.prob.objectives().to_vec() {
            if c.is_zero() || done.contains(&c) {
                continue;
            }
            done.push(c.clone());
            let top = scalar_maximizers(p, &c, opts)?;
            let Some(first) = top.first() else { continue };
            let best = c.dot(first);
            let mut rows = p.rows().to_vec();
            let mut rhs = p.rhs().to_vec();
            rows.push(c.neg());
            rhs.push(-best);
            let slice = HPolytope::new(self.prob.dim(), rows, rhs)?;
            self.offer_seeds(scalar_maximizers(&slice, &total, opts)?);
        }
        Ok(())
    }

    fn offer_seeds(&mut self, points: Vec<IntVec>) {
        for x in points {
            let value = self.prob.objective_values(&x);
            self.stats.seeds += 1;
            self.seen.offer(value.clone(), x.clone());
            self.frontier.offer(value, x);
        }
    }

    fn visit(&mut self, lo: IntVec, hi: IntVec, depth: usize) -> Result<(), MoilpError> {
        self.stats.nodes += 1;
        self.stats.max_depth = self.stats.max_depth.max(depth);
        assert!(depth <= self.depth_limit, "bisection depth exceeds log bound");
        // The objective bound needs only the box corners, so a dominated box
        // is discarded before its lattice points are ever counted. Any seen
        // feasible value is a valid witness: whatever it dominates is
        // dominated, whether or not the witness itself survives.
        let ub = self.value_upper_bound(&lo, &hi);
        if self.seen.values().any(|v| dominates(v, &ub)) {
            return Ok(());
        }
        let q = self.prob.constraints().intersect_box(&lo, &hi);
        let points_in_box = count(&polytope_genfun(&q)?);
        if points_in_box.is_zero() {
            return Ok(());
        }
        if points_in_box <= self.tau {
            self.stats.leaves += 1;
            let mut points = Vec::new();
            walk_lattice(&q, self.enum_budget, &mut |x| points.push(x))?;
            assert_eq!(
                Int::from(points.len()),
                points_in_box,
                "lattice walk disagrees with generating-function count"
            );
            self.stats.candidates += points.len() as u64;
            return self.confirm_leaf(points);
        }
        // One vertex enumeration serves both the relaxation objective bound
        // (far tighter than the corner bound once the coupling rows bind) and
        // the integer bounding box for the split.
        let vs = q.vertices();
        let lp_ub = self.relaxation_upper_bound(&vs);
        if self.seen.values().any(|v| dominates(v, &lp_ub)) {
            return Ok(());
        }
        let (blo, bhi) = bounding_box(&vs, self.prob.dim());
        let splittable: Vec<usize> = (0..blo.len()).filter(|&j| bhi.0[j] > blo.0[j]).collect();
        assert!(!splittable.is_empty(), "single point exceeds leaf threshold");
        let mids: Vec<Int> = splittable
            .iter()
            .map(|&j| (&blo.0[j] + &bhi.0[j]) / Int::from(2))
            .collect();
        // Upper halves first: large objective values confirm early and prune
        // the rest.
        for mask in (0..1u64 << splittable.len()).rev() {
            let mut clo = blo.clone();
            let mut chi = bhi.clone();
            for (bit, &j) in splittable.iter().enumerate() {
                if mask >> bit & 1 == 1 {
                    clo.0[j] = &mids[bit] + Int::one();
                } else {
                    chi.0[j] = mids[bit].clone();
                }
            }
            self.visit(clo, chi, depth + 1)?;
        }
        Ok(())
    }

    /// Confirms or refutes the points of one enumerated leaf. Candidates are
    /// grouped by objective value first: a value dominated by another leaf
    /// value or by any previously seen feasible value is dominated by a
    /// feasible witness, a value equal to a confirmed value inherits its
    /// confirmation, and a value a test already refuted stays refuted, so
    /// only genuinely new maximal values need the exact dominated-point
    /// count. Confirmation is global, hence independent of traversal order.
    fn confirm_leaf(&mut self, points: Vec<IntVec>) -> Result<(), MoilpError> {
        let mut groups: BTreeMap<IntVec, Vec<IntVec>> = BTreeMap::new();
        for x in points {
            groups.entry(self.prob.objective_values(&x)).or_default().push(x);
        }
        let values: Vec<IntVec> = groups.keys().cloned().collect();
        for (value, xs) in groups {
            if values.iter().any(|w| dominates(w, &value)) {
                continue;
            }
            if self.seen.values().any(|w| dominates(w, &value)) {
                continue;
            }
            let confirmed = if self.frontier.values().any(|w| *w == value) {
                true
            } else if self.refuted.contains(&value) {
                false
            } else {
                self.stats.tests += 1;
                let nondominated = !dominated_point_test(self.prob, &xs[0])?;
                if !nondominated {
                    self.refuted.insert(value.clone());
                }
                nondominated
            };
            self.seen.offer(value.clone(), xs[0].clone());
            if confirmed {
                self.stats.confirmed += xs.len() as u64;
                for x in xs {
                    self.frontier.offer(value.clone(), x);
                }
            }
        }
        Ok(())
    }
}

pub fn box_search_solve(prob: &MoilpProblem) -> Result<ParetoSet, MoilpError> {
    box_search_solve_with(prob, &BoxSearchOptions::default()).map(|(p, _)| p)
}

pub fn box_search_solve_with(
    prob: &MoilpProblem,
    opts: &BoxSearchOptions,
) -> Result<(ParetoSet, BoxSearchStats), MoilpError> {
    let r = match prob.constraints().max_coordinate_bound() {
        Ok(r) => r,
        Err(PolytopeError::Empty) => return Ok((ParetoSet::empty(), BoxSearchStats::default())),
        Err(e) => return Err(e.into()),
    };
    let n = prob.dim();
    let mut search = Search {
        prob,
        tau: Int::from(opts.tau.max(1)),
        enum_budget: opts.enum_budget,
        // Every range halves per level, so depth never exceeds log2 of the
        // root range (ranges of one are never split).
        depth_limit: r.bits() as usize,
        frontier: ValueFrontier::new(),
        seen: ValueFrontier::new(),
        refuted: BTreeSet::new(),
        stats: BoxSearchStats::default(),
    };
    // Single-objective problems are the scalarized solves themselves; seeding
    // them would recurse.
    if prob.num_objectives() >= 2 {
        search.seed_frontier(opts)?;
    }
    search.visit(IntVec::zero(n), IntVec(vec![r; n]), 0)?;
    Ok((search.frontier.into_pareto(), search.stats))
}

/// All maximizers of a single linear objective over `p`, via the search
/// itself (single-objective problems skip seeding, so this cannot recurse).
fn scalar_maximizers(
    p: &HPolytope,
    objective: &IntVec,
    opts: &BoxSearchOptions,
) -> Result<Vec<IntVec>, MoilpError> {
    let derived = MoilpProblem::new(p.clone(), vec![objective.clone()])?;
    let (pareto, _) = box_search_solve_with(&derived, opts)?;
    Ok(pareto.points)
}

/// Integer bounds from the relaxation vertices: ceil of the minima, floor of
/// the maxima, covering every lattice point.
fn bounding_box(vs: &[Vertex], n: usize) -> (IntVec, IntVec) {
    let mut lo = IntVec::zero(n);
    let mut hi = IntVec::zero(n);
    for i in 0..n {
        let min = vs.iter().map(|v| &v.point[i]).min().expect("counted box has vertices");
        let max = vs.iter().map(|v| &v.point[i]).max().expect("counted box has vertices");
        lo.0[i] = min.ceil().to_integer();
        hi.0[i] = max.floor().to_integer();
    }
    (lo, hi)
}
