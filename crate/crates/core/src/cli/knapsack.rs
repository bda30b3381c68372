//! Deterministic biobjective knapsack instances for benchmarks and tests.
//!
//! An instance of size `n` is `max Cx` subject to `a . x <= b`, per-variable
//! upper bounds, and nonnegativity, with all data drawn from a seeded
//! [`SplitMix64`] stream: weights `a` in `[0, 20]^n`, capacity `b` in
//! `[20, 50]`, and two objective rows in `[0, 20]^n`. Draw order is `a`, then
//! `b`, then `C` row by row. A draw whose weight row is all zero is discarded
//! and redrawn on the next substream (`seed + attempt * GOLDEN`), so the same
//! `(n, seed)` always yields the same instance. Zero objective rows are kept;
//! they only flatten the dominance order along that coordinate.

use super::problem_file::ProblemFile;
use crate::exactmath::{Int, IntVec};
use crate::moilp::MoilpProblem;
use crate::polytope::HPolytope;

/// SplitMix64 generator (Steele, Lea and Flood's `splitmix64`): the state
/// advances by the golden-ratio increment and the output is a bijective
/// mix of the state.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

const GOLDEN: u64 = 0x9E3779B97F4A7C15;

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        z ^ (z >> 31)
    }

    /// Uniform-enough draw in `0..bound` by modulo; the bias is irrelevant
    /// for instance generation.
    pub fn below(&mut self, bound: u64) -> u64 {
        self.next_u64() % bound
    }
}

/// The deterministic knapsack instance for `(n, seed)`, named `knap<n>`.
pub fn knapsack_instance(n: usize, seed: u64) -> ProblemFile {
    assert!(n >= 1, "instance needs at least one variable");
    for attempt in 0u64.. {
        let mut rng = SplitMix64::new(seed.wrapping_add(attempt.wrapping_mul(GOLDEN)));
        let a: Vec<u64> = (0..n).map(|_| rng.below(21)).collect();
        let b = 20 + rng.below(31);
        let c: Vec<Vec<u64>> = (0..2)
            .map(|_| (0..n).map(|_| rng.below(21)).collect())
            .collect();
        if a.iter().all(|&w| w == 0) {
            continue;
        }
        let mut rows = Vec::with_capacity(1 + 2 * n);
        let mut rhs = Vec::with_capacity(1 + 2 * n);
        rows.push(IntVec(a.iter().map(|&w| Int::from(w)).collect()));
        rhs.push(Int::from(b));
        for (i, &w) in a.iter().enumerate() {
            rows.push(IntVec::unit(n, i));
            rhs.push(Int::from(if w > 0 { b / w } else { b }));
        }
        for i in 0..n {
            rows.push(IntVec::unit(n, i).neg());
            rhs.push(Int::from(0));
        }
        let constraints = HPolytope::new(n, rows, rhs).expect("bounded by construction");
        let objectives = c
            .into_iter()
            .map(|row| IntVec(row.into_iter().map(Int::from).collect()))
            .collect();
        let problem = MoilpProblem::new(constraints, objectives).expect("valid by construction");
        return ProblemFile { name: Some(format!("knap{n}")), problem };
    }
    unreachable!("some substream yields a nonzero draw");
}
