//! Exact solver for multiobjective integer linear programs.
//!
//! Given a bounded rational polytope `P = {x : Ax <= b}` with integer data and
//! an integer objective matrix `C`, the crate computes the maximal complete set
//! of nondominated lattice points of `P` (every optimal objective vector,
//! together with *all* points attaining it). All arithmetic is exact: the
//! solvers run on arbitrary-precision integers and rationals end to end.
//!
//! The machinery is built in layers:
//!
//! * [`exactmath`]: big-rational linear algebra (solving, determinants, LLL).
//! * [`polytope`]: half-space polytopes, vertex enumeration, tangent cones,
//!   cone triangulation, boundedness certificates.
//! * [`genfun`]: rational generating functions for lattice-point sets, signed
//!   unimodular cone decomposition, exact counting and truncated expansion.
//! * [`moilp`]: dominance tests and the two exact Pareto solvers (objective
//!   digging and hyperbox binary search) plus a brute-force oracle.
//! * [`cli`]: problem-file format, a reproducible knapsack generator, and the
//!   `moilp` command-line front end.

pub mod cli;
pub mod exactmath;
pub mod genfun;
pub mod moilp;
pub mod polytope;

pub use exactmath::{Int, IntVec, Rat, RatMatrix};
pub use genfun::{GenFun, GenFunTerm, ObjGenFun};
pub use moilp::{MoilpProblem, ParetoSet};
pub use polytope::{HPolytope, SimplicialCone, Vertex};
