//! Half-space polytopes `{x : Ax <= b}` over exact rationals.
//!
//! Everything downstream (generating functions, Pareto solvers) sees polytopes
//! through this module: construction validates boundedness, vertices are
//! enumerated exactly, and vertex tangent cones are exposed with primitive
//! integer rays ready for cone decomposition.

mod lp;
mod triangulate;

pub use lp::{feasible_point, maximize, LpOutcome};
pub use triangulate::triangulate_cone;

use crate::exactmath::{
    integer_affine_solve, kernel_vector, rank_int, rat_ceil, rat_floor, rat_to_string,
    rat_vec_to_primitive_int, solve_int_system, Int, IntVec, Rat,
};
use itertools::Itertools;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolytopeError {
    #[error("region is unbounded along direction {direction}")]
    Unbounded { direction: IntVec },
    #[error("expected {expected} entries, got {got}")]
    Shape { expected: usize, got: usize },
    #[error("dimension must be at least 1")]
    ZeroDim,
    #[error("point is not a vertex of the polytope")]
    NotAVertex,
    #[error("polytope has no points")]
    Empty,
    #[error("cone does not span the full ambient space")]
    ConeNotFullDim,
    #[error("cone contains a line")]
    ConeNotPointed,
    #[error("cone rays are linearly dependent")]
    ConeNotSimplicial,
}

/// A vertex: exact coordinates plus every constraint row tight there.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vertex {
    pub point: Vec<Rat>,
    pub tight_rows: Vec<usize>,
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.point.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", rat_to_string(c))?;
        }
        write!(f, ")")
    }
}

/// A full-dimensional simplicial cone with a sign, the working unit of the
/// signed decomposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialCone {
    pub apex: Vec<Rat>,
    pub rays: Vec<IntVec>,
    pub sign: i8,
}

impl SimplicialCone {
    /// Validates independence and primitivizes the rays.
    pub fn new(apex: Vec<Rat>, rays: Vec<IntVec>, sign: i8) -> Result<Self, PolytopeError> {
        let n = apex.len();
        if rays.len() != n || rays.iter().any(|r| r.len() != n) {
            return Err(PolytopeError::Shape {
                expected: n,
                got: rays.len(),
            });
        }
        debug_assert!(sign == 1 || sign == -1);
        let rays: Vec<IntVec> = rays.iter().map(IntVec::primitive).collect();
        if crate::exactmath::det_int_columns(&rays).is_zero() {
            return Err(PolytopeError::ConeNotSimplicial);
        }
        Ok(SimplicialCone { apex, rays, sign })
    }

    /// |det| of the ray matrix; 1 means a single-term generating function.
    pub fn index(&self) -> Int {
        crate::exactmath::det_int_columns(&self.rays).abs()
    }
}

/// A tangent cone at a vertex: its apex and extreme rays (possibly more than
/// the dimension when the vertex is degenerate).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TangentCone {
    pub apex: Vec<Rat>,
    pub rays: Vec<IntVec>,
}

/// Bounded region `{x : rows . x <= rhs}` with integer data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HPolytope {
    dim: usize,
    rows: Vec<IntVec>,
    rhs: Vec<Int>,
}

impl HPolytope {
    /// Validates shapes and boundedness. An empty region is accepted (it is
    /// trivially bounded) even when the constraint rows admit a recession
    /// direction.
    pub fn new(dim: usize, rows: Vec<IntVec>, rhs: Vec<Int>) -> Result<Self, PolytopeError> {
        if dim == 0 {
            return Err(PolytopeError::ZeroDim);
        }
        if rhs.len() != rows.len() {
            return Err(PolytopeError::Shape {
                expected: rows.len(),
                got: rhs.len(),
            });
        }
        if let Some(bad) = rows.iter().find(|r| r.len() != dim) {
            return Err(PolytopeError::Shape {
                expected: dim,
                got: bad.len(),
            });
        }
        let p = HPolytope { dim, rows, rhs };
        if let Some(direction) = p.recession_direction() {
            if !p.is_empty() {
                return Err(PolytopeError::Unbounded { direction });
            }
        }
        Ok(p)
    }

    /// Constructor for regions that are bounded by construction (box
    /// intersections, subsets of validated polytopes).
    pub fn new_bounded_unchecked(dim: usize, rows: Vec<IntVec>, rhs: Vec<Int>) -> Self {
        debug_assert!(dim >= 1);
        debug_assert_eq!(rows.len(), rhs.len());
        debug_assert!(rows.iter().all(|r| r.len() == dim));
        HPolytope { dim, rows, rhs }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rows(&self) -> &[IntVec] {
        &self.rows
    }

    pub fn rhs(&self) -> &[Int] {
        &self.rhs
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn contains_int(&self, p: &IntVec) -> bool {
        debug_assert_eq!(p.len(), self.dim);
        self.rows
            .iter()
            .zip(&self.rhs)
            .all(|(a, b)| a.dot(p) <= *b)
    }

    pub fn contains_rat(&self, p: &[Rat]) -> bool {
        debug_assert_eq!(p.len(), self.dim);
        self.rows
            .iter()
            .zip(&self.rhs)
            .all(|(a, b)| a.dot_rat(p) <= Rat::from_integer(b.clone()))
    }

    /// True when the region has no rational points.
    pub fn is_empty(&self) -> bool {
        let rhs: Vec<Rat> = self.rhs.iter().cloned().map(Rat::from_integer).collect();
        lp::feasible_point(&self.rows, &rhs, self.dim).is_none()
    }

    /// A nonzero integer direction of recession (`rows . d <= 0`), if any.
    pub fn recession_direction(&self) -> Option<IntVec> {
        // Search inside the box [-1,1]^n: the recession cone is nonzero iff
        // some coordinate reaches past 0 there.
        let mut rows = self.rows.clone();
        let mut rhs: Vec<Rat> = vec![Rat::zero(); rows.len()];
        for i in 0..self.dim {
            for s in [1i64, -1] {
                let mut r = IntVec::zero(self.dim);
                r.0[i] = Int::from(s);
                rows.push(r);
                rhs.push(Rat::one());
            }
        }
        for i in 0..self.dim {
            for sign in [1i64, -1] {
                let mut obj = vec![Rat::zero(); self.dim];
                obj[i] = Rat::from_integer(Int::from(sign));
                match lp::maximize(&rows, &rhs, &obj) {
                    LpOutcome::Optimal { value, point } if value.is_positive() => {
                        let d = rat_vec_to_primitive_int(&point);
                        debug_assert!(self
                            .rows
                            .iter()
                            .all(|a| !a.dot(&d).is_positive()));
                        return Some(d);
                    }
                    _ => {}
                }
            }
        }
        None
    }

    /// Indices of the rows tight at `p`.
    pub fn tight_rows_at(&self, p: &[Rat]) -> Vec<usize> {
        self.rows
            .iter()
            .zip(&self.rhs)
            .enumerate()
            .filter(|(_, (a, b))| a.dot_rat(p) == Rat::from_integer((*b).clone()))
            .map(|(i, _)| i)
            .collect()
    }

    /// All extreme points, exactly, in lexicographic coordinate order.
    ///
    /// Every rank-n subset of constraint rows is solved and the solution kept
    /// when feasible; a bounded nonempty polytope always has at least one.
    pub fn vertices(&self) -> Vec<Vertex> {
        let n = self.dim;
        let m = self.rows.len();
        let mut seen: BTreeMap<Vec<Rat>, ()> = BTreeMap::new();
        if m >= n {
            for subset in (0..m).combinations(n) {
                let rows: Vec<&IntVec> = subset.iter().map(|&i| &self.rows[i]).collect();
                let rhs: Vec<&Int> = subset.iter().map(|&i| &self.rhs[i]).collect();
                let Some(x) = solve_int_system(&rows, &rhs) else {
                    continue;
                };
                if self.contains_rat(&x) {
                    seen.entry(x).or_insert(());
                }
            }
        }
        seen.into_keys()
            .map(|point| {
                let tight_rows = self.tight_rows_at(&point);
                Vertex { point, tight_rows }
            })
            .collect()
    }

    /// The cone of feasible directions at a vertex, as extreme rays.
    pub fn tangent_cone(&self, v: &Vertex) -> Result<TangentCone, PolytopeError> {
        if !self.contains_rat(&v.point) {
            return Err(PolytopeError::NotAVertex);
        }
        let normals = self.tangent_normals(v);
        if rank_int(&normals) < self.dim {
            return Err(PolytopeError::NotAVertex);
        }
        Ok(TangentCone {
            apex: v.point.clone(),
            rays: extreme_rays_from_normals(&normals, self.dim),
        })
    }

    /// Primitive deduplicated normals of the rows tight at `v`; these generate
    /// the polar of the tangent cone.
    pub fn tangent_normals(&self, v: &Vertex) -> Vec<IntVec> {
        let tight = self.tight_rows_at(&v.point);
        let mut normals: Vec<IntVec> = tight.iter().map(|&i| self.rows[i].primitive()).collect();
        normals.sort();
        normals.dedup();
        normals
    }

    /// Smallest integer `R` with every vertex coordinate `<= R`.
    pub fn max_coordinate_bound(&self) -> Result<Int, PolytopeError> {
        let vs = self.vertices();
        let best = vs
            .iter()
            .flat_map(|v| v.point.iter())
            .max()
            .ok_or(PolytopeError::Empty)?;
        Ok(rat_ceil(best))
    }

    /// Componentwise integer bounds `[lo, hi]` covering every lattice point,
    /// from the vertex hull; `None` when empty.
    pub fn integer_bounding_box(&self) -> Option<(IntVec, IntVec)> {
        let vs = self.vertices();
        if vs.is_empty() {
            return None;
        }
        let mut lo = IntVec::zero(self.dim);
        let mut hi = IntVec::zero(self.dim);
        for i in 0..self.dim {
            let min = vs.iter().map(|v| &v.point[i]).min().unwrap();
            let max = vs.iter().map(|v| &v.point[i]).max().unwrap();
            lo.0[i] = rat_ceil(min);
            hi.0[i] = rat_floor(max);
        }
        Some((lo, hi))
    }

    /// Intersection with the integer box `[lo, hi]`, merging axis-parallel
    /// rows so repeated box refinements do not pile up constraint rows.
    pub fn intersect_box(&self, lo: &IntVec, hi: &IntVec) -> HPolytope {
        debug_assert_eq!(lo.len(), self.dim);
        debug_assert_eq!(hi.len(), self.dim);
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        // Tightest axis bounds seen so far, as rationals.
        let mut upper: Vec<Rat> = hi.0.iter().cloned().map(Rat::from_integer).collect();
        let mut lower: Vec<Rat> = lo.0.iter().cloned().map(Rat::from_integer).collect();
        for (a, b) in self.rows.iter().zip(&self.rhs) {
            let nz: Vec<usize> = (0..self.dim).filter(|&j| !a.0[j].is_zero()).collect();
            if nz.len() == 1 {
                let j = nz[0];
                let bound = Rat::new(b.clone(), a.0[j].clone());
                if a.0[j].is_positive() {
                    if bound < upper[j] {
                        upper[j] = bound;
                    }
                } else if bound > lower[j] {
                    lower[j] = bound;
                }
            } else {
                rows.push(a.clone());
                rhs.push(b.clone());
            }
        }
        for j in 0..self.dim {
            let (lp, lq) = (lower[j].numer().clone(), lower[j].denom().clone());
            let mut r = IntVec::zero(self.dim);
            r.0[j] = -lq;
            rows.push(r);
            rhs.push(-lp);
            let (up, uq) = (upper[j].numer().clone(), upper[j].denom().clone());
            let mut r = IntVec::zero(self.dim);
            r.0[j] = uq;
            rows.push(r);
            rhs.push(up);
        }
        HPolytope::new_bounded_unchecked(self.dim, rows, rhs)
    }
}

/// Extreme rays of the pointed full-dimensional cone `{d : normals . d <= 0}`.
///
/// Candidates come from rank n-1 subsets of the normals; a kernel vector of
/// such a subset is an extreme ray exactly when one of its orientations
/// satisfies every remaining inequality.
pub fn extreme_rays_from_normals(normals: &[IntVec], n: usize) -> Vec<IntVec> {
    let mut rays: Vec<IntVec> = Vec::new();
    for subset in (0..normals.len()).combinations(n - 1) {
        let sel: Vec<&IntVec> = subset.iter().map(|&i| &normals[i]).collect();
        let Some(z) = kernel_vector(&sel, n) else {
            continue;
        };
        // kernel_vector returns None only when sel has rank n; rank < n-1
        // gives a kernel vector lying in a face of dimension >= 2, which then
        // fails the extremality filter below only if it is not a ray, so the
        // sign test alone decides.
        for cand in [z.clone(), z.neg()] {
            if normals.iter().all(|a| !a.dot(&cand).is_positive()) {
                if rank_int(&subset.iter().map(|&i| normals[i].clone()).collect::<Vec<_>>())
                    == n - 1
                    && !rays.contains(&cand)
                {
                    rays.push(cand);
                }
                break;
            }
        }
    }
    rays.sort();
    rays
}

/// How a polytope's lattice point set reduces along its affine hull.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FlatReduction {
    /// No lattice points at all (empty region, or affine hull misses Z^n).
    NoLatticePoints,
    /// Affine hull is the whole space; no reduction needed.
    FullDim,
    /// Affine hull is a single (integer) point inside the region.
    SinglePoint(IntVec),
    /// Lattice points are `base + basis . y` for `y` ranging over `sub`.
    Reduced {
        base: IntVec,
        basis: Vec<IntVec>,
        sub: HPolytope,
    },
}

impl HPolytope {
    /// Detects implicit equality rows (tight at every vertex, hence on the
    /// whole region) and changes coordinates onto the affine hull's lattice.
    pub fn flat_reduction(&self) -> FlatReduction {
        let vs = self.vertices();
        if vs.is_empty() {
            return FlatReduction::NoLatticePoints;
        }
        let mut implicit: Vec<usize> = vs[0].tight_rows.clone();
        for v in &vs[1..] {
            implicit.retain(|i| v.tight_rows.contains(i));
            if implicit.is_empty() {
                break;
            }
        }
        if implicit.is_empty() {
            return FlatReduction::FullDim;
        }
        let eqs: Vec<IntVec> = implicit.iter().map(|&i| self.rows[i].clone()).collect();
        let rhs: Vec<Int> = implicit.iter().map(|&i| self.rhs[i].clone()).collect();
        // Rows tight everywhere with full rank force a unique rational point,
        // but the *lattice* can still be empty; both cases route through the
        // integer solver.
        let Some(lat) = integer_affine_solve(self.dim, &eqs, &rhs) else {
            return FlatReduction::NoLatticePoints;
        };
        if lat.basis.is_empty() {
            return if self.contains_int(&lat.base) {
                FlatReduction::SinglePoint(lat.base)
            } else {
                FlatReduction::NoLatticePoints
            };
        }
        let d = lat.basis.len();
        let mut rows = Vec::new();
        let mut rhs2 = Vec::new();
        for (a, b) in self.rows.iter().zip(&self.rhs) {
            let new_row = IntVec(lat.basis.iter().map(|col| a.dot(col)).collect());
            let new_b = b - a.dot(&lat.base);
            if new_row.is_zero() {
                debug_assert!(!new_b.is_negative(), "constant row violated on hull");
                continue;
            }
            rows.push(new_row);
            rhs2.push(new_b);
        }
        FlatReduction::Reduced {
            base: lat.base,
            basis: lat.basis,
            sub: HPolytope::new_bounded_unchecked(d, rows, rhs2),
        }
    }
}
