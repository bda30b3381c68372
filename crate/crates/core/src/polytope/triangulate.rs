//! Triangulation of pointed full-dimensional cones into simplicial cones.

use super::{PolytopeError, SimplicialCone};
use crate::exactmath::{
    integer_affine_solve, kernel_vector, rank_int, solve_tall_system, Int, IntVec, Rat,
};
use itertools::Itertools;
use num_traits::{One, Signed, Zero};

/// Splits `cone(rays)` into simplicial cones covering it with pairwise
/// disjoint interiors, all carrying sign +1 and the given apex.
///
/// The rays must generate a pointed cone spanning the whole space. The result
/// is deterministic: rays are primitivized, deduplicated and sorted, and the
/// recursion always pulls from the lexicographically smallest ray.
pub fn triangulate_cone(
    apex: &[Rat],
    rays: &[IntVec],
) -> Result<Vec<SimplicialCone>, PolytopeError> {
    let n = apex.len();
    let mut gens: Vec<IntVec> = rays
        .iter()
        .filter(|r| !r.is_zero())
        .map(IntVec::primitive)
        .collect();
    gens.sort();
    gens.dedup();
    if gens.iter().any(|r| r.len() != n) || rank_int(&gens) < n {
        return Err(PolytopeError::ConeNotFullDim);
    }
    if !is_pointed(&gens, n) {
        return Err(PolytopeError::ConeNotPointed);
    }
    pull_triangulate(&gens, n)
        .into_iter()
        .map(|cell| SimplicialCone::new(apex.to_vec(), cell, 1))
        .collect()
}

/// Pointedness of `cone(gens)`: some functional is strictly negative on every
/// generator exactly when the cone contains no line.
fn is_pointed(gens: &[IntVec], n: usize) -> bool {
    let rhs = vec![-Rat::one(); gens.len()];
    super::lp::feasible_point(gens, &rhs, n).is_some()
}

/// Recursive pulling triangulation.
///
/// Contract: gens are primitive, deduplicated, sorted, full-rank in their
/// ambient dimension, and generate a pointed cone. Each returned cell is a
/// linearly independent subset of gens.
fn pull_triangulate(gens: &[IntVec], dim: usize) -> Vec<Vec<IntVec>> {
    if gens.len() == dim {
        return vec![gens.to_vec()];
    }
    let pivot = &gens[0];
    let mut cells = Vec::new();
    for (normal, on_facet) in enumerate_facets(gens, dim) {
        if normal.dot(pivot).is_zero() {
            continue;
        }
        // Work inside the facet's hyperplane lattice: rewrite its rays in a
        // basis of {x : normal . x = 0} and recurse one dimension down.
        let lat = integer_affine_solve(dim, &[normal], &[Int::zero()])
            .expect("homogeneous system is always solvable");
        debug_assert_eq!(lat.basis.len(), dim - 1);
        let mut sub_rays: Vec<IntVec> = on_facet
            .iter()
            .map(|r| {
                let coords = solve_tall_system(&lat.basis, &r.to_rat())
                    .expect("facet ray lies in the hyperplane");
                IntVec(
                    coords
                        .into_iter()
                        .map(|c| {
                            debug_assert!(c.is_integer());
                            c.to_integer()
                        })
                        .collect(),
                )
            })
            .collect();
        sub_rays.sort();
        for cell in pull_triangulate(&sub_rays, dim - 1) {
            let mut lifted: Vec<IntVec> = cell
                .iter()
                .map(|y| {
                    let mut x = IntVec::zero(dim);
                    for (c, b) in y.0.iter().zip(&lat.basis) {
                        x = x.add(&b.scale(c));
                    }
                    x
                })
                .collect();
            lifted.push(pivot.clone());
            cells.push(lifted);
        }
    }
    cells
}

/// Facets of the full-dimensional cone `cone(gens)` as pairs of an outer
/// normal (gens on the nonpositive side) and the generators lying on it.
fn enumerate_facets(gens: &[IntVec], dim: usize) -> Vec<(IntVec, Vec<IntVec>)> {
    let mut facets: Vec<(IntVec, Vec<IntVec>)> = Vec::new();
    for subset in (0..gens.len()).combinations(dim - 1) {
        let sel: Vec<&IntVec> = subset.iter().map(|&i| &gens[i]).collect();
        let Some(eta) = kernel_vector(&sel, dim) else {
            continue;
        };
        let pos = gens.iter().any(|r| eta.dot(r).is_positive());
        let neg = gens.iter().any(|r| eta.dot(r).is_negative());
        let normal = match (pos, neg) {
            (true, false) => eta.neg(),
            (false, true) => eta,
            // All generators on the hyperplane contradicts full rank; both
            // signs present means the subset does not span a facet.
            _ => continue,
        };
        let on: Vec<IntVec> = gens
            .iter()
            .filter(|r| normal.dot(r).is_zero())
            .cloned()
            .collect();
        if rank_int(&on) == dim - 1 && !facets.iter().any(|(f, _)| *f == normal) {
            facets.push((normal, on));
        }
    }
    facets.sort_by(|a, b| a.0.cmp(&b.0));
    facets
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{det_int_columns, rat, solve_linear, RatMatrix};
    use num_traits::One;

    fn iv(v: &[i64]) -> IntVec {
        IntVec::from_i64(v)
    }

    fn zeros(n: usize) -> Vec<Rat> {
        vec![Rat::zero(); n]
    }

    #[test]
    fn simplicial_input_passes_through() {
        let rays = vec![iv(&[1, 0]), iv(&[1, 2])];
        let cones = triangulate_cone(&zeros(2), &rays).unwrap();
        assert_eq!(cones.len(), 1);
        assert_eq!(cones[0].rays, rays);
        assert_eq!(cones[0].sign, 1);
    }

    #[test]
    fn redundant_ray_dropped_in_2d() {
        // (1,1) lies inside cone((1,0),(0,1)) and is on no facet, so it
        // vanishes from the triangulation.
        let cones = triangulate_cone(&zeros(2), &[iv(&[1, 0]), iv(&[1, 1]), iv(&[0, 1])]).unwrap();
        assert_eq!(cones.len(), 1);
        assert_eq!(cones[0].rays, vec![iv(&[1, 0]), iv(&[0, 1])]);
        assert!(!det_int_columns(&cones[0].rays).is_zero());
    }

    #[test]
    fn rejects_degenerate_inputs() {
        assert_eq!(
            triangulate_cone(&zeros(2), &[iv(&[1, 0])]).unwrap_err(),
            PolytopeError::ConeNotFullDim
        );
        assert_eq!(
            triangulate_cone(&zeros(2), &[iv(&[1, 0]), iv(&[-1, 0]), iv(&[0, 1])]).unwrap_err(),
            PolytopeError::ConeNotPointed
        );
    }

    #[test]
    fn scaled_ray_is_primitivized() {
        let cones = triangulate_cone(&zeros(1), &[iv(&[3])]).unwrap();
        assert_eq!(cones.len(), 1);
        assert_eq!(cones[0].rays, vec![iv(&[1])]);
    }

    /// Membership of a lattice point in cone(rays): exact LP feasibility of
    /// x = sum lambda_i rays_i, lambda >= 0.
    fn in_cone(rays: &[IntVec], x: &IntVec) -> bool {
        let n = x.len();
        let k = rays.len();
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for i in 0..n {
            let row = IntVec(rays.iter().map(|r| r.0[i].clone()).collect());
            let b = Rat::from_integer(x.0[i].clone());
            rows.push(row.clone());
            rhs.push(b.clone());
            rows.push(row.neg());
            rhs.push(-b);
        }
        for j in 0..k {
            rows.push(IntVec::unit(k, j).neg());
            rhs.push(Rat::zero());
        }
        super::super::lp::feasible_point(&rows, &rhs, k).is_some()
    }

    /// Half-open membership: x in the simplicial cone, excluding the facets
    /// that face away from the generic interior witness w.
    fn half_open_contains(cell: &[IntVec], w: &[Rat], x: &IntVec) -> bool {
        let m = RatMatrix::from_int_columns(cell);
        let lam = solve_linear(&m, &x.to_rat()).unwrap();
        let mu = solve_linear(&m, w).unwrap();
        lam.iter().zip(&mu).all(|(l, u)| {
            debug_assert!(!u.is_zero(), "witness must be generic");
            if u.is_negative() {
                l.is_positive()
            } else {
                !l.is_negative()
            }
        })
    }

    /// A witness interior to the triangulated cone and off every cell's facet
    /// hyperplanes: perturb the ray sum until all cell coordinates are
    /// nonzero.
    fn generic_witness(gens: &[IntVec], cells: &[Vec<IntVec>]) -> Vec<Rat> {
        let n = gens[0].len();
        let mut base = vec![Rat::zero(); n];
        for g in gens {
            for i in 0..n {
                base[i] += Rat::from_integer(g.0[i].clone());
            }
        }
        let mut scale = Int::one();
        loop {
            scale *= Int::from(16);
            let mut s = Int::one();
            let mut w = base.clone();
            for item in w.iter_mut() {
                *item = &*item * Rat::from_integer(scale.clone()) + Rat::from_integer(s.clone());
                s *= Int::from(3);
            }
            let coords: Vec<Vec<Rat>> = cells
                .iter()
                .map(|cell| {
                    let m = RatMatrix::from_int_columns(cell);
                    solve_linear(&m, &w).unwrap()
                })
                .collect();
            let generic = coords.iter().flatten().all(|c| !c.is_zero());
            // Interior to the union: strictly inside some cell.
            let interior = coords
                .iter()
                .any(|lam| lam.iter().all(|c| c.is_positive()));
            if generic && interior {
                return w;
            }
        }
    }

    /// On every box point, the half-open cells must sum to the cone
    /// indicator: each cone point in exactly one cell, outside points in
    /// none.
    fn check_partition(gens: &[IntVec], lo: i64, hi: i64) {
        let n = gens[0].len();
        let cones = triangulate_cone(&zeros(n), gens).unwrap();
        let cells: Vec<Vec<IntVec>> = cones.iter().map(|c| c.rays.clone()).collect();
        let w = generic_witness(gens, &cells);
        let mut point = vec![lo; n];
        loop {
            let x = iv(&point);
            let covered = cells
                .iter()
                .filter(|cell| half_open_contains(cell, &w, &x))
                .count();
            assert_eq!(
                covered,
                usize::from(in_cone(gens, &x)),
                "point {x} covered {covered} times"
            );
            let mut i = 0;
            while i < n && point[i] == hi {
                point[i] = lo;
                i += 1;
            }
            if i == n {
                break;
            }
            point[i] += 1;
        }
    }

    #[test]
    fn square_cone_splits_into_two() {
        // Cone over a unit square at height 1.
        let gens = vec![iv(&[0, 0, 1]), iv(&[0, 1, 1]), iv(&[1, 0, 1]), iv(&[1, 1, 1])];
        let cones = triangulate_cone(&zeros(3), &gens).unwrap();
        assert_eq!(cones.len(), 2);
        check_partition(&gens, -5, 5);
    }

    #[test]
    fn hexagonal_cone_partition() {
        // Cone over a hexagon: four pulls from the lex-min ray.
        let gens = vec![
            iv(&[2, 0, 1]),
            iv(&[1, 2, 1]),
            iv(&[-1, 2, 1]),
            iv(&[-2, 0, 1]),
            iv(&[-1, -2, 1]),
            iv(&[1, -2, 1]),
        ];
        let cones = triangulate_cone(&zeros(3), &gens).unwrap();
        assert_eq!(cones.len(), 4);
        check_partition(&gens, -3, 3);
    }

    #[test]
    fn two_dim_fan_partition() {
        let gens = vec![iv(&[1, 0]), iv(&[2, 1]), iv(&[1, 1]), iv(&[1, 2]), iv(&[0, 1])];
        check_partition(&gens, -4, 6);
    }

    #[test]
    fn apex_is_propagated() {
        let apex = vec![rat(2), rat(3)];
        let cones = triangulate_cone(&apex, &[iv(&[-1, 0]), iv(&[1, -1])]).unwrap();
        assert_eq!(cones[0].apex, apex);
    }
}
