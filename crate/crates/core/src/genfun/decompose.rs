//! Signed unimodular decomposition of simplicial cones, and the generating
//! function of a polytope assembled from its vertex cones.
//!
//! The decomposition runs in the polar space: replacing a generator of a
//! polar cone by a short lattice vector splits it into children of strictly
//! smaller determinant, and the inclusion-exclusion error terms are lower-
//! dimensional cones there. Dualizing back turns those error terms into cones
//! containing lines, which contribute nothing to the generating function, so
//! the primal identity needs no boundary corrections.

use super::{GenFun, GenFunError, GenFunTerm};
use crate::exactmath::{
    det_int_columns, int_sign, lll_reduce, rat_ceil, rat_vec_to_primitive_int, solve_tall_system,
    Int, IntVec, Rat, RatMatrix,
};
use crate::polytope::{triangulate_cone, FlatReduction, HPolytope, PolytopeError, SimplicialCone};
use num_traits::{One, Signed, Zero};

/// Trace of one decomposition run.
#[derive(Debug, Clone, Default)]
pub struct DecomposeStats {
    /// `(parent, child)` absolute determinants for every recursion edge.
    pub steps: Vec<(Int, Int)>,
    /// Number of unimodular cones produced.
    pub cones: usize,
}

/// Extreme rays of the polar cone `{y : y . r <= 0 for all rays r}` of a
/// full-dimensional simplicial cone; an involution on such ray sets.
fn polar_rays(rays: &[IntVec]) -> Vec<IntVec> {
    let n = rays.len();
    let inv = RatMatrix::from_int_columns(rays)
        .inverse()
        .expect("simplicial cone rays are invertible");
    (0..n)
        .map(|i| {
            let row: Vec<Rat> = (0..n).map(|j| -inv.get(i, j)).collect();
            rat_vec_to_primitive_int(&row)
        })
        .collect()
}

/// Largest absolute entry.
fn linf(v: &IntVec) -> Int {
    v.0.iter().map(|e| e.abs()).max().expect("nonempty vector")
}

/// A nonzero lattice vector `y` with `linf(B y) < d`, where `B` has the given
/// columns and `d` exceeds 1. Returns `(y, B y)` with `B y` normalized so its
/// first nonzero entry is positive.
///
/// Minkowski's theorem gives a vector of sup-norm at most `d^{(n-1)/n}` in
/// the column lattice; lattice reduction finds one directly, with a bounded
/// search over small combinations as a fallback.
fn short_vector(b_cols: &[IntVec], d: &Int) -> (IntVec, IntVec) {
    let n = b_cols.len();
    let (reduced, transform) = lll_reduce(b_cols).expect("cone generators are independent");
    // (sup-norm, image, preimage), minimized lexicographically for a
    // deterministic choice among equally short vectors.
    let mut best: Option<(Int, IntVec, IntVec)> = None;
    let consider = |beta: IntVec, y: IntVec, best: &mut Option<(Int, IntVec, IntVec)>| {
        if beta.is_zero() {
            return;
        }
        let flip = matches!(
            beta.0.iter().find(|e| !e.is_zero()),
            Some(e) if e.is_negative()
        );
        let (beta, y) = if flip { (beta.neg(), y.neg()) } else { (beta, y) };
        let cand = (linf(&beta), beta, y);
        if best.as_ref().is_none_or(|b| cand < *b) {
            *best = Some(cand);
        }
    };
    for k in 0..n {
        consider(reduced[k].clone(), transform[k].clone(), &mut best);
    }
    if let Some((norm, beta, y)) = &best {
        if norm < d {
            return (y.clone(), beta.clone());
        }
    }
    // Rarely needed: scan combinations of reduced vectors by growing radius.
    for radius in 1i64..=8 {
        let mut coeffs = vec![-radius; n];
        loop {
            if coeffs.iter().any(|c| c.abs() == radius) {
                let mut beta = IntVec::zero(n);
                let mut y = IntVec::zero(n);
                for (k, &c) in coeffs.iter().enumerate() {
                    if c != 0 {
                        let ck = Int::from(c);
                        beta = beta.add(&reduced[k].scale(&ck));
                        y = y.add(&transform[k].scale(&ck));
                    }
                }
                consider(beta, y, &mut best);
            }
            let mut i = 0;
            while i < n && coeffs[i] == radius {
                coeffs[i] = -radius;
                i += 1;
            }
            if i == n {
                break;
            }
            coeffs[i] += 1;
        }
        if let Some((norm, beta, y)) = &best {
            if norm < d {
                return (y.clone(), beta.clone());
            }
        }
    }
    unreachable!("no short vector found within search radius");
}

/// Decomposes the full-dimensional cone generated by `rays` into unimodular
/// cones, valid modulo lower-dimensional cones. Children replace one
/// generator by a short vector `y = sum_j alpha_j ray_j`; the generator `j`
/// is exchangeable whenever `alpha_j != 0`, with orientation `sign(alpha_j)`.
fn decompose_modulo_boundary(
    rays: Vec<IntVec>,
    sign: i8,
    out: &mut Vec<(Vec<IntVec>, i8)>,
    stats: &mut DecomposeStats,
) {
    let det = det_int_columns(&rays).abs();
    debug_assert!(!det.is_zero(), "cone must be full-dimensional");
    if det.is_one() {
        out.push((rays, sign));
        return;
    }
    let n = rays.len();
    let inv = RatMatrix::from_int_columns(&rays)
        .inverse()
        .expect("full-dimensional cone");
    let det_rat = Rat::from_integer(det.clone());
    let b_cols: Vec<IntVec> = (0..n)
        .map(|j| {
            IntVec(
                (0..n)
                    .map(|i| {
                        let e = inv.get(i, j) * &det_rat;
                        debug_assert!(e.is_integer());
                        e.to_integer()
                    })
                    .collect(),
            )
        })
        .collect();
    let (y, beta) = short_vector(&b_cols, &det);
    for j in 0..n {
        let bj = &beta.0[j];
        if bj.is_zero() {
            continue;
        }
        let mut child = rays.clone();
        child[j] = y.clone();
        let child_det = bj.abs();
        debug_assert!(child_det < det, "determinant must strictly decrease");
        stats.steps.push((det.clone(), child_det));
        decompose_modulo_boundary(child, sign * int_sign(bj), out, stats);
    }
}

/// Splits a simplicial cone into unimodular cones whose signed generating
/// functions sum to the input's. The recursion happens on the polar cone so
/// the result is exact without boundary bookkeeping; every recursion step
/// strictly decreases the polar determinant (recorded in the stats).
pub fn barvinok_decompose(cone: &SimplicialCone) -> (Vec<SimplicialCone>, DecomposeStats) {
    let mut stats = DecomposeStats::default();
    let mut pieces = Vec::new();
    decompose_modulo_boundary(polar_rays(&cone.rays), cone.sign, &mut pieces, &mut stats);
    let cones: Vec<SimplicialCone> = pieces
        .into_iter()
        .map(|(polar, sign)| {
            SimplicialCone::new(cone.apex.clone(), polar_rays(&polar), sign)
                .expect("dual of a unimodular cone is simplicial")
        })
        .collect();
    stats.cones = cones.len();
    (cones, stats)
}

/// Generating function term of a unimodular cone `apex + cone(rays)`:
/// numerator exponent `sum_i ceil(alpha_i) ray_i` where
/// `apex = sum_i alpha_i ray_i`, one denominator per ray.
pub fn cone_genfun(cone: &SimplicialCone) -> Result<GenFunTerm, GenFunError> {
    let index = cone.index();
    if !index.is_one() {
        return Err(GenFunError::NotUnimodular(index));
    }
    let alpha = solve_tall_system(&cone.rays, &cone.apex).expect("rays span the space");
    let n = cone.apex.len();
    let mut numerator = IntVec::zero(n);
    for (a, r) in alpha.iter().zip(&cone.rays) {
        numerator = numerator.add(&r.scale(&rat_ceil(a)));
    }
    Ok(GenFunTerm {
        coeff: Int::from(cone.sign as i64),
        numerator,
        denominators: cone.rays.clone(),
    })
}

/// Short rational generating function of the lattice points of `p`:
/// one unimodular-cone term bundle per vertex, summed over all vertices.
///
/// Lower-dimensional inputs are first mapped onto their affine hull's
/// lattice; the genfun of the reduced region is pushed back through the
/// (monomial-to-monomial) coordinate map. Errors on unbounded input.
pub fn polytope_genfun(p: &HPolytope) -> Result<GenFun, PolytopeError> {
    if let Some(direction) = p.recession_direction() {
        return Err(PolytopeError::Unbounded { direction });
    }
    let vertices = p.vertices();
    if vertices.is_empty() {
        return Ok(GenFun::zero(p.dim()));
    }
    let mut implicit = vertices[0].tight_rows.clone();
    for v in &vertices[1..] {
        implicit.retain(|i| v.tight_rows.contains(i));
        if implicit.is_empty() {
            break;
        }
    }
    if !implicit.is_empty() {
        return match p.flat_reduction() {
            FlatReduction::NoLatticePoints => Ok(GenFun::zero(p.dim())),
            FlatReduction::SinglePoint(x) => Ok(GenFun {
                dim: p.dim(),
                terms: vec![GenFunTerm {
                    coeff: Int::one(),
                    numerator: x,
                    denominators: vec![],
                }],
            }),
            FlatReduction::Reduced { base, basis, sub } => {
                let g = polytope_genfun(&sub)?;
                let embed = |v: &IntVec| {
                    let mut out = IntVec::zero(p.dim());
                    for (col, c) in basis.iter().zip(&v.0) {
                        out = out.add(&col.scale(c));
                    }
                    out
                };
                let terms = g
                    .terms
                    .iter()
                    .map(|t| GenFunTerm {
                        coeff: t.coeff.clone(),
                        numerator: base.add(&embed(&t.numerator)),
                        denominators: t.denominators.iter().map(&embed).collect(),
                    })
                    .collect();
                Ok(GenFun { dim: p.dim(), terms })
            }
            FlatReduction::FullDim => unreachable!("implicit equalities found"),
        };
    }
    let zero_apex = vec![Rat::zero(); p.dim()];
    let mut terms = Vec::new();
    for v in &vertices {
        // Tight-row normals generate the polar of the vertex's tangent cone.
        let normals = p.tangent_normals(v);
        for cell in triangulate_cone(&zero_apex, &normals)? {
            let mut pieces = Vec::new();
            let mut stats = DecomposeStats::default();
            decompose_modulo_boundary(cell.rays, cell.sign, &mut pieces, &mut stats);
            for (polar, sign) in pieces {
                let cone = SimplicialCone::new(v.point.clone(), polar_rays(&polar), sign)
                    .expect("dual of a unimodular cone is simplicial");
                let term = cone_genfun(&cone).expect("decomposition output is unimodular");
                terms.push(term);
            }
        }
    }
    Ok(GenFun { dim: p.dim(), terms })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{rat, ratio};
    use crate::genfun::count;

    fn iv(v: &[i64]) -> IntVec {
        IntVec::from_i64(v)
    }

    fn ray_set(mut rays: Vec<IntVec>) -> Vec<IntVec> {
        rays.sort();
        rays
    }

    #[test]
    fn polar_of_quadrant_is_negative_quadrant() {
        let polar = polar_rays(&[iv(&[1, 0]), iv(&[0, 1])]);
        assert_eq!(ray_set(polar), vec![iv(&[-1, 0]), iv(&[0, -1])]);
    }

    #[test]
    fn polar_is_an_involution() {
        let rays = vec![iv(&[1, 0]), iv(&[1, 2])];
        let back = polar_rays(&polar_rays(&rays));
        assert_eq!(ray_set(back), ray_set(rays));
    }

    #[test]
    fn unimodular_cone_decomposes_to_itself() {
        let cone =
            SimplicialCone::new(vec![rat(0), rat(0)], vec![iv(&[1, 0]), iv(&[1, 1])], 1).unwrap();
        let (cones, stats) = barvinok_decompose(&cone);
        assert_eq!(cones.len(), 1);
        assert_eq!(stats.steps.len(), 0);
        assert_eq!(cones[0].sign, 1);
        assert_eq!(ray_set(cones[0].rays.clone()), ray_set(cone.rays.clone()));
    }

    #[test]
    fn index_two_cone_splits_into_unimodular_cones() {
        let cone =
            SimplicialCone::new(vec![rat(0), rat(0)], vec![iv(&[1, 0]), iv(&[1, 2])], 1).unwrap();
        assert_eq!(cone.index(), Int::from(2));
        let (cones, stats) = barvinok_decompose(&cone);
        assert!(!cones.is_empty());
        for c in &cones {
            assert!(c.index().is_one());
            assert_eq!(c.apex, cone.apex);
        }
        for (parent, child) in &stats.steps {
            assert!(child < parent, "step {parent} -> {child} must shrink");
        }
        assert_eq!(stats.cones, cones.len());
    }

    #[test]
    fn high_index_cone_recursion_shrinks_determinants() {
        // index 5 cone; every recorded step must strictly decrease.
        let cone =
            SimplicialCone::new(vec![rat(0), rat(0)], vec![iv(&[1, 0]), iv(&[3, 5])], 1).unwrap();
        let (cones, stats) = barvinok_decompose(&cone);
        assert!(!stats.steps.is_empty());
        for (parent, child) in &stats.steps {
            assert!(child < parent);
        }
        for c in &cones {
            assert!(c.index().is_one());
        }
    }

    #[test]
    fn cone_genfun_shifted_quadrant_numerator() {
        // Apex (2,3) with rays (-1,0) and (1,-1): exponent stays (2,3).
        let cone = SimplicialCone::new(
            vec![rat(2), rat(3)],
            vec![iv(&[-1, 0]), iv(&[1, -1])],
            1,
        )
        .unwrap();
        let term = cone_genfun(&cone).unwrap();
        assert_eq!(term.numerator, iv(&[2, 3]));
        assert_eq!(term.coeff, Int::one());
    }

    #[test]
    fn cone_genfun_fractional_apex_rounds_inward() {
        // Apex 1/2 with ray towards +infinity: first lattice point is 1.
        let cone = SimplicialCone::new(vec![ratio(1, 2)], vec![iv(&[1])], 1).unwrap();
        let term = cone_genfun(&cone).unwrap();
        assert_eq!(term.numerator, iv(&[1]));
    }

    #[test]
    fn cone_genfun_rejects_non_unimodular() {
        let cone =
            SimplicialCone::new(vec![rat(0), rat(0)], vec![iv(&[1, 0]), iv(&[1, 2])], 1).unwrap();
        assert_eq!(
            cone_genfun(&cone),
            Err(GenFunError::NotUnimodular(Int::from(2)))
        );
    }

    #[test]
    fn interval_genfun_counts_five() {
        let p = HPolytope::new(1, vec![iv(&[1]), iv(&[-1])], vec![Int::from(4), Int::from(0)])
            .unwrap();
        let g = polytope_genfun(&p).unwrap();
        assert_eq!(g.terms.len(), 2);
        assert_eq!(count(&g), Int::from(5));
    }

    #[test]
    fn pentagon_genfun_counts_ten() {
        let p = crate::polytope::tests::sample_pentagon();
        let g = polytope_genfun(&p).unwrap();
        assert_eq!(count(&g), Int::from(10));
    }

    #[test]
    fn unit_square_counts_four() {
        let p = HPolytope::new(
            2,
            vec![iv(&[1, 0]), iv(&[0, 1]), iv(&[-1, 0]), iv(&[0, -1])],
            vec![Int::one(), Int::one(), Int::zero(), Int::zero()],
        )
        .unwrap();
        assert_eq!(count(&polytope_genfun(&p).unwrap()), Int::from(4));
    }

    #[test]
    fn simplex_with_degenerate_vertex_counts() {
        // x >= 0, y >= 0, x + y <= 3, x + 2y <= 6: the vertex (0,3) has three
        // tight rows; triangulating its polar cone must not double count.
        let p = HPolytope::new(
            2,
            vec![iv(&[-1, 0]), iv(&[0, -1]), iv(&[1, 1]), iv(&[1, 2])],
            vec![Int::zero(), Int::zero(), Int::from(3), Int::from(6)],
        )
        .unwrap();
        // Points: triangle x+y<=3 has 10 lattice points; x+2y<=6 cuts none.
        assert_eq!(count(&polytope_genfun(&p).unwrap()), Int::from(10));
    }

    #[test]
    fn segment_on_diagonal_reduces_and_counts() {
        // x + y = 2, 0 <= x <= 2: three lattice points on a 1-dim segment.
        let p = HPolytope::new(
            2,
            vec![iv(&[1, 1]), iv(&[-1, -1]), iv(&[1, 0]), iv(&[-1, 0])],
            vec![Int::from(2), Int::from(-2), Int::from(2), Int::zero()],
        )
        .unwrap();
        let g = polytope_genfun(&p).unwrap();
        assert_eq!(count(&g), Int::from(3));
    }

    #[test]
    fn sparse_lattice_slab_has_no_points() {
        // 2x = 1 admits no integer solution.
        let p = HPolytope::new(
            1,
            vec![iv(&[2]), iv(&[-2])],
            vec![Int::one(), Int::from(-1)],
        )
        .unwrap();
        let g = polytope_genfun(&p).unwrap();
        assert!(g.terms.is_empty());
        assert_eq!(count(&g), Int::zero());
    }

    #[test]
    fn single_point_polytope_is_a_monomial() {
        let p = HPolytope::new(
            2,
            vec![iv(&[1, 0]), iv(&[-1, 0]), iv(&[0, 1]), iv(&[0, -1])],
            vec![Int::from(7), Int::from(-7), Int::from(2), Int::from(-2)],
        )
        .unwrap();
        let g = polytope_genfun(&p).unwrap();
        assert_eq!(g.terms.len(), 1);
        assert_eq!(g.terms[0].numerator, iv(&[7, 2]));
        assert!(g.terms[0].denominators.is_empty());
        assert_eq!(count(&g), Int::one());
    }

    #[test]
    fn unbounded_region_is_an_error() {
        let p = HPolytope::new_bounded_unchecked(2, vec![iv(&[-1, 0])], vec![Int::zero()]);
        match polytope_genfun(&p) {
            Err(PolytopeError::Unbounded { .. }) => {}
            other => panic!("expected unbounded error, got {other:?}"),
        }
    }

    #[test]
    fn short_vector_on_index_two_lattice() {
        // B = 2 * W^{-1} for W = [(-2,1),(0,-1)] columns.
        let b_cols = vec![iv(&[-1, -1]), iv(&[0, -2])];
        let (y, beta) = short_vector(&b_cols, &Int::from(2));
        assert!(!y.is_zero());
        assert!(linf(&beta) < Int::from(2));
        let recomputed = b_cols[0].scale(&y.0[0]).add(&b_cols[1].scale(&y.0[1]));
        assert_eq!(recomputed, beta);
    }
}
