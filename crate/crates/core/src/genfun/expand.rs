//! Truncated expansion of a generating function back into explicit lattice
//! points, and the direction helpers that make the expansion well defined.
//!
//! Each term is a geometric series in several directions; different terms of
//! one function converge on different domains, so all factors are first
//! aligned against a common linear functional `ell` using the flip identity
//! `1/(1 - z^v) = -z^{-v}/(1 - z^{-v})`. Once every denominator vector has
//! `ell . v < 0`, all series share a convergence region and coefficients can
//! be summed termwise.

use super::{GenFun, GenFunError};
use crate::exactmath::{rat_vec_to_primitive_int, solve_tall_system, Int, IntVec, Rat};
use crate::polytope::feasible_point;
use num_traits::{Signed, Zero};
use std::collections::BTreeMap;

/// First direction of the form `(1, s, s^2, ...)` with a nonzero dot product
/// against every given vector; `s` starts at 2. Such a direction always
/// exists because each dot product is a nonzero polynomial in `s`.
pub fn generic_direction(dim: usize, dens: &[&IntVec]) -> IntVec {
    let mut s = Int::from(2);
    loop {
        let ell = power_direction(dim, &s);
        if dens.iter().all(|v| !v.dot(&ell).is_zero()) {
            return ell;
        }
        s += 1;
    }
}

fn power_direction(dim: usize, s: &Int) -> IntVec {
    let mut entries = Vec::with_capacity(dim);
    let mut cur = Int::from(1);
    for _ in 0..dim {
        entries.push(cur.clone());
        cur *= s;
    }
    IntVec(entries)
}

/// An integer direction strictly negative on every ray (so `ell` lies in the
/// interior of the polar cone) and nonzero on every vector in `avoid`.
/// `None` when the rays span no pointed cone.
///
/// A rational interior point comes from a feasibility program; adding a small
/// generic offset `(1, s, s^2, ...)` then clears the `avoid` constraints
/// without leaving the (open) interior.
pub fn interior_direction(rays: &[IntVec], avoid: &[&IntVec]) -> Option<IntVec> {
    let n = rays.first().map(|r| r.len())?;
    let rows: Vec<IntVec> = rays.to_vec();
    let rhs: Vec<Rat> = vec![Rat::from_integer(Int::from(-1)); rays.len()];
    let y = feasible_point(&rows, &rhs, n)?;
    let y = rat_vec_to_primitive_int(&y);
    let mut scale = Int::from(1);
    for _ in 0..64 {
        for s in 2i64..(2 + (n as i64) * ((avoid.len() + rays.len()) as i64) + 2) {
            let ell = y.scale(&scale).add(&power_direction(n, &Int::from(s)));
            let interior = rays.iter().all(|r| r.dot(&ell).is_negative());
            let generic = avoid.iter().all(|v| !v.dot(&ell).is_zero());
            if interior && generic {
                return Some(ell);
            }
        }
        scale *= Int::from(2);
    }
    None
}

/// Expands `g` termwise along an automatically chosen generic direction and
/// collects the coefficient of `z^x` for every lattice point `x` in the box
/// `[lo, hi]`. Zero coefficients are omitted.
///
/// Valid whenever `g` encodes a finite point set (any generic direction
/// yields the same polynomial); for infinite sets such as single cones use
/// [`expand_truncated_dir`] with a direction interior to the polar cone.
/// Each term's denominator vectors must be linearly independent.
pub fn expand_truncated(
    g: &GenFun,
    lo: &IntVec,
    hi: &IntVec,
) -> Result<BTreeMap<IntVec, Int>, GenFunError> {
    let dens: Vec<&IntVec> = g.terms.iter().flat_map(|t| t.denominators.iter()).collect();
    let ell = generic_direction(g.dim, &dens);
    expand_truncated_dir(g, lo, hi, &ell)
}

/// Truncated expansion along a fixed direction `ell`, which must have a
/// nonzero dot product with every denominator vector.
pub fn expand_truncated_dir(
    g: &GenFun,
    lo: &IntVec,
    hi: &IntVec,
    ell: &IntVec,
) -> Result<BTreeMap<IntVec, Int>, GenFunError> {
    let n = g.dim;
    if lo.len() != n {
        return Err(GenFunError::Shape { expected: n, got: lo.len() });
    }
    if hi.len() != n {
        return Err(GenFunError::Shape { expected: n, got: hi.len() });
    }
    for i in 0..n {
        if lo.0[i] > hi.0[i] {
            return Err(GenFunError::EmptyBox(i));
        }
    }
    // Align every factor so the whole sum expands in one convergence region.
    let mut aligned = Vec::with_capacity(g.terms.len());
    for t in &g.terms {
        let mut coeff = t.coeff.clone();
        let mut base = t.numerator.clone();
        let mut dens = Vec::with_capacity(t.denominators.len());
        for v in &t.denominators {
            let d = v.dot(ell);
            if d.is_zero() {
                return Err(GenFunError::DegenerateDirection);
            }
            if d.is_positive() {
                coeff = -coeff;
                base = base.sub(v);
                dens.push(v.neg());
            } else {
                dens.push(v.clone());
            }
        }
        aligned.push((coeff, base, dens));
    }
    let mut out: BTreeMap<IntVec, Int> = BTreeMap::new();
    let mut x = lo.clone();
    loop {
        let mut total = Int::zero();
        for (coeff, base, dens) in &aligned {
            let target: Vec<Rat> = x.sub(base).to_rat();
            let Some(lambda) = solve_tall_system(dens, &target) else {
                continue;
            };
            let hit = lambda
                .iter()
                .all(|l| l.is_integer() && !l.numer().is_negative());
            if hit {
                total += coeff;
            }
        }
        if !total.is_zero() {
            out.insert(x.clone(), total);
        }
        // Odometer step through the box.
        let mut i = 0;
        while i < n && x.0[i] == hi.0[i] {
            x.0[i] = lo.0[i].clone();
            i += 1;
        }
        if i == n {
            break;
        }
        x.0[i] += 1;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;
    use crate::genfun::{box_genfun, cone_genfun, count, polytope_genfun, GenFun};
    use crate::polytope::SimplicialCone;

    fn iv(v: &[i64]) -> IntVec {
        IntVec::from_i64(v)
    }

    fn indicator(points: &[(IntVec, i64)]) -> BTreeMap<IntVec, Int> {
        points
            .iter()
            .map(|(p, c)| (p.clone(), Int::from(*c)))
            .collect()
    }

    #[test]
    fn generic_direction_avoids_orthogonality() {
        let v1 = iv(&[0, 1, 0]);
        let v2 = iv(&[2, -1, 0]);
        let ell = generic_direction(3, &[&v1, &v2]);
        assert!(!v1.dot(&ell).is_zero());
        assert!(!v2.dot(&ell).is_zero());
    }

    #[test]
    fn expand_unit_interval() {
        let g = box_genfun(&iv(&[0]), &iv(&[1])).unwrap();
        let got = expand_truncated(&g, &iv(&[-1]), &iv(&[2])).unwrap();
        assert_eq!(got, indicator(&[(iv(&[0]), 1), (iv(&[1]), 1)]));
    }

    #[test]
    fn expand_square_over_larger_window() {
        let g = box_genfun(&iv(&[0, 0]), &iv(&[1, 1])).unwrap();
        let got = expand_truncated(&g, &iv(&[-1, -1]), &iv(&[3, 3])).unwrap();
        assert_eq!(
            got,
            indicator(&[
                (iv(&[0, 0]), 1),
                (iv(&[0, 1]), 1),
                (iv(&[1, 0]), 1),
                (iv(&[1, 1]), 1),
            ])
        );
    }

    #[test]
    fn expand_truncates_to_window() {
        let g = box_genfun(&iv(&[0]), &iv(&[4])).unwrap();
        let got = expand_truncated(&g, &iv(&[2]), &iv(&[3])).unwrap();
        assert_eq!(got, indicator(&[(iv(&[2]), 1), (iv(&[3]), 1)]));
    }

    #[test]
    fn pentagon_expansion_is_its_indicator() {
        let p = crate::polytope::tests::sample_pentagon();
        let g = polytope_genfun(&p).unwrap();
        let got = expand_truncated(&g, &iv(&[0, 0]), &iv(&[4, 4])).unwrap();
        let mut expect = BTreeMap::new();
        for x in 0..=4i64 {
            for y in 0..=4i64 {
                if p.contains_int(&iv(&[x, y])) {
                    expect.insert(iv(&[x, y]), Int::from(1));
                }
            }
        }
        assert_eq!(got.len(), 10);
        assert_eq!(got, expect);
    }

    #[test]
    fn decomposition_identity_on_window() {
        // Index-2 cone at the origin: the signed unimodular pieces must
        // reproduce the cone's lattice points on [0,6]^2 exactly.
        let cone =
            SimplicialCone::new(vec![rat(0), rat(0)], vec![iv(&[1, 0]), iv(&[1, 2])], 1).unwrap();
        let (pieces, _) = crate::genfun::barvinok_decompose(&cone);
        let g = GenFun {
            dim: 2,
            terms: pieces.iter().map(|c| cone_genfun(c).unwrap()).collect(),
        };
        let dens: Vec<&IntVec> = g.terms.iter().flat_map(|t| t.denominators.iter()).collect();
        let ell = interior_direction(&cone.rays, &dens).unwrap();
        let got = expand_truncated_dir(&g, &iv(&[0, 0]), &iv(&[6, 6]), &ell).unwrap();
        let mut expect = BTreeMap::new();
        for x in 0..=6i64 {
            for y in 0..=6i64 {
                // (x,y) in cone((1,0),(1,2)) iff y >= 0 and 2x >= y.
                if y >= 0 && 2 * x >= y {
                    expect.insert(iv(&[x, y]), Int::from(1));
                }
            }
        }
        assert_eq!(got, expect);
    }

    #[test]
    fn shifted_cone_identity_on_window() {
        // Same identity with a fractional apex and a higher index.
        let cone = SimplicialCone::new(
            vec![rat(1), rat(1)],
            vec![iv(&[2, 1]), iv(&[1, 3])],
            1,
        )
        .unwrap();
        assert_eq!(cone.index(), Int::from(5));
        let (pieces, _) = crate::genfun::barvinok_decompose(&cone);
        let g = GenFun {
            dim: 2,
            terms: pieces.iter().map(|c| cone_genfun(c).unwrap()).collect(),
        };
        let dens: Vec<&IntVec> = g.terms.iter().flat_map(|t| t.denominators.iter()).collect();
        let ell = interior_direction(&cone.rays, &dens).unwrap();
        let got = expand_truncated_dir(&g, &iv(&[0, 0]), &iv(&[8, 8]), &ell).unwrap();
        let mut expect = BTreeMap::new();
        for x in 0..=8i64 {
            for y in 0..=8i64 {
                // (x,y) = (1,1) + a(2,1) + b(1,3) with a,b >= 0:
                // a = (3(x-1) - (y-1))/5, b = (2(y-1) - (x-1))/5.
                if 3 * (x - 1) - (y - 1) >= 0 && 2 * (y - 1) - (x - 1) >= 0 {
                    expect.insert(iv(&[x, y]), Int::from(1));
                }
            }
        }
        assert_eq!(got, expect);
    }

    #[test]
    fn expansion_coefficients_match_count() {
        let p = crate::polytope::tests::sample_pentagon();
        let g = polytope_genfun(&p).unwrap();
        let got = expand_truncated(&g, &iv(&[0, 0]), &iv(&[4, 4])).unwrap();
        let total: Int = got.values().cloned().sum();
        assert_eq!(total, count(&g));
    }

    #[test]
    fn degenerate_direction_is_rejected() {
        let g = box_genfun(&iv(&[0, 0]), &iv(&[1, 1])).unwrap();
        let ell = iv(&[0, 1]);
        assert_eq!(
            expand_truncated_dir(&g, &iv(&[0, 0]), &iv(&[1, 1]), &ell),
            Err(GenFunError::DegenerateDirection)
        );
    }

    #[test]
    fn empty_window_is_an_error() {
        let g = box_genfun(&iv(&[0]), &iv(&[1])).unwrap();
        assert_eq!(
            expand_truncated(&g, &iv(&[2]), &iv(&[1])),
            Err(GenFunError::EmptyBox(0))
        );
    }
}
