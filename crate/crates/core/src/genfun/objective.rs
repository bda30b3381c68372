//! Monomial substitution mapping a constraint-space generating function into
//! the product of constraint and objective space.
//!
//! Substituting `z_i -> z_i * t_1^{c_{1i}} ... t_k^{c_{ki}}` turns a sum over
//! feasible points `x` of `z^x` into a sum of `z^x t^{Cx}`: the `t` exponent
//! of every surviving monomial is the objective value vector of its point.

use super::GenFun;
use crate::exactmath::{solve_tall_system, Int, IntVec};
use num_traits::{Signed, Zero};

/// One substituted term. `point`/`values` are the `z`/`t` exponents of the
/// numerator; each denominator factor `1 - z^v t^w` is stored as `(v, w)`
/// with `w = C v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObjGenFunTerm {
    pub coeff: Int,
    pub point: IntVec,
    pub values: IntVec,
    pub dens: Vec<(IntVec, IntVec)>,
}

/// A generating function over `n` constraint variables and `k` objective
/// variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObjGenFun {
    pub n: usize,
    pub k: usize,
    pub terms: Vec<ObjGenFunTerm>,
}

/// Applies the objective substitution to every term of `g`, with one
/// objective row per entry of `c_rows`.
pub fn substitute_objectives(g: &GenFun, c_rows: &[IntVec]) -> ObjGenFun {
    let apply = |v: &IntVec| IntVec(c_rows.iter().map(|c| c.dot(v)).collect());
    let terms = g
        .terms
        .iter()
        .map(|t| ObjGenFunTerm {
            coeff: t.coeff.clone(),
            point: t.numerator.clone(),
            values: apply(&t.numerator),
            dens: t
                .denominators
                .iter()
                .map(|v| (v.clone(), apply(v)))
                .collect(),
        })
        .collect();
    ObjGenFun { n: g.dim, k: c_rows.len(), terms }
}

/// True when the concatenated exponent `(w, v)` is lexicographically
/// negative: objective entries are compared first, so among factors with
/// equal objective movement the constraint-space step decides.
fn lex_negative(v: &IntVec, w: &IntVec) -> bool {
    for e in w.0.iter().chain(&v.0) {
        if !e.is_zero() {
            return e.is_negative();
        }
    }
    false
}

/// Flips denominator factors via `1/(1 - y) = -y^{-1}/(1 - y^{-1})` until
/// every factor's `(w, v)` exponent is lexicographically negative. All terms
/// then expand in one common region, so monomial coefficients of the whole
/// function can be read off termwise.
pub fn normalize_signs(g: &ObjGenFun) -> ObjGenFun {
    let terms = g
        .terms
        .iter()
        .map(|t| {
            let mut coeff = t.coeff.clone();
            let mut point = t.point.clone();
            let mut values = t.values.clone();
            let mut dens = Vec::with_capacity(t.dens.len());
            for (v, w) in &t.dens {
                if lex_negative(v, w) {
                    dens.push((v.clone(), w.clone()));
                } else {
                    coeff = -coeff;
                    point = point.sub(v);
                    values = values.sub(w);
                    dens.push((v.neg(), w.neg()));
                }
            }
            ObjGenFunTerm { coeff, point, values, dens }
        })
        .collect();
    ObjGenFun { n: g.n, k: g.k, terms }
}

/// Net coefficient of the monomial with `z`-exponent `x` across all terms:
/// 1 exactly when `x` lies in the encoded set, 0 when it does not.
///
/// Works on the sign-normalized form (recomputed here), where each term
/// contributes through at most one `lambda >= 0` because its constraint-space
/// step vectors are linearly independent.
pub fn net_coefficient(g: &ObjGenFun, x: &IntVec) -> Int {
    let normalized = normalize_signs(g);
    let mut total = Int::zero();
    for t in &normalized.terms {
        let steps: Vec<IntVec> = t.dens.iter().map(|(v, _)| v.clone()).collect();
        let target = x.sub(&t.point).to_rat();
        let Some(lambda) = solve_tall_system(&steps, &target) else {
            continue;
        };
        if lambda
            .iter()
            .all(|l| l.is_integer() && !l.numer().is_negative())
        {
            total += &t.coeff;
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genfun::{box_genfun, polytope_genfun};

    fn iv(v: &[i64]) -> IntVec {
        IntVec::from_i64(v)
    }

    #[test]
    fn substitution_tracks_objective_values() {
        let g = box_genfun(&iv(&[0]), &iv(&[4])).unwrap();
        let og = substitute_objectives(&g, &[iv(&[3])]);
        assert_eq!(og.n, 1);
        assert_eq!(og.k, 1);
        // z^4 / (1 - z^{-1}) becomes z^4 t^12 / (1 - z^{-1} t^{-3}).
        let top = &og.terms[1];
        assert_eq!(top.point, iv(&[4]));
        assert_eq!(top.values, iv(&[12]));
        assert_eq!(top.dens, vec![(iv(&[-1]), iv(&[-3]))]);
    }

    #[test]
    fn normalization_flips_objective_positive_factors() {
        let g = box_genfun(&iv(&[0]), &iv(&[4])).unwrap();
        let og = normalize_signs(&substitute_objectives(&g, &[iv(&[3])]));
        // z^0 / (1 - z t^3) flips: objective exponent 3 is lex-positive.
        let flipped = &og.terms[0];
        assert_eq!(flipped.coeff, Int::from(-1));
        assert_eq!(flipped.point, iv(&[-1]));
        assert_eq!(flipped.values, iv(&[-3]));
        assert_eq!(flipped.dens, vec![(iv(&[-1]), iv(&[-3]))]);
        // The already-negative factor stays put.
        assert_eq!(og.terms[1].coeff, Int::from(1));
        assert_eq!(og.terms[1].dens, vec![(iv(&[-1]), iv(&[-3]))]);
    }

    #[test]
    fn normalization_breaks_zero_objective_ties_on_z() {
        // Objective row (0,0) zeroes all t exponents; the z part decides.
        let g = box_genfun(&iv(&[0, 0]), &iv(&[1, 1])).unwrap();
        let og = normalize_signs(&substitute_objectives(&g, &[iv(&[0, 0])]));
        for t in &og.terms {
            for (v, w) in &t.dens {
                assert!(w.is_zero());
                assert!(lex_negative(v, w));
            }
        }
    }

    #[test]
    fn normalization_is_idempotent() {
        let p = crate::polytope::tests::sample_pentagon();
        let g = polytope_genfun(&p).unwrap();
        let og = normalize_signs(&substitute_objectives(&g, &[iv(&[1, 0]), iv(&[0, 1])]));
        assert_eq!(normalize_signs(&og), og);
    }

    #[test]
    fn net_coefficient_is_membership_indicator() {
        let p = crate::polytope::tests::sample_pentagon();
        let g = polytope_genfun(&p).unwrap();
        let og = substitute_objectives(&g, &[iv(&[3, 1]), iv(&[1, 2])]);
        for x in 0..=5i64 {
            for y in 0..=5i64 {
                let pt = iv(&[x, y]);
                let expect = Int::from(i64::from(p.contains_int(&pt)));
                assert_eq!(net_coefficient(&og, &pt), expect, "at {pt}");
            }
        }
    }

    #[test]
    fn values_exponent_equals_objective_of_point() {
        let p = crate::polytope::tests::sample_pentagon();
        let g = polytope_genfun(&p).unwrap();
        let c = [iv(&[2, -1]), iv(&[1, 1])];
        let og = normalize_signs(&substitute_objectives(&g, &c));
        for t in &og.terms {
            let expect = IntVec(c.iter().map(|r| r.dot(&t.point)).collect());
            assert_eq!(t.values, expect);
            for (v, w) in &t.dens {
                let wv = IntVec(c.iter().map(|r| r.dot(v)).collect());
                assert_eq!(*w, wv);
            }
        }
    }
}
