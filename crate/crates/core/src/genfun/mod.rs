//! Multivariate rational generating functions for lattice-point sets.
//!
//! A set `S` of integer points is represented by the formal sum of monomials
//! `z^x = z_1^{x_1} ... z_n^{x_n}` over `x` in `S`, stored as a short sum of
//! terms `coeff * z^u / prod_j (1 - z^{v_j})`. Polytopes get such a
//! representation with unimodular denominators via [`polytope_genfun`]; the
//! closed form supports exact counting ([`count`]), truncated expansion back
//! into explicit points ([`expand_truncated`]), and monomial substitutions
//! that map constraint space into objective space ([`ObjGenFun`]).

mod decompose;
mod expand;
mod objective;
mod series;

pub use decompose::{barvinok_decompose, cone_genfun, polytope_genfun, DecomposeStats};
pub use expand::{expand_truncated, expand_truncated_dir, generic_direction, interior_direction};
pub use objective::{net_coefficient, normalize_signs, substitute_objectives, ObjGenFun, ObjGenFunTerm};

use crate::exactmath::{Int, IntVec, Rat};
use num_traits::{Signed, Zero};
use series::TruncSeries;
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GenFunError {
    /// A box had `hi < lo` in the given coordinate.
    #[error("empty interval in coordinate {0}: the box has no lattice points")]
    EmptyBox(usize),
    /// Operation requires a unimodular cone.
    #[error("cone has index {0}, expected a unimodular cone")]
    NotUnimodular(Int),
    /// The expansion direction is orthogonal to a denominator vector.
    #[error("direction is orthogonal to a denominator vector")]
    DegenerateDirection,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Shape { expected: usize, got: usize },
    #[error("parse error: {0}")]
    Parse(String),
}

/// One summand `coeff * z^numerator / prod_j (1 - z^{v_j})`.
///
/// Denominator exponent vectors are nonzero; their number is the term's
/// denominator count (at most the ambient dimension for terms built here).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenFunTerm {
    pub coeff: Int,
    pub numerator: IntVec,
    pub denominators: Vec<IntVec>,
}

/// A short sum of rational terms encoding a lattice-point set in dimension
/// `dim`. The zero function (empty set) has no terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenFun {
    pub dim: usize,
    pub terms: Vec<GenFunTerm>,
}

impl GenFun {
    pub fn zero(dim: usize) -> Self {
        GenFun { dim, terms: Vec::new() }
    }

    /// Plain-text form: a `dim` header, then one `coeff ; numerator ; v1 | v2`
    /// line per term. Round-trips through [`GenFun::from_text`].
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "dim {}", self.dim);
        for t in &self.terms {
            let dens = t
            .denominators
            .iter()
            .map(fmt_vec)
            .collect::<Vec<_>>()
            .join(" | ");
            let _ = writeln!(out, "{} ; {} ; {}", t.coeff, fmt_vec(&t.numerator), dens);
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self, GenFunError> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines
            .next()
            .ok_or_else(|| GenFunError::Parse("missing dim header".into()))?;
        let dim: usize = header
            .trim()
            .strip_prefix("dim")
            .and_then(|s| s.trim().parse().ok())
            .ok_or_else(|| GenFunError::Parse(format!("bad header: {header:?}")))?;
        let mut terms = Vec::new();
        for line in lines {
            let fields: Vec<&str> = line.splitn(3, ';').collect();
            if fields.len() != 3 {
                return Err(GenFunError::Parse(format!("bad term line: {line:?}")));
            }
            let coeff: Int = fields[0]
                .trim()
                .parse()
                .map_err(|_| GenFunError::Parse(format!("bad coefficient: {:?}", fields[0])))?;
            let numerator = parse_vec(fields[1], dim)?;
            let mut denominators = Vec::new();
            for part in fields[2].split('|') {
                if part.trim().is_empty() {
                    continue;
                }
                denominators.push(parse_vec(part, dim)?);
            }
            terms.push(GenFunTerm { coeff, numerator, denominators });
        }
        Ok(GenFun { dim, terms })
    }
}

fn fmt_vec(v: &IntVec) -> String {
    v.0.iter().map(Int::to_string).collect::<Vec<_>>().join(",")
}

fn parse_vec(s: &str, dim: usize) -> Result<IntVec, GenFunError> {
    let mut entries = Vec::new();
    for piece in s.split(',') {
        let val: Int = piece
            .trim()
            .parse()
            .map_err(|_| GenFunError::Parse(format!("bad integer: {piece:?}")))?;
        entries.push(val);
    }
    if entries.len() != dim {
        return Err(GenFunError::Shape { expected: dim, got: entries.len() });
    }
    Ok(IntVec(entries))
}

/// Generating function of the integer box `prod_i [lo_i, hi_i]` as a product
/// of per-coordinate two-term sums, expanded into `2^n` terms.
///
/// Coordinate `i` contributes `z_i^{lo_i} / (1 - z_i) + z_i^{hi_i} /
/// (1 - z_i^{-1})`; the product telescopes to exactly the box indicator.
pub fn box_genfun(lo: &IntVec, hi: &IntVec) -> Result<GenFun, GenFunError> {
    let n = lo.len();
    if hi.len() != n {
        return Err(GenFunError::Shape { expected: n, got: hi.len() });
    }
    for i in 0..n {
        if lo.0[i] > hi.0[i] {
            return Err(GenFunError::EmptyBox(i));
        }
    }
    let mut terms = Vec::with_capacity(1 << n);
    for mask in 0u64..(1u64 << n) {
        let mut numerator = Vec::with_capacity(n);
        let mut denominators = Vec::with_capacity(n);
        for i in 0..n {
            if mask >> i & 1 == 0 {
                numerator.push(lo.0[i].clone());
                denominators.push(IntVec::unit(n, i));
            } else {
                numerator.push(hi.0[i].clone());
                denominators.push(IntVec::unit(n, i).neg());
            }
        }
        terms.push(GenFunTerm {
            coeff: Int::from(1),
            numerator: IntVec(numerator),
            denominators,
        });
    }
    Ok(GenFun { dim: n, terms })
}

/// Exact number of lattice points encoded by `g`, evaluated at `z -> 1`.
///
/// Specializes along `z = exp(tau * ell)` for an `ell` that is nondegenerate
/// for every denominator vector, turning each term into a Laurent series in
/// `tau` whose constant coefficients sum to the count. The per-term poles
/// cancel in the sum, so the total is an integer.
pub fn count(g: &GenFun) -> Int {
    if g.terms.is_empty() {
        return Int::from(0);
    }
    let dens: Vec<&IntVec> = g.terms.iter().flat_map(|t| t.denominators.iter()).collect();
    let ell = generic_direction(g.dim, &dens);
    let mut total = Rat::zero();
    for term in &g.terms {
        let d = term.denominators.len();
        let lu = Rat::from_integer(term.numerator.dot(&ell));
        // coeff * z^u / prod (1 - z^{v_j}) at z = exp(tau ell) becomes
        //   coeff * (-1)^d / (prod a_j) * tau^{-d} * exp(lu tau) / prod g(a_j tau)
        // with a_j = ell . v_j and g the unit-constant factor of the pole.
        let mut series = TruncSeries::exp(&lu, d);
        let mut scale = Rat::from_integer(term.coeff.clone());
        if d % 2 == 1 {
            scale = -scale;
        }
        for v in &term.denominators {
            let a = Rat::from_integer(v.dot(&ell));
            debug_assert!(!a.is_zero());
            series = series.mul(&TruncSeries::exp_ratio(&a, d).inverse());
            scale /= a;
        }
        total += scale * &series.coeffs[d];
    }
    debug_assert!(total.denom().abs() == Int::from(1), "count must be integral");
    total.to_integer()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(entries: &[i64]) -> IntVec {
        IntVec::from_i64(entries)
    }

    #[test]
    fn interval_count_is_five() {
        // [0, 4] as z^0/(1-z) + z^4/(1-z^{-1}).
        let g = box_genfun(&iv(&[0]), &iv(&[4])).unwrap();
        assert_eq!(g.terms.len(), 2);
        assert_eq!(count(&g), Int::from(5));
    }

    #[test]
    fn square_count_is_nine() {
        let g = box_genfun(&iv(&[0, 0]), &iv(&[2, 2])).unwrap();
        assert_eq!(g.terms.len(), 4);
        assert_eq!(count(&g), Int::from(9));
    }

    #[test]
    fn shifted_box_count() {
        let g = box_genfun(&iv(&[2, 0, -1]), &iv(&[3, 1, 1])).unwrap();
        assert_eq!(count(&g), Int::from(12));
    }

    #[test]
    fn degenerate_interval_counts_once() {
        let g = box_genfun(&iv(&[5]), &iv(&[5])).unwrap();
        assert_eq!(count(&g), Int::from(1));
    }

    #[test]
    fn empty_interval_is_an_error() {
        assert_eq!(box_genfun(&iv(&[0, 3]), &iv(&[4, 2])), Err(GenFunError::EmptyBox(1)));
    }

    #[test]
    fn count_of_zero_genfun() {
        assert_eq!(count(&GenFun::zero(3)), Int::from(0));
    }

    #[test]
    fn count_with_cancelling_terms() {
        // [0,4] minus [2,2]: coefficients may be negative.
        let mut g = box_genfun(&iv(&[0]), &iv(&[4])).unwrap();
        g.terms.push(GenFunTerm {
            coeff: Int::from(-1),
            numerator: iv(&[2]),
            denominators: vec![],
        });
        assert_eq!(count(&g), Int::from(4));
    }

    #[test]
    fn text_roundtrip() {
        let g = box_genfun(&iv(&[0, -2]), &iv(&[1, 3])).unwrap();
        let text = g.to_text();
        let back = GenFun::from_text(&text).unwrap();
        assert_eq!(back, g);
        assert!(text.starts_with("dim 2\n"));
    }

    #[test]
    fn text_roundtrip_monomial_term() {
        let g = GenFun {
            dim: 2,
            terms: vec![GenFunTerm {
                coeff: Int::from(-3),
                numerator: iv(&[7, 0]),
                denominators: vec![],
            }],
        };
        let back = GenFun::from_text(&g.to_text()).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn parse_rejects_wrong_arity() {
        let text = "dim 2\n1 ; 1,2,3 ; 1,0\n";
        assert!(matches!(
            GenFun::from_text(text),
            Err(GenFunError::Shape { expected: 2, got: 3 })
        ));
    }

}
