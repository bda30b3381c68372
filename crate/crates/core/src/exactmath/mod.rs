//! Exact arbitrary-precision arithmetic: integer vectors, rational matrices,
//! linear solving, determinants, and lattice basis reduction.
//!
//! Everything downstream (geometry, generating functions, solvers) runs on the
//! types defined here; no floating point is used anywhere.

mod lattice;
mod matrix;

pub use lattice::{integer_affine_solve, lll_reduce, AffineLattice};
pub use matrix::{
    det_int_columns, kernel_vector, rank_int, solve_int_system, solve_linear, solve_tall_system,
    RatMatrix,
};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Arbitrary-precision integer.
pub type Int = BigInt;

/// Arbitrary-precision rational, kept in canonical form (reduced, positive
/// denominator) by every arithmetic operation.
pub type Rat = BigRational;

/// Shorthand for an exact integer-valued rational.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

/// Exact rational from a numerator/denominator pair.
pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

#[derive(Debug, Clone, thiserror::Error, PartialEq, Eq)]
pub enum LinAlgError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("input vectors are linearly dependent")]
    DependentBasis,
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
}

/// A vector in `Z^n`. Ordering is lexicographic.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IntVec(pub Vec<Int>);

impl IntVec {
    pub fn zero(n: usize) -> Self {
        IntVec(vec![Int::zero(); n])
    }

    /// Standard basis vector `e_i` in `Z^n`.
    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = Self::zero(n);
        v.0[i] = Int::one();
        v
    }

    pub fn from_i64(entries: &[i64]) -> Self {
        IntVec(entries.iter().map(|&e| Int::from(e)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|e| e.is_zero())
    }

    pub fn dot(&self, other: &IntVec) -> Int {
        debug_assert_eq!(self.len(), other.len());
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a * b)
            .sum()
    }

    pub fn dot_rat(&self, other: &[Rat]) -> Rat {
        debug_assert_eq!(self.len(), other.len());
        self.0
            .iter()
            .zip(other)
            .map(|(a, b)| Rat::from_integer(a.clone()) * b)
            .sum()
    }

    pub fn add(&self, other: &IntVec) -> IntVec {
        IntVec(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &IntVec) -> IntVec {
        IntVec(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> IntVec {
        IntVec(self.0.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, k: &Int) -> IntVec {
        IntVec(self.0.iter().map(|a| a * k).collect())
    }

    /// Greatest common divisor of the entries (0 for the zero vector).
    pub fn content(&self) -> Int {
        self.0
            .iter()
            .fold(Int::zero(), |acc, e| acc.gcd(e))
    }

    /// The vector divided by its content; the zero vector is returned as is.
    pub fn primitive(&self) -> IntVec {
        let g = self.content();
        if g.is_zero() || g.is_one() {
            return self.clone();
        }
        IntVec(self.0.iter().map(|e| e / &g).collect())
    }

    pub fn to_rat(&self) -> Vec<Rat> {
        self.0
            .iter()
            .map(|e| Rat::from_integer(e.clone()))
            .collect()
    }

    /// Componentwise `self >= other`.
    pub fn ge(&self, other: &IntVec) -> bool {
        debug_assert_eq!(self.len(), other.len());
        self.0.iter().zip(&other.0).all(|(a, b)| a >= b)
    }
}

impl fmt::Display for IntVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for IntVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Floor of a rational as an integer.
pub fn rat_floor(r: &Rat) -> Int {
    r.floor().to_integer()
}

/// Ceiling of a rational as an integer.
pub fn rat_ceil(r: &Rat) -> Int {
    r.ceil().to_integer()
}

/// True if `r` is an integer.
pub fn rat_is_int(r: &Rat) -> bool {
    r.denom().is_one()
}

/// Renders a rational as `p` or `p/q`.
pub fn rat_to_string(r: &Rat) -> String {
    if rat_is_int(r) {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Scales a rational vector to a primitive integer vector pointing the same
/// way. The zero vector maps to itself.
pub fn rat_vec_to_primitive_int(v: &[Rat]) -> IntVec {
    let mut lcm = Int::one();
    for e in v {
        lcm = lcm.lcm(e.denom());
    }
    IntVec(
        v.iter()
            .map(|e| (e * Rat::from_integer(lcm.clone())).to_integer())
            .collect(),
    )
    .primitive()
}

/// Sign of an integer as -1, 0, or 1.
pub fn int_sign(x: &Int) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}
