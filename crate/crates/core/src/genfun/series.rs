//! Truncated univariate power series with exact rational coefficients.
//!
//! Counting specializes a rational generating function along `z = exp(tau *
//! lambda)` and needs each term's Laurent expansion around `tau = 0` up to its
//! constant coefficient; orders never exceed the ambient dimension.

use crate::exactmath::{Int, Rat};
use num_traits::Zero;

/// Coefficients of `sum coeffs[i] * tau^i`, truncated beyond `coeffs.len()-1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct TruncSeries {
    pub coeffs: Vec<Rat>,
}

impl TruncSeries {
    #[cfg(test)]
    pub fn one(order: usize) -> Self {
        let mut coeffs = vec![Rat::zero(); order + 1];
        coeffs[0] = Rat::from_integer(Int::from(1));
        TruncSeries { coeffs }
    }

    /// `exp(c * tau)` truncated at `order`.
    pub fn exp(c: &Rat, order: usize) -> Self {
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut cur = Rat::from_integer(Int::from(1));
        coeffs.push(cur.clone());
        for i in 1..=order {
            cur = cur * c / Rat::from_integer(Int::from(i as i64));
            coeffs.push(cur.clone());
        }
        TruncSeries { coeffs }
    }

    /// `(exp(a * tau) - 1) / (a * tau) = sum a^i tau^i / (i+1)!`, the unit-
    /// constant factor split off a denominator `1 - exp(a * tau)`.
    pub fn exp_ratio(a: &Rat, order: usize) -> Self {
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut cur = Rat::from_integer(Int::from(1));
        coeffs.push(cur.clone());
        for i in 1..=order {
            // cur = a^i / (i+1)! built incrementally.
            cur = cur * a / Rat::from_integer(Int::from((i + 1) as i64));
            coeffs.push(cur.clone());
        }
        TruncSeries { coeffs }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let order = self.coeffs.len() - 1;
        debug_assert_eq!(other.coeffs.len(), order + 1);
        let mut coeffs = vec![Rat::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j > order {
                    break;
                }
                coeffs[i + j] = &coeffs[i + j] + a * b;
            }
        }
        TruncSeries { coeffs }
    }

    /// Multiplicative inverse; the constant coefficient must be nonzero.
    pub fn inverse(&self) -> Self {
        let order = self.coeffs.len() - 1;
        let a0 = &self.coeffs[0];
        debug_assert!(!a0.is_zero());
        let mut inv = vec![Rat::zero(); order + 1];
        inv[0] = Rat::from_integer(Int::from(1)) / a0;
        for k in 1..=order {
            let mut acc = Rat::zero();
            for i in 1..=k {
                acc += &self.coeffs[i] * &inv[k - i];
            }
            inv[k] = -acc / a0;
        }
        TruncSeries { coeffs: inv }
    }
}
