//! Lattice basis reduction and integer linear systems.

use super::{Int, IntVec, LinAlgError, Rat};
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Gram-Schmidt data for an integer basis: `mu[i][j]` coefficients for
/// `j < i` and squared norms of the orthogonalized vectors.
fn gram_schmidt(basis: &[IntVec]) -> (Vec<Vec<Rat>>, Vec<Rat>, Vec<Vec<Rat>>) {
    let k = basis.len();
    let n = basis.first().map_or(0, IntVec::len);
    let mut mu = vec![vec![Rat::zero(); k]; k];
    let mut norm2 = vec![Rat::zero(); k];
    let mut star: Vec<Vec<Rat>> = Vec::with_capacity(k);
    for i in 0..k {
        let mut v = basis[i].to_rat();
        for j in 0..i {
            if norm2[j].is_zero() {
                continue;
            }
            let dot: Rat = (0..n)
                .map(|t| Rat::from_integer(basis[i].0[t].clone()) * &star[j][t])
                .sum();
            mu[i][j] = dot / &norm2[j];
            for t in 0..n {
                let upd = &v[t] - &mu[i][j] * &star[j][t];
                v[t] = upd;
            }
        }
        norm2[i] = v.iter().map(|x| x * x).sum();
        star.push(v);
    }
    (mu, norm2, star)
}

/// LLL-reduces an independent integer basis with parameter 3/4.
///
/// Returns the reduced basis together with the unimodular transform rows:
/// `reduced[i] = sum_j transform[i][j] * input[j]`. Fails with
/// `DependentBasis` when the input vectors are linearly dependent.
pub fn lll_reduce(input: &[IntVec]) -> Result<(Vec<IntVec>, Vec<IntVec>), LinAlgError> {
    let k = input.len();
    let mut basis: Vec<IntVec> = input.to_vec();
    let mut transform: Vec<IntVec> = (0..k).map(|i| IntVec::unit(k, i)).collect();
    if k <= 1 {
        if k == 1 && basis[0].is_zero() {
            return Err(LinAlgError::DependentBasis);
        }
        return Ok((basis, transform));
    }
    let delta = Rat::new(Int::from(3), Int::from(4));
    // Small dimensions throughout the crate, so the Gram-Schmidt data is
    // recomputed from scratch after every basis change.
    let (mut mu, mut norm2, _) = gram_schmidt(&basis);
    if norm2.iter().any(Rat::is_zero) {
        return Err(LinAlgError::DependentBasis);
    }
    let mut i = 1;
    while i < k {
        for j in (0..i).rev() {
            let q = mu[i][j].round().to_integer();
            if !q.is_zero() {
                basis[i] = basis[i].sub(&basis[j].scale(&q));
                transform[i] = transform[i].sub(&transform[j].scale(&q));
                let (m2, n2, _) = gram_schmidt(&basis);
                mu = m2;
                norm2 = n2;
            }
        }
        let lovasz = &norm2[i] >= &((&delta - &mu[i][i - 1] * &mu[i][i - 1]) * &norm2[i - 1]);
        if lovasz {
            i += 1;
        } else {
            basis.swap(i, i - 1);
            transform.swap(i, i - 1);
            let (m2, n2, _) = gram_schmidt(&basis);
            mu = m2;
            norm2 = n2;
            i = i.max(2) - 1;
        }
    }
    Ok((basis, transform))
}

/// The integer solution set of a linear system, `base + span_Z(basis)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineLattice {
    pub base: IntVec,
    pub basis: Vec<IntVec>,
}

impl AffineLattice {
    /// Dimension of the solution lattice.
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Solves `eqs . x = rhs` over the integers in `n` unknowns.
///
/// Column reduction by unimodular operations brings the system to echelon
/// form; pivots must divide exactly and pivot-free rows must vanish, else
/// there is no integer solution and `None` is returned.
pub fn integer_affine_solve(n: usize, eqs: &[IntVec], rhs: &[Int]) -> Option<AffineLattice> {
    debug_assert_eq!(eqs.len(), rhs.len());
    debug_assert!(eqs.iter().all(|e| e.len() == n));
    let m = eqs.len();
    // h holds the working matrix as columns; u tracks the column operations.
    let mut h: Vec<Vec<Int>> = (0..n).map(|j| eqs.iter().map(|e| e.0[j].clone()).collect()) .collect();
    let mut u: Vec<IntVec> = (0..n).map(|j| IntVec::unit(n, j)).collect();
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut c = 0;
    for r in 0..m {
        if c == n {
            break;
        }
        // Clear row r to a single nonzero in column c using gcd combinations.
        loop {
            let Some(j) = (c..n).find(|&j| !h[j][r].is_zero()) else {
                break;
            };
            if j != c {
                h.swap(c, j);
                u.swap(c, j);
            }
            let Some(j) = (c + 1..n).find(|&j| !h[j][r].is_zero()) else {
                break;
            };
            let a = h[c][r].clone();
            let b = h[j][r].clone();
            let ext = a.extended_gcd(&b);
            let (g, s, t) = (ext.gcd, ext.x, ext.y);
            let (pa, pb) = (&a / &g, &b / &g);
            // [[s, -pb], [t, pa]] has determinant s*pa + t*pb = 1.
            let new_c: Vec<Int> = (0..m).map(|i| &h[c][i] * &s + &h[j][i] * &t).collect();
            let new_j: Vec<Int> = (0..m).map(|i| &h[j][i] * &pa - &h[c][i] * &pb).collect();
            h[c] = new_c;
            h[j] = new_j;
            let nu_c = u[c].scale(&s).add(&u[j].scale(&t));
            let nu_j = u[j].scale(&pa).sub(&u[c].scale(&pb));
            u[c] = nu_c;
            u[j] = nu_j;
        }
        if !h[c][r].is_zero() {
            if h[c][r].is_negative() {
                for e in h[c].iter_mut() {
                    *e = -std::mem::take(e);
                }
                u[c] = u[c].neg();
            }
            pivots.push((r, c));
            c += 1;
        }
    }
    // Forward solve over the pivot columns; everything else stays zero.
    let mut y = vec![Int::zero(); n];
    let mut pivot_of_row = vec![None; m];
    for &(r, cc) in &pivots {
        pivot_of_row[r] = Some(cc);
    }
    for r in 0..m {
        let mut s = rhs[r].clone();
        for &(_, cc) in &pivots {
            s -= &h[cc][r] * &y[cc];
        }
        match pivot_of_row[r] {
            Some(cc) => {
                let (q, rem) = s.div_rem(&h[cc][r]);
                if !rem.is_zero() {
                    return None;
                }
                y[cc] = q;
            }
            None => {
                if !s.is_zero() {
                    return None;
                }
            }
        }
    }
    let mut base = IntVec::zero(n);
    for j in 0..n {
        if !y[j].is_zero() {
            base = base.add(&u[j].scale(&y[j]));
        }
    }
    let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, cc)| cc).collect();
    let basis: Vec<IntVec> = (0..n)
        .filter(|j| !pivot_cols.contains(j))
        .map(|j| u[j].clone())
        .collect();
    Some(AffineLattice { base, basis })
}
