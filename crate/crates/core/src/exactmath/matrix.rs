//! Rational matrices, exact linear solving, and fraction-free determinants.

use super::{IntVec, LinAlgError, Rat};
use num_bigint::BigInt as Int;
use num_integer::Integer;
use num_traits::{One, Zero};

/// A dense matrix over the rationals, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl RatMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    /// Builds a matrix from rows; all rows must have equal length.
    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Result<Self, LinAlgError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        for row in &rows {
            if row.len() != c {
                return Err(LinAlgError::DimensionMismatch {
                    expected: c,
                    got: row.len(),
                });
            }
        }
        Ok(RatMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Builds the matrix whose columns are the given integer vectors.
    pub fn from_int_columns(cols: &[IntVec]) -> Self {
        let c = cols.len();
        let r = cols.first().map_or(0, IntVec::len);
        let mut m = Self::zero(r, c);
        for (j, v) in cols.iter().enumerate() {
            for i in 0..r {
                m.set(i, j, Rat::from_integer(v.0[i].clone()));
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rat) {
        self.data[i * self.cols + j] = v;
    }

    pub fn mul_vec(&self, x: &[Rat]) -> Vec<Rat> {
        assert_eq!(self.cols, x.len());
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) * &x[j]).sum())
            .collect()
    }

    /// Exact determinant of a square matrix.
    ///
    /// Denominators are cleared per row and the integer core is eliminated
    /// fraction-free (Bareiss), which keeps intermediate entries as minors
    /// rather than exploding rationals.
    pub fn determinant(&self) -> Result<Rat, LinAlgError> {
        if self.rows != self.cols {
            return Err(LinAlgError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Rat::one());
        }
        let mut scale = Int::one();
        let mut m: Vec<Vec<Int>> = Vec::with_capacity(n);
        for i in 0..n {
            let mut lcm = Int::one();
            for j in 0..n {
                lcm = lcm.lcm(self.get(i, j).denom());
            }
            scale *= &lcm;
            m.push(
                (0..n)
                    .map(|j| {
                        let r = self.get(i, j);
                        r.numer() * (&lcm / r.denom())
                    })
                    .collect(),
            );
        }
        let det = bareiss_determinant(&mut m);
        Ok(Rat::new(det, scale))
    }

    /// Exact inverse of a square nonsingular matrix.
    pub fn inverse(&self) -> Result<RatMatrix, LinAlgError> {
        if self.rows != self.cols {
            return Err(LinAlgError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut out = RatMatrix::zero(n, n);
        for j in 0..n {
            let mut e = vec![Rat::zero(); n];
            e[j] = Rat::one();
            let col = solve_linear(self, &e)?;
            for i in 0..n {
                out.set(i, j, col[i].clone());
            }
        }
        Ok(out)
    }
}

/// Fraction-free determinant of an integer matrix; consumes the buffer.
fn bareiss_determinant(m: &mut [Vec<Int>]) -> Int {
    let n = m.len();
    let mut sign = Int::one();
    let mut prev = Int::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return Int::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                let (q, r) = t.div_rem(&prev);
                debug_assert!(r.is_zero(), "Bareiss division must be exact");
                m[i][j] = q;
            }
            m[i][k] = Int::zero();
        }
        prev = m[k][k].clone();
    }
    sign * prev
}

/// Solves the square system `M x = rhs` exactly.
///
/// Returns `Err(Singular)` when the matrix has no inverse and
/// `Err(DimensionMismatch)` when the right-hand side has the wrong length.
pub fn solve_linear(m: &RatMatrix, rhs: &[Rat]) -> Result<Vec<Rat>, LinAlgError> {
    if m.nrows() != m.ncols() {
        return Err(LinAlgError::NotSquare {
            rows: m.nrows(),
            cols: m.ncols(),
        });
    }
    if rhs.len() != m.nrows() {
        return Err(LinAlgError::DimensionMismatch {
            expected: m.nrows(),
            got: rhs.len(),
        });
    }
    let n = m.nrows();
    // Clear denominators row by row; the right-hand side joins as an extra
    // column so the elimination stays integral.
    let mut a: Vec<Vec<Int>> = Vec::with_capacity(n);
    for i in 0..n {
        let mut lcm = Int::one();
        for j in 0..n {
            lcm = lcm.lcm(m.get(i, j).denom());
        }
        lcm = lcm.lcm(rhs[i].denom());
        let mut row: Vec<Int> = (0..n)
            .map(|j| {
                let r = m.get(i, j);
                r.numer() * (&lcm / r.denom())
            })
            .collect();
        row.push(rhs[i].numer() * (&lcm / rhs[i].denom()));
        a.push(row);
    }
    solve_int_rows(&mut a).ok_or(LinAlgError::Singular)
}

/// Solves a square integer system given by constraint rows and right-hand
/// sides; `None` when singular. Fast path used by vertex enumeration.
pub fn solve_int_system(rows: &[&IntVec], rhs: &[&Int]) -> Option<Vec<Rat>> {
    let n = rows.len();
    let mut a: Vec<Vec<Int>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, &b)| {
            debug_assert_eq!(r.len(), n);
            let mut row = r.0.clone();
            row.push(b.clone());
            row
        })
        .collect();
    solve_int_rows(&mut a)
}

/// Bareiss elimination on an augmented integer matrix `n x (n+1)`, then exact
/// rational back-substitution.
fn solve_int_rows(a: &mut [Vec<Int>]) -> Option<Vec<Rat>> {
    let n = a.len();
    let mut prev = Int::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            let r = (k + 1..n).find(|&r| !a[r][k].is_zero())?;
            a.swap(k, r);
        }
        for i in k + 1..n {
            for j in k + 1..=n {
                let t = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                let (q, rem) = t.div_rem(&prev);
                debug_assert!(rem.is_zero(), "Bareiss division must be exact");
                a[i][j] = q;
            }
            a[i][k] = Int::zero();
        }
        prev = a[k][k].clone();
    }
    if a[n - 1][n - 1].is_zero() {
        return None;
    }
    let mut x = vec![Rat::zero(); n];
    for i in (0..n).rev() {
        let mut acc = Rat::from_integer(a[i][n].clone());
        for j in i + 1..n {
            acc -= Rat::from_integer(a[i][j].clone()) * &x[j];
        }
        x[i] = acc / Rat::from_integer(a[i][i].clone());
    }
    Some(x)
}

/// Exact determinant of a list of integer vectors taken as matrix columns.
pub fn det_int_columns(cols: &[IntVec]) -> Int {
    let n = cols.len();
    debug_assert!(cols.iter().all(|c| c.len() == n));
    let mut m: Vec<Vec<Int>> = (0..n)
        .map(|i| cols.iter().map(|c| c.0[i].clone()).collect())
        .collect();
    bareiss_determinant(&mut m)
}

/// A nonzero kernel vector of the homogeneous system given by `rows` (each a
/// functional on `Z^n`), primitive and integer; `None` if the rows have full
/// rank `n`.
pub fn kernel_vector(rows: &[&IntVec], n: usize) -> Option<IntVec> {
    // Rational Gaussian elimination tracking pivot columns.
    let mut a: Vec<Vec<Rat>> = rows.iter().map(|r| r.to_rat()).collect();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..n {
        if r >= a.len() {
            break;
        }
        let pr = (r..a.len()).find(|&i| !a[i][c].is_zero());
        let Some(pr) = pr else { continue };
        a.swap(r, pr);
        let p = a[r][c].clone();
        for j in c..n {
            let v = &a[r][j] / &p;
            a[r][j] = v;
        }
        for i in 0..a.len() {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in c..n {
                    let v = &a[i][j] - &f * &a[r][j];
                    a[i][j] = v;
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
    }
    let free = (0..n).find(|c| !pivot_cols.contains(c))?;
    let mut x = vec![Rat::zero(); n];
    x[free] = Rat::one();
    for (ri, &pc) in pivot_cols.iter().enumerate() {
        x[pc] = -a[ri][free].clone();
    }
    Some(super::rat_vec_to_primitive_int(&x))
}

/// Rank of a set of integer vectors.
pub fn rank_int(vecs: &[IntVec]) -> usize {
    if vecs.is_empty() {
        return 0;
    }
    let n = vecs[0].len();
    let mut a: Vec<Vec<Rat>> = vecs.iter().map(|v| v.to_rat()).collect();
    let mut rank = 0;
    for c in 0..n {
        let Some(pr) = (rank..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(rank, pr);
        let p = a[rank][c].clone();
        for i in rank + 1..a.len() {
            if !a[i][c].is_zero() {
                let f = &a[i][c] / &p;
                for j in c..n {
                    let v = &a[i][j] - &f * &a[rank][j];
                    a[i][j] = v;
                }
            }
        }
        rank += 1;
        if rank == a.len() {
            break;
        }
    }
    rank
}

/// Solves `V x = w` for a full-column-rank `n x d` system given by columns;
/// `None` when inconsistent. Used for coefficient extraction where the answer
/// is unique if it exists.
pub fn solve_tall_system(cols: &[IntVec], w: &[Rat]) -> Option<Vec<Rat>> {
    let d = cols.len();
    if d == 0 {
        return if w.iter().all(Rat::is_zero) {
            Some(Vec::new())
        } else {
            None
        };
    }
    let n = cols[0].len();
    debug_assert_eq!(w.len(), n);
    // Eliminate on the augmented [V | w] and read off uniqueness/consistency.
    let mut a: Vec<Vec<Rat>> = (0..n)
        .map(|i| {
            let mut row: Vec<Rat> = cols
                .iter()
                .map(|c| Rat::from_integer(c.0[i].clone()))
                .collect();
            row.push(w[i].clone());
            row
        })
        .collect();
    let mut r = 0;
    let mut pivots = Vec::new();
    for c in 0..d {
        let Some(pr) = (r..n).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, pr);
        let p = a[r][c].clone();
        for j in c..=d {
            let v = &a[r][j] / &p;
            a[r][j] = v;
        }
        for i in 0..n {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in c..=d {
                    let v = &a[i][j] - &f * &a[r][j];
                    a[i][j] = v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if pivots.len() < d {
        // Columns were not independent; caller violated the contract.
        return None;
    }
    // Remaining rows must be all zero for consistency.
    for row in a.iter().skip(r) {
        if !row[d].is_zero() {
            return None;
        }
    }
    let mut x = vec![Rat::zero(); d];
    for (ri, &pc) in pivots.iter().enumerate() {
        x[pc] = a[ri][d].clone();
    }
    Some(x)
}
