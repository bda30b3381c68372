//! Exact rational linear programming via two-phase dictionary simplex.
//!
//! Only small auxiliary programs are solved here (feasibility probes and
//! recession-cone bounds), so the implementation favors simplicity: dense
//! dictionaries over `Rat`, Bland's pivot rule for guaranteed termination,
//! free variables split into differences of nonnegatives.

use crate::exactmath::{IntVec, Rat};
use num_traits::{One, Signed, Zero};

/// Outcome of maximizing a linear functional over `{x : rows . x <= rhs}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Infeasible,
    Unbounded,
    Optimal { value: Rat, point: Vec<Rat> },
}

/// Dictionary: basic[i] is the variable expressed by row i, with
/// row form  x_basic[i] = rhs[i] + sum_j a[i][j] * x_nonbasic[j].
struct Dictionary {
    nonbasic: Vec<usize>,
    basic: Vec<usize>,
    a: Vec<Vec<Rat>>,
    rhs: Vec<Rat>,
    // Objective row: z = obj_const + sum_j obj[j] * x_nonbasic[j].
    obj: Vec<Rat>,
    obj_const: Rat,
}

impl Dictionary {
    fn pivot(&mut self, row: usize, col: usize) {
        let pivot_coeff = self.a[row][col].clone();
        debug_assert!(!pivot_coeff.is_zero());
        // Solve row for the entering variable.
        let entering = self.nonbasic[col];
        let leaving = self.basic[row];
        let inv = -Rat::one() / &pivot_coeff;
        let n = self.nonbasic.len();
        let mut new_row: Vec<Rat> = Vec::with_capacity(n);
        for j in 0..n {
            if j == col {
                new_row.push(-&inv);
            } else {
                new_row.push(&self.a[row][j] * &inv);
            }
        }
        // In the new row the old entering slot now holds the leaving variable
        // with coefficient 1/pivot_coeff, encoded by -inv above.
        let new_rhs = &self.rhs[row] * &inv;
        self.basic[row] = entering;
        self.nonbasic[col] = leaving;
        for i in 0..self.a.len() {
            if i == row {
                continue;
            }
            let c = self.a[i][col].clone();
            if c.is_zero() {
                continue;
            }
            for j in 0..n {
                let upd = if j == col {
                    &c * &new_row[j]
                } else {
                    &self.a[i][j] + &c * &new_row[j]
                };
                self.a[i][j] = upd;
            }
            self.rhs[i] = &self.rhs[i] + &c * &new_rhs;
        }
        let c = self.obj[col].clone();
        if !c.is_zero() {
            for j in 0..n {
                let upd = if j == col {
                    &c * &new_row[j]
                } else {
                    &self.obj[j] + &c * &new_row[j]
                };
                self.obj[j] = upd;
            }
            self.obj_const = &self.obj_const + &c * &new_rhs;
        }
        self.a[row] = new_row;
        self.rhs[row] = new_rhs;
    }

    /// Runs Bland-rule simplex on a feasible dictionary.
    /// Returns false on unboundedness.
    fn optimize(&mut self) -> bool {
        loop {
            // Entering: smallest-index nonbasic variable with positive cost.
            let Some(col) = (0..self.nonbasic.len())
                .filter(|&j| self.obj[j].is_positive())
                .min_by_key(|&j| self.nonbasic[j])
            else {
                return true;
            };
            // Leaving: tightest ratio, smallest variable index on ties.
            let mut best: Option<(Rat, usize, usize)> = None;
            for i in 0..self.basic.len() {
                if self.a[i][col].is_negative() {
                    let ratio = -&self.rhs[i] / &self.a[i][col];
                    let key = (ratio, self.basic[i]);
                    match &best {
                        Some((r, v, _)) if (r, *v) <= (&key.0, key.1) => {}
                        _ => best = Some((key.0, key.1, i)),
                    }
                }
            }
            match best {
                Some((_, _, row)) => self.pivot(row, col),
                None => return false,
            }
        }
    }

    fn value_of(&self, var: usize) -> Rat {
        if let Some(i) = self.basic.iter().position(|&v| v == var) {
            self.rhs[i].clone()
        } else {
            Rat::zero()
        }
    }
}

/// Maximizes `objective . x` subject to `rows[i] . x <= rhs[i]` with x free.
///
/// Each free coordinate is split as a difference of two nonnegative slack
/// components; a single artificial variable drives phase one.
pub fn maximize(rows: &[IntVec], rhs: &[Rat], objective: &[Rat]) -> LpOutcome {
    let n = objective.len();
    debug_assert!(rows.iter().all(|r| r.len() == n));
    let m = rows.len();
    // Variables: 0..2n are the split coordinates (x_i = v_{2i} - v_{2i+1}),
    // 2n..2n+m are slacks, 2n+m is the phase-one artificial.
    let nv = 2 * n;
    let art = nv + m;
    let mut dict = Dictionary {
        nonbasic: (0..nv).chain(std::iter::once(art)).collect(),
        basic: (nv..nv + m).collect(),
        a: Vec::with_capacity(m),
        rhs: rhs.to_vec(),
        obj: vec![Rat::zero(); nv + 1],
        obj_const: Rat::zero(),
    };
    for row in rows {
        let mut drow = Vec::with_capacity(nv + 1);
        for j in 0..n {
            drow.push(Rat::from_integer(-row.0[j].clone()));
            drow.push(Rat::from_integer(row.0[j].clone()));
        }
        drow.push(Rat::one()); // artificial enters every row
        dict.a.push(drow);
    }
    // Phase one: maximize -x_art after making the dictionary feasible with a
    // special pivot on the most violated row.
    if dict.rhs.iter().any(Rat::is_negative) {
        let col = nv; // artificial's nonbasic slot
        let row = (0..m).min_by(|&i, &j| dict.rhs[i].cmp(&dict.rhs[j])).unwrap();
        dict.obj[col] = -Rat::one();
        dict.pivot(row, col);
        let ok = dict.optimize();
        debug_assert!(ok, "phase one is bounded by construction");
        if dict.obj_const.is_negative() {
            return LpOutcome::Infeasible;
        }
        // Pivot the artificial out if it lingers at value zero.
        if let Some(r) = dict.basic.iter().position(|&v| v == art) {
            debug_assert!(dict.rhs[r].is_zero());
            match (0..dict.nonbasic.len()).find(|&j| !dict.a[r][j].is_zero()) {
                Some(j) => dict.pivot(r, j),
                None => {
                    // Row says 0 = 0; drop it.
                    dict.basic.remove(r);
                    dict.a.remove(r);
                    dict.rhs.remove(r);
                }
            }
        }
    }
    // Freeze the artificial at zero by removing its column.
    if let Some(j) = dict.nonbasic.iter().position(|&v| v == art) {
        dict.nonbasic.remove(j);
        dict.obj.remove(j);
        for row in &mut dict.a {
            row.remove(j);
        }
    }
    // Phase two objective, rewritten through the current basis.
    dict.obj = vec![Rat::zero(); dict.nonbasic.len()];
    dict.obj_const = Rat::zero();
    let mut coeff = vec![Rat::zero(); nv];
    for j in 0..n {
        coeff[2 * j] = objective[j].clone();
        coeff[2 * j + 1] = -objective[j].clone();
    }
    for (var, c) in coeff.into_iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if let Some(jj) = dict.nonbasic.iter().position(|&v| v == var) {
            dict.obj[jj] = &dict.obj[jj] + &c;
        } else if let Some(i) = dict.basic.iter().position(|&v| v == var) {
            dict.obj_const = &dict.obj_const + &c * &dict.rhs[i];
            for jj in 0..dict.nonbasic.len() {
                dict.obj[jj] = &dict.obj[jj] + &c * &dict.a[i][jj];
            }
        }
    }
    if !dict.optimize() {
        return LpOutcome::Unbounded;
    }
    let point: Vec<Rat> = (0..n)
        .map(|j| dict.value_of(2 * j) - dict.value_of(2 * j + 1))
        .collect();
    LpOutcome::Optimal {
        value: dict.obj_const.clone(),
        point,
    }
}

/// A rational point satisfying `rows . x <= rhs`, if any.
pub fn feasible_point(rows: &[IntVec], rhs: &[Rat], n: usize) -> Option<Vec<Rat>> {
    match maximize(rows, rhs, &vec![Rat::zero(); n]) {
        LpOutcome::Optimal { point, .. } => Some(point),
        LpOutcome::Infeasible => None,
        LpOutcome::Unbounded => unreachable!("constant objective cannot be unbounded"),
    }
}
