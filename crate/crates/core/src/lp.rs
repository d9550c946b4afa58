//! Exact two-phase simplex with Bland's rule.
//!
//! Solves `max c.x  s.t.  A x <= b, x >= 0` over the rationals.

use num_traits::{One, Signed, Zero};

use crate::exact::{QVector, Q};

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Optimal { value: Q, x: QVector },
    Infeasible,
    Unbounded,
}

struct Tableau {
    // rows: constraints, last column is the right-hand side
    rows: Vec<QVector>,
    basis: Vec<usize>,
    ncols: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        for x in self.rows[r].iter_mut() {
            *x *= &inv;
        }
        let pr = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pr) {
                *x -= &f * y;
            }
        }
        self.basis[r] = c;
    }

    fn reduced_costs(&self, cost: &[Q], allowed: usize) -> QVector {
        let mut rc: QVector = (0..allowed).map(|j| cost[j].clone()).collect();
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            if cost[b].is_zero() {
                continue;
            }
            for (j, x) in rc.iter_mut().enumerate() {
                *x -= &cost[b] * &row[j];
            }
        }
        rc
    }

    /// Maximizes `cost . x` using columns `< allowed`. Returns false if unbounded.
    fn optimize(&mut self, cost: &[Q], allowed: usize) -> bool {
        let rhs = self.ncols;
        loop {
            let rc = self.reduced_costs(cost, allowed);
            let Some(enter) = (0..allowed).find(|&j| rc[j].is_positive()) else {
                return true;
            };
            let mut leave: Option<(usize, Q)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[enter].is_positive() {
                    continue;
                }
                let ratio = &row[rhs] / &row[enter];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            match leave {
                Some((r, _)) => self.pivot(r, enter),
                None => return false,
            }
        }
    }
}

pub fn maximize(c: &[Q], a: &[QVector], b: &[Q]) -> LpOutcome {
    let n = c.len();
    let m = a.len();
    // columns: x (n), slack (m), artificial (one per negative rhs), rhs
    let negatives: Vec<usize> = (0..m).filter(|&i| b[i].is_negative()).collect();
    let ncols = n + m + negatives.len();
    let mut rows = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    for i in 0..m {
        let mut row = vec![Q::zero(); ncols + 1];
        let sign = if b[i].is_negative() { -Q::one() } else { Q::one() };
        for j in 0..n {
            row[j] = &a[i][j] * &sign;
        }
        row[n + i] = sign.clone();
        row[ncols] = &b[i] * &sign;
        if let Some(k) = negatives.iter().position(|&r| r == i) {
            row[n + m + k] = Q::one();
            basis.push(n + m + k);
        } else {
            basis.push(n + i);
        }
        rows.push(row);
    }
    let mut t = Tableau { rows, basis, ncols };

    if !negatives.is_empty() {
        let mut phase1 = vec![Q::zero(); ncols];
        for k in 0..negatives.len() {
            phase1[n + m + k] = -Q::one();
        }
        t.optimize(&phase1, ncols);
        let infeasibility: Q = t
            .rows
            .iter()
            .zip(&t.basis)
            .filter(|(_, &b)| b >= n + m)
            .map(|(row, _)| row[ncols].clone())
            .fold(Q::zero(), |acc, x| acc + x);
        if infeasibility.is_positive() {
            return LpOutcome::Infeasible;
        }
        // drive remaining (zero-level) artificials out of the basis
        for r in 0..m {
            if t.basis[r] < n + m {
                continue;
            }
            if let Some(c) = (0..n + m).find(|&j| !t.rows[r][j].is_zero()) {
                t.pivot(r, c);
            }
        }
    }

    let mut cost = vec![Q::zero(); ncols];
    cost[..n].clone_from_slice(c);
    if !t.optimize(&cost, n + m) {
        return LpOutcome::Unbounded;
    }
    let mut x = vec![Q::zero(); n];
    for (row, &bv) in t.rows.iter().zip(&t.basis) {
        if bv < n {
            x[bv] = row[ncols].clone();
        }
    }
    let value = crate::exact::dot(c, &x);
    LpOutcome::Optimal { value, x }
}

/// Whether `{u in R^n : a u < b}` (strict, `u` free) is nonempty.
pub fn strictly_feasible(a: &[QVector], b: &[Q], n: usize) -> bool {
    if a.is_empty() {
        return true;
    }
    // variables: u+ (n), u- (n), s; maximize s subject to a u + s <= b, s <= 1
    let mut rows = Vec::with_capacity(a.len() + 1);
    let mut rhs = Vec::with_capacity(a.len() + 1);
    for (row, bi) in a.iter().zip(b) {
        let mut r: QVector = row.clone();
        r.extend(row.iter().map(|x| -x.clone()));
        r.push(Q::one());
        rows.push(r);
        rhs.push(bi.clone());
    }
    let mut cap = vec![Q::zero(); 2 * n];
    cap.push(Q::one());
    rows.push(cap);
    rhs.push(Q::one());
    let mut c = vec![Q::zero(); 2 * n];
    c.push(Q::one());
    // s >= 0 in this encoding, so infeasibility also means "no strict point"
    match maximize(&c, &rows, &rhs) {
        LpOutcome::Optimal { value, .. } => value.is_positive(),
        LpOutcome::Infeasible => false,
        LpOutcome::Unbounded => true,
    }
}
