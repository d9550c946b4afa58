//! Integer lattices: Smith normal form, kernels, saturations and indices.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::exact::{LatticeVector, Q, QVector};

pub type IntMatrix = Vec<Vec<BigInt>>;

fn identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

/// `u * a * v = d` with `d` diagonal, each diagonal entry dividing the next.
#[derive(Clone, Debug)]
pub struct Smith {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
    pub rank: usize,
}

impl Smith {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.d[i][i].clone()).collect()
    }
}

struct Work {
    a: IntMatrix,
    u: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl Work {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap(i, j);
        self.u.swap(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for row in self.a.iter_mut().chain(self.v.iter_mut()) {
            row.swap(i, j);
        }
        self.v_inv.swap(i, j);
    }

    /// row_i -= k * row_j
    fn add_row(&mut self, i: usize, j: usize, k: &BigInt) {
        for m in [&mut self.a, &mut self.u] {
            let rj = m[j].clone();
            for (x, y) in m[i].iter_mut().zip(&rj) {
                *x -= k * y;
            }
        }
    }

    /// col_i -= k * col_j
    fn add_col(&mut self, i: usize, j: usize, k: &BigInt) {
        for m in [&mut self.a, &mut self.v] {
            for row in m.iter_mut() {
                let t = k * &row[j];
                row[i] -= t;
            }
        }
        let ri = self.v_inv[i].clone();
        for (x, y) in self.v_inv[j].iter_mut().zip(&ri) {
            *x += k * y;
        }
    }
}

pub fn smith(a: &[Vec<BigInt>], ncols: usize) -> Smith {
    let m = a.len();
    let n = ncols;
    let mut w = Work { a: a.to_vec(), u: identity(m), v: identity(n), v_inv: identity(n) };
    let mut t = 0;
    while t < m.min(n) {
        // smallest nonzero entry of the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                if w.a[i][j].is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| w.a[i][j].abs() < w.a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);
        loop {
            let mut changed = false;
            for i in t + 1..m {
                if w.a[i][t].is_zero() {
                    continue;
                }
                let k = w.a[i][t].div_floor(&w.a[t][t]);
                w.add_row(i, t, &k);
                if !w.a[i][t].is_zero() {
                    w.swap_rows(t, i);
                }
                changed = true;
            }
            for j in t + 1..n {
                if w.a[t][j].is_zero() {
                    continue;
                }
                let k = w.a[t][j].div_floor(&w.a[t][t]);
                w.add_col(j, t, &k);
                if !w.a[t][j].is_zero() {
                    w.swap_cols(t, j);
                }
                changed = true;
            }
            if changed {
                continue;
            }
            // divisibility of the trailing block by the pivot
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !w.a[i][j].is_multiple_of(&w.a[t][t])));
            match bad {
                Some(i) => {
                    let one = -BigInt::one();
                    w.add_row(t, i, &one);
                }
                None => break,
            }
        }
        if w.a[t][t].is_negative() {
            for x in w.a[t].iter_mut().chain(w.u[t].iter_mut()) {
                *x = -x.clone();
            }
        }
        t += 1;
    }
    Smith { u: w.u, d: w.a, v: w.v, v_inv: w.v_inv, rank: t }
}

/// Basis of `{x in Z^n : a x = 0}`.
pub fn integer_kernel(a: &[Vec<BigInt>], ncols: usize) -> Vec<LatticeVector> {
    let s = smith(a, ncols);
    (s.rank..ncols).map(|j| s.v.iter().map(|row| row[j].clone()).collect()).collect()
}

/// Basis of `Z^n` intersected with the rational span of `rows`.
pub fn saturation(rows: &[Vec<BigInt>], ncols: usize) -> Vec<LatticeVector> {
    let s = smith(rows, ncols);
    s.v_inv[..s.rank].to_vec()
}

/// Clears denominators row-wise.
pub fn integer_rows(rows: &[QVector]) -> IntMatrix {
    rows.iter()
        .map(|r| {
            let lcm = r.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            r.iter().map(|x| (x * Q::from_integer(lcm.clone())).to_integer()).collect()
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LatticeIndex {
    Finite(BigInt),
    Infinite,
}

impl fmt::Display for LatticeIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatticeIndex::Finite(k) => write!(f, "{k}"),
            LatticeIndex::Infinite => write!(f, "infinite"),
        }
    }
}

/// Index of the span of `generators` inside `Z^n`.
pub fn lattice_index(generators: &[LatticeVector], n: usize) -> LatticeIndex {
    if n == 0 {
        return LatticeIndex::Finite(BigInt::one());
    }
    let s = smith(generators, n);
    if s.rank < n {
        return LatticeIndex::Infinite;
    }
    LatticeIndex::Finite(s.diagonal().iter().fold(BigInt::one(), |acc, x| acc * x.abs()))
}

/// Determinant by fraction-free elimination.
pub fn det_int(a: &[Vec<BigInt>]) -> BigInt {
    let rows: Vec<QVector> = a.iter().map(|r| r.iter().map(|x| Q::from_integer(x.clone())).collect()).collect();
    crate::linalg::det(&rows).to_integer()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::lvec;

    fn mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
        let n = b.first().map_or(0, Vec::len);
        a.iter()
            .map(|row| {
                (0..n)
                    .map(|j| row.iter().zip(b).fold(BigInt::zero(), |acc, (x, r)| acc + x * &r[j]))
                    .collect()
            })
            .collect()
    }

    #[test]
    fn smith_decomposition_holds() {
        let a = vec![lvec(&[2, 4, 4]), lvec(&[-6, 6, 12]), lvec(&[10, -4, -16])];
        let s = smith(&a, 3);
        assert_eq!(mul(&mul(&s.u, &a), &s.v), s.d);
        assert_eq!(mul(&s.v, &s.v_inv), identity(3));
        assert_eq!(s.diagonal(), vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]);
    }

    #[test]
    fn indices() {
        assert_eq!(lattice_index(&[lvec(&[2])], 1), LatticeIndex::Finite(BigInt::from(2)));
        assert_eq!(
            lattice_index(&[lvec(&[1, 0]), lvec(&[0, 1])], 2),
            LatticeIndex::Finite(BigInt::from(1))
        );
        assert_eq!(
            lattice_index(&[lvec(&[2, 0]), lvec(&[1, 2])], 2),
            LatticeIndex::Finite(BigInt::from(4))
        );
        assert_eq!(lattice_index(&[lvec(&[1, 1]), lvec(&[2, 2])], 2), LatticeIndex::Infinite);
        // redundant generators
        assert_eq!(
            lattice_index(&[lvec(&[2, 0]), lvec(&[0, 3]), lvec(&[1, 1])], 2),
            LatticeIndex::Finite(BigInt::from(1))
        );
    }

    #[test]
    fn kernel_and_saturation() {
        let k = integer_kernel(&[lvec(&[2, 4, 6])], 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            let s: BigInt = &v[0] * 2 + &v[1] * 4 + &v[2] * 6;
            assert!(s.is_zero());
        }
        // kernel basis spans a saturated lattice
        assert_eq!(saturation(&k, 3).len(), 2);
        let sat = saturation(&[lvec(&[2, 2])], 2);
        assert_eq!(sat.len(), 1);
        assert_eq!(sat[0].iter().map(|x| x.abs()).collect::<Vec<_>>(), lvec(&[1, 1]));
    }
}
