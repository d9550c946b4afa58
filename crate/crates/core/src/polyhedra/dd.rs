//! Double description: generators of `{y : E y = 0, A y >= 0}`.

use num_traits::{Signed, Zero};

use crate::exact::{dot, primitive_direction, QVector, Q};
use crate::linalg::{nullspace, rank, rref, solve};

#[derive(Clone, Debug, Default)]
pub struct ConeGenerators {
    /// Canonical basis of the lineality space (reduced echelon rows, primitive).
    pub lineality: Vec<QVector>,
    /// Extreme rays of the pointed part, inside the orthogonal complement of
    /// the lineality space; primitive integer directions, sorted.
    pub rays: Vec<QVector>,
}

#[derive(Clone)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64).max(1)])
    }
    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn and(&self, o: &Bits) -> Bits {
        Bits(self.0.iter().zip(&o.0).map(|(a, b)| a & b).collect())
    }
    fn count(&self) -> u32 {
        self.0.iter().map(|x| x.count_ones()).sum()
    }
    fn contains(&self, o: &Bits) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a & b == *b)
    }
}

pub fn canonical_basis(rows: &[QVector], d: usize) -> Vec<QVector> {
    let (r, _) = rref(rows, d);
    r.iter().map(|v| primitive_direction(v)).collect()
}

pub fn cone_generators(ineqs: &[QVector], eqs: &[QVector], d: usize) -> ConeGenerators {
    let all: Vec<QVector> = eqs.iter().chain(ineqs).cloned().collect();
    let lineality = canonical_basis(&nullspace(&all, d), d);

    let mut span_rows: Vec<QVector> = eqs.to_vec();
    span_rows.extend(lineality.iter().cloned());
    let basis = nullspace(&span_rows, d);
    let w = basis.len();
    if w == 0 {
        return ConeGenerators { lineality, rays: Vec::new() };
    }

    let cons: Vec<QVector> = ineqs
        .iter()
        .map(|a| basis.iter().map(|b| dot(a, b)).collect::<QVector>())
        .filter(|c| c.iter().any(|x| !x.is_zero()))
        .collect();
    let m = cons.len();

    // initial simplicial cone from w independent constraints
    let mut chosen: Vec<usize> = Vec::new();
    let mut chosen_rows: Vec<QVector> = Vec::new();
    for (i, c) in cons.iter().enumerate() {
        chosen_rows.push(c.clone());
        if rank(&chosen_rows, w) == chosen_rows.len() {
            chosen.push(i);
            if chosen.len() == w {
                break;
            }
        } else {
            chosen_rows.pop();
        }
    }
    debug_assert_eq!(chosen.len(), w, "pointed part must have full rank");

    let mut rays: Vec<(QVector, Bits)> = Vec::with_capacity(w);
    for k in 0..w {
        let mut e = vec![Q::zero(); w];
        e[k] = Q::from_integer(1.into());
        let r = solve(&chosen_rows, &e).expect("independent constraints");
        let mut z = Bits::new(m);
        for (j, &ci) in chosen.iter().enumerate() {
            if j != k {
                z.set(ci);
            }
        }
        rays.push((primitive_direction(&r), z));
    }

    for (i, c) in cons.iter().enumerate() {
        if chosen.contains(&i) {
            continue;
        }
        let vals: Vec<Q> = rays.iter().map(|(r, _)| dot(c, r)).collect();
        let mut next: Vec<(QVector, Bits)> = Vec::new();
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        for (k, v) in vals.iter().enumerate() {
            if v.is_positive() {
                pos.push(k);
                next.push(rays[k].clone());
            } else if v.is_negative() {
                neg.push(k);
            } else {
                let (r, z) = &rays[k];
                let mut z = z.clone();
                z.set(i);
                next.push((r.clone(), z));
            }
        }
        for &p in &pos {
            for &n in &neg {
                let common = rays[p].1.and(&rays[n].1);
                if (common.count() as usize) + 2 < w {
                    continue;
                }
                let adjacent = rays
                    .iter()
                    .enumerate()
                    .all(|(k, (_, z))| k == p || k == n || !z.contains(&common));
                if !adjacent {
                    continue;
                }
                let (rp, rn) = (&rays[p].0, &rays[n].0);
                let (sp, sn) = (&vals[p], -vals[n].clone());
                let r: QVector = rp.iter().zip(rn).map(|(a, b)| a * &sn + b * sp).collect();
                let mut z = common;
                z.set(i);
                next.push((primitive_direction(&r), z));
            }
        }
        rays = next;
    }

    let mut out: Vec<QVector> = rays
        .into_iter()
        .map(|(z, _)| {
            let y: QVector = (0..d)
                .map(|j| basis.iter().zip(&z).fold(Q::zero(), |acc, (b, zk)| acc + &b[j] * zk))
                .collect();
            primitive_direction(&y)
        })
        .collect();
    out.sort();
    out.dedup();
    ConeGenerators { lineality, rays: out }
}
