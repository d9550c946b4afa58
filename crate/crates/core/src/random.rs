//! Seeded generators for randomized checks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use num_bigint::BigInt;

use crate::concave::{canonical_min_form, AffineForm, ConcavePA};
use crate::exact::{QVector, Q};
use crate::heights::{PeriodicPL, Place, RoofInstance, SampleNode};
use crate::polyhedra::{convex_hull, Polytope};

pub struct InstanceGen {
    rng: ChaCha8Rng,
}

impl InstanceGen {
    pub fn new(seed: u64) -> Self {
        InstanceGen { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn int(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }

    /// `p/q` with `|p| <= num` and `1 <= q <= den`.
    pub fn rational(&mut self, num: i64, den: i64) -> Q {
        let p = self.int(-num, num);
        let q = self.int(1, den);
        Q::new(p.into(), q.into())
    }

    pub fn lattice_point(&mut self, n: usize, radius: i64) -> QVector {
        (0..n).map(|_| Q::from_integer(self.int(-radius, radius).into())).collect()
    }

    /// A random concave function with integral slopes and rational constants.
    pub fn concave_pa(&mut self, n: usize, max_pieces: usize) -> ConcavePA {
        let r = self.rng.gen_range(1..=max_pieces);
        let pieces: Vec<AffineForm> =
            (0..r).map(|_| AffineForm::new(self.lattice_point(n, 2), self.rational(6, 4))).collect();
        canonical_min_form(&pieces).expect("nonempty")
    }

    /// Like [`Self::concave_pa`] but with a full-dimensional stability set.
    pub fn full_dim_concave_pa(&mut self, n: usize, max_pieces: usize) -> ConcavePA {
        loop {
            let f = self.concave_pa(n, max_pieces.max(n + 1));
            if f.stability_set().is_full_dimensional() {
                return f;
            }
        }
    }

    /// A full-dimensional lattice polytope with at most `max_points` generators.
    pub fn lattice_polytope(&mut self, n: usize, max_points: usize) -> Polytope {
        loop {
            let k = self.rng.gen_range(n + 1..=max_points.max(n + 1));
            let pts: Vec<QVector> = (0..k).map(|_| self.lattice_point(n, 2)).collect();
            let p = convex_hull(&pts).expect("nonempty");
            if p.is_full_dimensional() {
                return p;
            }
        }
    }

    /// A roof instance over `{0, e_1, .., e_n}` plus a few extra exponents,
    /// with finite, point and circle places and optionally a sampled one.
    pub fn roof_instance(&mut self, n: usize, with_sampled: bool) -> RoofInstance {
        let mut exponents: Vec<Vec<BigInt>> = vec![vec![BigInt::from(0); n]];
        for i in 0..n {
            exponents.push((0..n).map(|j| BigInt::from(u8::from(i == j))).collect());
        }
        for _ in 0..self.int(0, 2) {
            let m: Vec<BigInt> = (0..n).map(|_| BigInt::from(self.int(-1, 2))).collect();
            if !exponents.contains(&m) {
                exponents.push(m);
            }
        }
        let arity = exponents.len();
        let mut places = Vec::new();
        for i in 0..self.int(1, 2) {
            let orders: Vec<i64> = std::iter::once(0).chain((1..arity).map(|_| self.int(-2, 2))).collect();
            places.push(Place::finite(&format!("p{i}"), Q::from_integer(self.int(1, 3).into()), Q::from_integer(self.int(1, 3).into()), &orders));
        }
        let lambdas: QVector = std::iter::once(Q::from_integer(0.into())).chain((1..arity).map(|_| self.rational(4, 3))).collect();
        places.push(Place::point("q", Q::new(self.int(1, 6).into(), 2.into()), lambdas));
        for i in 0..self.int(1, 2) {
            let length = Q::from_integer(self.int(1, 2).into());
            let profiles = (0..arity)
                .map(|j| {
                    if j == 0 {
                        return PeriodicPL::constant(length.clone(), Q::from_integer(0.into())).expect("valid");
                    }
                    let mut knots: Vec<i64> = (0..self.int(1, 3)).map(|_| self.int(0, 7)).collect();
                    knots.sort_unstable();
                    knots.dedup();
                    let bps = knots
                        .into_iter()
                        .map(|k| (&length * Q::new(k.into(), 8.into()), self.rational(3, 2)))
                        .collect();
                    PeriodicPL::new(length.clone(), bps).expect("valid")
                })
                .collect();
            places.push(Place::circle(&format!("v{i}"), Q::from_integer(1.into()), length, profiles));
        }
        if with_sampled {
            let count = self.int(1, 3) as usize;
            let nodes = (0..count)
                .map(|_| SampleNode {
                    subweight: 1.0 / count as f64,
                    lambdas: std::iter::once(0.0).chain((1..arity).map(|_| self.rng.gen_range(-2.0..2.0))).collect(),
                })
                .collect();
            places.push(Place::sampled("s", Q::new(1.into(), 2.into()), nodes));
        }
        RoofInstance::new(n, exponents, places).expect("exponents contain a basis")
    }
}
