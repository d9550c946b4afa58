//! Exact volumes and integrals of affine functions over polytopes.
//!
//! Polytopes are triangulated by pulling the lexicographically smallest
//! vertex; relative volumes use a basis of the lattice `M ∩ L` where `L` is
//! the direction space of the affine hull.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::polyhedron::{Polyhedron, Polytope};
use crate::exact::{factorial, sub, QVector, Q};
use crate::lattice::{integer_rows, saturation};
use crate::linalg::{det, rref, solve};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VolumeMode {
    /// Lebesgue measure normalized so `Z^n` has covolume one; zero on
    /// lower-dimensional polytopes.
    Ambient,
    /// Measure on the affine hull for which its induced lattice has covolume one.
    Relative,
}

/// Simplices (as vertex lists of length `dim + 1`) triangulating `p`.
pub fn triangulation(p: &Polyhedron) -> Vec<Vec<QVector>> {
    assert!(p.is_bounded(), "triangulation needs a polytope");
    let verts = p.vertices();
    if verts.len() == p.dim() + 1 {
        return vec![verts.to_vec()];
    }
    let apex = &verts[0];
    let mut out = Vec::new();
    for f in p.facets() {
        if f.slack(apex).is_zero() {
            continue;
        }
        let face_pts: Vec<QVector> = verts.iter().filter(|v| f.slack(v).is_zero()).cloned().collect();
        let face = Polyhedron::from_generators(p.ambient_dim(), &face_pts, &[], &[]).expect("facet");
        for s in triangulation(&face) {
            let mut simplex = Vec::with_capacity(s.len() + 1);
            simplex.push(apex.clone());
            simplex.extend(s);
            out.push(simplex);
        }
    }
    out
}

/// Lattice coordinates on an affine subspace: `x = origin + sum c_j basis_j`,
/// where `basis` is a basis of `Z^n ∩ L`.
#[derive(Clone, Debug)]
pub struct AffineLatticeChart {
    origin: QVector,
    basis: Vec<QVector>,
    pivots: Vec<usize>,
}

impl AffineLatticeChart {
    pub fn new(origin: QVector, directions: &[QVector]) -> Self {
        let n = origin.len();
        let ints = integer_rows(directions);
        let basis: Vec<QVector> = saturation(&ints, n)
            .into_iter()
            .map(|r| r.into_iter().map(Q::from_integer).collect())
            .collect();
        let (_, pivots) = rref(&basis, n);
        AffineLatticeChart { origin, basis, pivots }
    }

    pub fn for_polyhedron(p: &Polyhedron) -> Self {
        Self::new(p.vertices()[0].clone(), &p.linear_span())
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn coords(&self, x: &[Q]) -> QVector {
        let d = sub(x, &self.origin);
        let k = self.basis.len();
        let a: Vec<QVector> = self.pivots.iter().map(|&p| (0..k).map(|j| self.basis[j][p].clone()).collect()).collect();
        let b: QVector = self.pivots.iter().map(|&p| d[p].clone()).collect();
        solve(&a, &b).expect("basis is independent on its pivots")
    }
}

fn simplex_volume(coords: &[QVector]) -> Q {
    let k = coords.len() - 1;
    if k == 0 {
        return Q::from_integer(BigInt::from(1));
    }
    let rows: Vec<QVector> = coords[1..].iter().map(|c| sub(c, &coords[0])).collect();
    det(&rows).abs() / Q::from_integer(factorial(k))
}

pub fn volume(p: &Polytope, mode: VolumeMode) -> Q {
    integrate_affine(p, mode, |_| Q::from_integer(BigInt::from(1)))
}

/// `∫_p f`, exact when `f` is affine on `p`.
pub fn integrate_affine(p: &Polyhedron, mode: VolumeMode, f: impl Fn(&QVector) -> Q) -> Q {
    assert!(p.is_bounded(), "integration over an unbounded polyhedron");
    if mode == VolumeMode::Ambient && !p.is_full_dimensional() {
        return Q::zero();
    }
    let chart = match mode {
        VolumeMode::Ambient => None,
        VolumeMode::Relative => Some(AffineLatticeChart::for_polyhedron(p)),
    };
    integrate_with_chart(p, chart.as_ref(), &f)
}

/// Integral of an affine `f` over `p` using the given chart's lattice measure
/// (ambient measure when `chart` is `None`).
pub fn integrate_with_chart(p: &Polyhedron, chart: Option<&AffineLatticeChart>, f: &dyn Fn(&QVector) -> Q) -> Q {
    let mut total = Q::zero();
    for s in triangulation(p) {
        let coords: Vec<QVector> = match chart {
            Some(c) => s.iter().map(|v| c.coords(v)).collect(),
            None => s.clone(),
        };
        let vol = simplex_volume(&coords);
        if vol.is_zero() {
            continue;
        }
        let mean = s.iter().fold(Q::zero(), |acc, v| acc + f(v)) / Q::from_integer(BigInt::from(s.len()));
        total += vol * mean;
    }
    total
}
