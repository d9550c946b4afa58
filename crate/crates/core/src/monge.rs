//! Monge–Ampère measures of concave piecewise affine functions.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::concave::{legendre_dual, ConcaveOnPolytope, ConcavePA};
use crate::error::{Error, Result};
use crate::exact::{from_lattice, QVector, Q};
use crate::polyhedra::{faces, pairing_constant, volume, VolumeMode};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Atom {
    pub at: QVector,
    pub mass: Q,
}

/// A finite sum of weighted Dirac measures, sorted by location.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DiscreteMeasure {
    atoms: Vec<Atom>,
}

impl DiscreteMeasure {
    /// Merges atoms at equal locations and drops zero masses.
    pub fn new(mut atoms: Vec<Atom>) -> Result<Self> {
        if atoms.iter().any(|a| a.mass < Q::zero()) {
            return Err(Error::invalid("atom masses must be nonnegative"));
        }
        atoms.sort_by(|a, b| a.at.cmp(&b.at));
        let mut merged: Vec<Atom> = Vec::with_capacity(atoms.len());
        for a in atoms {
            match merged.last_mut() {
                Some(last) if last.at == a.at => last.mass += a.mass,
                _ => merged.push(a),
            }
        }
        merged.retain(|a| !a.mass.is_zero());
        Ok(DiscreteMeasure { atoms: merged })
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn total_mass(&self) -> Q {
        self.atoms.iter().map(|a| a.mass.clone()).sum()
    }

    /// `∫ g dμ`
    pub fn integrate(&self, g: impl Fn(&QVector) -> Q) -> Q {
        self.atoms.iter().map(|a| g(&a.at) * &a.mass).sum()
    }

    pub fn scaled(&self, factor: &Q) -> DiscreteMeasure {
        let atoms = self.atoms.iter().map(|a| Atom { at: a.at.clone(), mass: &a.mass * factor }).collect();
        DiscreteMeasure::new(atoms).expect("nonnegative factor")
    }
}

/// `M_M(f) = Σ_v vol(∂f(v)) δ_v` over the vertices of the induced complex.
pub fn ma_measure(f: &ConcavePA) -> DiscreteMeasure {
    let atoms = f
        .induced_complex()
        .vertices()
        .into_iter()
        .map(|v| {
            let mass = volume(&f.sup_differential(&v), VolumeMode::Ambient);
            Atom { at: v, mass }
        })
        .collect();
    DiscreteMeasure::new(atoms).expect("volumes are nonnegative")
}

/// `∫_Δ g dvol_M` with relative volume for lower-dimensional `Δ`.
pub fn integrate_cellwise(g: &ConcaveOnPolytope) -> Q {
    g.integrate()
}

/// Both sides of the identity
/// `-∫ f dM_M(f) = (n+1) ∫_Δ f^∨ + Σ_F <F, v_F> ∫_F f^∨ dvol_{M(F)}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct A21Sides {
    pub lhs: Q,
    pub rhs: Q,
}

impl A21Sides {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

pub fn check_a21(f: &ConcavePA) -> Result<A21Sides> {
    let delta = f.stability_set();
    if !delta.is_full_dimensional() {
        return Err(Error::invalid("stability set is not full-dimensional"));
    }
    if !delta.is_lattice() {
        return Err(Error::invalid("stability set is not a lattice polytope"));
    }
    let n = f.ambient_dim();
    let lhs = -ma_measure(f).integrate(|v| f.evaluate(v));
    let dual = legendre_dual(f);
    let mut rhs = Q::from_integer(BigInt::from(n + 1)) * dual.integrate();
    for facet in faces(&delta, n - 1)? {
        let normal = from_lattice(facet.inner_normal.as_ref().expect("facets of full-dimensional polytopes"));
        let offset = pairing_constant(&facet.face, &normal);
        if offset.is_zero() {
            continue;
        }
        rhs += offset * dual.restrict_to_face(&facet.face)?.integrate();
    }
    Ok(A21Sides { lhs, rhs })
}
