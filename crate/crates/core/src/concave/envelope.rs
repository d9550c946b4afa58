use num_traits::{Signed, Zero};

use super::pa::{canonical_min_form, AffineForm, ConcavePA};
use crate::error::{check_rank, Error, Result};
use crate::exact::{QVector, Q};
use crate::polyhedra::{convex_hull, integrate_with_chart, AffineLatticeChart, Polyhedron, Polytope};

/// A lifted point `(m_j, λ_j)` and whether it lies on the envelope.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftPoint {
    pub point: QVector,
    pub value: Q,
    pub active: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnvelopeCell {
    pub cell: Polytope,
    pub form: AffineForm,
}

/// A concave function on a polytope, affine on each cell of a regular
/// subdivision.
#[derive(Clone, Debug)]
pub struct ConcaveOnPolytope {
    domain: Polytope,
    cells: Vec<EnvelopeCell>,
    lift: Vec<LiftPoint>,
}

/// Upper concave envelope of the lifted points over their convex hull.
pub fn upper_envelope(lifted: &[(QVector, Q)]) -> Result<ConcaveOnPolytope> {
    let n = lifted.first().ok_or_else(|| Error::invalid("upper envelope of no points"))?.0.len();
    for (m, _) in lifted {
        check_rank(n, m.len())?;
    }
    let pts: Vec<QVector> = lifted
        .iter()
        .map(|(m, t)| {
            let mut x = m.clone();
            x.push(t.clone());
            x
        })
        .collect();
    let mut down = vec![Q::zero(); n + 1];
    down[n] = -Q::from_integer(1.into());
    let hull = Polyhedron::from_generators(n + 1, &pts, &[down], &[])?;
    let domain = convex_hull(&lifted.iter().map(|(m, _)| m.clone()).collect::<Vec<_>>())?;

    let mut cells = Vec::new();
    for f in hull.facets() {
        let at = &f.normal[n];
        if !at.is_negative() {
            continue;
        }
        // a.m + a_t t >= c  <=>  t <= <a/(-a_t), m> + c/a_t
        let scale = -at.clone();
        let slope: QVector = f.normal[..n].iter().map(|x| x / &scale).collect();
        let form = AffineForm::new(slope, &f.offset / at);
        let on: Vec<QVector> = hull.vertices().iter().filter(|v| f.slack(v).is_zero()).map(|v| v[..n].to_vec()).collect();
        cells.push(EnvelopeCell { cell: convex_hull(&on)?, form });
    }
    cells.sort_by(|a, b| a.cell.vertices().cmp(b.cell.vertices()));
    let mut env = ConcaveOnPolytope { domain, cells, lift: Vec::new() };
    env.lift = lifted
        .iter()
        .map(|(m, t)| LiftPoint { point: m.clone(), value: t.clone(), active: env.value_unchecked(m) == *t })
        .collect();
    Ok(env)
}

/// `f^∨(m) = inf_u <m, u> - f(u)`: the upper envelope of `(m_i, -l_i)` over `Δ_f`.
pub fn legendre_dual(f: &ConcavePA) -> ConcaveOnPolytope {
    let lifted: Vec<(QVector, Q)> = f.pieces().iter().map(|p| (p.slope.clone(), -p.constant.clone())).collect();
    upper_envelope(&lifted).expect("nonempty canonical function")
}

impl ConcaveOnPolytope {
    pub fn domain(&self) -> &Polytope {
        &self.domain
    }

    pub fn cells(&self) -> &[EnvelopeCell] {
        &self.cells
    }

    pub fn lift(&self) -> &[LiftPoint] {
        &self.lift
    }

    pub fn ambient_dim(&self) -> usize {
        self.domain.ambient_dim()
    }

    fn value_unchecked(&self, m: &[Q]) -> Q {
        self.cells.iter().map(|c| c.form.eval(m)).min().expect("at least one cell")
    }

    /// Value at `m`, or `None` outside the domain.
    pub fn evaluate(&self, m: &[Q]) -> Option<Q> {
        self.domain.contains(m).then(|| self.value_unchecked(m))
    }

    /// Vertices of the subdivision with their values.
    pub fn vertex_values(&self) -> Vec<(QVector, Q)> {
        let mut vs: Vec<QVector> = self.cells.iter().flat_map(|c| c.cell.vertices().to_vec()).collect();
        vs.sort();
        vs.dedup();
        vs.into_iter().map(|v| {
            let t = self.value_unchecked(&v);
            (v, t)
        }).collect()
    }

    /// The inverse transform `u ↦ min_v <v, u> - g(v)` over subdivision vertices.
    pub fn dual(&self) -> ConcavePA {
        let pieces: Vec<AffineForm> = self.vertex_values().into_iter().map(|(v, t)| AffineForm::new(v, -t)).collect();
        canonical_min_form(&pieces).expect("nonempty")
    }

    /// `∫_Δ g dvol`, using the relative lattice measure on the affine hull
    /// when `Δ` is not full-dimensional.
    pub fn integrate(&self) -> Q {
        let chart = (!self.domain.is_full_dimensional()).then(|| AffineLatticeChart::for_polyhedron(&self.domain));
        self.integrate_in(chart.as_ref())
    }

    pub(crate) fn integrate_in(&self, chart: Option<&AffineLatticeChart>) -> Q {
        let dim = self.domain.dim();
        self.cells
            .iter()
            .filter(|c| c.cell.dim() == dim)
            .map(|c| integrate_with_chart(&c.cell, chart, &|m| c.form.eval(m)))
            .sum()
    }

    /// The restriction to a face `F` of the domain: cells meeting `F` in a
    /// face of the same dimension as `F`.
    pub fn restrict_to_face(&self, face: &Polytope) -> Result<ConcaveOnPolytope> {
        if !face.is_face_of(&self.domain) {
            return Err(Error::invalid("restriction target is not a face of the domain"));
        }
        let mut cells = Vec::new();
        for c in &self.cells {
            let on: Vec<QVector> = c.cell.vertices().iter().filter(|v| face.contains(v)).cloned().collect();
            if on.is_empty() {
                continue;
            }
            let piece = convex_hull(&on)?;
            if piece.dim() == face.dim() && !cells.iter().any(|e: &EnvelopeCell| e.cell == piece) {
                cells.push(EnvelopeCell { cell: piece, form: c.form.clone() });
            }
        }
        cells.sort_by(|a, b| a.cell.vertices().cmp(b.cell.vertices()));
        let lift = self.lift.iter().filter(|l| face.contains(&l.point)).cloned().collect();
        Ok(ConcaveOnPolytope { domain: face.clone(), cells, lift })
    }

    /// `m ↦ g(m + shift)` on `Δ - shift`.
    pub fn translate_domain(&self, shift: &[Q]) -> ConcaveOnPolytope {
        let back: QVector = shift.iter().map(|x| -x.clone()).collect();
        let cells = self
            .cells
            .iter()
            .map(|c| EnvelopeCell {
                cell: c.cell.translate(&back),
                form: AffineForm::new(c.form.slope.clone(), c.form.eval(shift)),
            })
            .collect();
        let lift = self
            .lift
            .iter()
            .map(|l| LiftPoint { point: crate::exact::sub(&l.point, shift), ..l.clone() })
            .collect();
        ConcaveOnPolytope { domain: self.domain.translate(&back), cells, lift }
    }

    /// Lifted vertex data, suitable for rebuilding the function with
    /// [`upper_envelope`].
    pub fn vertex_lift(&self) -> Vec<(QVector, Q)> {
        self.vertex_values()
    }
}
