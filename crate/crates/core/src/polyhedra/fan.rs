//! Fans, polyhedral complexes, normal fans and the cone construction over
//! polyhedra in `N_R x R`.

use std::collections::HashSet;

use num_traits::{One, Zero};

use super::polyhedron::{Cone, Halfspace, Polyhedron, Polytope};
use crate::error::{Error, Result};
use crate::exact::{dot, LatticeVector, QVector, ValueGroup, Q};

/// Closes a list of polyhedra under taking faces and verifies that pairwise
/// intersections of maximal cells are common faces. Returns the sorted cells
/// and the indices of the maximal ones.
fn close_and_verify(cells: &[Polyhedron]) -> Result<(Vec<Polyhedron>, Vec<usize>)> {
    let mut inputs: Vec<Polyhedron> = cells.to_vec();
    inputs.sort_by(cell_order);
    inputs.dedup();
    let face_sets: Vec<HashSet<Polyhedron>> = inputs.iter().map(|c| c.all_faces().into_iter().collect()).collect();
    let is_maximal: Vec<bool> = (0..inputs.len())
        .map(|i| !(0..inputs.len()).any(|j| j != i && face_sets[j].contains(&inputs[i])))
        .collect();
    let maximal_inputs: Vec<usize> = (0..inputs.len()).filter(|&i| is_maximal[i]).collect();
    for (a, &i) in maximal_inputs.iter().enumerate() {
        for &j in &maximal_inputs[a + 1..] {
            let Some(meet) = inputs[i].intersection(&inputs[j])? else { continue };
            if !face_sets[i].contains(&meet) || !face_sets[j].contains(&meet) {
                return Err(Error::invalid("cells do not meet along common faces"));
            }
        }
    }
    let mut all: Vec<Polyhedron> = face_sets.iter().flatten().cloned().collect::<HashSet<_>>().into_iter().collect();
    all.sort_by(cell_order);
    let maximal = all
        .iter()
        .enumerate()
        .filter(|(_, c)| maximal_inputs.iter().any(|&i| &inputs[i] == *c))
        .map(|(k, _)| k)
        .collect();
    Ok((all, maximal))
}

fn cell_order(a: &Polyhedron, b: &Polyhedron) -> std::cmp::Ordering {
    a.dim()
        .cmp(&b.dim())
        .then_with(|| a.vertices().cmp(b.vertices()))
        .then_with(|| a.rays().cmp(b.rays()))
        .then_with(|| a.lineality().cmp(b.lineality()))
}

/// Every codimension-one face of a full-dimensional maximal cell is shared by
/// exactly one other maximal cell.
fn is_closed_pseudomanifold(all: &[Polyhedron], maximal: &[usize], ambient: usize) -> bool {
    if maximal.iter().any(|&i| all[i].dim() != ambient) {
        return false;
    }
    let faces: Vec<Vec<Polyhedron>> = maximal.iter().map(|&i| all[i].all_faces()).collect();
    for (k, fs) in faces.iter().enumerate() {
        for facet in fs.iter().filter(|f| f.dim() + 1 == ambient) {
            let shared = faces
                .iter()
                .enumerate()
                .filter(|(l, other)| *l != k && other.contains(facet))
                .count();
            if shared != 1 {
                return false;
            }
        }
    }
    true
}

#[derive(Clone, Debug)]
pub struct Fan {
    ambient: usize,
    cones: Vec<Cone>,
    maximal: Vec<usize>,
    complete: bool,
    strongly_convex: bool,
}

impl Fan {
    /// Builds a fan from a list of cones (not necessarily closed under faces).
    pub fn from_cones(ambient: usize, cones: &[Cone]) -> Result<Self> {
        let cells: Vec<Polyhedron> = cones.iter().map(|c| c.as_polyhedron().clone()).collect();
        let (all, maximal) = close_and_verify(&cells)?;
        let complete = is_closed_pseudomanifold(&all, &maximal, ambient);
        let strongly_convex = all.iter().all(|c| c.is_strongly_convex());
        let cones = all.into_iter().map(|p| Cone::try_from_polyhedron(p).expect("faces of cones")).collect();
        Ok(Fan { ambient, cones, maximal, complete, strongly_convex })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn cones(&self) -> &[Cone] {
        &self.cones
    }

    pub fn maximal_cones(&self) -> impl Iterator<Item = &Cone> {
        self.maximal.iter().map(|&i| &self.cones[i])
    }

    pub fn maximal_indices(&self) -> &[usize] {
        &self.maximal
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn is_strongly_convex(&self) -> bool {
        self.strongly_convex
    }

    pub fn position(&self, c: &Cone) -> Option<usize> {
        self.cones.iter().position(|x| x == c)
    }

    pub fn cones_of_dim(&self, k: usize) -> impl Iterator<Item = &Cone> {
        self.cones.iter().filter(move |c| c.dim() == k)
    }

    /// Primitive generators of the one-dimensional cones.
    pub fn ray_generators(&self) -> Vec<LatticeVector> {
        self.cones.iter().filter_map(Cone::primitive_generator).collect()
    }

    /// Index (into `cones`) of some maximal cone containing `u`.
    pub fn maximal_containing(&self, u: &[Q]) -> Option<usize> {
        self.maximal.iter().copied().find(|&i| self.cones[i].contains(u))
    }
}

#[derive(Clone, Debug)]
pub struct PolyComplex {
    ambient: usize,
    cells: Vec<Polyhedron>,
    maximal: Vec<usize>,
    complete: bool,
}

impl PolyComplex {
    pub fn from_cells(ambient: usize, cells: &[Polyhedron]) -> Result<Self> {
        let (all, maximal) = close_and_verify(cells)?;
        let complete = is_closed_pseudomanifold(&all, &maximal, ambient);
        Ok(PolyComplex { ambient, cells: all, maximal, complete })
    }

    /// Complex generated by cells already known to tile `N_R`, such as the
    /// linearity domains of a concave function.
    pub(crate) fn from_tiling(ambient: usize, tiles: &[Polyhedron]) -> Self {
        let mut all: Vec<Polyhedron> =
            tiles.iter().flat_map(Polyhedron::all_faces).collect::<HashSet<_>>().into_iter().collect();
        all.sort_by(cell_order);
        let maximal = all.iter().enumerate().filter(|(_, c)| tiles.contains(c)).map(|(k, _)| k).collect();
        PolyComplex { ambient, cells: all, maximal, complete: true }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn cells(&self) -> &[Polyhedron] {
        &self.cells
    }

    pub fn maximal_cells(&self) -> impl Iterator<Item = &Polyhedron> {
        self.maximal.iter().map(|&i| &self.cells[i])
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn is_strongly_convex(&self) -> bool {
        self.cells.iter().all(Polyhedron::is_strongly_convex)
    }

    pub fn vertices(&self) -> Vec<QVector> {
        self.cells.iter().filter(|c| c.dim() == 0).map(|c| c.vertices()[0].clone()).collect()
    }

    pub fn contains_cell(&self, c: &Polyhedron) -> bool {
        self.cells.contains(c)
    }

    /// Rational data is always `Gamma`-rational for a nontrivial `Gamma`
    /// inside `Q`: scaling a primitive normal by an integer moves any
    /// rational offset into `Gamma`.
    pub fn is_gamma_rational(&self, _gamma: &ValueGroup) -> bool {
        true
    }

    /// Whether all vertices lie in `N_Gamma`.
    pub fn has_gamma_vertices(&self, gamma: &ValueGroup) -> bool {
        self.vertices().iter().all(|v| v.iter().all(|x| gamma.contains(x)))
    }
}

/// Recession cone of a polyhedron.
pub fn recession(p: &Polyhedron) -> Cone {
    p.recession_cone()
}

/// The fan of recession cones of a complex.
pub fn recession_fan(pi: &PolyComplex) -> Result<Fan> {
    let mut cones: Vec<Cone> = pi.cells().iter().map(Polyhedron::recession_cone).collect();
    cones.sort_by(|a, b| a.rays().cmp(b.rays()));
    cones.dedup();
    Fan::from_cones(pi.ambient_dim(), &cones).map_err(|_| Error::invalid("recession is not a fan"))
}

/// `cone(Λ)`: the closure of `R_{>0} (Λ x {1})` in `N_R x R`.
pub fn cone_over(p: &Polyhedron) -> Result<Cone> {
    if !p.is_strongly_convex() {
        return Err(Error::invalid("cone over a polyhedron needs a strongly convex polyhedron"));
    }
    let n = p.ambient_dim();
    let lift = |v: &QVector, t: Q| -> QVector {
        let mut x = v.clone();
        x.push(t);
        x
    };
    let rays: Vec<QVector> = p
        .vertices()
        .iter()
        .map(|v| lift(v, Q::one()))
        .chain(p.rays().iter().map(|r| lift(r, Q::zero())))
        .collect();
    Cone::from_rays(n + 1, &rays, &[])
}

/// `cone(Π) = {cone(Λ)} ∪ {rec(Λ) x {0}}`.
pub fn cone_over_complex(pi: &PolyComplex) -> Result<Fan> {
    if !pi.is_complete() {
        return Err(Error::invalid("cone over a complex needs a complete complex"));
    }
    let n = pi.ambient_dim();
    let mut cones = Vec::new();
    for cell in pi.cells() {
        cones.push(cone_over(cell)?);
        let rec = cell.recession_cone();
        let rays: Vec<QVector> = rec
            .rays()
            .iter()
            .map(|r| {
                let mut x = r.clone();
                x.push(Q::zero());
                x
            })
            .collect();
        cones.push(Cone::from_rays(n + 1, &rays, &[])?);
    }
    Fan::from_cones(n + 1, &cones)
}

/// `σ_r = {u : (u, r) ∈ σ}` for a cone in `N_R x R`.
pub fn slice_at_height(sigma: &Cone, r: &Q) -> Result<Polyhedron> {
    let n = sigma.ambient_dim() - 1;
    let cut = |h: &Halfspace| Halfspace { normal: h.normal[..n].to_vec(), offset: -(&h.normal[n] * r) };
    let hs: Vec<Halfspace> = sigma.facets().iter().map(cut).filter(|h| !crate::exact::is_zero_vec(&h.normal) || h.offset > Q::zero()).collect();
    let es: Vec<Halfspace> = sigma.equations().iter().map(cut).collect();
    // constraints with a zero normal are either trivially true or make the slice empty
    if hs.iter().chain(&es).any(|h| crate::exact::is_zero_vec(&h.normal) && !h.offset.is_zero()) {
        return Err(Error::Empty);
    }
    let hs: Vec<Halfspace> = hs.into_iter().filter(|h| !crate::exact::is_zero_vec(&h.normal)).collect();
    let es: Vec<Halfspace> = es.into_iter().filter(|h| !crate::exact::is_zero_vec(&h.normal)).collect();
    Polyhedron::from_inequalities(n, &hs, &es)
}

/// Normal fan of a polytope with the order-reversing face correspondence.
#[derive(Clone, Debug)]
pub struct NormalFan {
    pub fan: Fan,
    pub faces: Vec<Polytope>,
    /// `cone_of_face[i]` is the index in `fan.cones()` of `σ_{faces[i]}`.
    pub cone_of_face: Vec<usize>,
    /// `face_of_cone[j]` is the index in `faces` of `F_{cones[j]}`.
    pub face_of_cone: Vec<usize>,
}

/// Normal cone `σ_F = {u : <m - m', u> >= 0 ∀ m ∈ Δ, m' ∈ F}`; carries the
/// orthogonal complement of the affine hull as lineality when `Δ` is not
/// full-dimensional.
pub fn normal_cone(delta: &Polytope, face: &Polytope) -> Cone {
    let n = delta.ambient_dim();
    let rays: Vec<QVector> = delta
        .facets()
        .iter()
        .filter(|f| face.vertices().iter().all(|v| f.slack(v).is_zero()))
        .map(|f| f.normal.clone())
        .collect();
    let lineality: Vec<QVector> = delta.equations().iter().map(|e| e.normal.clone()).collect();
    Cone::from_rays(n, &rays, &lineality).expect("normal cone")
}

/// All normal cones of `Δ`, full-dimensional or not.
pub fn normal_cones(delta: &Polytope) -> Result<NormalFan> {
    let faces = delta.all_faces();
    let cones: Vec<Cone> = faces.iter().map(|f| normal_cone(delta, f)).collect();
    let fan = Fan::from_cones(delta.ambient_dim(), &cones)?;
    let cone_of_face: Vec<usize> = cones.iter().map(|c| fan.position(c).expect("cone present")).collect();
    let mut face_of_cone = vec![usize::MAX; fan.cones().len()];
    for (i, &j) in cone_of_face.iter().enumerate() {
        face_of_cone[j] = i;
    }
    if face_of_cone.contains(&usize::MAX) {
        return Err(Error::invalid("normal fan has cones without a dual face"));
    }
    Ok(NormalFan { fan, faces, cone_of_face, face_of_cone })
}

/// Normal fan `Σ_Δ` of a full-dimensional polytope.
pub fn normal_fan(delta: &Polytope) -> Result<NormalFan> {
    if !delta.is_full_dimensional() {
        return Err(Error::invalid(
            "normal fan needs a full-dimensional polytope; use the support function of the polytope instead",
        ));
    }
    normal_cones(delta)
}

/// `F_σ`: the face of `Δ` on which every `u ∈ σ` attains its minimum.
pub fn face_of_cone(delta: &Polytope, sigma: &Cone) -> Polytope {
    delta.face_minimizing(&sigma.interior_point())
}

pub(crate) fn pairing_constant(face: &Polyhedron, normal: &[Q]) -> Q {
    let vals: Vec<Q> = face.vertices().iter().map(|v| dot(normal, v)).collect();
    debug_assert!(vals.windows(2).all(|w| w[0] == w[1]), "pairing must be constant on the face");
    vals[0].clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{q, qvec};
    use crate::polyhedra::convex_hull;

    fn hull(xs: &[&[i64]]) -> Polytope {
        convex_hull(&xs.iter().map(|x| qvec(x)).collect::<Vec<_>>()).unwrap()
    }

    fn half(normal: &[i64], offset: i64) -> Halfspace {
        Halfspace { normal: qvec(normal), offset: q(offset) }
    }

    #[test]
    fn normal_fan_of_interval() {
        let nf = normal_fan(&hull(&[&[0], &[1]])).unwrap();
        assert!(nf.fan.is_complete());
        assert_eq!(nf.fan.cones().len(), 3);
        for (i, f) in nf.faces.iter().enumerate() {
            let c = &nf.fan.cones()[nf.cone_of_face[i]];
            assert_eq!(f.dim() + c.dim(), 1);
            if f.vertices() == [qvec(&[0])] {
                assert_eq!(c.rays(), &[qvec(&[1])]);
            }
            if f.vertices() == [qvec(&[1])] {
                assert_eq!(c.rays(), &[qvec(&[-1])]);
            }
        }
    }

    #[test]
    fn normal_fan_of_square_and_simplex() {
        let sq = normal_fan(&hull(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]])).unwrap();
        assert!(sq.fan.is_complete());
        assert_eq!(sq.fan.maximal_cones().count(), 4);
        assert_eq!(sq.fan.cones_of_dim(1).count(), 4);
        // vertex (0,0) gets the positive quadrant
        let i = sq.faces.iter().position(|f| f.vertices() == [qvec(&[0, 0])]).unwrap();
        let c = &sq.fan.cones()[sq.cone_of_face[i]];
        assert_eq!(c.rays(), &[qvec(&[0, 1]), qvec(&[1, 0])]);

        let tri = normal_fan(&hull(&[&[0, 0], &[1, 0], &[0, 1]])).unwrap();
        assert!(tri.fan.is_complete());
        assert_eq!(tri.fan.maximal_cones().count(), 3);
        let mut rays = tri.fan.ray_generators();
        rays.sort();
        assert_eq!(rays, vec![crate::exact::lvec(&[-1, -1]), crate::exact::lvec(&[0, 1]), crate::exact::lvec(&[1, 0])]);
        assert!(normal_fan(&hull(&[&[0, 0], &[1, 1]])).is_err());
    }

    #[test]
    fn face_cone_bijection_is_order_reversing() {
        let d = hull(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1]]);
        let nf = normal_fan(&d).unwrap();
        assert!(nf.fan.is_complete());
        for (i, f) in nf.faces.iter().enumerate() {
            let c = &nf.fan.cones()[nf.cone_of_face[i]];
            assert_eq!(f.dim() + c.dim(), 3);
            assert_eq!(&face_of_cone(&d, c), f);
        }
    }

    #[test]
    fn recession_of_complex() {
        let cells = vec![
            Polyhedron::from_inequalities(1, &[half(&[-1], 0)], &[]).unwrap(),
            hull(&[&[0], &[1]]).into_inner(),
            Polyhedron::from_inequalities(1, &[half(&[1], 1)], &[]).unwrap(),
        ];
        let pi = PolyComplex::from_cells(1, &cells).unwrap();
        assert!(pi.is_complete());
        assert_eq!(pi.cells().len(), 5);
        let fan = recession_fan(&pi).unwrap();
        assert!(fan.is_complete());
        assert_eq!(fan.cones().len(), 3);
        assert_eq!(recession(&hull(&[&[0], &[1]])).dim(), 0);
    }

    #[test]
    fn overlapping_cells_rejected() {
        let cells = vec![hull(&[&[0], &[2]]).into_inner(), hull(&[&[1], &[3]]).into_inner()];
        assert!(PolyComplex::from_cells(1, &cells).is_err());
    }

    #[test]
    fn cone_over_interval_and_point() {
        let c = cone_over(&hull(&[&[0], &[1]])).unwrap();
        assert_eq!(c.rays(), &[qvec(&[0, 1]), qvec(&[1, 1])]);
        let p = cone_over(&hull(&[&[0]])).unwrap();
        assert_eq!(p.rays(), &[qvec(&[0, 1])]);
        assert_eq!(slice_at_height(&c, &q(1)).unwrap(), hull(&[&[0], &[1]]).into_inner());
    }

    #[test]
    fn cone_over_complete_complex() {
        let cells = vec![
            Polyhedron::from_inequalities(1, &[half(&[-1], 0)], &[]).unwrap(),
            hull(&[&[0], &[1]]).into_inner(),
            Polyhedron::from_inequalities(1, &[half(&[1], 1)], &[]).unwrap(),
        ];
        let pi = PolyComplex::from_cells(1, &cells).unwrap();
        let fan = cone_over_complex(&pi).unwrap();
        assert_eq!(fan.maximal_cones().count(), 3);
        let boundary: Vec<_> = fan
            .cones()
            .iter()
            .filter(|c| c.dim() == 1 && c.rays().iter().all(|r| r[1].is_zero()))
            .collect();
        assert_eq!(boundary.len(), 2);
        // slicing at height 0 gives the recession fan cones
        for c in fan.maximal_cones() {
            let s0 = slice_at_height(c, &q(0)).unwrap();
            assert!(s0.vertices() == [qvec(&[0])]);
        }
    }
}
