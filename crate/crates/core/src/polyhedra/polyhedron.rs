use std::collections::{HashSet, VecDeque};
use std::hash::{Hash, Hasher};
use std::ops::Deref;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::dd::{canonical_basis, cone_generators};
use crate::error::{check_rank, Error, Result};
use crate::exact::{dot, is_zero_vec, primitive_direction, scale, to_lattice, LatticeVector, QVector, Q};
use crate::linalg::{project_out, rank};

/// The closed half-space `{u : <normal, u> >= offset}`. Also used for
/// hyperplanes `<normal, u> = offset` in the equation list of a polyhedron.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Halfspace {
    pub normal: QVector,
    pub offset: Q,
}

impl Halfspace {
    pub fn new(normal: QVector, offset: Q) -> Result<Self> {
        if is_zero_vec(&normal) {
            return Err(Error::invalid("half-space normal must be nonzero"));
        }
        Ok(Halfspace { normal, offset })
    }

    /// `<normal, u> - offset`
    pub fn slack(&self, u: &[Q]) -> Q {
        dot(&self.normal, u) - &self.offset
    }

    pub fn contains(&self, u: &[Q]) -> bool {
        !self.slack(u).is_negative()
    }

    /// Scales so that the normal is a primitive integer vector.
    fn normalized(normal: &[Q], offset: &Q) -> Halfspace {
        let prim = primitive_direction(normal);
        let i = normal.iter().position(|x| !x.is_zero()).expect("nonzero normal");
        let factor = &prim[i] / &normal[i];
        Halfspace { normal: prim, offset: offset * factor }
    }
}

/// A nonempty rational polyhedron kept in both representations.
///
/// `vertices` are the vertices of `P ∩ L⊥` where `L` is the lineality space;
/// for pointed polyhedra these are the vertices of `P`. Rays are primitive
/// integer directions in `L⊥`.
#[derive(Clone, Debug)]
pub struct Polyhedron {
    ambient: usize,
    equations: Vec<Halfspace>,
    facets: Vec<Halfspace>,
    vertices: Vec<QVector>,
    rays: Vec<QVector>,
    lineality: Vec<QVector>,
}

impl PartialEq for Polyhedron {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient
            && self.vertices == other.vertices
            && self.rays == other.rays
            && self.lineality == other.lineality
    }
}

impl Eq for Polyhedron {}

impl Hash for Polyhedron {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.ambient.hash(state);
        self.vertices.hash(state);
        self.rays.hash(state);
        self.lineality.hash(state);
    }
}

impl Polyhedron {
    /// Builds the polyhedron `conv(points) + cone(rays) + span(lineality)`.
    pub fn from_generators(
        ambient: usize,
        points: &[QVector],
        rays: &[QVector],
        lineality: &[QVector],
    ) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::Empty);
        }
        for v in points.iter().chain(rays).chain(lineality) {
            check_rank(ambient, v.len())?;
        }
        let lineality = canonical_basis(lineality, ambient);
        let mut pts: Vec<QVector> = points.iter().map(|p| project_out(p, &lineality)).collect();
        pts.sort();
        pts.dedup();
        let mut rs: Vec<QVector> = rays
            .iter()
            .map(|r| primitive_direction(&project_out(r, &lineality)))
            .filter(|r| !is_zero_vec(r))
            .collect();
        rs.sort();
        rs.dedup();

        let homog = |v: &QVector, last: i64| -> QVector {
            let mut h = v.clone();
            h.push(Q::from_integer(last.into()));
            h
        };
        let ineqs: Vec<QVector> = pts.iter().map(|p| homog(p, 1)).chain(rs.iter().map(|r| homog(r, 0))).collect();
        let eqs: Vec<QVector> = lineality.iter().map(|l| homog(l, 0)).collect();
        let dual = cone_generators(&ineqs, &eqs, ambient + 1);

        let split = |h: &QVector| -> (QVector, Q) { (h[..ambient].to_vec(), h[ambient].clone()) };
        let mut equations: Vec<Halfspace> = dual
            .lineality
            .iter()
            .map(|h| {
                let (a, c) = split(h);
                Halfspace::normalized(&a, &(-c))
            })
            .collect();
        equations.sort();
        let mut facets: Vec<Halfspace> = Vec::new();
        for h in &dual.rays {
            let (a, c) = split(h);
            if is_zero_vec(&a) {
                continue;
            }
            let tight_point = pts.iter().any(|p| (dot(&a, p) + &c).is_zero());
            if !tight_point {
                continue;
            }
            facets.push(Halfspace::normalized(&a, &(-c)));
        }
        facets.sort();

        let eq_normals: Vec<QVector> = equations.iter().map(|e| e.normal.clone()).collect();
        let target = ambient - lineality.len();
        let tight_rank = |x: &QVector, homogeneous: bool| -> usize {
            let mut rows = eq_normals.clone();
            for f in &facets {
                let val = if homogeneous { dot(&f.normal, x) } else { f.slack(x) };
                if val.is_zero() {
                    rows.push(f.normal.clone());
                }
            }
            rank(&rows, ambient)
        };
        let vertices: Vec<QVector> = pts.iter().filter(|p| tight_rank(p, false) == target).cloned().collect();
        let rays: Vec<QVector> = rs
            .iter()
            .filter(|r| target >= 1 && tight_rank(r, true) == target - 1)
            .cloned()
            .collect();
        Ok(Polyhedron { ambient, equations, facets, vertices, rays, lineality })
    }

    /// Builds `{u : <a,u> >= b for each half-space, <a,u> = b for each equation}`.
    pub fn from_inequalities(ambient: usize, halfspaces: &[Halfspace], equations: &[Halfspace]) -> Result<Self> {
        let homog = |h: &Halfspace| -> Result<QVector> {
            check_rank(ambient, h.normal.len())?;
            let mut v = h.normal.clone();
            v.push(-h.offset.clone());
            Ok(v)
        };
        let mut ineqs = halfspaces.iter().map(homog).collect::<Result<Vec<_>>>()?;
        let mut t = vec![Q::zero(); ambient + 1];
        t[ambient] = Q::one();
        ineqs.push(t);
        let eqs = equations.iter().map(homog).collect::<Result<Vec<_>>>()?;
        let gens = cone_generators(&ineqs, &eqs, ambient + 1);
        let mut points = Vec::new();
        let mut rays = Vec::new();
        for g in &gens.rays {
            let t = &g[ambient];
            if t.is_positive() {
                points.push(scale(&g[..ambient], &t.recip()));
            } else {
                rays.push(g[..ambient].to_vec());
            }
        }
        if points.is_empty() {
            return Err(Error::Empty);
        }
        let lineality: Vec<QVector> = gens.lineality.iter().map(|l| l[..ambient].to_vec()).collect();
        Self::from_generators(ambient, &points, &rays, &lineality)
    }

    pub fn point(p: QVector) -> Self {
        let n = p.len();
        Self::from_generators(n, &[p], &[], &[]).expect("single point")
    }

    pub fn whole_space(ambient: usize) -> Self {
        let basis: Vec<QVector> = (0..ambient)
            .map(|i| (0..ambient).map(|j| if i == j { Q::one() } else { Q::zero() }).collect())
            .collect();
        Self::from_generators(ambient, &[vec![Q::zero(); ambient]], &[], &basis).expect("space")
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.ambient - self.equations.len()
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.equations.is_empty()
    }

    pub fn vertices(&self) -> &[QVector] {
        &self.vertices
    }

    pub fn rays(&self) -> &[QVector] {
        &self.rays
    }

    pub fn lineality(&self) -> &[QVector] {
        &self.lineality
    }

    pub fn facets(&self) -> &[Halfspace] {
        &self.facets
    }

    pub fn equations(&self) -> &[Halfspace] {
        &self.equations
    }

    pub fn is_bounded(&self) -> bool {
        self.rays.is_empty() && self.lineality.is_empty()
    }

    /// Pointed with at least one vertex.
    pub fn is_strongly_convex(&self) -> bool {
        self.lineality.is_empty()
    }

    pub fn is_lattice(&self) -> bool {
        self.vertices.iter().all(|v| v.iter().all(|x| x.is_integer()))
    }

    pub fn contains(&self, u: &[Q]) -> bool {
        self.equations.iter().all(|e| e.slack(u).is_zero()) && self.facets.iter().all(|f| f.contains(u))
    }

    /// Whether `u` lies in the relative interior.
    pub fn contains_relative_interior(&self, u: &[Q]) -> bool {
        self.equations.iter().all(|e| e.slack(u).is_zero()) && self.facets.iter().all(|f| f.slack(u).is_positive())
    }

    /// A canonical relative-interior point: vertex barycenter plus the ray sum.
    pub fn interior_point(&self) -> QVector {
        let k = Q::from_integer(BigInt::from(self.vertices.len()));
        let mut p = vec![Q::zero(); self.ambient];
        for v in &self.vertices {
            for (x, y) in p.iter_mut().zip(v) {
                *x += y;
            }
        }
        for x in p.iter_mut() {
            *x /= &k;
        }
        for r in &self.rays {
            for (x, y) in p.iter_mut().zip(r) {
                *x += y;
            }
        }
        p
    }

    /// Direction space of the affine hull.
    pub fn linear_span(&self) -> Vec<QVector> {
        let mut rows: Vec<QVector> = self.vertices.iter().skip(1).map(|v| crate::exact::sub(v, &self.vertices[0])).collect();
        rows.extend(self.rays.iter().cloned());
        rows.extend(self.lineality.iter().cloned());
        canonical_basis(&rows, self.ambient)
    }

    /// Recession cone: offsets dropped from the H-representation.
    pub fn recession_cone(&self) -> Cone {
        let origin = vec![Q::zero(); self.ambient];
        let p = Polyhedron::from_generators(self.ambient, &[origin], &self.rays, &self.lineality)
            .expect("origin generator");
        Cone(p)
    }

    pub fn translate(&self, by: &[Q]) -> Polyhedron {
        let pts: Vec<QVector> = self.vertices.iter().map(|v| crate::exact::add(v, by)).collect();
        Polyhedron::from_generators(self.ambient, &pts, &self.rays, &self.lineality).expect("nonempty")
    }

    /// Generator index sets of all nonempty faces, including the polyhedron itself.
    fn face_sets(&self) -> Vec<(Vec<usize>, Vec<usize>)> {
        let tight: Vec<(Vec<usize>, Vec<usize>)> = self
            .facets
            .iter()
            .map(|f| {
                let v = (0..self.vertices.len()).filter(|&i| f.slack(&self.vertices[i]).is_zero()).collect();
                let r = (0..self.rays.len()).filter(|&i| dot(&f.normal, &self.rays[i]).is_zero()).collect();
                (v, r)
            })
            .collect();
        let all = ((0..self.vertices.len()).collect::<Vec<_>>(), (0..self.rays.len()).collect::<Vec<_>>());
        let mut seen: HashSet<(Vec<usize>, Vec<usize>)> = HashSet::new();
        let mut queue = VecDeque::from([all.clone()]);
        seen.insert(all);
        let mut out = Vec::new();
        while let Some(face) = queue.pop_front() {
            for (tv, tr) in &tight {
                let v: Vec<usize> = face.0.iter().copied().filter(|i| tv.contains(i)).collect();
                if v.is_empty() {
                    continue;
                }
                let r: Vec<usize> = face.1.iter().copied().filter(|i| tr.contains(i)).collect();
                let next = (v, r);
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
            out.push(face);
        }
        out
    }

    /// All nonempty faces, the polyhedron itself included.
    pub fn all_faces(&self) -> Vec<Polyhedron> {
        let mut faces: Vec<Polyhedron> = self
            .face_sets()
            .into_iter()
            .map(|(v, r)| {
                let pts: Vec<QVector> = v.iter().map(|&i| self.vertices[i].clone()).collect();
                let rs: Vec<QVector> = r.iter().map(|&i| self.rays[i].clone()).collect();
                Polyhedron::from_generators(self.ambient, &pts, &rs, &self.lineality).expect("face")
            })
            .collect();
        faces.sort_by(|a, b| a.dim().cmp(&b.dim()).then_with(|| a.vertices.cmp(&b.vertices)).then_with(|| a.rays.cmp(&b.rays)));
        faces.dedup();
        faces
    }

    pub fn is_face_of(&self, other: &Polyhedron) -> bool {
        other.all_faces().iter().any(|f| f == self)
    }

    /// The face on which the linear functional `u` is minimized. Requires the
    /// functional to be bounded below on the polyhedron.
    pub fn face_minimizing(&self, u: &[Q]) -> Option<Polyhedron> {
        if self.rays.iter().any(|r| dot(u, r).is_negative()) || self.lineality.iter().any(|l| !dot(u, l).is_zero()) {
            return None;
        }
        let vals: Vec<Q> = self.vertices.iter().map(|v| dot(u, v)).collect();
        let min = vals.iter().min()?.clone();
        let pts: Vec<QVector> = self.vertices.iter().zip(&vals).filter(|(_, x)| **x == min).map(|(v, _)| v.clone()).collect();
        let rs: Vec<QVector> = self.rays.iter().filter(|r| dot(u, r).is_zero()).cloned().collect();
        Some(Polyhedron::from_generators(self.ambient, &pts, &rs, &self.lineality).expect("face"))
    }

    /// `self ∩ other`, or `None` when empty.
    pub fn intersection(&self, other: &Polyhedron) -> Result<Option<Polyhedron>> {
        check_rank(self.ambient, other.ambient)?;
        let hs: Vec<Halfspace> = self.facets.iter().chain(&other.facets).cloned().collect();
        let es: Vec<Halfspace> = self.equations.iter().chain(&other.equations).cloned().collect();
        match Polyhedron::from_inequalities(self.ambient, &hs, &es) {
            Ok(p) => Ok(Some(p)),
            Err(Error::Empty) => Ok(None),
            Err(e) => Err(e),
        }
    }

    /// Primitive integer generators of the rays.
    pub fn primitive_rays(&self) -> Vec<LatticeVector> {
        self.rays.iter().map(|r| to_lattice(r).expect("rays are stored primitive")).collect()
    }
}

/// A bounded polyhedron.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polytope(Polyhedron);

impl Deref for Polytope {
    type Target = Polyhedron;
    fn deref(&self) -> &Polyhedron {
        &self.0
    }
}

impl TryFrom<Polyhedron> for Polytope {
    type Error = Error;
    fn try_from(p: Polyhedron) -> Result<Self> {
        if !p.is_bounded() {
            return Err(Error::invalid("polyhedron is unbounded"));
        }
        Ok(Polytope(p))
    }
}

impl Polytope {
    pub fn into_inner(self) -> Polyhedron {
        self.0
    }

    pub fn as_polyhedron(&self) -> &Polyhedron {
        &self.0
    }

    pub fn from_vertices(points: &[QVector]) -> Result<Self> {
        let n = points.first().ok_or(Error::Empty)?.len();
        Polytope::try_from(Polyhedron::from_generators(n, points, &[], &[])?)
    }

    pub fn from_halfspaces(ambient: usize, halfspaces: &[Halfspace]) -> Result<Self> {
        Polytope::try_from(Polyhedron::from_inequalities(ambient, halfspaces, &[])?)
    }

    pub fn translate(&self, by: &[Q]) -> Polytope {
        Polytope(self.0.translate(by))
    }

    pub fn dilate(&self, factor: &Q) -> Polytope {
        let pts: Vec<QVector> = self.vertices().iter().map(|v| scale(v, factor)).collect();
        Polytope::from_vertices(&pts).expect("nonempty")
    }

    pub fn all_faces(&self) -> Vec<Polytope> {
        self.0.all_faces().into_iter().map(Polytope).collect()
    }

    pub fn face_minimizing(&self, u: &[Q]) -> Polytope {
        Polytope(self.0.face_minimizing(u).expect("bounded"))
    }

    pub fn contains_polytope(&self, other: &Polytope) -> bool {
        other.vertices().iter().all(|v| self.contains(v))
    }
}

/// A face of a polytope together with its primitive inner normal when the
/// face is a facet of a full-dimensional polytope.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub face: Polytope,
    pub inner_normal: Option<LatticeVector>,
}

/// All `k`-dimensional faces of `p`.
pub fn faces(p: &Polytope, k: usize) -> Result<Vec<Face>> {
    if k > p.dim() {
        return Err(Error::invalid(format!("face dimension {k} exceeds polytope dimension {}", p.dim())));
    }
    let facet_level = p.is_full_dimensional() && k + 1 == p.dim();
    let mut out = Vec::new();
    for f in p.all_faces().into_iter().filter(|f| f.dim() == k) {
        let inner_normal = if facet_level {
            p.facets()
                .iter()
                .find(|h| f.vertices().iter().all(|v| h.slack(v).is_zero()))
                .map(|h| to_lattice(&h.normal).expect("primitive normal"))
        } else {
            None
        };
        out.push(Face { face: f, inner_normal });
    }
    Ok(out)
}

/// Convex hull of a nonempty point set of uniform rank.
pub fn convex_hull(points: &[QVector]) -> Result<Polytope> {
    let n = points.first().ok_or_else(|| Error::invalid("convex hull of an empty point set"))?.len();
    for p in points {
        if p.len() != n {
            return Err(Error::invalid("points of mixed ranks"));
        }
    }
    Polytope::from_vertices(points)
}

/// A polyhedral cone: a polyhedron whose only minimal-face point is the origin.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cone(Polyhedron);

impl Deref for Cone {
    type Target = Polyhedron;
    fn deref(&self) -> &Polyhedron {
        &self.0
    }
}

impl Cone {
    pub fn from_rays(ambient: usize, rays: &[QVector], lineality: &[QVector]) -> Result<Self> {
        let origin = vec![Q::zero(); ambient];
        Ok(Cone(Polyhedron::from_generators(ambient, &[origin], rays, lineality)?))
    }

    /// `{u : <a, u> >= 0}` for every listed normal.
    pub fn from_normals(ambient: usize, normals: &[QVector]) -> Result<Self> {
        let hs: Vec<Halfspace> = normals
            .iter()
            .filter(|a| !is_zero_vec(a))
            .map(|a| Halfspace { normal: a.clone(), offset: Q::zero() })
            .collect();
        Ok(Cone(Polyhedron::from_inequalities(ambient, &hs, &[])?))
    }

    pub fn zero(ambient: usize) -> Self {
        Cone::from_rays(ambient, &[], &[]).expect("origin")
    }

    pub fn as_polyhedron(&self) -> &Polyhedron {
        &self.0
    }

    pub fn try_from_polyhedron(p: Polyhedron) -> Result<Self> {
        let is_cone = p.vertices().len() == 1 && is_zero_vec(&p.vertices()[0]);
        if !is_cone {
            return Err(Error::invalid("polyhedron is not a cone"));
        }
        Ok(Cone(p))
    }

    pub fn all_faces(&self) -> Vec<Cone> {
        self.0.all_faces().into_iter().map(Cone).collect()
    }

    pub fn intersection(&self, other: &Cone) -> Cone {
        Cone(self.0.intersection(&other.0).expect("same rank").expect("cones share the origin"))
    }

    /// Sum of the generators: a point of the relative interior.
    pub fn interior_point(&self) -> QVector {
        self.0.interior_point()
    }

    pub fn generators(&self) -> Vec<QVector> {
        let mut g: Vec<QVector> = self.rays().to_vec();
        for l in self.lineality() {
            g.push(l.clone());
            g.push(l.iter().map(|x| -x.clone()).collect());
        }
        g
    }

    pub fn primitive_generator(&self) -> Option<LatticeVector> {
        (self.dim() == 1 && self.rays().len() == 1).then(|| self.primitive_rays()[0].clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{lvec, q, qr, qvec};

    fn pts(xs: &[&[i64]]) -> Vec<QVector> {
        xs.iter().map(|x| qvec(x)).collect()
    }

    #[test]
    fn hull_drops_interior_points() {
        let mut points = pts(&[&[0, 0], &[1, 0], &[0, 1]]);
        points.push(vec![qr(1, 4), qr(1, 4)]);
        let p = convex_hull(&points).unwrap();
        assert_eq!(p.vertices().len(), 3);
        assert_eq!(p.facets().len(), 3);
    }

    #[test]
    fn hull_segment_and_quadrilateral() {
        let s = convex_hull(&pts(&[&[0], &[1]])).unwrap();
        assert_eq!(s.vertices(), &pts(&[&[0], &[1]])[..]);
        let quad = convex_hull(&pts(&[&[0, 0], &[1, 0], &[2, 2], &[0, 1], &[1, 1]])).unwrap();
        assert_eq!(quad.vertices(), &pts(&[&[0, 0], &[0, 1], &[1, 0], &[2, 2]])[..]);
    }

    #[test]
    fn hull_errors() {
        assert!(convex_hull(&[]).is_err());
        assert!(convex_hull(&[qvec(&[0]), qvec(&[0, 1])]).is_err());
    }

    #[test]
    fn lower_dimensional_hull_has_equations() {
        let seg = convex_hull(&pts(&[&[0, 0], &[2, 2], &[1, 1]])).unwrap();
        assert_eq!(seg.dim(), 1);
        assert_eq!(seg.equations().len(), 1);
        assert_eq!(seg.vertices().len(), 2);
        assert!(seg.contains(&qvec(&[1, 1])));
        assert!(!seg.contains(&qvec(&[1, 0])));
    }

    #[test]
    fn h_to_v_round_trip() {
        let sq = Polytope::from_halfspaces(
            2,
            &[
                Halfspace { normal: qvec(&[1, 0]), offset: q(0) },
                Halfspace { normal: qvec(&[-1, 0]), offset: q(-1) },
                Halfspace { normal: qvec(&[0, 1]), offset: q(0) },
                Halfspace { normal: qvec(&[0, -1]), offset: q(-1) },
                // redundant
                Halfspace { normal: qvec(&[1, 1]), offset: q(-5) },
            ],
        )
        .unwrap();
        assert_eq!(sq.vertices().len(), 4);
        assert_eq!(sq.facets().len(), 4);
        assert_eq!(convex_hull(sq.vertices()).unwrap(), sq);
    }

    #[test]
    fn unbounded_polyhedron() {
        // u >= 3 on the line
        let p = Polyhedron::from_inequalities(1, &[Halfspace { normal: qvec(&[1]), offset: q(3) }], &[]).unwrap();
        assert_eq!(p.vertices(), &[qvec(&[3])]);
        assert_eq!(p.rays(), &[qvec(&[1])]);
        let rec = p.recession_cone();
        assert_eq!(rec.rays(), &[qvec(&[1])]);
        assert!(Polytope::try_from(p).is_err());
    }

    #[test]
    fn empty_polyhedron() {
        let hs = [
            Halfspace { normal: qvec(&[1]), offset: q(1) },
            Halfspace { normal: qvec(&[-1]), offset: q(0) },
        ];
        assert!(matches!(Polyhedron::from_inequalities(1, &hs, &[]), Err(Error::Empty)));
    }

    #[test]
    fn facets_of_unit_interval_and_square() {
        let seg = convex_hull(&pts(&[&[0], &[1]])).unwrap();
        let f = faces(&seg, 0).unwrap();
        assert_eq!(f.len(), 2);
        let normals: Vec<_> = f.iter().map(|x| x.inner_normal.clone().unwrap()).collect();
        assert!(normals.contains(&lvec(&[1])) && normals.contains(&lvec(&[-1])));
        let zero_face = f.iter().find(|x| x.face.vertices() == [qvec(&[0])]).unwrap();
        assert_eq!(zero_face.inner_normal, Some(lvec(&[1])));

        let sq = convex_hull(&pts(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]])).unwrap();
        let edges = faces(&sq, 1).unwrap();
        assert_eq!(edges.len(), 4);
        let mut normals: Vec<_> = edges.iter().map(|e| e.inner_normal.clone().unwrap()).collect();
        normals.sort();
        assert_eq!(normals, vec![lvec(&[-1, 0]), lvec(&[0, -1]), lvec(&[0, 1]), lvec(&[1, 0])]);
        let tri = convex_hull(&pts(&[&[0, 0], &[1, 0], &[0, 1]])).unwrap();
        assert_eq!(faces(&tri, 0).unwrap().len(), 3);
        assert!(faces(&tri, 3).is_err());
    }

    #[test]
    fn cube_face_counts() {
        let mut v = Vec::new();
        for a in 0..2 {
            for b in 0..2 {
                for c in 0..2 {
                    v.push(qvec(&[a, b, c]));
                }
            }
        }
        let cube = convex_hull(&v).unwrap();
        let counts: Vec<usize> = (0..4).map(|k| faces(&cube, k).unwrap().len()).collect();
        assert_eq!(counts, vec![8, 12, 6, 1]);
    }

    #[test]
    fn cones_with_lineality() {
        let half = Cone::from_normals(2, &[qvec(&[1, 0])]).unwrap();
        assert_eq!(half.lineality().len(), 1);
        assert_eq!(half.dim(), 2);
        let faces = half.all_faces();
        assert_eq!(faces.len(), 2);
    }
}
