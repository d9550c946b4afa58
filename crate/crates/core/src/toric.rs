//! Toric dictionary: support functions, divisors, degrees, multiplicities,
//! vertical degrees and toric local heights.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::concave::{legendre_dual, ConcaveOnPolytope, ConcavePA};
use crate::error::{Error, Result};
use crate::exact::{dot, factorial, from_lattice, sub, LatticeVector, QVector, ValueGroup, Q};
use crate::lattice::{integer_kernel, integer_rows, lattice_index, LatticeIndex};
use crate::monge::{ma_measure, DiscreteMeasure};
use crate::polyhedra::{
    convex_hull, face_of_cone, volume, Cone, Fan, Polyhedron, Polytope, VolumeMode,
};

/// A virtual support function: a complete fan with one integral slope per
/// maximal cone, agreeing on common faces.
#[derive(Clone, Debug)]
pub struct SupportFunctionData {
    fan: Fan,
    /// Aligned with `fan.maximal_indices()`.
    slopes: Vec<QVector>,
    concave: bool,
    strictly_concave: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SupportFlags {
    pub is_virtual: bool,
    pub concave: bool,
    pub strictly_concave: bool,
}

impl SupportFunctionData {
    /// `cones[i]` carries slope `slopes[i]`; every listed cone must be maximal.
    pub fn new(ambient: usize, cones: &[Cone], slopes: &[QVector]) -> Result<Self> {
        if cones.len() != slopes.len() {
            return Err(Error::invalid("one slope per maximal cone is required"));
        }
        if slopes.iter().any(|m| m.len() != ambient || !m.iter().all(Q::is_integer)) {
            return Err(Error::invalid("support function slopes must be integral vectors of the ambient rank"));
        }
        let fan = Fan::from_cones(ambient, cones)?;
        if !fan.is_complete() {
            return Err(Error::invalid("support functions need a complete fan"));
        }
        let mut aligned = Vec::with_capacity(fan.maximal_indices().len());
        for &i in fan.maximal_indices() {
            let k = cones
                .iter()
                .position(|c| *c == fan.cones()[i])
                .ok_or_else(|| Error::invalid("every maximal cone needs a slope"))?;
            aligned.push(slopes[k].clone());
        }
        Self::from_fan(fan, aligned)
    }

    fn from_fan(fan: Fan, slopes: Vec<QVector>) -> Result<Self> {
        let maximal: Vec<&Cone> = fan.maximal_cones().collect();
        for i in 0..maximal.len() {
            for j in i + 1..maximal.len() {
                let meet = maximal[i].intersection(maximal[j]);
                let diff = sub(&slopes[i], &slopes[j]);
                if meet.generators().iter().any(|g| !dot(&diff, g).is_zero()) {
                    return Err(Error::invalid("inconsistent face agreement"));
                }
            }
        }
        let concave = maximal.iter().zip(&slopes).all(|(c, m)| {
            c.generators().iter().all(|g| {
                let own = dot(m, g);
                slopes.iter().all(|other| dot(other, g) >= own)
            })
        });
        let mut distinct = slopes.clone();
        distinct.sort();
        distinct.dedup();
        let strictly_concave = concave && distinct.len() == slopes.len() && fan.is_strongly_convex();
        Ok(SupportFunctionData { fan, slopes, concave, strictly_concave })
    }

    /// The support function `rec(f)` of a homogeneous concave function on its
    /// linearity fan (the normal fan of `Δ_f` when it is full-dimensional).
    pub fn from_concave(f: &ConcavePA) -> Result<Self> {
        let h = f.recession_function();
        let n = h.ambient_dim();
        let mut cones = Vec::new();
        let mut slopes = Vec::new();
        for cell in h.induced_complex().maximal_cells() {
            let cone = Cone::try_from_polyhedron(cell.clone())?;
            let slope = h.piece_on(cell).expect("maximal cells carry one piece").slope.clone();
            cones.push(cone);
            slopes.push(slope);
        }
        Self::new(n, &cones, &slopes)
    }

    pub fn ambient_dim(&self) -> usize {
        self.fan.ambient_dim()
    }

    pub fn fan(&self) -> &Fan {
        &self.fan
    }

    pub fn slopes(&self) -> &[QVector] {
        &self.slopes
    }

    /// `(maximal cone, slope)` pairs.
    pub fn pieces(&self) -> impl Iterator<Item = (&Cone, &QVector)> {
        self.fan.maximal_cones().zip(&self.slopes)
    }

    pub fn evaluate(&self, u: &[Q]) -> Q {
        let k = self
            .fan
            .maximal_indices()
            .iter()
            .position(|&i| self.fan.cones()[i].contains(u))
            .expect("complete fan covers every point");
        dot(&self.slopes[k], u)
    }

    pub fn flags(&self) -> SupportFlags {
        SupportFlags { is_virtual: true, concave: self.concave, strictly_concave: self.strictly_concave }
    }

    pub fn is_concave(&self) -> bool {
        self.concave
    }

    /// `u ↦ min_σ <m_σ, u>`; equal to the function itself when it is concave.
    pub fn min_form(&self) -> ConcavePA {
        ConcavePA::from_slopes(&self.slopes).expect("nonempty")
    }

    /// `Δ_Ψ = conv(m_σ)`.
    pub fn polytope(&self) -> Polytope {
        convex_hull(&self.slopes).expect("nonempty")
    }

    /// `Ψ + <m, ·>`.
    pub fn twist(&self, m: &[Q]) -> SupportFunctionData {
        let slopes = self.slopes.iter().map(|s| crate::exact::add(s, m)).collect();
        Self::from_fan(self.fan.clone(), slopes).expect("twisting preserves agreement")
    }
}

/// `Ψ_Δ(u) = min_{m ∈ Δ} <m, u>` on the normal fan of a lattice polytope.
pub fn support_function_of_polytope(delta: &Polytope) -> Result<SupportFunctionData> {
    if !delta.is_lattice() {
        return Err(Error::invalid("support function of a non-lattice polytope"));
    }
    SupportFunctionData::from_concave(&ConcavePA::support_of(delta))
}

pub fn classify_support_function(psi: &SupportFunctionData) -> SupportFlags {
    psi.flags()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToricDivisorReport {
    /// `(v_τ, -Ψ(v_τ))` for every ray of the fan, sorted by generator.
    pub ray_coefficients: Vec<(LatticeVector, BigInt)>,
    pub base_point_free: bool,
    pub ample: bool,
}

pub fn weil_divisor_coefficients(psi: &SupportFunctionData) -> ToricDivisorReport {
    let mut rays = psi.fan.ray_generators();
    rays.sort();
    let ray_coefficients = rays
        .into_iter()
        .map(|v| {
            let c = -psi.evaluate(&from_lattice(&v));
            (v, c.to_integer())
        })
        .collect();
    ToricDivisorReport { ray_coefficients, base_point_free: psi.concave, ample: psi.strictly_concave }
}

/// `n! vol_M(Δ_Ψ)`.
pub fn degree(psi: &SupportFunctionData) -> Result<BigInt> {
    if !psi.concave {
        return Err(Error::invalid("degree needs a concave support function"));
    }
    let n = psi.ambient_dim();
    let d = Q::from_integer(factorial(n)) * volume(&psi.polytope(), VolumeMode::Ambient);
    assert!(d.is_integer(), "degree of a lattice polytope is integral");
    Ok(d.to_integer())
}

/// A `Gamma`-rational concave function together with its linearity complex
/// and the defining data `(m_Λ, l_Λ)` of each maximal cell.
#[derive(Clone, Debug)]
pub struct LatticeFunction {
    pub function: ConcavePA,
    pub gamma: ValueGroup,
    /// `e` with `e f` a `Gamma`-lattice function.
    pub denominator: BigInt,
}

impl LatticeFunction {
    pub fn new(function: ConcavePA, gamma: ValueGroup) -> Self {
        let denominator = function.lattice_denominator(&gamma);
        LatticeFunction { function, gamma, denominator }
    }

    pub fn is_lattice(&self) -> bool {
        self.denominator.is_one()
    }

    pub fn defining_data(&self) -> Vec<(Polyhedron, LatticeVector, Q)> {
        let f = &self.function;
        f.induced_complex()
            .maximal_cells()
            .map(|c| {
                let p = f.piece_on(c).expect("one piece per maximal cell");
                let scaled: QVector = p.slope.iter().map(|x| x * Q::from_integer(self.denominator.clone())).collect();
                (c.clone(), crate::exact::to_lattice(&scaled).expect("denominator clears slopes"), p.constant.clone())
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitReport {
    pub cell: Polyhedron,
    /// Rank of `M(Λ) = M ∩ L_Λ^⊥`.
    pub m_rank: usize,
    /// `[M(Λ) : M̃(Λ)]`.
    pub multiplicity: BigInt,
    pub vertical_degree: Option<Q>,
}

/// Basis of `M(Λ) = M ∩ L_Λ^⊥`.
pub fn orthogonal_lattice(cell: &Polyhedron) -> Vec<LatticeVector> {
    let n = cell.ambient_dim();
    let span = cell.linear_span();
    if span.is_empty() {
        return (0..n)
            .map(|i| (0..n).map(|j| BigInt::from(u8::from(i == j))).collect())
            .collect();
    }
    integer_kernel(&integer_rows(&span), n)
}

/// `mult(Λ) = [M(Λ) : M̃(Λ)]` where `M̃(Λ)` pairs every point of `Λ` into `Gamma`.
pub fn orbit_multiplicity(cell: &Polyhedron, gamma: &ValueGroup) -> OrbitReport {
    let basis = orthogonal_lattice(cell);
    let s = basis.len();
    let multiplicity = match gamma {
        ValueGroup::Divisible => BigInt::one(),
        _ if s == 0 => BigInt::one(),
        ValueGroup::Discrete(base) => {
            // c ∈ Z^s lies in M̃ iff Σ c_i <b_i, v0>/γ ∈ Z
            let v0 = &cell.vertices()[0];
            let a: Vec<Q> = basis.iter().map(|b| dot(&from_lattice(b), v0) / base).collect();
            let q = a.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            let mut row: Vec<BigInt> = a.iter().map(|x| (x * Q::from_integer(q.clone())).to_integer()).collect();
            row.push(q);
            let gens: Vec<LatticeVector> =
                integer_kernel(&[row], s + 1).into_iter().map(|mut g| {
                    g.pop();
                    g
                }).collect();
            match lattice_index(&gens, s) {
                LatticeIndex::Finite(k) => k,
                LatticeIndex::Infinite => unreachable!("q Z^s lies in the sublattice"),
            }
        }
    };
    OrbitReport { cell: cell.clone(), m_rank: s, multiplicity, vertical_degree: None }
}

/// `deg = (n-k)! vol_{M(Λ)}(∂φ(v)) / mult(Λ)` for `v` in the relative interior of `Λ`.
pub fn vertical_cycle_degree(
    phi: &ConcavePA,
    cell: &Polyhedron,
    sample: &[Q],
    gamma: &ValueGroup,
) -> Result<OrbitReport> {
    if !cell.contains_relative_interior(sample) {
        return Err(Error::invalid("sample point is not in the relative interior of the cell"));
    }
    let mut report = orbit_multiplicity(cell, gamma);
    let n = cell.ambient_dim();
    let k = cell.dim();
    let sup = phi.sup_differential(sample);
    let vol = if sup.dim() == n - k { volume(&sup, VolumeMode::Relative) } else { Q::zero() };
    let deg = Q::from_integer(factorial(n - k)) * vol / Q::from_integer(report.multiplicity.clone());
    report.vertical_degree = Some(deg);
    Ok(report)
}

/// A toric local height with the dimension of `Δ_Ψ` it was integrated over.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalHeight {
    pub value: Q,
    pub dimension: usize,
}

fn check_metric(psi_support: &SupportFunctionData, metric: &ConcavePA) -> Result<()> {
    if psi_support.ambient_dim() != metric.ambient_dim() || metric.recession_function() != psi_support.min_form() {
        return Err(Error::invalid("ψ is not a metric for Ψ"));
    }
    Ok(())
}

/// `(n+1)! ∫_{Δ_Ψ} ψ^∨ dvol`.
pub fn toric_local_height(support: &SupportFunctionData, metric: &ConcavePA) -> Result<LocalHeight> {
    if !support.concave {
        return Err(Error::invalid("local heights need a concave support function"));
    }
    check_metric(support, metric)?;
    let roof = legendre_dual(metric);
    let n = metric.ambient_dim();
    let value = Q::from_integer(factorial(n + 1)) * roof.integrate();
    Ok(LocalHeight { value, dimension: roof.domain().dim() })
}

/// `n! M_M(ψ)`.
pub fn trop_pushforward_measure(metric: &ConcavePA) -> DiscreteMeasure {
    ma_measure(metric).scaled(&Q::from_integer(factorial(metric.ambient_dim())))
}

/// The roof of the restriction to the orbit closure of `σ`:
/// `m ↦ ψ^∨(m + m_σ)` on `F_σ - m_σ`. By default `m_σ` is `0` for the
/// trivial cone and the lexicographically smallest vertex of `F_σ` otherwise.
pub fn roof_restrict_to_face(
    metric: &ConcavePA,
    support: &SupportFunctionData,
    cone: &Cone,
    m_sigma: Option<&[Q]>,
) -> Result<ConcaveOnPolytope> {
    check_metric(support, metric)?;
    if support.fan.position(cone).is_none() {
        return Err(Error::invalid("σ is not a cone of the fan"));
    }
    let delta = support.polytope();
    let face = face_of_cone(&delta, cone);
    let shift: QVector = match m_sigma {
        Some(m) => {
            let v = &face.vertices()[0];
            let diff = sub(m, v);
            if cone.generators().iter().any(|g| !dot(&diff, g).is_zero()) {
                return Err(Error::invalid("m_σ does not define Ψ on σ"));
            }
            m.to_vec()
        }
        None if cone.dim() == 0 => {
            vec![Q::zero(); delta.ambient_dim()]
        }
        None => face.vertices()[0].clone(),
    };
    let roof = legendre_dual(metric);
    Ok(roof.restrict_to_face(&face)?.translate_domain(&shift))
}
