use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{check_rank, Error, Result};
use crate::exact::{dot, fmt_q, sub, QVector, ValueGroup, Q};
use crate::lp::strictly_feasible;
use crate::polyhedra::{convex_hull, Halfspace, PolyComplex, Polyhedron, Polytope};

/// `u ↦ <slope, u> + constant`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineForm {
    pub slope: QVector,
    pub constant: Q,
}

impl AffineForm {
    pub fn new(slope: QVector, constant: Q) -> Self {
        AffineForm { slope, constant }
    }

    pub fn linear(slope: QVector) -> Self {
        AffineForm { slope, constant: Q::zero() }
    }

    pub fn eval(&self, u: &[Q]) -> Q {
        dot(&self.slope, u) + &self.constant
    }
}

impl fmt::Display for AffineForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.slope.iter().map(fmt_q).collect();
        write!(f, "<({}), u> + {}", s.join(", "), fmt_q(&self.constant))
    }
}

/// A concave piecewise affine function `u ↦ min_i <m_i, u> + l_i` in
/// canonical form: pieces are sorted and each one is the unique minimum on
/// some open set.
#[derive(Clone, Debug)]
pub struct ConcavePA {
    ambient: usize,
    pieces: Vec<AffineForm>,
    complex: OnceLock<PolyComplex>,
}

impl PartialEq for ConcavePA {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.pieces == other.pieces
    }
}

impl Eq for ConcavePA {}

/// Whether `pieces[i]` is strictly below every other piece somewhere.
fn attains_min(pieces: &[AffineForm], i: usize, n: usize) -> bool {
    let mine = &pieces[i];
    let (a, b): (Vec<QVector>, Vec<Q>) = pieces
        .iter()
        .enumerate()
        .filter(|(j, _)| *j != i)
        .map(|(_, p)| (sub(&mine.slope, &p.slope), &p.constant - &mine.constant))
        .unzip();
    strictly_feasible(&a, &b, n)
}

/// Drops redundant and duplicate pieces.
pub fn canonical_min_form(pieces: &[AffineForm]) -> Result<ConcavePA> {
    let n = pieces.first().ok_or_else(|| Error::invalid("a concave function needs at least one piece"))?.slope.len();
    for p in pieces {
        check_rank(n, p.slope.len())?;
    }
    let mut ps = pieces.to_vec();
    ps.sort();
    ps.dedup();
    // among equal slopes only the smallest constant can matter
    ps.dedup_by(|b, a| a.slope == b.slope);
    let keep: Vec<bool> = (0..ps.len()).map(|i| attains_min(&ps, i, n)).collect();
    let pieces = ps.into_iter().zip(keep).filter(|(_, k)| *k).map(|(p, _)| p).collect();
    Ok(ConcavePA { ambient: n, pieces, complex: OnceLock::new() })
}

impl ConcavePA {
    pub fn new(pieces: &[AffineForm]) -> Result<Self> {
        canonical_min_form(pieces)
    }

    /// The homogeneous function `min_i <m_i, u>` over the given slopes.
    pub fn from_slopes(slopes: &[QVector]) -> Result<Self> {
        canonical_min_form(&slopes.iter().cloned().map(AffineForm::linear).collect::<Vec<_>>())
    }

    /// Support function `u ↦ min_{m ∈ Δ} <m, u>` of a polytope.
    pub fn support_of(delta: &Polytope) -> Self {
        Self::from_slopes(delta.vertices()).expect("polytopes have vertices")
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn pieces(&self) -> &[AffineForm] {
        &self.pieces
    }

    pub fn slopes(&self) -> Vec<QVector> {
        self.pieces.iter().map(|p| p.slope.clone()).collect()
    }

    pub fn evaluate(&self, u: &[Q]) -> Q {
        self.pieces.iter().map(|p| p.eval(u)).min().expect("nonempty")
    }

    /// Pieces attaining the minimum at `u`.
    pub fn active_pieces(&self, u: &[Q]) -> Vec<&AffineForm> {
        let v = self.evaluate(u);
        self.pieces.iter().filter(|p| p.eval(u) == v).collect()
    }

    /// `Δ_f`, the convex hull of the slopes.
    pub fn stability_set(&self) -> Polytope {
        convex_hull(&self.slopes()).expect("nonempty")
    }

    /// `∂f(u)`: convex hull of the slopes of the active pieces.
    pub fn sup_differential(&self, u: &[Q]) -> Polytope {
        let s: Vec<QVector> = self.active_pieces(u).into_iter().map(|p| p.slope.clone()).collect();
        convex_hull(&s).expect("some piece is active")
    }

    /// `rec(f)(u) = min_i <m_i, u>`, the support function of `Δ_f`.
    pub fn recession_function(&self) -> ConcavePA {
        ConcavePA::from_slopes(&self.slopes()).expect("nonempty")
    }

    pub fn is_homogeneous(&self) -> bool {
        self.pieces.iter().all(|p| p.constant.is_zero())
    }

    /// Linearity domain of piece `i`.
    pub fn domain_of(&self, i: usize) -> Polyhedron {
        let me = &self.pieces[i];
        let hs: Vec<Halfspace> = self
            .pieces
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, p)| Halfspace { normal: sub(&p.slope, &me.slope), offset: &me.constant - &p.constant })
            .collect();
        Polyhedron::from_inequalities(self.ambient, &hs, &[]).expect("pieces are non-redundant")
    }

    /// The complex `Π_f` of linearity domains and their faces.
    pub fn induced_complex(&self) -> &PolyComplex {
        self.complex.get_or_init(|| {
            let tiles: Vec<Polyhedron> = (0..self.pieces.len()).map(|i| self.domain_of(i)).collect();
            PolyComplex::from_tiling(self.ambient, &tiles)
        })
    }

    /// The piece that is linear on a full-dimensional cell of `Π_f`.
    pub fn piece_on(&self, cell: &Polyhedron) -> Option<&AffineForm> {
        let u = cell.interior_point();
        let act = self.active_pieces(&u);
        (act.len() == 1).then(|| act[0])
    }

    /// `u ↦ f(u - shift) + c`.
    pub fn translate(&self, shift: &[Q], c: &Q) -> ConcavePA {
        let pieces: Vec<AffineForm> = self
            .pieces
            .iter()
            .map(|p| AffineForm::new(p.slope.clone(), &p.constant - dot(&p.slope, shift) + c))
            .collect();
        canonical_min_form(&pieces).expect("nonempty")
    }

    /// `u ↦ f(u) + <m, u> + c`.
    pub fn add_affine(&self, m: &[Q], c: &Q) -> ConcavePA {
        let pieces: Vec<AffineForm> = self
            .pieces
            .iter()
            .map(|p| AffineForm::new(crate::exact::add(&p.slope, m), &p.constant + c))
            .collect();
        canonical_min_form(&pieces).expect("nonempty")
    }

    /// Integral slopes and constants in `Gamma`.
    pub fn is_gamma_lattice(&self, gamma: &ValueGroup) -> bool {
        self.pieces
            .iter()
            .all(|p| p.slope.iter().all(Q::is_integer) && gamma.contains(&p.constant))
    }

    /// Rational data is `Gamma`-rational for every nontrivial `Gamma` inside `Q`.
    pub fn is_gamma_rational(&self, _gamma: &ValueGroup) -> bool {
        true
    }

    /// Smallest `e >= 1` such that `e f` is a `Gamma`-lattice function.
    pub fn lattice_denominator(&self, gamma: &ValueGroup) -> BigInt {
        let mut e = BigInt::one();
        for p in &self.pieces {
            for x in &p.slope {
                e = e.lcm(x.denom());
            }
        }
        loop {
            let scaled = Q::from_integer(e.clone());
            let missing = self
                .pieces
                .iter()
                .map(|p| gamma.denominator_of(&(&p.constant * &scaled)))
                .fold(BigInt::one(), |acc, d| acc.lcm(&d));
            if missing.is_one() {
                return e;
            }
            e *= missing;
        }
    }
}

impl fmt::Display for ConcavePA {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.pieces.iter().map(|p| p.to_string()).collect();
        write!(f, "min({})", parts.join(", "))
    }
}
