use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{from_lattice, LatticeVector, QVector, Q};
use crate::lattice::{lattice_index, LatticeIndex};
use crate::polyhedra::{convex_hull, Polytope};

/// A periodic piecewise linear function on `R / length Z`, interpolating
/// `(u_i, value_i)` linearly with wraparound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodicPL {
    length: Q,
    breakpoints: Vec<(Q, Q)>,
}

impl PeriodicPL {
    pub fn new(length: Q, breakpoints: Vec<(Q, Q)>) -> Result<Self> {
        if !length.is_positive() {
            return Err(Error::invalid("circle length must be positive"));
        }
        if breakpoints.is_empty() {
            return Err(Error::invalid("a periodic profile needs at least one breakpoint"));
        }
        let increasing = breakpoints.windows(2).all(|w| w[0].0 < w[1].0);
        let in_range = breakpoints.iter().all(|(u, _)| !u.is_negative() && *u < length);
        if !increasing || !in_range {
            return Err(Error::invalid("breakpoints must be strictly increasing within [0, length)"));
        }
        Ok(PeriodicPL { length, breakpoints })
    }

    pub fn constant(length: Q, value: Q) -> Result<Self> {
        Self::new(length, vec![(Q::zero(), value)])
    }

    pub fn length(&self) -> &Q {
        &self.length
    }

    pub fn breakpoints(&self) -> &[(Q, Q)] {
        &self.breakpoints
    }

    /// Consecutive nodes including the wrapped first node at `u_0 + length`.
    fn segments(&self) -> Vec<((Q, Q), (Q, Q))> {
        let k = self.breakpoints.len();
        (0..k)
            .map(|i| {
                let a = self.breakpoints[i].clone();
                let b = if i + 1 < k {
                    self.breakpoints[i + 1].clone()
                } else {
                    (&self.breakpoints[0].0 + &self.length, self.breakpoints[0].1.clone())
                };
                (a, b)
            })
            .collect()
    }

    pub fn evaluate(&self, u: &Q) -> Q {
        let first = &self.breakpoints[0].0;
        // bring u into [u_0, u_0 + length)
        let t = (u - first) / &self.length;
        let x = first + (&t - t.floor()) * &self.length;
        for ((ua, va), (ub, vb)) in self.segments() {
            if x >= ua && x < ub {
                return &va + (&vb - &va) * (&x - &ua) / (&ub - &ua);
            }
        }
        unreachable!("segments cover a full period")
    }

    /// `(1/length) ∫_0^length`.
    pub fn average(&self) -> Q {
        let total: Q = self
            .segments()
            .into_iter()
            .map(|((ua, va), (ub, vb))| (&ub - &ua) * (va + vb) / Q::from_integer(2.into()))
            .sum();
        total / &self.length
    }

    /// Breakpoint positions in `[0, length)`.
    pub fn kinks(&self) -> impl Iterator<Item = &Q> {
        self.breakpoints.iter().map(|(u, _)| u)
    }

    pub fn shifted(&self, c: &Q) -> PeriodicPL {
        let breakpoints = self.breakpoints.iter().map(|(u, v)| (u.clone(), v + c)).collect();
        PeriodicPL { length: self.length.clone(), breakpoints }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SampleNode {
    pub subweight: f64,
    pub lambdas: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum PlaceKind {
    /// `λ_j = -height * ord_j`.
    Finite { height: Q, orders: Vec<BigInt> },
    PointValue { lambdas: Vec<Q> },
    Circle { length: Q, profiles: Vec<PeriodicPL> },
    Sampled { nodes: Vec<SampleNode> },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Place {
    pub id: String,
    pub weight: Q,
    pub kind: PlaceKind,
}

impl Place {
    pub fn finite(id: &str, weight: Q, height: Q, orders: &[i64]) -> Self {
        let orders = orders.iter().map(|&o| BigInt::from(o)).collect();
        Place { id: id.into(), weight, kind: PlaceKind::Finite { height, orders } }
    }

    pub fn point(id: &str, weight: Q, lambdas: QVector) -> Self {
        Place { id: id.into(), weight, kind: PlaceKind::PointValue { lambdas } }
    }

    pub fn circle(id: &str, weight: Q, length: Q, profiles: Vec<PeriodicPL>) -> Self {
        Place { id: id.into(), weight, kind: PlaceKind::Circle { length, profiles } }
    }

    pub fn sampled(id: &str, weight: Q, nodes: Vec<SampleNode>) -> Self {
        Place { id: id.into(), weight, kind: PlaceKind::Sampled { nodes } }
    }

    /// Number of `λ_j` this place supplies.
    pub fn arity(&self) -> usize {
        match &self.kind {
            PlaceKind::Finite { orders, .. } => orders.len(),
            PlaceKind::PointValue { lambdas } => lambdas.len(),
            PlaceKind::Circle { profiles, .. } => profiles.len(),
            PlaceKind::Sampled { nodes } => nodes.first().map_or(0, |n| n.lambdas.len()),
        }
    }

    pub fn is_exact_kind(&self) -> bool {
        !matches!(self.kind, PlaceKind::Sampled { .. })
    }

    /// The lift values at a single point, for finite and point places.
    pub fn point_lambdas(&self) -> Option<QVector> {
        match &self.kind {
            PlaceKind::Finite { height, orders } => {
                Some(orders.iter().map(|o| -(height * Q::from_integer(o.clone()))).collect())
            }
            PlaceKind::PointValue { lambdas } => Some(lambdas.clone()),
            _ => None,
        }
    }

    /// Adds `c` to every `λ_j`; finite places become point places.
    pub fn shifted(&self, c: &Q) -> Place {
        let kind = match &self.kind {
            PlaceKind::Finite { .. } | PlaceKind::PointValue { .. } => PlaceKind::PointValue {
                lambdas: self.point_lambdas().expect("point data").into_iter().map(|l| l + c).collect(),
            },
            PlaceKind::Circle { length, profiles } => PlaceKind::Circle {
                length: length.clone(),
                profiles: profiles.iter().map(|p| p.shifted(c)).collect(),
            },
            PlaceKind::Sampled { nodes } => {
                let cf = crate::exact::to_f64(c);
                PlaceKind::Sampled {
                    nodes: nodes
                        .iter()
                        .map(|n| SampleNode { subweight: n.subweight, lambdas: n.lambdas.iter().map(|l| l + cf).collect() })
                        .collect(),
                }
            }
        };
        Place { id: self.id.clone(), weight: self.weight.clone(), kind }
    }

    fn validate(&self, arity: usize) -> Result<()> {
        let fail = |msg: &str| Err(Error::invalid(format!("place {:?}: {msg}", self.id)));
        if self.weight.is_negative() {
            return fail("weight must be nonnegative");
        }
        if self.arity() != arity {
            return fail(&format!("expected {arity} lambda values, found {}", self.arity()));
        }
        match &self.kind {
            PlaceKind::Finite { height, .. } if height.is_negative() => fail("height must be nonnegative"),
            PlaceKind::Circle { length, profiles } => {
                if !length.is_positive() {
                    return fail("circle length must be positive");
                }
                if profiles.iter().any(|p| p.length() != length) {
                    return fail("profile periods must equal the circle length");
                }
                Ok(())
            }
            PlaceKind::Sampled { nodes } => {
                if nodes.is_empty() {
                    return fail("sampled place needs nodes");
                }
                if nodes.iter().any(|n| n.lambdas.len() != arity) {
                    return fail("every node needs one lambda per exponent");
                }
                if nodes.iter().any(|n| n.subweight.is_nan() || n.subweight < 0.0 || n.lambdas.iter().any(|l| !l.is_finite())) {
                    return fail("node data must be finite with nonnegative subweights");
                }
                let s: f64 = nodes.iter().map(|n| n.subweight).sum();
                if (s - 1.0).abs() > 1e-9 {
                    return fail("node subweights must sum to 1");
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }
}

/// Exponents `m_0 = 0, m_1, ..., m_r` generating `Z^n`, with per-place lift data.
#[derive(Clone, Debug, PartialEq)]
pub struct RoofInstance {
    dimension: usize,
    exponents: Vec<LatticeVector>,
    places: Vec<Place>,
}

impl RoofInstance {
    pub fn new(dimension: usize, exponents: Vec<LatticeVector>, places: Vec<Place>) -> Result<Self> {
        if exponents.is_empty() || exponents[0].iter().any(|x| !x.is_zero()) {
            return Err(Error::invalid("the first exponent must be the origin"));
        }
        if exponents.iter().any(|m| m.len() != dimension) {
            return Err(Error::invalid("exponent rank does not match the dimension"));
        }
        if lattice_index(&exponents, dimension) != LatticeIndex::Finite(BigInt::one()) {
            return Err(Error::invalid("exponents do not generate the lattice"));
        }
        let mut seen = std::collections::HashSet::new();
        for p in &places {
            if !seen.insert(p.id.as_str()) {
                return Err(Error::invalid(format!("duplicate place id {:?}", p.id)));
            }
            p.validate(exponents.len())?;
        }
        Ok(RoofInstance { dimension, exponents, places })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn exponents(&self) -> &[LatticeVector] {
        &self.exponents
    }

    pub fn exponent_points(&self) -> Vec<QVector> {
        self.exponents.iter().map(|m| from_lattice(m)).collect()
    }

    pub fn places(&self) -> &[Place] {
        &self.places
    }

    pub fn place(&self, id: &str) -> Result<&Place> {
        self.places.iter().find(|p| p.id == id).ok_or_else(|| Error::invalid(format!("unknown place id {id:?}")))
    }

    /// `Δ = conv(m_j)`.
    pub fn polytope(&self) -> Polytope {
        convex_hull(&self.exponent_points()).expect("nonempty")
    }

    /// Whether every place has `λ_0 ≡ 0` (the `f_0 = 1` normalization).
    pub fn is_normalized(&self) -> bool {
        self.places.iter().all(|p| match &p.kind {
            PlaceKind::Finite { orders, .. } => orders[0].is_zero(),
            PlaceKind::PointValue { lambdas } => lambdas[0].is_zero(),
            PlaceKind::Circle { profiles, .. } => profiles[0].breakpoints().iter().all(|(_, v)| v.is_zero()),
            PlaceKind::Sampled { nodes } => nodes.iter().all(|n| n.lambdas[0] == 0.0),
        })
    }

    /// Replaces every place by its shift by `shifts[i]`.
    pub fn shifted(&self, shifts: &[Q]) -> Result<RoofInstance> {
        if shifts.len() != self.places.len() {
            return Err(Error::invalid("one shift per place is required"));
        }
        let places = self.places.iter().zip(shifts).map(|(p, c)| p.shifted(c)).collect();
        RoofInstance::new(self.dimension, self.exponents.clone(), places)
    }
}
