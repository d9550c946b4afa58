use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;

use super::circle::{circle_place_integral, roof, CircleIntegral, CircleOptions};
use super::place::{Place, PlaceKind, RoofInstance};
use crate::concave::ConcaveOnPolytope;
use crate::error::{Error, Result};
use crate::exact::{factorial, snap, to_f64, Q};
use crate::polyhedra::Polytope;

/// Float inputs are snapped to this denominator before exact integration.
pub const SAMPLE_SNAP: i64 = 1_000_000_000_000;

/// The roof `ϑ_w` of a finite or point place and its integral over `Δ`.
pub fn roof_from_lift(instance: &RoofInstance, place: &Place) -> Result<(ConcaveOnPolytope, Q)> {
    let lambdas = place
        .point_lambdas()
        .ok_or_else(|| Error::invalid(format!("place {:?} has no single lift", place.id)))?;
    let env = roof(&instance.exponent_points(), &lambdas)?;
    let integral = env.integrate();
    Ok((env, integral))
}

/// `Σ subweight · ∫ ϑ` over the nodes, each roof integrated exactly after snapping.
pub fn sampled_place_integral(instance: &RoofInstance, place: &Place) -> Result<f64> {
    let PlaceKind::Sampled { nodes } = &place.kind else {
        return Err(Error::invalid(format!("place {:?} is not a sampled place", place.id)));
    };
    if nodes.is_empty() {
        return Err(Error::invalid("sampled place needs nodes"));
    }
    let points = instance.exponent_points();
    let mut total = 0.0;
    for node in nodes {
        let lambdas = node.lambdas.iter().map(|&l| snap(l, SAMPLE_SNAP)).collect::<Result<Vec<_>>>()?;
        total += node.subweight * to_f64(&roof(&points, &lambdas)?.integrate());
    }
    Ok(total)
}

#[derive(Clone, Debug, PartialEq)]
pub enum PlaceValue {
    Exact(Q),
    Approx(f64),
}

impl PlaceValue {
    pub fn to_f64(&self) -> f64 {
        match self {
            PlaceValue::Exact(q) => to_f64(q),
            PlaceValue::Approx(x) => *x,
        }
    }

    pub fn exact(&self) -> Option<&Q> {
        match self {
            PlaceValue::Exact(q) => Some(q),
            PlaceValue::Approx(_) => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct PlaceIntegral {
    pub id: String,
    pub weight: Q,
    pub integral: PlaceValue,
    /// Present for circle places.
    pub circle: Option<CircleIntegral>,
}

#[derive(Clone, Debug)]
pub struct HeightReport {
    pub polytope: Polytope,
    pub per_place: Vec<PlaceIntegral>,
    /// `(n+1)!`
    pub factor: BigInt,
    pub total: f64,
    pub exact_total: Option<Q>,
}

impl HeightReport {
    pub fn is_exact(&self) -> bool {
        self.exact_total.is_some()
    }
}

pub fn place_integral(instance: &RoofInstance, place: &Place, opts: &CircleOptions) -> Result<PlaceIntegral> {
    let (integral, circle) = match &place.kind {
        PlaceKind::Finite { .. } | PlaceKind::PointValue { .. } => {
            (PlaceValue::Exact(roof_from_lift(instance, place)?.1), None)
        }
        PlaceKind::Circle { .. } => {
            let c = circle_place_integral(instance, place, opts)?;
            let v = match c.exact_value() {
                Some(q) => PlaceValue::Exact(q),
                None => PlaceValue::Approx(c.value()),
            };
            (v, Some(c))
        }
        PlaceKind::Sampled { .. } => (PlaceValue::Approx(sampled_place_integral(instance, place)?), None),
    };
    Ok(PlaceIntegral { id: place.id.clone(), weight: place.weight.clone(), integral, circle })
}

fn thread_cap() -> Option<usize> {
    std::env::var("TORHEIGHT_THREADS").ok()?.parse::<usize>().ok().filter(|&n| n > 0)
}

/// `(n+1)! Σ_w weight(w) ∫_Δ ϑ_w`, places evaluated concurrently.
pub fn global_height(instance: &RoofInstance, opts: &CircleOptions) -> Result<HeightReport> {
    let run = || -> Result<Vec<PlaceIntegral>> {
        instance.places().par_iter().map(|p| place_integral(instance, p, opts)).collect()
    };
    let per_place = match thread_cap() {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::invalid(e.to_string()))?
            .install(run)?,
        None => run()?,
    };
    let factor = factorial(instance.dimension() + 1);
    let fq = Q::from_integer(factor.clone());
    let total = to_f64(&fq) * per_place.iter().map(|p| to_f64(&p.weight) * p.integral.to_f64()).sum::<f64>();
    let exact_total = per_place
        .iter()
        .map(|p| p.integral.exact().map(|v| &p.weight * v))
        .sum::<Option<Q>>()
        .map(|s| s * &fq);
    let total = exact_total.as_ref().map_or(total, to_f64);
    Ok(HeightReport { polytope: instance.polytope(), per_place, factor, total, exact_total })
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProductFormula {
    pub residual: PlaceValue,
    pub compatible: bool,
}

/// `Σ weight(w) · log|g|_w`; compatible when the residual vanishes (within
/// `1e-9` once floats are involved).
pub fn product_formula_check(entries: &[(Q, PlaceValue)]) -> ProductFormula {
    let exact: Option<Q> = entries.iter().map(|(w, v)| v.exact().map(|x| w * x)).sum();
    match exact {
        Some(r) => ProductFormula { compatible: r.is_zero(), residual: PlaceValue::Exact(r) },
        None => {
            let r: f64 = entries.iter().map(|(w, v)| to_f64(w) * v.to_f64()).sum();
            ProductFormula { compatible: r.abs() <= 1e-9, residual: PlaceValue::Approx(r) }
        }
    }
}
