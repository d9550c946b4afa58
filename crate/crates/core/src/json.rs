//! JSON forms of the engine's data. Rationals are strings `"p/q"` (or `"p"`).

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::concave::{canonical_min_form, upper_envelope, AffineForm, ConcaveOnPolytope, ConcavePA};
use crate::error::{Error, Result};
use crate::exact::{fmt_q, parse_q, QVector, Q};
use crate::heights::{HeightReport, PeriodicPL, Place, PlaceKind, PlaceValue, RoofInstance, SampleNode};
use crate::monge::{Atom, DiscreteMeasure};
use crate::polyhedra::{convex_hull, Cone, Polytope};
use crate::toric::{support_function_of_polytope, SupportFunctionData};

fn qs(v: &[String]) -> Result<QVector> {
    v.iter().map(|s| parse_q(s)).collect()
}

fn ss(v: &[Q]) -> Vec<String> {
    v.iter().map(fmt_q).collect()
}

/// A float as a JSON number with 17 significant digits.
pub fn float(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    format!("{x:.16e}").parse::<serde_json::Number>().map(Value::Number).unwrap_or(Value::Null)
}

#[derive(Serialize, Deserialize)]
struct PieceDto {
    slope: Vec<String>,
    constant: String,
}

#[derive(Serialize, Deserialize)]
struct PiecesDto {
    pieces: Vec<PieceDto>,
}

#[derive(Serialize, Deserialize)]
struct LiftPointDto {
    point: Vec<String>,
    value: String,
}

#[derive(Serialize, Deserialize)]
struct LiftDto {
    lift: Vec<LiftPointDto>,
}

fn pieces_from(dto: &PiecesDto) -> Result<ConcavePA> {
    let pieces = dto
        .pieces
        .iter()
        .map(|p| Ok(AffineForm::new(qs(&p.slope)?, parse_q(&p.constant)?)))
        .collect::<Result<Vec<_>>>()?;
    canonical_min_form(&pieces)
}

pub fn concave_to_json(f: &ConcavePA) -> Value {
    let pieces: Vec<PieceDto> =
        f.pieces().iter().map(|p| PieceDto { slope: ss(&p.slope), constant: fmt_q(&p.constant) }).collect();
    serde_json::to_value(PiecesDto { pieces }).expect("serializable")
}

pub fn concave_from_json(v: &Value) -> Result<ConcavePA> {
    pieces_from(&PiecesDto::deserialize(v)?)
}

/// The vertex lift of a cellwise affine function; rebuilding the envelope
/// from it reproduces the function.
pub fn envelope_to_json(g: &ConcaveOnPolytope) -> Value {
    let lift: Vec<LiftPointDto> = g
        .vertex_lift()
        .into_iter()
        .map(|(m, t)| LiftPointDto { point: ss(&m), value: fmt_q(&t) })
        .collect();
    serde_json::to_value(LiftDto { lift }).expect("serializable")
}

pub fn envelope_from_json(v: &Value) -> Result<ConcaveOnPolytope> {
    let dto = LiftDto::deserialize(v)?;
    let lifted = dto.lift.iter().map(|l| Ok((qs(&l.point)?, parse_q(&l.value)?))).collect::<Result<Vec<_>>>()?;
    upper_envelope(&lifted)
}

pub fn measure_to_json(m: &DiscreteMeasure) -> Value {
    let atoms: Vec<Value> = m.atoms().iter().map(|a| json!({"at": ss(&a.at), "mass": fmt_q(&a.mass)})).collect();
    json!({ "atoms": atoms })
}

pub fn measure_from_json(v: &Value) -> Result<DiscreteMeasure> {
    #[derive(Deserialize)]
    struct AtomDto {
        at: Vec<String>,
        mass: String,
    }
    #[derive(Deserialize)]
    struct Dto {
        atoms: Vec<AtomDto>,
    }
    let dto = Dto::deserialize(v)?;
    let atoms = dto.atoms.iter().map(|a| Ok(Atom { at: qs(&a.at)?, mass: parse_q(&a.mass)? })).collect::<Result<_>>()?;
    DiscreteMeasure::new(atoms)
}

/// A point list under `points` or `vertices`.
pub fn polytope_from_json(v: &Value) -> Result<Polytope> {
    let pts = v
        .get("points")
        .or_else(|| v.get("vertices"))
        .ok_or_else(|| Error::parse("expected a \"points\" or \"vertices\" array"))?;
    let raw: Vec<Vec<String>> = Vec::deserialize(pts)?;
    let pts = raw.iter().map(|p| qs(p)).collect::<Result<Vec<_>>>()?;
    convex_hull(&pts)
}

pub fn polytope_to_json(p: &Polytope) -> Value {
    let half = |h: &crate::polyhedra::Halfspace| json!({"normal": ss(&h.normal), "offset": fmt_q(&h.offset)});
    json!({
        "dim": p.dim(),
        "vertices": p.vertices().iter().map(|v| ss(v)).collect::<Vec<_>>(),
        "facets": p.facets().iter().map(half).collect::<Vec<_>>(),
        "equations": p.equations().iter().map(half).collect::<Vec<_>>(),
    })
}

/// Accepts `{"support": {"pieces": ...}}`, `{"support": {"polytope": [...]}}`
/// or `{"fan": {"rays": ..., "cones": ...}, "slopes": ...}`.
pub fn support_from_json(v: &Value) -> Result<SupportFunctionData> {
    if let Some(s) = v.get("support") {
        if s.get("pieces").is_some() {
            let f = concave_from_json(s)?;
            if !f.is_homogeneous() {
                return Err(Error::parse("support function pieces must have zero constants"));
            }
            return SupportFunctionData::from_concave(&f);
        }
        if let Some(p) = s.get("polytope") {
            return support_function_of_polytope(&polytope_from_json(&json!({ "points": p }))?);
        }
        return Err(Error::parse("support needs \"pieces\" or \"polytope\""));
    }
    if let Some(fan) = v.get("fan") {
        #[derive(Deserialize)]
        struct FanDto {
            rays: Vec<Vec<String>>,
            cones: Vec<Vec<usize>>,
        }
        let dto = FanDto::deserialize(fan)?;
        let slopes: Vec<Vec<String>> = Vec::deserialize(v.get("slopes").ok_or_else(|| Error::parse("missing \"slopes\""))?)?;
        let rays = dto.rays.iter().map(|r| qs(r)).collect::<Result<Vec<_>>>()?;
        let n = rays.first().map(Vec::len).ok_or_else(|| Error::parse("fan needs rays"))?;
        let cones = dto
            .cones
            .iter()
            .map(|c| {
                let gens = c
                    .iter()
                    .map(|&i| rays.get(i).cloned().ok_or_else(|| Error::parse(format!("ray index {i} out of range"))))
                    .collect::<Result<Vec<_>>>()?;
                Cone::from_rays(n, &gens, &[])
            })
            .collect::<Result<Vec<_>>>()?;
        let slopes = slopes.iter().map(|s| qs(s)).collect::<Result<Vec<_>>>()?;
        return SupportFunctionData::new(n, &cones, &slopes);
    }
    Err(Error::parse("expected \"support\" or \"fan\""))
}

pub fn support_to_json(s: &SupportFunctionData) -> Value {
    let f = s.flags();
    let cones: Vec<Value> = s
        .pieces()
        .map(|(c, m)| json!({"rays": c.rays().iter().map(|r| ss(r)).collect::<Vec<_>>(), "lineality": c.lineality().iter().map(|r| ss(r)).collect::<Vec<_>>(), "slope": ss(m)}))
        .collect();
    json!({"cones": cones, "concave": f.concave, "strictly_concave": f.strictly_concave})
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum PlaceDto {
    Finite { id: String, weight: String, height: String, orders: Vec<i64> },
    Point { id: String, weight: String, lambdas: Vec<String> },
    Circle { id: String, weight: String, length: String, lambdas: Vec<Vec<(String, String)>> },
    Sampled { id: String, weight: String, nodes: Vec<NodeDto> },
}

#[derive(Serialize, Deserialize)]
struct NodeDto {
    subweight: f64,
    lambdas: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct InstanceDto {
    dimension: usize,
    exponents: Vec<Vec<i64>>,
    places: Vec<PlaceDto>,
}

fn place_from(dto: &PlaceDto) -> Result<Place> {
    Ok(match dto {
        PlaceDto::Finite { id, weight, height, orders } => Place::finite(id, parse_q(weight)?, parse_q(height)?, orders),
        PlaceDto::Point { id, weight, lambdas } => Place::point(id, parse_q(weight)?, qs(lambdas)?),
        PlaceDto::Circle { id, weight, length, lambdas } => {
            let len = parse_q(length)?;
            let profiles = lambdas
                .iter()
                .map(|bps| {
                    let pts = bps.iter().map(|(u, v)| Ok((parse_q(u)?, parse_q(v)?))).collect::<Result<Vec<_>>>()?;
                    PeriodicPL::new(len.clone(), pts)
                })
                .collect::<Result<Vec<_>>>()?;
            Place::circle(id, parse_q(weight)?, len, profiles)
        }
        PlaceDto::Sampled { id, weight, nodes } => Place::sampled(
            id,
            parse_q(weight)?,
            nodes.iter().map(|n| SampleNode { subweight: n.subweight, lambdas: n.lambdas.clone() }).collect(),
        ),
    })
}

fn place_to(p: &Place) -> PlaceDto {
    let (id, weight) = (p.id.clone(), fmt_q(&p.weight));
    match &p.kind {
        PlaceKind::Finite { height, orders } => PlaceDto::Finite {
            id,
            weight,
            height: fmt_q(height),
            orders: orders.iter().map(|o| i64::try_from(o).expect("orders fit in i64")).collect(),
        },
        PlaceKind::PointValue { lambdas } => PlaceDto::Point { id, weight, lambdas: ss(lambdas) },
        PlaceKind::Circle { length, profiles } => PlaceDto::Circle {
            id,
            weight,
            length: fmt_q(length),
            lambdas: profiles
                .iter()
                .map(|p| p.breakpoints().iter().map(|(u, v)| (fmt_q(u), fmt_q(v))).collect())
                .collect(),
        },
        PlaceKind::Sampled { nodes } => PlaceDto::Sampled {
            id,
            weight,
            nodes: nodes.iter().map(|n| NodeDto { subweight: n.subweight, lambdas: n.lambdas.clone() }).collect(),
        },
    }
}

pub fn instance_from_json(v: &Value) -> Result<RoofInstance> {
    let dto = InstanceDto::deserialize(v)?;
    let exponents = dto.exponents.iter().map(|e| e.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let places = dto.places.iter().map(place_from).collect::<Result<Vec<_>>>()?;
    RoofInstance::new(dto.dimension, exponents, places)
}

pub fn instance_to_json(inst: &RoofInstance) -> Value {
    let dto = InstanceDto {
        dimension: inst.dimension(),
        exponents: inst
            .exponents()
            .iter()
            .map(|e| e.iter().map(|x| i64::try_from(x).expect("exponents fit in i64")).collect())
            .collect(),
        places: inst.places().iter().map(place_to).collect(),
    };
    serde_json::to_value(dto).expect("serializable")
}

fn place_value(v: &PlaceValue) -> Value {
    match v {
        PlaceValue::Exact(q) => Value::String(fmt_q(q)),
        PlaceValue::Approx(x) => float(*x),
    }
}

pub fn height_report_to_json(r: &HeightReport) -> Value {
    let places: Vec<Value> = r
        .per_place
        .iter()
        .map(|p| {
            json!({
                "id": p.id,
                "weight": fmt_q(&p.weight),
                "integral": place_value(&p.integral),
                "exact": p.integral.exact().is_some(),
            })
        })
        .collect();
    json!({
        "polytope": ss_rows(r.polytope.vertices()),
        "factor": r.factor.to_string(),
        "per_place": places,
        "total": float(r.total),
        "exact_total": r.exact_total.as_ref().map(fmt_q),
    })
}

fn ss_rows(rows: &[QVector]) -> Vec<Vec<String>> {
    rows.iter().map(|r| ss(r)).collect()
}
