//! Integration of roof integrals over a circle place.
//!
//! Along a segment of the circle on which every `λ_j` is affine, the roof
//! integral `I(u) = ∫_Δ env(λ(u))` is convex and piecewise affine in `u`. A
//! triangulation of the envelope's subdivision at `u` yields weights `w`
//! with `I(u) = w · λ(u)` and `w · λ' <= I(λ')` for every other lift, so each
//! evaluation also gives a supporting line. Segments are split until `I` is
//! certified affine on each piece.

use num_traits::{Signed, Zero};

use super::place::{Place, PlaceKind, RoofInstance};
use crate::concave::{upper_envelope, ConcaveOnPolytope};
use crate::error::{Error, Result};
use crate::exact::{dot, to_f64, QVector, Q};
use crate::polyhedra::{integrate_with_chart, triangulation, volume, Polytope, VolumeMode};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CircleOptions {
    pub max_depth: u32,
    /// Tolerance for the quadrature fallback.
    pub tol: f64,
    /// Split at the crossing of the two endpoint tangents instead of the midpoint.
    pub sandwich: bool,
}

impl Default for CircleOptions {
    fn default() -> Self {
        CircleOptions { max_depth: 40, tol: 1e-9, sandwich: true }
    }
}

/// `[a, b]` on which the roof integral is certified affine, with its end values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertifiedPiece {
    pub a: Q,
    pub b: Q,
    pub ia: Q,
    pub ib: Q,
}

impl CertifiedPiece {
    pub fn trapezoid(&self) -> Q {
        (&self.b - &self.a) * (&self.ia + &self.ib) / Q::from_integer(2.into())
    }
}

#[derive(Clone, Debug)]
pub struct CircleIntegral {
    /// `∫` over the certified pieces.
    pub exact_part: Q,
    /// `∫` over the remaining pieces by adaptive Simpson.
    pub approx_part: f64,
    pub exact: bool,
    pub pieces: Vec<CertifiedPiece>,
    /// Uncertified intervals handed to quadrature.
    pub fallback: Vec<(Q, Q)>,
    pub length: Q,
}

impl CircleIntegral {
    /// Probability-measure average `(1/length) ∫`.
    pub fn value(&self) -> f64 {
        (to_f64(&self.exact_part) + self.approx_part) / to_f64(&self.length)
    }

    pub fn exact_value(&self) -> Option<Q> {
        self.exact.then(|| &self.exact_part / &self.length)
    }
}

/// Roof data at one circle parameter.
struct Sample {
    integral: Q,
    weights: QVector,
    key: Vec<Vec<QVector>>,
}

struct CircleProblem<'a> {
    points: Vec<QVector>,
    profiles: &'a [super::place::PeriodicPL],
}

impl CircleProblem<'_> {
    fn lambdas(&self, u: &Q) -> QVector {
        self.profiles.iter().map(|p| p.evaluate(u)).collect()
    }

    fn sample(&self, u: &Q) -> Result<Sample> {
        let lam = self.lambdas(u);
        let env = roof(&self.points, &lam)?;
        let weights = triangulation_weights(&env, &self.points, &lam);
        let integral = dot(&weights, &lam);
        debug_assert_eq!(integral, env.integrate());
        let key = env.cells().iter().map(|c| c.cell.vertices().to_vec()).collect();
        Ok(Sample { integral, weights, key })
    }

    fn integral_f64(&self, u: f64) -> f64 {
        let uq = Q::from_float(u).expect("finite");
        to_f64(&roof(&self.points, &self.lambdas(&uq)).expect("valid data").integrate())
    }
}

pub(crate) fn roof(points: &[QVector], lambdas: &[Q]) -> Result<ConcaveOnPolytope> {
    let lifted: Vec<(QVector, Q)> = points.iter().cloned().zip(lambdas.iter().cloned()).collect();
    upper_envelope(&lifted)
}

/// Weights `w_j` with `∫ env = Σ w_j λ_j` for the envelope's own lift.
fn triangulation_weights(env: &ConcaveOnPolytope, points: &[QVector], lambdas: &[Q]) -> QVector {
    let mut w = vec![Q::zero(); points.len()];
    let dim = env.domain().dim();
    let full = env.domain().is_full_dimensional();
    let chart = (!full).then(|| crate::polyhedra::AffineLatticeChart::for_polyhedron(env.domain()));
    let k = Q::from_integer((dim + 1).into());
    for cell in env.cells().iter().filter(|c| c.cell.dim() == dim) {
        for simplex in triangulation(&cell.cell) {
            let p = Polytope::from_vertices(&simplex).expect("simplex");
            let vol = match &chart {
                None => volume(&p, VolumeMode::Ambient),
                Some(c) => integrate_with_chart(&p, Some(c), &|_| Q::from_integer(1.into())),
            };
            let share = vol / &k;
            for v in &simplex {
                let top = env.evaluate(v).expect("vertex of the domain");
                let j = (0..points.len())
                    .find(|&j| points[j] == *v && lambdas[j] == top)
                    .expect("subdivision vertices are lifted points");
                w[j] += &share;
            }
        }
    }
    w
}

fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    #[allow(clippy::too_many_arguments)]
    fn step(f: &dyn Fn(f64) -> f64, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, tol: f64, depth: u32) -> f64 {
        let m = (a + b) / 2.0;
        let (lm, rm) = ((a + m) / 2.0, (m + b) / 2.0);
        let (flm, frm) = (f(lm), f(rm));
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            return left + right + delta / 15.0;
        }
        step(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) + step(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
    }
    let (fa, fb, fm) = (f(a), f(b), f((a + b) / 2.0));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    step(f, a, b, fa, fm, fb, whole, tol, 50)
}

/// Integrates the roof integral of a circle place; the result stores the
/// probability average via [`CircleIntegral::value`].
pub fn circle_place_integral(instance: &RoofInstance, place: &Place, opts: &CircleOptions) -> Result<CircleIntegral> {
    let PlaceKind::Circle { length, profiles } = &place.kind else {
        return Err(Error::invalid(format!("place {:?} is not a circle place", place.id)));
    };
    if !length.is_positive() {
        return Err(Error::invalid("circle length must be positive"));
    }
    if opts.tol.is_nan() || opts.tol <= 0.0 {
        return Err(Error::invalid("tolerance must be positive"));
    }
    let problem = CircleProblem { points: instance.exponent_points(), profiles };
    let mut cuts: Vec<Q> = profiles.iter().flat_map(|p| p.kinks().cloned()).collect();
    cuts.push(Q::zero());
    cuts.push(length.clone());
    cuts.sort();
    cuts.dedup();

    let mut out = CircleIntegral {
        exact_part: Q::zero(),
        approx_part: 0.0,
        exact: true,
        pieces: Vec::new(),
        fallback: Vec::new(),
        length: length.clone(),
    };
    for w in cuts.windows(2) {
        let (a, b) = (w[0].clone(), w[1].clone());
        let (sa, sb) = (problem.sample(&a)?, problem.sample(&b)?);
        refine(&problem, a, sa, b, sb, 0, opts, &mut out)?;
    }
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn refine(
    problem: &CircleProblem,
    a: Q,
    sa: Sample,
    b: Q,
    sb: Sample,
    depth: u32,
    opts: &CircleOptions,
    out: &mut CircleIntegral,
) -> Result<()> {
    let lam_a = problem.lambdas(&a);
    let lam_b = problem.lambdas(&b);
    let tangent_a_at_b = dot(&sa.weights, &lam_b);
    let tangent_b_at_a = dot(&sb.weights, &lam_a);
    let mid = (&a + &b) / Q::from_integer(2.into());
    let mut certified = tangent_a_at_b == sb.integral || tangent_b_at_a == sa.integral;
    let mut sm = None;
    if !certified && sa.key == sb.key {
        let s = problem.sample(&mid)?;
        certified = s.key == sa.key;
        sm = Some(s);
    }
    if certified {
        let piece = CertifiedPiece { a, b, ia: sa.integral, ib: sb.integral };
        out.exact_part += piece.trapezoid();
        out.pieces.push(piece);
        return Ok(());
    }
    if depth >= opts.max_depth {
        let (fa, fb) = (to_f64(&a), to_f64(&b));
        out.approx_part += adaptive_simpson(&|u| problem.integral_f64(u), fa, fb, opts.tol);
        out.exact = false;
        out.fallback.push((a, b));
        return Ok(());
    }
    let split = if opts.sandwich {
        // T_a(u) = w_a·λ(u) and T_b(u) = w_b·λ(u) are affine in u; both
        // under-estimate I, and they cross where I kinks when it has two pieces
        let ta = (sa.integral.clone(), tangent_a_at_b);
        let tb = (tangent_b_at_a, sb.integral.clone());
        // in the parameter t ∈ [0, 1]: ta.0 + t (ta.1 - ta.0) = tb.0 + t (tb.1 - tb.0)
        let denom = (&ta.1 - &ta.0) - (&tb.1 - &tb.0);
        let t = if denom.is_zero() { None } else { Some((&tb.0 - &ta.0) / denom) };
        match t {
            Some(t) if t.is_positive() && t < Q::from_integer(1.into()) => &a + t * (&b - &a),
            _ => mid.clone(),
        }
    } else {
        mid.clone()
    };
    let ss = match sm {
        Some(s) if split == mid => s,
        _ => problem.sample(&split)?,
    };
    let ss2 = Sample { integral: ss.integral.clone(), weights: ss.weights.clone(), key: ss.key.clone() };
    refine(problem, a, sa, split.clone(), ss, depth + 1, opts, out)?;
    refine(problem, split, ss2, b, sb, depth + 1, opts, out)
}

/// Recomputes the certified part with every piece halved; equals
/// `exact_part` when each piece really is affine.
pub fn halved_recheck(instance: &RoofInstance, place: &Place, result: &CircleIntegral) -> Result<Q> {
    let PlaceKind::Circle { profiles, .. } = &place.kind else {
        return Err(Error::invalid("not a circle place"));
    };
    let problem = CircleProblem { points: instance.exponent_points(), profiles };
    let half = Q::from_integer(2.into());
    let mut total = Q::zero();
    for p in &result.pieces {
        let m = (&p.a + &p.b) / &half;
        let im = problem.sample(&m)?.integral;
        total += (&m - &p.a) * (&p.ia + &im) / &half + (&p.b - &m) * (&im + &p.ib) / &half;
    }
    Ok(total)
}

/// Roof integral as a float, for use by independent quadrature oracles.
pub fn roof_integral_at(instance: &RoofInstance, place: &Place, u: f64) -> Result<f64> {
    let PlaceKind::Circle { profiles, .. } = &place.kind else {
        return Err(Error::invalid("not a circle place"));
    };
    Ok(CircleProblem { points: instance.exponent_points(), profiles }.integral_f64(u))
}

/// Simpson quadrature of the circle average at a given tolerance on each
/// breakpoint interval, independent of the certification machinery.
pub fn circle_simpson(instance: &RoofInstance, place: &Place, tol: f64) -> Result<f64> {
    let PlaceKind::Circle { length, profiles } = &place.kind else {
        return Err(Error::invalid("not a circle place"));
    };
    let problem = CircleProblem { points: instance.exponent_points(), profiles };
    let mut cuts: Vec<Q> = profiles.iter().flat_map(|p| p.kinks().cloned()).collect();
    cuts.push(Q::zero());
    cuts.push(length.clone());
    cuts.sort();
    cuts.dedup();
    let total: f64 = cuts
        .windows(2)
        .map(|w| adaptive_simpson(&|u| problem.integral_f64(u), to_f64(&w[0]), to_f64(&w[1]), tol))
        .sum();
    Ok(total / to_f64(length))
}
