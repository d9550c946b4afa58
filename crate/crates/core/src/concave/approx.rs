//! Rational piecewise affine approximation of a black-box concave function.

use num_traits::ToPrimitive;

use super::envelope::upper_envelope;
use super::pa::ConcavePA;
use crate::error::{Error, Result};
use crate::exact::{snap, to_f64, QVector, Q};
use crate::polyhedra::Polytope;

pub const SNAP_DENOMINATOR: i64 = 1_000_000;
const GOLDEN_TOL: f64 = 1e-9;

#[derive(Clone, Debug)]
pub struct Approximation {
    pub function: ConcavePA,
    /// Bound on the sup-distance between the sampled and true duals on `Δ`.
    pub dual_error: f64,
}

/// Minimizes a convex function on `[lo, hi]`.
fn golden_section(mut lo: f64, mut hi: f64, f: &mut dyn FnMut(f64) -> f64) -> (f64, f64) {
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let mut a = hi - r * (hi - lo);
    let mut b = lo + r * (hi - lo);
    let (mut fa, mut fb) = (f(a), f(b));
    while hi - lo > GOLDEN_TOL {
        if fa <= fb {
            hi = b;
            b = a;
            fb = fa;
            a = hi - r * (hi - lo);
            fa = f(a);
        } else {
            lo = a;
            a = b;
            fa = fb;
            b = lo + r * (hi - lo);
            fb = f(b);
        }
    }
    let x = (lo + hi) / 2.0;
    let fx = f(x);
    [(a, fa), (b, fb), (x, fx)].into_iter().fold((x, fx), |best, c| if c.1 < best.1 { c } else { best })
}

/// `min_{u ∈ [-radius, radius]^n} g(u)` for convex `g`, one coordinate at a time.
fn nested_min(g: &dyn Fn(&[f64]) -> f64, n: usize, radius: f64, prefix: &mut Vec<f64>) -> f64 {
    if prefix.len() == n {
        return g(prefix);
    }
    let mut inner = |x: f64| {
        prefix.push(x);
        let v = nested_min(g, n, radius, prefix);
        prefix.pop();
        v
    };
    golden_section(-radius, radius, &mut inner).1
}

/// Points of `Δ ∩ (1/k) Z^n`.
pub fn refined_lattice_points(delta: &Polytope, k: u32) -> Vec<QVector> {
    let n = delta.ambient_dim();
    let kq = Q::from_integer(k.into());
    let lo: Vec<i64> = (0..n)
        .map(|i| delta.vertices().iter().map(|v| (&v[i] * &kq).floor().to_integer().to_i64().unwrap()).min().unwrap())
        .collect();
    let hi: Vec<i64> = (0..n)
        .map(|i| delta.vertices().iter().map(|v| (&v[i] * &kq).ceil().to_integer().to_i64().unwrap()).max().unwrap())
        .collect();
    let mut out = Vec::new();
    let mut cur = lo.clone();
    loop {
        let p: QVector = cur.iter().map(|&c| Q::new(c.into(), k.into())).collect();
        if delta.contains(&p) {
            out.push(p);
        }
        let mut i = 0;
        loop {
            if i == n {
                return out;
            }
            cur[i] += 1;
            if cur[i] <= hi[i] {
                break;
            }
            cur[i] = lo[i];
            i += 1;
        }
    }
}

/// Approximates a concave `ψ` with stability set `Δ` and `|ψ - Ψ_Δ| <= bound`
/// by sampling its dual on `Δ ∩ (1/k) Z^n`.
pub fn approximate_concave(
    psi: &dyn Fn(&[f64]) -> f64,
    delta: &Polytope,
    bound: f64,
    k: u32,
) -> Result<Approximation> {
    if k == 0 {
        return Err(Error::invalid("resolution must be at least 1"));
    }
    if !delta.is_lattice() {
        return Err(Error::invalid("stability set must be a lattice polytope"));
    }
    let n = delta.ambient_dim();
    let radius = 2.0 * (bound.abs() + 1.0) * f64::from(k) + 1.0;
    let mut lifted = Vec::new();
    for m in refined_lattice_points(delta, k) {
        let mf: Vec<f64> = m.iter().map(to_f64).collect();
        let bad = std::cell::Cell::new(false);
        let g = |u: &[f64]| {
            let v = psi(u);
            if !v.is_finite() {
                bad.set(true);
            }
            mf.iter().zip(u).map(|(a, b)| a * b).sum::<f64>() - v
        };
        let value = nested_min(&g, n, radius, &mut Vec::with_capacity(n));
        if bad.get() || !value.is_finite() {
            return Err(Error::invalid("evaluator returned a non-finite value"));
        }
        lifted.push((m, snap(value, SNAP_DENOMINATOR)?));
    }
    let env = upper_envelope(&lifted)?;
    let lipschitz = env
        .cells()
        .iter()
        .map(|c| c.form.slope.iter().map(|x| to_f64(x).abs()).sum::<f64>())
        .fold(0.0, f64::max);
    let dual_error = lipschitz / f64::from(k) + 1.0 / SNAP_DENOMINATOR as f64;
    Ok(Approximation { function: env.dual(), dual_error })
}
