//! Approximating a smooth concave function by a piecewise-affine one.

use torheight::concave::{approximate_concave, legendre_dual};
use torheight::exact::{qr, qvec, to_f64};
use torheight::polyhedra::convex_hull;

fn main() -> torheight::Result<()> {
    let delta = convex_hull(&[qvec(&[0]), qvec(&[1])])?;
    // concave with dual m(1 - m) on [0, 1]
    let psi = |u: &[f64]| {
        let x = u[0].clamp(-1.0, 1.0);
        -(1.0 - x).powi(2) / 4.0 + (u[0] - x).min(0.0)
    };
    for k in [2, 4, 8, 16] {
        let approx = approximate_concave(&psi, &delta, 1.0, k)?;
        let dual = legendre_dual(&approx.function);
        let worst = (0..=100)
            .map(|j| {
                let m = qr(j, 100);
                let exact = to_f64(&m) * (1.0 - to_f64(&m));
                (to_f64(&dual.evaluate(&[m]).unwrap()) - exact).abs()
            })
            .fold(0.0, f64::max);
        println!("k = {k:2}: {} pieces, bound {:.4}, observed {:.4}", approx.function.pieces().len(), approx.dual_error, worst);
    }
    Ok(())
}
