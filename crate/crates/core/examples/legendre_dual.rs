//! Dualizing a concave piecewise-affine function and back.

use torheight::concave::{canonical_min_form, legendre_dual, AffineForm};
use torheight::exact::{fmt_q, q, qvec};

fn main() -> torheight::Result<()> {
    // min(1, u1, u2 + 1/2, u1 + u2)
    let f = canonical_min_form(&[
        AffineForm::new(qvec(&[0, 0]), q(1)),
        AffineForm::new(qvec(&[1, 0]), q(0)),
        AffineForm::new(qvec(&[0, 1]), torheight::exact::qr(1, 2)),
        AffineForm::new(qvec(&[1, 1]), q(0)),
    ])?;
    println!("f = {f}");
    let roof = legendre_dual(&f);
    for (m, v) in roof.vertex_values() {
        println!("  dual at ({}) = {}", m.iter().map(fmt_q).collect::<Vec<_>>().join(", "), fmt_q(&v));
    }
    println!("integral of the dual: {}", fmt_q(&roof.integrate()));
    let back = roof.dual();
    println!("dual of dual = {back}; equal: {}", back == f);
    Ok(())
}
