//! Multiplicities and degrees of vertical components from sup-differentials.

use torheight::concave::{canonical_min_form, AffineForm};
use torheight::exact::{fmt_q, q, qr, qvec, ValueGroup};
use torheight::toric::vertical_cycle_degree;

fn main() -> torheight::Result<()> {
    let gamma = ValueGroup::Discrete(q(1));
    // min(0, 2u - 1) has its break at u = 1/2
    let phi = canonical_min_form(&[AffineForm::new(qvec(&[0]), q(0)), AffineForm::new(qvec(&[2]), q(-1))])?;
    for cell in phi.induced_complex().cells() {
        let v = cell.interior_point();
        let r = vertical_cycle_degree(&phi, cell, &v, &gamma)?;
        println!(
            "cell of dim {} at {}: mult {}, degree {}",
            cell.dim(),
            fmt_q(&v[0]),
            r.multiplicity,
            r.vertical_degree.as_ref().map_or("-".into(), fmt_q)
        );
    }
    let r = vertical_cycle_degree(&phi, &torheight::polyhedra::Polyhedron::point(vec![qr(1, 2)]), &[qr(1, 2)], &gamma)?;
    println!("vertex 1/2 over Z: mult {} degree {}", r.multiplicity, fmt_q(r.vertical_degree.as_ref().unwrap()));
    Ok(())
}
