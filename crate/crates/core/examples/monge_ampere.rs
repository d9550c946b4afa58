//! Monge-Ampere measure of a concave function and the facet identity.

use torheight::concave::{canonical_min_form, AffineForm};
use torheight::exact::{fmt_q, q, qvec};
use torheight::monge::{check_a21, ma_measure};
use torheight::polyhedra::{volume, VolumeMode};

fn main() -> torheight::Result<()> {
    let f = canonical_min_form(&[
        AffineForm::new(qvec(&[0, 0]), q(0)),
        AffineForm::new(qvec(&[2, 0]), q(-1)),
        AffineForm::new(qvec(&[0, 2]), q(-1)),
        AffineForm::new(qvec(&[1, 1]), q(2)),
    ])?;
    let mu = ma_measure(&f);
    for atom in mu.atoms() {
        println!("atom at ({}) mass {}", atom.at.iter().map(fmt_q).collect::<Vec<_>>().join(", "), fmt_q(&atom.mass));
    }
    println!("total mass {} = vol {}", fmt_q(&mu.total_mass()), fmt_q(&volume(&f.stability_set(), VolumeMode::Ambient)));
    let sides = check_a21(&f)?;
    println!("-∫ f dμ = {}, boundary formula = {}, equal: {}", fmt_q(&sides.lhs), fmt_q(&sides.rhs), sides.holds());
    Ok(())
}
