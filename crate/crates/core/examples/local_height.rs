//! Toric local heights, the tropical pushforward and restriction to orbits.

use torheight::concave::{canonical_min_form, AffineForm};
use torheight::exact::{fmt_q, q, qvec};
use torheight::polyhedra::{convex_hull, Cone};
use torheight::toric::{roof_restrict_to_face, support_function_of_polytope, toric_local_height, trop_pushforward_measure};

fn main() -> torheight::Result<()> {
    let square = convex_hull(&[qvec(&[0, 0]), qvec(&[1, 0]), qvec(&[0, 1]), qvec(&[1, 1])])?;
    let support = support_function_of_polytope(&square)?;
    let metric = canonical_min_form(&[
        AffineForm::new(qvec(&[0, 0]), q(1)),
        AffineForm::new(qvec(&[1, 0]), q(0)),
        AffineForm::new(qvec(&[0, 1]), q(0)),
        AffineForm::new(qvec(&[1, 1]), q(-2)),
    ])?;
    println!("canonical metric: {}", fmt_q(&toric_local_height(&support, &support.min_form())?.value));
    let h = toric_local_height(&support, &metric)?;
    println!("local height: {} over a {}-dimensional polytope", fmt_q(&h.value), h.dimension);
    let mu = trop_pushforward_measure(&metric);
    println!("pushforward: {} atoms, total mass {}", mu.atoms().len(), fmt_q(&mu.total_mass()));
    let ray = Cone::from_rays(2, &[qvec(&[1, 0])], &[])?;
    let face_roof = roof_restrict_to_face(&metric, &support, &ray, None)?;
    println!("roof on the orbit of the ray (1,0): integral {}", fmt_q(&face_roof.integrate()));
    Ok(())
}
