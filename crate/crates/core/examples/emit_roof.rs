//! Tabulating a roof function on a refined lattice grid as CSV.

use torheight::concave::refined_lattice_points;
use torheight::exact::{fmt_decimal, lvec, q};
use torheight::heights::{roof_from_lift, Place, RoofInstance};

fn main() -> torheight::Result<()> {
    let place = Place::point("w", q(1), vec![q(0), q(1), q(0), q(-1)]);
    let exponents = vec![lvec(&[0, 0]), lvec(&[1, 0]), lvec(&[0, 1]), lvec(&[1, 1])];
    let instance = RoofInstance::new(2, exponents, vec![place.clone()])?;
    let (roof, integral) = roof_from_lift(&instance, &place)?;
    println!("m1,m2,theta");
    for m in refined_lattice_points(&instance.polytope(), 4) {
        let theta = roof.evaluate(&m).expect("grid lies in the polytope");
        println!("{},{},{}", fmt_decimal(&m[0], 12), fmt_decimal(&m[1], 12), fmt_decimal(&theta, 12));
    }
    eprintln!("integral: {integral}");
    Ok(())
}
