//! Certified circle integrals: tangent splitting versus midpoint bisection.

use torheight::exact::{fmt_q, lvec, q, qr};
use torheight::heights::{circle_place_integral, circle_simpson, halved_recheck, CircleOptions, PeriodicPL, Place, RoofInstance};

fn main() -> torheight::Result<()> {
    let zero = PeriodicPL::constant(q(1), q(0))?;
    // the middle lift crosses the chord at u = 1/6 and u = 5/6
    let dip = PeriodicPL::new(q(1), vec![(q(0), q(-1)), (qr(1, 2), q(2))])?;
    let place = Place::circle("v", q(1), q(1), vec![zero.clone(), dip, zero]);
    let instance = RoofInstance::new(1, vec![lvec(&[0]), lvec(&[1]), lvec(&[2])], vec![place.clone()])?;
    for (name, sandwich) in [("tangent split", true), ("bisection", false)] {
        let opts = CircleOptions { sandwich, ..CircleOptions::default() };
        let r = circle_place_integral(&instance, &place, &opts)?;
        match r.exact_value() {
            Some(v) => println!("{name}: exact {} (halved recheck {})", fmt_q(&v), fmt_q(&halved_recheck(&instance, &place, &r)?)),
            None => println!("{name}: approximate {:.12} with {} fallback intervals", r.value(), r.fallback.len()),
        }
    }
    println!("simpson oracle: {:.12}", circle_simpson(&instance, &place, 1e-12)?);
    Ok(())
}
