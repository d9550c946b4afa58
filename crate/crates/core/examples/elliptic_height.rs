//! Global height of a small instance with a finite place and a circle place.

use torheight::exact::{fmt_q, lvec, q, qr};
use torheight::heights::{global_height, CircleOptions, PeriodicPL, Place, RoofInstance};

fn main() -> torheight::Result<()> {
    let tent = PeriodicPL::new(q(1), vec![(q(0), q(0)), (qr(1, 2), qr(1, 2))])?;
    let places = vec![
        Place::finite("p", q(1), q(1), &[0, -1]),
        Place::circle("v", q(1), q(1), vec![PeriodicPL::constant(q(1), q(0))?, tent]),
    ];
    let instance = RoofInstance::new(1, vec![lvec(&[0]), lvec(&[1])], places)?;
    let report = global_height(&instance, &CircleOptions::default())?;
    for p in &report.per_place {
        let value = p.integral.exact().map_or_else(|| format!("{:.12}", p.integral.to_f64()), fmt_q);
        println!("place {}: weight {} integral {value}", p.id, fmt_q(&p.weight));
        if let Some(c) = &p.circle {
            println!("  {} certified pieces, {} fallback intervals", c.pieces.len(), c.fallback.len());
        }
    }
    println!("height = {} x sum = {}", report.factor, report.exact_total.as_ref().map_or("approx".into(), fmt_q));
    Ok(())
}
