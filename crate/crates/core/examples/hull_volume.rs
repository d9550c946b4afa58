//! Convex hull, faces, lattice volumes and the normal fan of a lattice polygon.

use torheight::exact::{fmt_q, qvec};
use torheight::polyhedra::{convex_hull, faces, normal_fan, volume, VolumeMode};

fn main() -> torheight::Result<()> {
    let points = [qvec(&[0, 0]), qvec(&[1, 0]), qvec(&[2, 2]), qvec(&[0, 1]), qvec(&[1, 1])];
    let p = convex_hull(&points)?;
    println!("vertices: {:?}", p.vertices().iter().map(|v| v.iter().map(fmt_q).collect::<Vec<_>>()).collect::<Vec<_>>());
    println!("area: {}", fmt_q(&volume(&p, VolumeMode::Ambient)));
    for f in faces(&p, 1)? {
        let edge = f.face;
        println!(
            "edge with inner normal {:?}: lattice length {}",
            f.inner_normal.unwrap_or_default().iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            fmt_q(&volume(&edge, VolumeMode::Relative))
        );
    }
    let nf = normal_fan(&p)?;
    println!("normal fan: {} maximal cones, complete = {}", nf.fan.maximal_cones().count(), nf.fan.is_complete());
    Ok(())
}
