//! Support functions of lattice polytopes, toric divisors and degrees.

use torheight::exact::{q, qvec, scale};
use torheight::polyhedra::convex_hull;
use torheight::toric::{degree, support_function_of_polytope, weil_divisor_coefficients};

fn main() -> torheight::Result<()> {
    let simplex = [qvec(&[0, 0]), qvec(&[1, 0]), qvec(&[0, 1])];
    for d in 1..=4 {
        let delta = convex_hull(&simplex.iter().map(|v| scale(v, &q(d))).collect::<Vec<_>>())?;
        let psi = support_function_of_polytope(&delta)?;
        let report = weil_divisor_coefficients(&psi);
        let coeffs: Vec<String> = report.ray_coefficients.iter().map(|(v, c)| format!("{v:?}:{c}")).collect();
        println!("plane, twist {d}: degree {} divisor {} ample {}", degree(&psi)?, coeffs.join(" "), report.ample);
    }
    let rect = convex_hull(&[qvec(&[0, 0]), qvec(&[2, 0]), qvec(&[0, 3]), qvec(&[2, 3])])?;
    println!("P1 x P1, bidegree (2,3): degree {}", degree(&support_function_of_polytope(&rect)?)?);
    Ok(())
}
