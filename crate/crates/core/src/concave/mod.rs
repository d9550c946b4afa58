//! Concave piecewise affine functions and Legendre–Fenchel duality.

mod approx;
mod envelope;
mod pa;

pub use approx::{approximate_concave, refined_lattice_points, Approximation, SNAP_DENOMINATOR};
pub use envelope::{legendre_dual, upper_envelope, ConcaveOnPolytope, EnvelopeCell, LiftPoint};
pub use pa::{canonical_min_form, AffineForm, ConcavePA};
