//! Rational polyhedra, polytopes, cones, fans and polyhedral complexes.

pub mod dd;
mod fan;
mod polyhedron;
mod volume;

pub use fan::{
    cone_over, cone_over_complex, face_of_cone, normal_cone, normal_cones, normal_fan, recession, recession_fan,
    slice_at_height, Fan, NormalFan, PolyComplex,
};
pub(crate) use fan::pairing_constant;
pub use polyhedron::{convex_hull, faces, Cone, Face, Halfspace, Polyhedron, Polytope};
pub use volume::{integrate_affine, integrate_with_chart, triangulation, volume, AffineLatticeChart, VolumeMode};
