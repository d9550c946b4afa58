//! Places, roof functions and global heights.

mod circle;
mod global;
mod place;

pub use circle::{
    circle_place_integral, circle_simpson, halved_recheck, roof_integral_at, CertifiedPiece, CircleIntegral,
    CircleOptions,
};
pub use global::{
    global_height, place_integral, product_formula_check, roof_from_lift, sampled_place_integral, HeightReport,
    PlaceIntegral, PlaceValue, ProductFormula, SAMPLE_SNAP,
};
pub use place::{PeriodicPL, Place, PlaceKind, RoofInstance, SampleNode};
