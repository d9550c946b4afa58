pub mod cli;
pub mod concave;
pub mod error;
pub mod exact;
pub mod heights;
pub mod json;
pub mod lattice;
pub mod linalg;
pub mod lp;
pub mod monge;
pub mod polyhedra;
pub mod random;
pub mod toric;
pub mod verify;

pub use error::{Error, Result};
