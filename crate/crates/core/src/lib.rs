//! Convex polyhedra in the unit 3-sphere, their polar duals, the surface of
//! outward unit normals, and its development onto the 2-sphere of pure unit
//! quaternions through the left and right Maurer-Cartan maps.

pub mod complex;
pub mod develop;
pub mod error;
pub mod generators;
pub mod io;
pub mod polyhedron;
pub mod quaternion;
pub mod sphere;

pub use error::{Error, Result};
