//! Heat flow of characteristic functions on the Euclidean and hyperbolic
//! planes, and executable geometric criteria for comparing temperatures.

pub mod compare;
pub mod error;
pub mod geometry;
pub mod heat;
pub mod hotspot;
pub mod kernel;
pub mod numeric;
pub mod symmetrize;
pub mod tube;
pub mod verify;

pub use error::{Error, Result};
pub use geometry::{Domain, DomainSpec, Location, Point, ShapeSpec, Space};
