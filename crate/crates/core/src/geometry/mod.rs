//! Admissible domains in the Euclidean and hyperbolic planes and their
//! geometric functionals.

pub mod ellipse;
pub mod hyperbolic;
pub mod interior;
pub mod path;
pub mod plane;
pub mod random;

mod domain;
mod spec;
pub(crate) mod support;

use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
pub use domain::{BoundaryPiece, Circles, Domain};
use hyperbolic::M3;
use plane::Vec2;
pub use spec::{DomainSpec, ShapeSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Space {
    #[serde(rename = "euclidean2")]
    Euclidean2,
    #[serde(rename = "hyperbolic2")]
    Hyperbolic2,
}

impl Space {
    /// Length of a metric circle of radius `r`.
    pub fn circumference(self, r: f64) -> f64 {
        match self {
            Space::Euclidean2 => std::f64::consts::TAU * r,
            Space::Hyperbolic2 => std::f64::consts::TAU * r.sinh(),
        }
    }

    /// Area of a metric ball of radius `r`.
    pub fn ball_area(self, r: f64) -> f64 {
        match self {
            Space::Euclidean2 => std::f64::consts::PI * r * r,
            Space::Hyperbolic2 => hyperbolic::disc_area(r),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Space::Euclidean2 => "euclidean2",
            Space::Hyperbolic2 => "hyperbolic2",
        }
    }
}

/// A point of ℝ² or of the hyperboloid.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Point {
    Euclidean(Vec2),
    Hyperbolic(M3),
}

impl Point {
    pub fn e(x: f64, y: f64) -> Self {
        Point::Euclidean(Vec2::new(x, y))
    }

    /// Hyperbolic point with hyperboloid coordinates `(x, y, √(1+x²+y²))`.
    pub fn h(x: f64, y: f64) -> Self {
        Point::Hyperbolic(M3::from_chart(x, y))
    }

    pub fn space(&self) -> Space {
        match self {
            Point::Euclidean(_) => Space::Euclidean2,
            Point::Hyperbolic(_) => Space::Hyperbolic2,
        }
    }

    pub fn dist(&self, o: &Point) -> Result<f64> {
        match (self, o) {
            (Point::Euclidean(a), Point::Euclidean(b)) => Ok(a.dist(*b)),
            (Point::Hyperbolic(a), Point::Hyperbolic(b)) => Ok(a.dist(*b)),
            _ => Err(Error::SpaceMismatch),
        }
    }

    /// Raw coordinates: `[x, y]` or `[x, y, z]`.
    pub fn coords(&self) -> Vec<f64> {
        match self {
            Point::Euclidean(v) => vec![v.x, v.y],
            Point::Hyperbolic(p) => vec![p.x, p.y, p.z],
        }
    }

    /// Parses coordinates; hyperbolic points accept `[x, y]` (lifted to the
    /// sheet) or a full triple on the sheet.
    pub fn from_coords(space: Space, c: &[f64]) -> Result<Self> {
        if c.iter().any(|v| !v.is_finite()) {
            return Err(Error::arg("non-finite coordinate"));
        }
        match (space, c.len()) {
            (Space::Euclidean2, 2) => Ok(Point::e(c[0], c[1])),
            (Space::Hyperbolic2, 2) => Ok(Point::h(c[0], c[1])),
            (Space::Hyperbolic2, 3) => {
                let p = M3::new(c[0], c[1], c[2]);
                if p.z <= 0.0 || p.sheet_residual() > 1e-9 * p.z * p.z {
                    return Err(Error::arg(format!("point {c:?} is not on the hyperboloid")));
                }
                Ok(Point::Hyperbolic(p.on_sheet()))
            }
            _ => Err(Error::arg(format!("{} coordinates do not describe a {} point", c.len(), space.name()))),
        }
    }

    /// Flat chart: the plane itself, or the Klein disc for ℍ².
    pub fn chart(&self) -> Vec2 {
        match self {
            Point::Euclidean(v) => *v,
            Point::Hyperbolic(p) => p.klein(),
        }
    }

    pub fn from_chart(space: Space, v: Vec2) -> Self {
        match space {
            Space::Euclidean2 => Point::Euclidean(v),
            Space::Hyperbolic2 => Point::Hyperbolic(M3::from_klein(v)),
        }
    }

    pub fn euclidean(&self) -> Result<Vec2> {
        match self {
            Point::Euclidean(v) => Ok(*v),
            _ => Err(Error::arg("expected a Euclidean point")),
        }
    }

    pub fn hyperbolic(&self) -> Result<M3> {
        match self {
            Point::Hyperbolic(p) => Ok(*p),
            _ => Err(Error::arg("expected a hyperbolic point")),
        }
    }
}

impl Serialize for Point {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.coords().serialize(s)
    }
}

/// Indicator value with a thin boundary band.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Location {
    Inside,
    Boundary,
    Outside,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn space_round_trips_through_json() {
        let s: Space = serde_json::from_str("\"hyperbolic2\"").unwrap();
        assert_eq!(s, Space::Hyperbolic2);
        assert_eq!(serde_json::to_string(&Space::Euclidean2).unwrap(), "\"euclidean2\"");
    }

    #[test]
    fn hyperbolic_coordinates_are_checked() {
        assert!(Point::from_coords(Space::Hyperbolic2, &[1.0, 0.0, 1.0]).is_err());
        let p = Point::from_coords(Space::Hyperbolic2, &[0.0, 0.0, 1.0]).unwrap();
        assert_eq!(p, Point::h(0.0, 0.0));
        assert!(Point::e(0.0, 0.0).dist(&p).is_err());
    }
}
