//! Seeded random domains for property tests and verification suites.

use rand::Rng;

use super::hyperbolic::M3;
use super::plane::Vec2;
use super::{Domain, Point, Space};
use crate::error::Result;

/// Star-shaped polygon about the origin with `n` vertices whose distances
/// from the origin lie in `[r_min, r_max]`.
pub fn star_polygon<R: Rng>(rng: &mut R, space: Space, n: usize, r_min: f64, r_max: f64) -> Result<Domain> {
    let base = std::f64::consts::TAU / n as f64;
    let pts: Vec<Point> = (0..n)
        .map(|k| {
            let theta = base * (k as f64 + rng.gen_range(-0.35..0.35));
            let r = rng.gen_range(r_min..r_max);
            match space {
                Space::Euclidean2 => Point::Euclidean(Vec2::polar(r, theta)),
                Space::Hyperbolic2 => Point::Hyperbolic(M3::polar(r, theta)),
            }
        })
        .collect();
    Domain::polygon(&pts)
}

/// Uniform point of the chart box that lies in the domain interior.
pub fn interior_point<R: Rng>(rng: &mut R, domain: &Domain) -> Point {
    let (lo, hi) = domain.chart_box();
    loop {
        let c = Vec2::new(rng.gen_range(lo.x..hi.x), rng.gen_range(lo.y..hi.y));
        let p = Point::from_chart(domain.space(), c);
        if matches!(domain.contains(&p), Ok(super::Location::Inside)) {
            return p;
        }
    }
}
