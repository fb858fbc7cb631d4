//! Center paths made of line segments and circular arcs, used for tubes.

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use super::plane::Vec2;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Piece {
    Segment { from: [f64; 2], to: [f64; 2] },
    /// Arc of the circle about `center`, from angle `start`, signed `sweep`.
    Arc { center: [f64; 2], radius: f64, start: f64, sweep: f64 },
}

impl Piece {
    pub fn length(&self) -> f64 {
        match *self {
            Piece::Segment { from, to } => Vec2::from(from).dist(to.into()),
            Piece::Arc { radius, sweep, .. } => radius * sweep.abs(),
        }
    }

    pub fn point_at(&self, s: f64) -> Vec2 {
        match *self {
            Piece::Segment { from, to } => Vec2::from(from).lerp(to.into(), s),
            Piece::Arc { center, radius, start, sweep } => Vec2::from(center) + Vec2::polar(radius, start + s * sweep),
        }
    }

    /// Unit tangent at fraction `s`.
    pub fn tangent_at(&self, s: f64) -> Vec2 {
        match *self {
            Piece::Segment { from, to } => (Vec2::from(to) - from.into()).unit(),
            Piece::Arc { start, sweep, .. } => Vec2::polar(1.0, start + s * sweep).perp() * sweep.signum(),
        }
    }

    /// Signed curvature (positive when turning left).
    pub fn curvature(&self) -> f64 {
        match *self {
            Piece::Segment { .. } => 0.0,
            Piece::Arc { radius, sweep, .. } => sweep.signum() / radius,
        }
    }

    pub fn distance(&self, p: Vec2) -> f64 {
        match *self {
            Piece::Segment { from, to } => super::plane::segment_distance(p, from.into(), to.into()),
            Piece::Arc { center, radius, start, sweep } => {
                let c = Vec2::from(center);
                let v = p - c;
                let d = v.norm();
                if d > 0.0 {
                    let rel = if sweep >= 0.0 {
                        (v.angle() - start).rem_euclid(TAU)
                    } else {
                        (start - v.angle()).rem_euclid(TAU)
                    };
                    if rel <= sweep.abs() {
                        return (d - radius).abs();
                    }
                }
                p.dist(self.point_at(0.0)).min(p.dist(self.point_at(1.0)))
            }
        }
    }
}

/// Distance from `p` to the whole path.
pub fn path_distance(pieces: &[Piece], p: Vec2) -> f64 {
    pieces.iter().map(|q| q.distance(p)).fold(f64::INFINITY, f64::min)
}

pub fn path_length(pieces: &[Piece]) -> f64 {
    pieces.iter().map(Piece::length).sum()
}

/// Turning angles at the joints between consecutive pieces.
pub fn joint_turns(pieces: &[Piece]) -> Vec<f64> {
    pieces
        .windows(2)
        .map(|w| {
            let a = w[0].tangent_at(1.0);
            let b = w[1].tangent_at(0.0);
            a.cross(b).atan2(a.dot(b))
        })
        .collect()
}


/// Curvature of the boundary of the `r`-tube about the path at a boundary
/// point `q`: offset pieces keep the curvature of their circle, and points
/// whose nearest path point is an endpoint lie on a cap of radius `r`.
pub fn tube_boundary_curvature(pieces: &[Piece], r: f64, q: Vec2) -> Option<f64> {
    let piece = pieces.iter().min_by(|a, b| a.distance(q).total_cmp(&b.distance(q)))?;
    let cap = 1.0 / r;
    Some(match *piece {
        Piece::Segment { from, to } => {
            let (a, b) = (Vec2::from(from), Vec2::from(to));
            let u = (q - a).dot(b - a) / (b - a).norm2();
            if u > 0.0 && u < 1.0 {
                0.0
            } else {
                cap
            }
        }
        Piece::Arc { center, radius, .. } => {
            let d = q.dist(center.into());
            if (d - radius - r).abs() <= 1e-9 * (radius + r) {
                1.0 / (radius + r)
            } else if (radius - r - d).abs() <= 1e-9 * radius {
                -1.0 / (radius - r)
            } else {
                cap
            }
        }
    })
}
