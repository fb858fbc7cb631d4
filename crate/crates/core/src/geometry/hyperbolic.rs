//! Hyperboloid model of the hyperbolic plane.
//!
//! Points satisfy `x² + y² − z² = −1`, `z > 0`. Geodesics are sections by
//! planes through the origin of ℝ³ and are stored by a unit spacelike normal.

use std::ops::{Add, Mul, Neg, Sub};

use super::plane::Vec2;

/// A vector of Minkowski space ℝ^{2,1}.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct M3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl M3 {
    pub const ORIGIN: M3 = M3 { x: 0.0, y: 0.0, z: 1.0 };

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        M3 { x, y, z }
    }

    /// Lifts chart coordinates `(x, y)` onto the upper sheet.
    pub fn from_chart(x: f64, y: f64) -> Self {
        M3::new(x, y, (1.0 + x * x + y * y).sqrt())
    }

    /// Point at distance `r` from the origin in direction `phi`.
    pub fn polar(r: f64, phi: f64) -> Self {
        let s = r.sinh();
        M3::new(s * phi.cos(), s * phi.sin(), r.cosh())
    }

    pub fn from_klein(k: Vec2) -> Self {
        let z = 1.0 / (1.0 - k.norm2()).sqrt();
        M3::new(k.x * z, k.y * z, z)
    }

    pub fn klein(self) -> Vec2 {
        Vec2::new(self.x / self.z, self.y / self.z)
    }

    pub fn chart(self) -> Vec2 {
        Vec2::new(self.x, self.y)
    }

    /// Minkowski inner product `x x' + y y' − z z'`.
    pub fn mdot(self, o: M3) -> f64 {
        self.x * o.x + self.y * o.y - self.z * o.z
    }

    /// `J(a × b)`: Minkowski-orthogonal to both arguments.
    pub fn mcross(self, o: M3) -> M3 {
        M3::new(
            self.y * o.z - self.z * o.y,
            self.z * o.x - self.x * o.z,
            -(self.x * o.y - self.y * o.x),
        )
    }

    /// Rescales a timelike vector back onto the upper sheet.
    pub fn on_sheet(self) -> M3 {
        let q = -self.mdot(self);
        let s = if self.z < 0.0 { -1.0 } else { 1.0 } / q.sqrt();
        self * s
    }

    /// Rescales a spacelike vector to unit Minkowski length.
    pub fn unit_spacelike(self) -> M3 {
        self * (1.0 / self.mdot(self).sqrt())
    }

    /// Residual of the hyperboloid constraint.
    pub fn sheet_residual(self) -> f64 {
        (self.mdot(self) + 1.0).abs()
    }

    /// Geodesic distance, stable for nearby points.
    pub fn dist(self, o: M3) -> f64 {
        let d = self - o;
        let chord2 = d.mdot(d).max(0.0);
        2.0 * (0.5 * chord2.sqrt()).asinh()
    }
}

impl Add for M3 {
    type Output = M3;
    fn add(self, o: M3) -> M3 {
        M3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for M3 {
    type Output = M3;
    fn sub(self, o: M3) -> M3 {
        M3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Mul<f64> for M3 {
    type Output = M3;
    fn mul(self, s: f64) -> M3 {
        M3::new(self.x * s, self.y * s, self.z * s)
    }
}

impl Neg for M3 {
    type Output = M3;
    fn neg(self) -> M3 {
        M3::new(-self.x, -self.y, -self.z)
    }
}

/// Orthonormal tangent frame at a point, obtained by boosting the standard
/// frame at the origin. Orientation agrees with the chart.
#[derive(Clone, Copy, Debug)]
pub struct Frame {
    pub center: M3,
    pub e1: M3,
    pub e2: M3,
}

impl Frame {
    pub fn at(c: M3) -> Self {
        let k = 1.0 / (1.0 + c.z);
        Frame {
            center: c,
            e1: M3::new(1.0 + c.x * c.x * k, c.x * c.y * k, c.x),
            e2: M3::new(c.x * c.y * k, 1.0 + c.y * c.y * k, c.y),
        }
    }

    /// Point at distance `r` in direction `phi`.
    pub fn point(&self, r: f64, phi: f64) -> M3 {
        let (s, c) = phi.sin_cos();
        self.center * r.cosh() + (self.e1 * c + self.e2 * s) * r.sinh()
    }

    /// Unit tangent in direction `phi`.
    pub fn direction(&self, phi: f64) -> M3 {
        let (s, c) = phi.sin_cos();
        self.e1 * c + self.e2 * s
    }

    /// Tangent angle towards `p` (undefined at the center, returns 0).
    pub fn angle_to(&self, p: M3) -> f64 {
        let v = p + self.center * p.mdot(self.center);
        v.mdot(self.e2).atan2(v.mdot(self.e1))
    }

    /// Coordinates of a tangent vector in the frame.
    pub fn coords(&self, v: M3) -> Vec2 {
        Vec2::new(v.mdot(self.e1), v.mdot(self.e2))
    }
}

/// Orientation-preserving isometry stored as a 3×3 Lorentz matrix.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Isometry {
    pub m: [[f64; 3]; 3],
}

impl Isometry {
    pub fn identity() -> Self {
        Isometry {
            m: [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]],
        }
    }

    pub fn rotation(theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        Isometry {
            m: [[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]],
        }
    }

    /// Boost carrying the origin to `c` without rotation.
    pub fn translation_to(c: M3) -> Self {
        let f = Frame::at(c);
        Isometry {
            m: [[f.e1.x, f.e2.x, c.x], [f.e1.y, f.e2.y, c.y], [f.e1.z, f.e2.z, c.z]],
        }
    }

    pub fn compose(&self, o: &Isometry) -> Isometry {
        let mut m = [[0.0; 3]; 3];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = (0..3).map(|k| self.m[i][k] * o.m[k][j]).sum();
            }
        }
        Isometry { m }
    }

    pub fn apply(&self, p: M3) -> M3 {
        let v = [p.x, p.y, p.z];
        let r: Vec<f64> = self.m.iter().map(|row| row.iter().zip(&v).map(|(a, b)| a * b).sum()).collect();
        M3::new(r[0], r[1], r[2])
    }
}

/// Unit normal of the geodesic through `p` and `q`; points to the left of
/// the direction `p → q` have positive inner product with it.
pub fn geodesic_normal(p: M3, q: M3) -> M3 {
    p.mcross(q).unit_spacelike()
}

/// Distance from `x` to the geodesic segment `p`–`q`.
pub fn segment_distance(x: M3, p: M3, q: M3) -> f64 {
    let n = geodesic_normal(p, q);
    let mut mp = p.mcross(n);
    if mp.mdot(q) < 0.0 {
        mp = -mp;
    }
    let mut mq = q.mcross(n);
    if mq.mdot(p) < 0.0 {
        mq = -mq;
    }
    if mp.mdot(x) >= 0.0 && mq.mdot(x) >= 0.0 {
        x.mdot(n).abs().asinh()
    } else {
        x.dist(p).min(x.dist(q))
    }
}

/// Point at arclength fraction `s ∈ [0, 1]` along the geodesic segment.
pub fn geodesic_lerp(p: M3, q: M3, s: f64) -> M3 {
    let l = p.dist(q);
    if l < 1e-300 {
        return p;
    }
    let sl = l.sinh();
    (p * (((1.0 - s) * l).sinh() / sl) + q * ((s * l).sinh() / sl)).on_sheet()
}

/// Interior angles of a counter-clockwise geodesic polygon.
pub fn interior_angles(v: &[M3]) -> Vec<f64> {
    let n = v.len();
    (0..n)
        .map(|i| {
            let f = Frame::at(v[i]);
            let next = f.angle_to(v[(i + 1) % n]);
            let prev = f.angle_to(v[(i + n - 1) % n]);
            (prev - next).rem_euclid(std::f64::consts::TAU)
        })
        .collect()
}

/// Area of a counter-clockwise geodesic polygon by angle defect.
pub fn polygon_area(v: &[M3]) -> f64 {
    let sum: f64 = interior_angles(v).iter().sum();
    (v.len() as f64 - 2.0) * std::f64::consts::PI - sum
}

/// Area of a hyperbolic disc.
pub fn disc_area(r: f64) -> f64 {
    // 2π(cosh r − 1) written without cancellation
    4.0 * std::f64::consts::PI * (0.5 * r).sinh().powi(2)
}
