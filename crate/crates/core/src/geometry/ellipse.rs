//! Ellipses: membership, point distance, circle intersections, curvature.

use num_complex::Complex64;

use super::plane::Vec2;
use crate::numeric::{optimize::golden_max, poly};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Ellipse {
    pub center: Vec2,
    /// Semi-axis along the rotated x direction.
    pub a: f64,
    /// Semi-axis along the rotated y direction.
    pub b: f64,
    pub angle: f64,
}

impl Ellipse {
    pub fn to_local(&self, p: Vec2) -> Vec2 {
        (p - self.center).rotate(-self.angle)
    }

    pub fn from_local(&self, q: Vec2) -> Vec2 {
        q.rotate(self.angle) + self.center
    }

    pub fn point_at(&self, theta: f64) -> Vec2 {
        self.from_local(Vec2::new(self.a * theta.cos(), self.b * theta.sin()))
    }

    pub fn level(&self, p: Vec2) -> f64 {
        let q = self.to_local(p);
        (q.x / self.a).powi(2) + (q.y / self.b).powi(2) - 1.0
    }

    pub fn contains(&self, p: Vec2) -> bool {
        self.level(p) <= 0.0
    }

    pub fn area(&self) -> f64 {
        std::f64::consts::PI * self.a * self.b
    }

    /// Curvature at parameter `theta`.
    pub fn curvature_at(&self, theta: f64) -> f64 {
        let (s, c) = theta.sin_cos();
        self.a * self.b / (self.a * self.a * s * s + self.b * self.b * c * c).powf(1.5)
    }

    /// Parameter of the boundary point nearest to `p`.
    pub fn parameter_of(&self, p: Vec2) -> f64 {
        let q = self.to_local(p);
        (q.y / self.b).atan2(q.x / self.a)
    }

    /// Euclidean distance from `p` to the ellipse curve.
    pub fn boundary_distance(&self, p: Vec2) -> f64 {
        let q = self.to_local(p);
        let (e0, e1, y0, y1) = if self.a >= self.b {
            (self.a, self.b, q.x.abs(), q.y.abs())
        } else {
            (self.b, self.a, q.y.abs(), q.x.abs())
        };
        distance_first_quadrant(e0, e1, y0, y1)
    }

    /// Angles `φ` at which the circle `x + r(cos φ, sin φ)` meets the ellipse.
    pub fn circle_crossings(&self, x: Vec2, r: f64, out: &mut Vec<f64>) {
        let q = self.to_local(x);
        let (ia, ib) = (1.0 / (self.a * self.a), 1.0 / (self.b * self.b));
        let c0 = q.x * q.x * ia + q.y * q.y * ib + 0.5 * r * r * (ia + ib) - 1.0;
        let c1 = 2.0 * q.x * r * ia;
        let s1 = 2.0 * q.y * r * ib;
        let c2 = 0.5 * r * r * (ia - ib);
        let f = |psi: f64| c0 + c1 * psi.cos() + s1 * psi.sin() + c2 * (2.0 * psi).cos();
        let df = |psi: f64| -c1 * psi.sin() + s1 * psi.cos() - 2.0 * c2 * (2.0 * psi).sin();
        let scale = c0.abs() + c1.abs() + s1.abs() + c2.abs();
        let mut cands = Vec::new();
        if c2.abs() <= 1e-14 * scale {
            cands.extend(crate::numeric::roots::trig_linear(c1, s1, -c0));
        } else {
            let z = |re: f64, im: f64| Complex64::new(re, im);
            let coeffs = [z(c2, 0.0), z(c1, s1), z(2.0 * c0, 0.0), z(c1, -s1), z(c2, 0.0)];
            for root in poly::roots(&coeffs) {
                if (root.norm() - 1.0).abs() < 1e-5 {
                    cands.push(root.arg());
                }
            }
        }
        for mut psi in cands {
            for _ in 0..4 {
                let d = df(psi);
                if d == 0.0 {
                    break;
                }
                let step = f(psi) / d;
                if !step.is_finite() || step.abs() > 1e-3 {
                    break;
                }
                psi -= step;
            }
            out.push((psi + self.angle).rem_euclid(std::f64::consts::TAU));
        }
    }

    /// Parameters `s` with `p + s d` on the ellipse.
    pub fn line_crossings(&self, p: Vec2, d: Vec2, out: &mut Vec<f64>) {
        let q = self.to_local(p);
        let e = d.rotate(-self.angle);
        let (ia, ib) = (1.0 / (self.a * self.a), 1.0 / (self.b * self.b));
        let qa = e.x * e.x * ia + e.y * e.y * ib;
        let qb = 2.0 * (q.x * e.x * ia + q.y * e.y * ib);
        let qc = q.x * q.x * ia + q.y * q.y * ib - 1.0;
        quadratic_roots(qa, qb, qc, out);
    }

    /// Local extrema of the distance from `x` to points of the ellipse.
    pub fn stationary_distances(&self, x: Vec2) -> Vec<f64> {
        const N: usize = 256;
        let d = |t: f64| self.point_at(t).dist(x);
        let h = std::f64::consts::TAU / N as f64;
        let vals: Vec<f64> = (0..N).map(|k| d(k as f64 * h)).collect();
        let mut out = Vec::new();
        for k in 0..N {
            let (p, c, n) = (vals[(k + N - 1) % N], vals[k], vals[(k + 1) % N]);
            let t0 = (k as f64 - 1.0) * h;
            if c >= p && c >= n {
                out.push(golden_max(d, t0, t0 + 2.0 * h, 1e-12).1);
            } else if c <= p && c <= n {
                out.push(-golden_max(|t| -d(t), t0, t0 + 2.0 * h, 1e-12).1);
            }
        }
        out
    }
}

pub(crate) fn quadratic_roots(a: f64, b: f64, c: f64, out: &mut Vec<f64>) {
    if a == 0.0 {
        if b != 0.0 {
            out.push(-c / b);
        }
        return;
    }
    let disc = b * b - 4.0 * a * c;
    if disc < 0.0 {
        return;
    }
    let q = -0.5 * (b + disc.sqrt().copysign(b));
    if q == 0.0 {
        out.push(0.0);
        return;
    }
    out.push(q / a);
    out.push(c / q);
}

fn robust_length(u: f64, v: f64) -> f64 {
    u.hypot(v)
}

fn get_root(r0: f64, z0: f64, z1: f64, g: f64) -> f64 {
    let n0 = r0 * z0;
    let mut s0 = z1 - 1.0;
    let mut s1 = if g < 0.0 { 0.0 } else { robust_length(n0, z1) - 1.0 };
    let mut s = 0.0;
    for _ in 0..1100 {
        s = 0.5 * (s0 + s1);
        if s == s0 || s == s1 {
            break;
        }
        let ratio0 = n0 / (s + r0);
        let ratio1 = z1 / (s + 1.0);
        let gs = ratio0 * ratio0 + ratio1 * ratio1 - 1.0;
        if gs > 0.0 {
            s0 = s;
        } else if gs < 0.0 {
            s1 = s;
        } else {
            break;
        }
    }
    s
}

/// Distance from `(y0, y1)`, both non-negative, to the ellipse with
/// semi-axes `e0 ≥ e1` (bisection on the Lagrange multiplier).
fn distance_first_quadrant(e0: f64, e1: f64, y0: f64, y1: f64) -> f64 {
    if y1 > 0.0 {
        if y0 > 0.0 {
            let z0 = y0 / e0;
            let z1 = y1 / e1;
            let g = z0 * z0 + z1 * z1 - 1.0;
            if g != 0.0 {
                let r0 = (e0 / e1).powi(2);
                let sbar = get_root(r0, z0, z1, g);
                let x0 = r0 * y0 / (sbar + r0);
                let x1 = y1 / (sbar + 1.0);
                (x0 - y0).hypot(x1 - y1)
            } else {
                0.0
            }
        } else {
            (y1 - e1).abs()
        }
    } else {
        let numer0 = e0 * y0;
        let denom0 = e0 * e0 - e1 * e1;
        if numer0 < denom0 {
            let xde0 = numer0 / denom0;
            let x0 = e0 * xde0;
            let x1 = e1 * (1.0 - xde0 * xde0).sqrt();
            (x0 - y0).hypot(x1)
        } else {
            (y0 - e0).abs()
        }
    }
}
