//! Euclidean plane vectors and polygon helpers.

use std::ops::{Add, Deref, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Vec2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Vec2 { x, y }
    }

    pub fn polar(r: f64, phi: f64) -> Self {
        Vec2::new(r * phi.cos(), r * phi.sin())
    }

    pub fn dot(self, o: Vec2) -> f64 {
        self.x * o.x + self.y * o.y
    }

    pub fn cross(self, o: Vec2) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn norm2(self) -> f64 {
        self.dot(self)
    }

    pub fn dist(self, o: Vec2) -> f64 {
        (self - o).norm()
    }

    pub fn unit(self) -> Vec2 {
        self * (1.0 / self.norm())
    }

    /// Counter-clockwise quarter turn.
    pub fn perp(self) -> Vec2 {
        Vec2::new(-self.y, self.x)
    }

    pub fn rotate(self, angle: f64) -> Vec2 {
        let (s, c) = angle.sin_cos();
        Vec2::new(c * self.x - s * self.y, s * self.x + c * self.y)
    }

    pub fn angle(self) -> f64 {
        self.y.atan2(self.x)
    }

    pub fn lerp(self, o: Vec2, t: f64) -> Vec2 {
        self + (o - self) * t
    }

    pub fn to_array(self) -> [f64; 2] {
        [self.x, self.y]
    }
}

impl From<[f64; 2]> for Vec2 {
    fn from(a: [f64; 2]) -> Self {
        Vec2::new(a[0], a[1])
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    fn add(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Vec2 {
    type Output = Vec2;
    fn mul(self, s: f64) -> Vec2 {
        Vec2::new(self.x * s, self.y * s)
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        Vec2::new(-self.x, -self.y)
    }
}

/// Signed shoelace area (positive for counter-clockwise order).
pub fn signed_area(v: &[Vec2]) -> f64 {
    let n = v.len();
    (0..n).map(|i| v[i].cross(v[(i + 1) % n])).sum::<f64>() * 0.5
}

/// Distance from `p` to the segment `a`–`b`.
pub fn segment_distance(p: Vec2, a: Vec2, b: Vec2) -> f64 {
    let d = b - a;
    let len2 = d.norm2();
    if len2 == 0.0 {
        return p.dist(a);
    }
    let s = ((p - a).dot(d) / len2).clamp(0.0, 1.0);
    p.dist(a + d * s)
}

/// Even–odd point-in-polygon test. Points exactly on an edge may go either way.
pub fn point_in_polygon(p: Vec2, v: &[Vec2]) -> bool {
    let n = v.len();
    let mut inside = false;
    let mut j = n - 1;
    for i in 0..n {
        let (a, b) = (v[i], v[j]);
        if (a.y > p.y) != (b.y > p.y) {
            let x = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
            if p.x < x {
                inside = !inside;
            }
        }
        j = i;
    }
    inside
}

/// Polygon whose edges are bucketed into horizontal slabs, so that the
/// crossing test of [`point_in_polygon`] only visits edges near the query.
#[derive(Clone, Debug)]
pub struct IndexedPolygon {
    pts: Vec<Vec2>,
    y0: f64,
    inv_dy: f64,
    slabs: Vec<Vec<u32>>,
}

impl IndexedPolygon {
    pub fn new(pts: Vec<Vec2>) -> Self {
        let n = pts.len();
        let (lo, hi) = pts.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), p| (l.min(p.y), h.max(p.y)));
        let count = if n < 32 || !(hi > lo) { 1 } else { (n / 2).min(4096) };
        let inv_dy = if count > 1 { count as f64 / (hi - lo) } else { 0.0 };
        let mut slabs = vec![Vec::new(); count];
        let slab = |y: f64| (((y - lo) * inv_dy) as usize).min(count - 1);
        for i in 0..n {
            let (a, b) = (pts[i], pts[(i + n - 1) % n]);
            for s in &mut slabs[slab(a.y.min(b.y))..=slab(a.y.max(b.y))] {
                s.push(i as u32);
            }
        }
        IndexedPolygon { pts, y0: lo, inv_dy, slabs }
    }

    /// Same answer as [`point_in_polygon`] on the vertex list.
    pub fn contains(&self, p: Vec2) -> bool {
        let n = self.pts.len();
        let rel = (p.y - self.y0) * self.inv_dy;
        if !(rel >= 0.0) && self.slabs.len() > 1 {
            return false;
        }
        let k = (rel as usize).min(self.slabs.len() - 1);
        let mut inside = false;
        for &i in &self.slabs[k] {
            let i = i as usize;
            let (a, b) = (self.pts[i], self.pts[(i + n - 1) % n]);
            if (a.y > p.y) != (b.y > p.y) {
                let x = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
                if p.x < x {
                    inside = !inside;
                }
            }
        }
        inside
    }
}

impl Deref for IndexedPolygon {
    type Target = Vec<Vec2>;

    fn deref(&self) -> &Vec<Vec2> {
        &self.pts
    }
}

fn orient(a: Vec2, b: Vec2, c: Vec2) -> f64 {
    (b - a).cross(c - a)
}

/// Whether closed segments `p1p2` and `q1q2` intersect.
pub fn segments_intersect(p1: Vec2, p2: Vec2, q1: Vec2, q2: Vec2) -> bool {
    let d1 = orient(q1, q2, p1);
    let d2 = orient(q1, q2, p2);
    let d3 = orient(p1, p2, q1);
    let d4 = orient(p1, p2, q2);
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0)) && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0)) {
        return true;
    }
    let on = |a: Vec2, b: Vec2, p: Vec2, d: f64| {
        d == 0.0 && p.x >= a.x.min(b.x) && p.x <= a.x.max(b.x) && p.y >= a.y.min(b.y) && p.y <= a.y.max(b.y)
    };
    on(q1, q2, p1, d1) || on(q1, q2, p2, d2) || on(p1, p2, q1, d3) || on(p1, p2, q2, d4)
}

/// Whether the closed polyline `v` (implicitly closed) has no self-intersections
/// between non-adjacent edges.
pub fn is_simple(v: &[Vec2]) -> bool {
    let n = v.len();
    if n < 3 {
        return false;
    }
    if (0..n).any(|i| v[i] == v[(i + 1) % n]) {
        return false;
    }
    // sweep over edges ordered by their left end
    let span = |i: usize| {
        let (a, b) = (v[i], v[(i + 1) % n]);
        (a.x.min(b.x), a.x.max(b.x))
    };
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| span(i).0.total_cmp(&span(j).0));
    for (k, &i) in order.iter().enumerate() {
        let right = span(i).1;
        for &j in &order[k + 1..] {
            if span(j).0 > right {
                break;
            }
            let adjacent = (i + 1) % n == j || (j + 1) % n == i;
            if !adjacent && segments_intersect(v[i], v[(i + 1) % n], v[j], v[(j + 1) % n]) {
                return false;
            }
        }
    }
    true
}

/// Ear-clipping triangulation of a simple counter-clockwise polygon.
pub fn triangulate(v: &[Vec2]) -> Vec<[Vec2; 3]> {
    let mut idx: Vec<usize> = (0..v.len()).collect();
    let mut tris = Vec::with_capacity(v.len().saturating_sub(2));
    let mut guard = 0;
    while idx.len() > 3 && guard < 10 * v.len() * v.len() {
        guard += 1;
        let m = idx.len();
        let mut clipped = false;
        for k in 0..m {
            let (ia, ib, ic) = (idx[(k + m - 1) % m], idx[k], idx[(k + 1) % m]);
            let (a, b, c) = (v[ia], v[ib], v[ic]);
            if orient(a, b, c) <= 0.0 {
                continue;
            }
            let blocked = idx.iter().any(|&j| {
                if j == ia || j == ib || j == ic {
                    return false;
                }
                let p = v[j];
                orient(a, b, p) >= 0.0 && orient(b, c, p) >= 0.0 && orient(c, a, p) >= 0.0
            });
            if !blocked {
                tris.push([a, b, c]);
                idx.remove(k);
                clipped = true;
                break;
            }
        }
        if !clipped {
            break;
        }
    }
    if idx.len() == 3 {
        tris.push([v[idx[0]], v[idx[1]], v[idx[2]]]);
    }
    tris
}

/// Convex hull (counter-clockwise, no collinear points) by monotone chain.
pub fn convex_hull(points: &[Vec2]) -> Vec<Vec2> {
    let mut p = points.to_vec();
    p.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
    p.dedup();
    if p.len() < 3 {
        return p;
    }
    let mut hull: Vec<Vec2> = Vec::with_capacity(2 * p.len());
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &Vec2>> = if pass == 0 { Box::new(p.iter()) } else { Box::new(p.iter().rev()) };
        for &q in iter {
            while hull.len() >= start + 2 && orient(hull[hull.len() - 2], hull[hull.len() - 1], q) <= 0.0 {
                hull.pop();
            }
            hull.push(q);
        }
        hull.pop();
    }
    hull
}
