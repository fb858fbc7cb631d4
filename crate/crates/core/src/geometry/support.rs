//! Curves supporting domain boundaries.
//!
//! Every boundary point of a domain lies on one of its support curves, so
//! intersecting a circle (or a fiber) with all supports yields a superset of
//! its boundary crossings. Spurious crossings only split arcs further.

use super::ellipse::{quadratic_roots, Ellipse};
use super::hyperbolic::{segment_distance as hyp_segment_distance, Frame, M3};
use super::plane::{segment_distance, Vec2};
use crate::numeric::roots::trig_linear;

#[derive(Clone, Copy, Debug)]
pub(crate) enum Support {
    /// Line through `p` with unit normal `n`; only the part between
    /// `ends` carries boundary when they are given.
    Line { p: Vec2, n: Vec2, ends: Option<(Vec2, Vec2)> },
    Circle { c: Vec2, r: f64 },
    Ellipse(Ellipse),
    /// Geodesic with unit spacelike normal `n`, optionally cut to a segment.
    Geodesic { n: M3, ends: Option<(M3, M3)> },
    /// Hyperbolic circle.
    HCircle { c: M3, r: f64 },
}

/// A metric circle used as a probe.
#[derive(Clone, Copy, Debug)]
pub(crate) enum Probe {
    Euclidean { x: Vec2, r: f64 },
    Hyperbolic { frame: Frame, r: f64 },
}

/// A g-line used as a probe, parametrised by arclength along its base geodesic.
#[derive(Clone, Copy, Debug)]
pub(crate) enum FiberLine {
    Euclidean { base: Vec2, dir: Vec2 },
    /// Points `cosh u (cosh s o + sinh s T) + sinh u N`.
    Hyperbolic { o: M3, t: M3, n: M3, u: f64 },
}

impl Support {
    /// Radii `[lo, hi]` about the probe center outside which circles miss
    /// the part of this curve that carries boundary.
    pub fn radial_range(&self, center: &Probe) -> (f64, f64) {
        match (*self, *center) {
            (Support::Line { p, n, ends: None }, Probe::Euclidean { x, .. }) => (n.dot(x - p).abs(), f64::INFINITY),
            (Support::Line { ends: Some((a, b)), .. }, Probe::Euclidean { x, .. }) => {
                (segment_distance(x, a, b), x.dist(a).max(x.dist(b)))
            }
            (Support::Circle { c, r }, Probe::Euclidean { x, .. }) => {
                let d = x.dist(c);
                ((d - r).abs(), d + r)
            }
            (Support::Geodesic { n, ends }, Probe::Hyperbolic { frame, .. }) => {
                let x = frame.center;
                match ends {
                    None => (n.mdot(x).abs().asinh(), f64::INFINITY),
                    Some((a, b)) => (hyp_segment_distance(x, a, b), x.dist(a).max(x.dist(b))),
                }
            }
            (Support::HCircle { c, r }, Probe::Hyperbolic { frame, .. }) => {
                let d = frame.center.dist(c);
                ((d - r).abs(), d + r)
            }
            _ => (0.0, f64::INFINITY),
        }
    }

    pub fn circle_crossings(&self, probe: &Probe, out: &mut Vec<f64>) {
        match (*self, *probe) {
            (Support::Line { p, n, ends }, Probe::Euclidean { x, r }) => {
                let roots = trig_linear(r * n.x, r * n.y, n.dot(p - x));
                match ends {
                    None => out.extend(roots),
                    Some((a, b)) => {
                        let reach = x.dist(a).max(x.dist(b));
                        if r > reach * (1.0 + SLACK) || r < segment_distance(x, a, b) * (1.0 - SLACK) {
                            return;
                        }
                        let ab = b - a;
                        let within = |phi: &f64| on_segment((x + Vec2::polar(r, *phi) - a).dot(ab) / ab.norm2());
                        out.extend(roots.into_iter().filter(within));
                    }
                }
            }
            (Support::Circle { c, r: rho }, Probe::Euclidean { x, r }) => {
                let d = x - c;
                if d.norm2() > 0.0 {
                    out.extend(trig_linear(2.0 * r * d.x, 2.0 * r * d.y, rho * rho - r * r - d.norm2()));
                }
            }
            (Support::Ellipse(e), Probe::Euclidean { x, r }) => e.circle_crossings(x, r, out),
            (Support::Geodesic { n, ends: None }, Probe::Hyperbolic { frame, r }) => {
                section_crossings(n, 0.0, &frame, r, out)
            }
            (Support::Geodesic { n, ends: Some((a, b)) }, Probe::Hyperbolic { frame, r }) => {
                let x = frame.center;
                let reach = (-x.mdot(a)).max(-x.mdot(b));
                if r.cosh() > reach * (1.0 + SLACK) || r.sinh() < n.mdot(x).abs() * (1.0 - SLACK) {
                    return;
                }
                let start = out.len();
                section_crossings(n, 0.0, &frame, r, out);
                let (ka, kb) = (a.klein(), b.klein());
                let mut k = start;
                for i in start..out.len() {
                    if on_segment(klein_param(frame.point(r, out[i]), ka, kb)) {
                        out[k] = out[i];
                        k += 1;
                    }
                }
                out.truncate(k);
            }
            (Support::HCircle { c, r: rho }, Probe::Hyperbolic { frame, r }) => {
                if c.dist(frame.center) > 0.0 {
                    section_crossings(c, -rho.cosh(), &frame, r, out)
                }
            }
            _ => unreachable!("support and probe live in different spaces"),
        }
    }

    /// Distances from the probe center at which the circle may change
    /// topology relative to this curve (tangencies).
    pub fn euclidean_critical_radii(&self, x: Vec2, out: &mut Vec<f64>) {
        match *self {
            Support::Line { p, n, ends: None } => out.push(n.dot(x - p).abs()),
            Support::Line { p, n, ends: Some((a, b)) } => {
                let ab = b - a;
                if (0.0..=1.0).contains(&((x - a).dot(ab) / ab.norm2())) {
                    out.push(n.dot(x - p).abs());
                }
            }
            Support::Circle { c, r } => {
                let d = x.dist(c);
                out.push((d - r).abs());
                out.push(d + r);
            }
            Support::Ellipse(e) => out.extend(e.stationary_distances(x)),
            _ => {}
        }
    }

    pub fn hyperbolic_critical_radii(&self, x: M3, out: &mut Vec<f64>) {
        match *self {
            Support::Geodesic { n, ends: None } => out.push(n.mdot(x).abs().asinh()),
            Support::Geodesic { n, ends: Some((a, b)) } => {
                let foot = x - n * n.mdot(x);
                if (0.0..=1.0).contains(&klein_param(foot, a.klein(), b.klein())) {
                    out.push(n.mdot(x).abs().asinh());
                }
            }
            Support::HCircle { c, r } => {
                let d = x.dist(c);
                out.push((d - r).abs());
                out.push(d + r);
            }
            _ => {}
        }
    }

    pub fn fiber_crossings(&self, fiber: &FiberLine, out: &mut Vec<f64>) {
        match (*self, *fiber) {
            (Support::Line { p, n, .. }, FiberLine::Euclidean { base, dir }) => {
                let den = n.dot(dir);
                if den != 0.0 {
                    out.push(n.dot(p - base) / den);
                }
            }
            (Support::Circle { c, r }, FiberLine::Euclidean { base, dir }) => {
                let q = base - c;
                quadratic_roots(dir.norm2(), 2.0 * q.dot(dir), q.norm2() - r * r, out);
            }
            (Support::Ellipse(e), FiberLine::Euclidean { base, dir }) => e.line_crossings(base, dir, out),
            (Support::Geodesic { n, .. }, f @ FiberLine::Hyperbolic { .. }) => hyper_fiber_crossings(n, 0.0, &f, out),
            (Support::HCircle { c, r }, f @ FiberLine::Hyperbolic { .. }) => hyper_fiber_crossings(c, -r.cosh(), &f, out),
            _ => unreachable!("support and fiber live in different spaces"),
        }
    }
}

/// Relative slack of the reach tests and the segment parameter window.
pub(crate) const SLACK: f64 = 1e-9;

fn on_segment(s: f64) -> bool {
    (-SLACK..=1.0 + SLACK).contains(&s)
}

/// Parameter of the projection of `p` onto the chord `ka`–`kb` in the Klein chart.
fn klein_param(p: M3, ka: Vec2, kb: Vec2) -> f64 {
    let d = kb - ka;
    (p.klein() - ka).dot(d) / d.norm2()
}

/// Crossings of the circle of radius `r` about the frame center with the
/// section `⟨n, q⟩ = c`.
fn section_crossings(n: M3, c: f64, frame: &Frame, r: f64, out: &mut Vec<f64>) {
    let (sh, ch) = (r.sinh(), r.cosh());
    out.extend(trig_linear(
        sh * n.mdot(frame.e1),
        sh * n.mdot(frame.e2),
        c - ch * n.mdot(frame.center),
    ));
}

fn hyper_fiber_crossings(nrm: M3, c: f64, fiber: &FiberLine, out: &mut Vec<f64>) {
    let FiberLine::Hyperbolic { o, t, n, u } = *fiber else {
        return;
    };
    let a = u.cosh() * nrm.mdot(o);
    let b = u.cosh() * nrm.mdot(t);
    let rhs = c - u.sinh() * nrm.mdot(n);
    // a cosh s + b sinh s = rhs, with X = e^s:
    // (a + b) X² − 2 rhs X + (a − b) = 0
    let mut xs = Vec::with_capacity(2);
    quadratic_roots(a + b, -2.0 * rhs, a - b, &mut xs);
    out.extend(xs.into_iter().filter(|x| *x > 0.0).map(f64::ln));
}

impl FiberLine {
    pub fn point(&self, s: f64) -> super::Point {
        match *self {
            FiberLine::Euclidean { base, dir } => super::Point::Euclidean(base + dir * s),
            FiberLine::Hyperbolic { o, t, n, u } => {
                super::Point::Hyperbolic(((o * s.cosh() + t * s.sinh()) * u.cosh() + n * u.sinh()).on_sheet())
            }
        }
    }
}

impl Probe {
    pub fn point(&self, phi: f64) -> super::Point {
        match *self {
            Probe::Euclidean { x, r } => super::Point::Euclidean(x + Vec2::polar(r, phi)),
            Probe::Hyperbolic { frame, r } => super::Point::Hyperbolic(frame.point(r, phi).on_sheet()),
        }
    }
}
