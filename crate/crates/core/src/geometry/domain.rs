//! Domain representation and the queries built on it.

use std::f64::consts::{PI, TAU};

use super::ellipse::Ellipse;
use super::hyperbolic::{self as hyp, Frame, Isometry, M3};
use super::path::{self, Piece};
use super::plane::{self, Vec2};
use super::spec::{DomainSpec, ShapeSpec};
use super::support::{Probe, Support, SLACK};
use super::{Location, Point, Space};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub(crate) enum Shape {
    Polygon(plane::IndexedPolygon),
    Disc { center: Vec2, radius: f64 },
    Annulus { center: Vec2, inner: f64, outer: f64 },
    Ellipse(Ellipse),
    Tube { pieces: Vec<Piece>, radius: f64 },
    HPolygon { verts: Vec<M3>, klein: plane::IndexedPolygon },
    HDisc { center: M3, radius: f64 },
    HAnnulus { center: M3, inner: f64, outer: f64 },
    Union(Vec<Shape>),
}

/// Oriented boundary piece of a Euclidean domain; the domain lies to the left.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum BoundaryPiece {
    Segment { a: Vec2, b: Vec2 },
    Arc { center: Vec2, radius: f64, start: f64, sweep: f64 },
    Ellipse(Ellipse),
}

impl Shape {
    fn contains(&self, p: &Point) -> bool {
        match (self, p) {
            (Shape::Polygon(v), Point::Euclidean(q)) => v.contains(*q),
            (Shape::Disc { center, radius }, Point::Euclidean(q)) => q.dist(*center) <= *radius,
            (Shape::Annulus { center, inner, outer }, Point::Euclidean(q)) => {
                let d = q.dist(*center);
                d >= *inner && d <= *outer
            }
            (Shape::Ellipse(e), Point::Euclidean(q)) => e.contains(*q),
            (Shape::Tube { pieces, radius }, Point::Euclidean(q)) => path::path_distance(pieces, *q) <= *radius,
            (Shape::HPolygon { klein, .. }, Point::Hyperbolic(q)) => klein.contains(q.klein()),
            (Shape::HDisc { center, radius }, Point::Hyperbolic(q)) => q.dist(*center) <= *radius,
            (Shape::HAnnulus { center, inner, outer }, Point::Hyperbolic(q)) => {
                let d = q.dist(*center);
                d >= *inner && d <= *outer
            }
            (Shape::Union(parts), _) => parts.iter().any(|s| s.contains(p)),
            _ => false,
        }
    }

    fn boundary_distance(&self, p: &Point) -> f64 {
        match (self, p) {
            (Shape::Polygon(v), Point::Euclidean(q)) => {
                let n = v.len();
                (0..n)
                    .map(|i| plane::segment_distance(*q, v[i], v[(i + 1) % n]))
                    .fold(f64::INFINITY, f64::min)
            }
            (Shape::Disc { center, radius }, Point::Euclidean(q)) => (q.dist(*center) - radius).abs(),
            (Shape::Annulus { center, inner, outer }, Point::Euclidean(q)) => {
                let d = q.dist(*center);
                (d - inner).abs().min((d - outer).abs())
            }
            (Shape::Ellipse(e), Point::Euclidean(q)) => e.boundary_distance(*q),
            (Shape::Tube { pieces, radius }, Point::Euclidean(q)) => (path::path_distance(pieces, *q) - radius).abs(),
            (Shape::HPolygon { verts, .. }, Point::Hyperbolic(q)) => {
                let n = verts.len();
                (0..n)
                    .map(|i| hyp::segment_distance(*q, verts[i], verts[(i + 1) % n]))
                    .fold(f64::INFINITY, f64::min)
            }
            (Shape::HDisc { center, radius }, Point::Hyperbolic(q)) => (q.dist(*center) - radius).abs(),
            (Shape::HAnnulus { center, inner, outer }, Point::Hyperbolic(q)) => {
                let d = q.dist(*center);
                (d - inner).abs().min((d - outer).abs())
            }
            (Shape::Union(parts), _) => parts.iter().map(|s| s.boundary_distance(p)).fold(f64::INFINITY, f64::min),
            _ => f64::NAN,
        }
    }

    fn area(&self) -> f64 {
        match self {
            Shape::Polygon(v) => plane::signed_area(v),
            Shape::Disc { radius, .. } => PI * radius * radius,
            Shape::Annulus { inner, outer, .. } => PI * (outer * outer - inner * inner),
            Shape::Ellipse(e) => e.area(),
            Shape::Tube { pieces, radius } => {
                let r = *radius;
                let joints: f64 = path::joint_turns(pieces)
                    .iter()
                    .map(|b| {
                        let b = b.abs();
                        r * r * (0.5 * b - (0.5 * b).tan())
                    })
                    .sum();
                2.0 * r * path::path_length(pieces) + PI * r * r + joints
            }
            Shape::HPolygon { verts, .. } => hyp::polygon_area(verts),
            Shape::HDisc { radius, .. } => hyp::disc_area(*radius),
            Shape::HAnnulus { inner, outer, .. } => hyp::disc_area(*outer) - hyp::disc_area(*inner),
            Shape::Union(parts) => parts.iter().map(Shape::area).sum(),
        }
    }

    fn supports(&self, out: &mut Vec<Support>) {
        match self {
            Shape::Polygon(v) => {
                let n = v.len();
                for i in 0..n {
                    let (a, b) = (v[i], v[(i + 1) % n]);
                    out.push(Support::Line { p: a, n: (b - a).perp().unit(), ends: Some((a, b)) });
                }
            }
            Shape::Disc { center, radius } => out.push(Support::Circle { c: *center, r: *radius }),
            Shape::Annulus { center, inner, outer } => {
                out.push(Support::Circle { c: *center, r: *inner });
                out.push(Support::Circle { c: *center, r: *outer });
            }
            Shape::Ellipse(e) => out.push(Support::Ellipse(*e)),
            Shape::Tube { pieces, radius } => {
                let r = *radius;
                for piece in pieces {
                    let (a, b) = (piece.point_at(0.0), piece.point_at(1.0));
                    out.push(Support::Circle { c: a, r });
                    out.push(Support::Circle { c: b, r });
                    match *piece {
                        Piece::Segment { .. } => {
                            let n = (b - a).perp().unit();
                            out.push(Support::Line { p: a + n * r, n, ends: None });
                            out.push(Support::Line { p: a - n * r, n, ends: None });
                        }
                        Piece::Arc { center, radius: rho, .. } => {
                            out.push(Support::Circle { c: center.into(), r: rho + r });
                            out.push(Support::Circle { c: center.into(), r: rho - r });
                        }
                    }
                }
            }
            Shape::HPolygon { verts, .. } => {
                let n = verts.len();
                for i in 0..n {
                    let (a, b) = (verts[i], verts[(i + 1) % n]);
                    out.push(Support::Geodesic {
                        n: hyp::geodesic_normal(a, b),
                        ends: Some((a, b)),
                    });
                }
            }
            Shape::HDisc { center, radius } => out.push(Support::HCircle { c: *center, r: *radius }),
            Shape::HAnnulus { center, inner, outer } => {
                out.push(Support::HCircle { c: *center, r: *inner });
                out.push(Support::HCircle { c: *center, r: *outer });
            }
            Shape::Union(parts) => parts.iter().for_each(|s| s.supports(out)),
        }
    }

    fn corners(&self, out: &mut Vec<Point>) {
        match self {
            Shape::Polygon(v) => out.extend(v.iter().map(|p| Point::Euclidean(*p))),
            Shape::HPolygon { verts, .. } => out.extend(verts.iter().map(|p| Point::Hyperbolic(*p))),
            Shape::Union(parts) => parts.iter().for_each(|s| s.corners(out)),
            _ => {}
        }
    }

    fn boundary_samples(&self, per: usize, out: &mut Vec<Point>) {
        let per = per.max(1);
        let ring = |n: usize| (0..n).map(move |k| TAU * k as f64 / n as f64);
        match self {
            Shape::Polygon(v) => {
                let n = v.len();
                for i in 0..n {
                    for k in 0..per {
                        out.push(Point::Euclidean(v[i].lerp(v[(i + 1) % n], k as f64 / per as f64)));
                    }
                }
            }
            Shape::Disc { center, radius } => {
                out.extend(ring(4 * per).map(|t| Point::Euclidean(*center + Vec2::polar(*radius, t))));
            }
            Shape::Annulus { center, inner, outer } => {
                for r in [*inner, *outer] {
                    out.extend(ring(4 * per).map(|t| Point::Euclidean(*center + Vec2::polar(r, t))));
                }
            }
            Shape::Ellipse(e) => out.extend(ring(4 * per).map(|t| Point::Euclidean(e.point_at(t)))),
            Shape::Tube { pieces, radius } => {
                for piece in pieces {
                    for k in 0..=per {
                        let s = k as f64 / per as f64;
                        let (p, n) = (piece.point_at(s), piece.tangent_at(s).perp());
                        out.push(Point::Euclidean(p + n * *radius));
                        out.push(Point::Euclidean(p - n * *radius));
                    }
                }
                let first = pieces[0].point_at(0.0);
                let last = pieces[pieces.len() - 1].point_at(1.0);
                for c in [first, last] {
                    out.extend(ring(2 * per).map(|t| Point::Euclidean(c + Vec2::polar(*radius, t))));
                }
            }
            Shape::HPolygon { verts, .. } => {
                let n = verts.len();
                for i in 0..n {
                    for k in 0..per {
                        let p = hyp::geodesic_lerp(verts[i], verts[(i + 1) % n], k as f64 / per as f64);
                        out.push(Point::Hyperbolic(p));
                    }
                }
            }
            Shape::HDisc { center, radius } => {
                let f = Frame::at(*center);
                out.extend(ring(4 * per).map(|t| Point::Hyperbolic(f.point(*radius, t))));
            }
            Shape::HAnnulus { center, inner, outer } => {
                let f = Frame::at(*center);
                for r in [*inner, *outer] {
                    out.extend(ring(4 * per).map(|t| Point::Hyperbolic(f.point(r, t))));
                }
            }
            Shape::Union(parts) => parts.iter().for_each(|s| s.boundary_samples(per, out)),
        }
    }

    fn boundary_pieces(&self, out: &mut Vec<BoundaryPiece>) -> Result<()> {
        match self {
            Shape::Polygon(v) => {
                let n = v.len();
                out.extend((0..n).map(|i| BoundaryPiece::Segment { a: v[i], b: v[(i + 1) % n] }));
            }
            Shape::Disc { center, radius } => out.push(BoundaryPiece::Arc {
                center: *center,
                radius: *radius,
                start: 0.0,
                sweep: TAU,
            }),
            Shape::Annulus { center, inner, outer } => {
                out.push(BoundaryPiece::Arc {
                    center: *center,
                    radius: *outer,
                    start: 0.0,
                    sweep: TAU,
                });
                out.push(BoundaryPiece::Arc {
                    center: *center,
                    radius: *inner,
                    start: 0.0,
                    sweep: -TAU,
                });
            }
            Shape::Ellipse(e) => out.push(BoundaryPiece::Ellipse(*e)),
            Shape::Union(parts) => {
                for s in parts {
                    s.boundary_pieces(out)?;
                }
            }
            _ => return Err(Error::Unsupported("boundary pieces of this shape".into())),
        }
        Ok(())
    }
}

/// An admissible domain together with the specification it was built from.
#[derive(Clone, Debug)]
pub struct Domain {
    space: Space,
    spec: DomainSpec,
    shape: Shape,
    supports: Vec<Support>,
    corners: Vec<Point>,
    diameter: f64,
}

fn finite_positive(v: f64, what: &str) -> Result<f64> {
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(Error::arg(format!("{what} must be positive and finite, got {v}")))
    }
}

fn euclid_only(space: Space, what: &str) -> Result<()> {
    if space == Space::Euclidean2 {
        Ok(())
    } else {
        Err(Error::Unsupported(format!("{what} domains exist only in the Euclidean plane")))
    }
}

fn build_polygon(space: Space, pts: Vec<Point>) -> Result<Shape> {
    if pts.len() < 3 {
        return Err(Error::DegenerateDomain("a polygon needs at least three vertices".into()));
    }
    let mut chart: Vec<Vec2> = pts.iter().map(Point::chart).collect();
    let mut pts = pts;
    let area = plane::signed_area(&chart);
    if area.abs() == 0.0 || !area.is_finite() {
        return Err(Error::DegenerateDomain("polygon has zero area".into()));
    }
    if area < 0.0 {
        chart.reverse();
        pts.reverse();
    }
    if !plane::is_simple(&chart) {
        return Err(Error::DegenerateDomain("polygon is not simple".into()));
    }
    Ok(match space {
        Space::Euclidean2 => Shape::Polygon(plane::IndexedPolygon::new(chart)),
        Space::Hyperbolic2 => Shape::HPolygon {
            verts: pts.iter().map(|p| p.hyperbolic()).collect::<Result<_>>()?,
            klein: plane::IndexedPolygon::new(chart),
        },
    })
}

/// Concentric circles about a point, for repeated angular measures.
pub struct Circles<'a> {
    domain: &'a Domain,
    center: Probe,
    ranges: Vec<(f64, f64)>,
}

impl Circles<'_> {
    /// Angular measures `(inside, outside)` of the circle of radius `r`.
    pub fn split(&self, r: f64) -> Result<(f64, f64)> {
        if !(r > 0.0) || !r.is_finite() {
            return Err(Error::arg(format!("radius must be positive, got {r}")));
        }
        let probe = match self.center {
            Probe::Euclidean { x, .. } => Probe::Euclidean { x, r },
            Probe::Hyperbolic { frame, .. } => Probe::Hyperbolic { frame, r },
        };
        let d = self.domain;
        let mut angles = Vec::new();
        for (s, &(lo, hi)) in d.supports.iter().zip(&self.ranges) {
            if r >= lo * (1.0 - SLACK) && r <= hi * (1.0 + SLACK) {
                s.circle_crossings(&probe, &mut angles);
            }
        }
        if angles.is_empty() {
            return Ok(if d.shape.contains(&probe.point(0.0)) { (TAU, 0.0) } else { (0.0, TAU) });
        }
        angles.sort_by(f64::total_cmp);
        let m = angles.len();
        let (mut inside, mut outside) = (0.0, 0.0);
        for i in 0..m {
            let a = angles[i];
            let b = if i + 1 < m { angles[i + 1] } else { angles[0] + TAU };
            if b > a {
                if d.shape.contains(&probe.point(0.5 * (a + b))) {
                    inside += b - a;
                } else {
                    outside += b - a;
                }
            }
        }
        Ok((inside.min(TAU), outside.min(TAU)))
    }
}

fn regular_vertices(space: Space, n: usize, circumradius: f64, center: Point, rotation: f64) -> Result<Vec<Point>> {
    let angles = (0..n).map(|k| rotation + TAU * k as f64 / n as f64);
    Ok(match center {
        Point::Euclidean(c) => angles.map(|t| Point::Euclidean(c + Vec2::polar(circumradius, t))).collect(),
        Point::Hyperbolic(c) => {
            if space != Space::Hyperbolic2 {
                return Err(Error::SpaceMismatch);
            }
            let f = Frame::at(c);
            angles.map(|t| Point::Hyperbolic(f.point(circumradius, t).on_sheet())).collect()
        }
    })
}

fn build_shape(space: Space, spec: &ShapeSpec) -> Result<Shape> {
    let point = |c: &[f64]| Point::from_coords(space, c);
    match spec {
        ShapeSpec::Polygon { vertices } => {
            let pts = vertices.iter().map(|c| point(c)).collect::<Result<Vec<_>>>()?;
            build_polygon(space, pts)
        }
        ShapeSpec::Disc { center, radius } => {
            let r = finite_positive(*radius, "disc radius")?;
            Ok(match point(center)? {
                Point::Euclidean(c) => Shape::Disc { center: c, radius: r },
                Point::Hyperbolic(c) => Shape::HDisc { center: c, radius: r },
            })
        }
        ShapeSpec::Annulus { center, inner, outer } => {
            let (ri, ro) = (finite_positive(*inner, "inner radius")?, finite_positive(*outer, "outer radius")?);
            if ri >= ro {
                return Err(Error::DegenerateDomain("annulus needs inner < outer".into()));
            }
            Ok(match point(center)? {
                Point::Euclidean(c) => Shape::Annulus { center: c, inner: ri, outer: ro },
                Point::Hyperbolic(c) => Shape::HAnnulus { center: c, inner: ri, outer: ro },
            })
        }
        ShapeSpec::Ellipse { center, a, b, angle } => {
            euclid_only(space, "ellipse")?;
            Ok(Shape::Ellipse(Ellipse {
                center: (*center).into(),
                a: finite_positive(*a, "semi-axis a")?,
                b: finite_positive(*b, "semi-axis b")?,
                angle: *angle,
            }))
        }
        ShapeSpec::RegularPolygon { n, circumradius, center, rotation } => {
            if *n < 3 {
                return Err(Error::arg("a regular polygon needs n >= 3"));
            }
            let r = finite_positive(*circumradius, "circumradius")?;
            let c = match center {
                Some(c) => point(c)?,
                None => match space {
                    Space::Euclidean2 => Point::e(0.0, 0.0),
                    Space::Hyperbolic2 => Point::Hyperbolic(M3::ORIGIN),
                },
            };
            build_polygon(space, regular_vertices(space, *n, r, c, *rotation)?)
        }
        ShapeSpec::Dumbbell { a, b, c } => {
            euclid_only(space, "dumbbell")?;
            let (a, b) = (finite_positive(*a, "a")?, finite_positive(*b, "b")?);
            let c = *c;
            if !(0.0..a).contains(&c) {
                return Err(Error::arg(format!("dumbbell needs 0 <= c < a, got c = {c}, a = {a}")));
            }
            let e = |x: f64, y: f64| Point::e(x, y);
            let w = b + 2.0 * a;
            if c == 0.0 {
                let sq = |x0: f64| {
                    build_polygon(space, vec![e(x0, -a), e(x0 + 2.0 * a, -a), e(x0 + 2.0 * a, a), e(x0, a)])
                };
                Ok(Shape::Union(vec![sq(-w)?, sq(b)?]))
            } else {
                build_polygon(
                    space,
                    vec![
                        e(-w, -a),
                        e(-b, -a),
                        e(-b, -c),
                        e(b, -c),
                        e(b, -a),
                        e(w, -a),
                        e(w, a),
                        e(b, a),
                        e(b, c),
                        e(-b, c),
                        e(-b, a),
                        e(-w, a),
                    ],
                )
            }
        }
        ShapeSpec::Tube2d { path: pieces, radius } => {
            euclid_only(space, "tube")?;
            let r = finite_positive(*radius, "tube radius")?;
            if pieces.is_empty() {
                return Err(Error::DegenerateDomain("tube path is empty".into()));
            }
            for p in pieces {
                match *p {
                    Piece::Segment { from, to } => {
                        if Vec2::from(from).dist(to.into()) == 0.0 {
                            return Err(Error::DegenerateDomain("zero-length tube segment".into()));
                        }
                    }
                    Piece::Arc { radius: rho, sweep, .. } => {
                        if rho <= r || sweep == 0.0 || sweep.abs() > TAU {
                            return Err(Error::arg("tube arcs need radius > tube radius and 0 < |sweep| <= 2π"));
                        }
                    }
                }
            }
            Ok(Shape::Tube { pieces: pieces.clone(), radius: r })
        }
        ShapeSpec::Union { parts } => {
            if parts.is_empty() {
                return Err(Error::DegenerateDomain("empty union".into()));
            }
            let mut shapes = Vec::new();
            for p in parts {
                match build_shape(space, p)? {
                    Shape::Union(inner) => shapes.extend(inner),
                    s => shapes.push(s),
                }
            }
            check_disjoint(&shapes)?;
            Ok(Shape::Union(shapes))
        }
    }
}

fn check_disjoint(shapes: &[Shape]) -> Result<()> {
    let samples: Vec<Vec<Point>> = shapes
        .iter()
        .map(|s| {
            let mut v = Vec::new();
            s.boundary_samples(32, &mut v);
            v
        })
        .collect();
    for i in 0..shapes.len() {
        for j in 0..shapes.len() {
            if i != j && samples[i].iter().any(|p| shapes[j].contains(p) || shapes[j].boundary_distance(p) < 1e-12) {
                return Err(Error::DegenerateDomain("union components must be disjoint".into()));
            }
        }
    }
    Ok(())
}

/// Exact diameter of a closed chain of hull points. Long chains are split
/// into runs; a pair of runs is scanned only when the distance of their
/// first points plus both run lengths can beat the best pair so far.
fn hull_diameter(hull: &[Point]) -> Result<f64> {
    const RUNS: usize = 512;
    let n = hull.len();
    let stride = n.div_ceil(RUNS).max(1);
    let starts: Vec<usize> = (0..n).step_by(stride).collect();
    let mut reach = Vec::with_capacity(starts.len());
    for &a in &starts {
        let mut run: f64 = 0.0;
        let mut longest: f64 = 0.0;
        for i in a..(a + stride).min(n) {
            longest = longest.max(run);
            run += hull[i].dist(&hull[(i + 1) % n])?;
        }
        reach.push(longest);
    }
    let mut pairs = Vec::new();
    for (x, &a) in starts.iter().enumerate() {
        for (y, &b) in starts.iter().enumerate().skip(x) {
            pairs.push((hull[a].dist(&hull[b])? + reach[x] + reach[y], a, b));
        }
    }
    pairs.sort_by(|p, q| q.0.total_cmp(&p.0));
    let mut best: f64 = 0.0;
    for (bound, a, b) in pairs {
        if bound <= best {
            break;
        }
        for i in a..(a + stride).min(n) {
            for j in b..(b + stride).min(n) {
                best = best.max(hull[i].dist(&hull[j])?);
            }
        }
    }
    Ok(best)
}

impl Domain {
    pub fn from_spec(spec: DomainSpec) -> Result<Self> {
        let shape = build_shape(spec.space, &spec.shape)?;
        let mut supports = Vec::new();
        shape.supports(&mut supports);
        let mut corners = Vec::new();
        shape.corners(&mut corners);
        let straight = supports
            .iter()
            .all(|s| matches!(s, Support::Line { .. } | Support::Geodesic { .. }));
        let mut samples = Vec::new();
        shape.boundary_samples(if straight { 1 } else { 64 }, &mut samples);
        // distance is convex in the chart, so extreme points suffice
        let chart: Vec<Vec2> = samples.iter().map(Point::chart).collect();
        let hull: Vec<Point> = plane::convex_hull(&chart)
            .into_iter()
            .map(|c| Point::from_chart(spec.space, c))
            .collect();
        let diameter = hull_diameter(&hull)?;
        let area = shape.area();
        if !(area > 0.0) {
            return Err(Error::DegenerateDomain(format!("domain area {area} is not positive")));
        }
        Ok(Domain {
            space: spec.space,
            spec,
            shape,
            supports,
            corners,
            diameter,
        })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Domain::from_spec(DomainSpec::from_json(text)?)
    }

    pub fn to_json(&self) -> String {
        self.spec.to_json()
    }

    pub fn spec(&self) -> &DomainSpec {
        &self.spec
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn diameter(&self) -> f64 {
        self.diameter
    }

    pub fn area(&self) -> f64 {
        self.shape.area()
    }

    /// Polygon corners (empty for smooth shapes).
    pub fn corners(&self) -> &[Point] {
        &self.corners
    }

    pub(crate) fn supports(&self) -> &[Support] {
        &self.supports
    }

    fn check(&self, x: &Point) -> Result<()> {
        if x.space() == self.space {
            Ok(())
        } else {
            Err(Error::SpaceMismatch)
        }
    }

    /// Closed-set membership without a boundary band.
    pub fn contains_closed(&self, x: &Point) -> bool {
        self.shape.contains(x)
    }

    pub fn contains(&self, x: &Point) -> Result<Location> {
        self.check(x)?;
        if self.shape.boundary_distance(x) <= 1e-10 * self.diameter {
            Ok(Location::Boundary)
        } else if self.shape.contains(x) {
            Ok(Location::Inside)
        } else {
            Ok(Location::Outside)
        }
    }

    /// Distance from `x` to the boundary.
    pub fn boundary_distance(&self, x: &Point) -> Result<f64> {
        self.check(x)?;
        Ok(self.shape.boundary_distance(x))
    }

    /// `R(x)`: distance to the closure of the complement.
    pub fn distance_from_complement(&self, x: &Point) -> Result<f64> {
        Ok(match self.contains(x)? {
            Location::Inside => self.shape.boundary_distance(x),
            _ => 0.0,
        })
    }

    /// `R⁻(x)`: distance to the domain (zero on it).
    pub fn distance_to(&self, x: &Point) -> Result<f64> {
        Ok(match self.contains(x)? {
            Location::Outside => self.shape.boundary_distance(x),
            _ => 0.0,
        })
    }

    fn probe(&self, x: &Point, r: f64) -> Result<Probe> {
        self.check(x)?;
        if !(r > 0.0) || !r.is_finite() {
            return Err(Error::arg(format!("radius must be positive, got {r}")));
        }
        Ok(match x {
            Point::Euclidean(v) => Probe::Euclidean { x: *v, r },
            Point::Hyperbolic(p) => Probe::Hyperbolic { frame: Frame::at(*p), r },
        })
    }

    /// Angular measures `(inside, outside)` of the circle of radius `r`
    /// about `x`; they sum to 2π and are accumulated separately so that
    /// either one stays accurate when small.
    pub fn angular_split(&self, x: &Point, r: f64) -> Result<(f64, f64)> {
        self.circles_about(x)?.split(r)
    }

    /// Circles about a fixed center, with the radial reach of every
    /// support precomputed so each radius only visits nearby supports.
    pub fn circles_about(&self, x: &Point) -> Result<Circles<'_>> {
        let center = self.probe(x, 1.0)?;
        let ranges = self.supports.iter().map(|s| s.radial_range(&center)).collect();
        Ok(Circles { domain: self, center, ranges })
    }
    /// Angular measure of `{φ : circle point at angle φ lies in Ω}`.
    pub fn angular_measure(&self, x: &Point, r: f64) -> Result<f64> {
        Ok(self.angular_split(x, r)?.0)
    }

    /// `A(r)`: length of the part of the circle of radius `r` about `x`
    /// lying in the domain.
    pub fn spherical_area(&self, x: &Point, r: f64) -> Result<f64> {
        let phi = self.angular_measure(x, r)?;
        Ok(phi / TAU * self.space.circumference(r))
    }

    /// Independent estimate of `A(r)` by uniform angular sampling with each
    /// detected in/out transition refined by bisection.
    pub fn spherical_area_sampled(&self, x: &Point, r: f64, samples: usize) -> Result<f64> {
        let probe = self.probe(x, r)?;
        let n = samples.max(8);
        let h = TAU / n as f64;
        let inside: Vec<bool> = (0..n).map(|k| self.shape.contains(&probe.point(k as f64 * h))).collect();
        let mut total = 0.0;
        for k in 0..n {
            let (a, b) = (inside[k], inside[(k + 1) % n]);
            let lo = k as f64 * h;
            match (a, b) {
                (true, true) => total += h,
                (false, false) => {}
                _ => {
                    let cut = crate::numeric::roots::bisect(
                        |phi| self.shape.contains(&probe.point(phi)) != a,
                        lo,
                        lo + h,
                        1e-15,
                    );
                    total += if a { cut - lo } else { lo + h - cut };
                }
            }
        }
        Ok(total / TAU * self.space.circumference(r))
    }

    /// Radii where `A(r)` may fail to be smooth, sorted.
    pub fn critical_radii(&self, x: &Point) -> Result<Vec<f64>> {
        self.check(x)?;
        let mut out = Vec::new();
        for s in &self.supports {
            match x {
                Point::Euclidean(v) => s.euclidean_critical_radii(*v, &mut out),
                Point::Hyperbolic(p) => s.hyperbolic_critical_radii(*p, &mut out),
            }
        }
        for c in &self.corners {
            out.push(c.dist(x)?);
        }
        out.retain(|r| r.is_finite() && *r > 0.0);
        out.sort_by(f64::total_cmp);
        out.dedup_by(|a, b| (*a - *b).abs() <= 1e-14 * b.abs());
        Ok(out)
    }

    /// Radius beyond which the circle about `x` misses the domain.
    pub fn far_radius(&self, x: &Point) -> Result<f64> {
        Ok(self.critical_radii(x)?.last().copied().unwrap_or(0.0))
    }

    pub fn boundary_samples(&self, per_piece: usize) -> Vec<Point> {
        let mut v = Vec::new();
        self.shape.boundary_samples(per_piece, &mut v);
        v
    }

    /// Bounding box in the flat chart (Klein chart for ℍ²).
    pub fn chart_box(&self) -> (Vec2, Vec2) {
        let mut lo = Vec2::new(f64::INFINITY, f64::INFINITY);
        let mut hi = Vec2::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
        for p in self.boundary_samples(32) {
            let c = p.chart();
            lo = Vec2::new(lo.x.min(c.x), lo.y.min(c.y));
            hi = Vec2::new(hi.x.max(c.x), hi.y.max(c.y));
        }
        (lo, hi)
    }

    /// Oriented boundary pieces of a Euclidean domain.
    pub fn boundary_pieces(&self) -> Result<Vec<BoundaryPiece>> {
        let mut out = Vec::new();
        self.shape.boundary_pieces(&mut out)?;
        Ok(out)
    }

    /// Vertex lists when the domain is a polygon or a union of polygons.
    pub fn polygons(&self) -> Option<Vec<Vec<Point>>> {
        fn collect(s: &Shape, out: &mut Vec<Vec<Point>>) -> bool {
            match s {
                Shape::Polygon(v) => {
                    out.push(v.iter().map(|p| Point::Euclidean(*p)).collect());
                    true
                }
                Shape::HPolygon { verts, .. } => {
                    out.push(verts.iter().map(|p| Point::Hyperbolic(*p)).collect());
                    true
                }
                Shape::Union(parts) => parts.iter().all(|p| collect(p, out)),
                _ => false,
            }
        }
        let mut out = Vec::new();
        collect(&self.shape, &mut out).then_some(out)
    }

    /// Boundary curvature at a point of a smooth boundary arc (positive
    /// for convex arcs). Polygon corners are rejected.
    pub fn boundary_curvature(&self, x: &Point) -> Result<f64> {
        self.check(x)?;
        let tol = 1e-9 * self.diameter.max(1.0);
        if self.shape.boundary_distance(x) > tol {
            return Err(Error::arg("point is not on the boundary"));
        }
        if self.corners.iter().any(|c| c.dist(x).map(|d| d < tol).unwrap_or(false)) {
            return Err(Error::NotSmooth);
        }
        fn curv(s: &Shape, x: &Point, tol: f64) -> Option<f64> {
            if s.boundary_distance(x) > tol {
                return None;
            }
            match (s, x) {
                (Shape::Polygon(_), _) | (Shape::HPolygon { .. }, _) => Some(0.0),
                (Shape::Disc { radius, .. }, _) => Some(1.0 / radius),
                (Shape::HDisc { radius, .. }, _) => Some(1.0 / radius.tanh()),
                (Shape::Annulus { center, inner, outer }, Point::Euclidean(q)) => {
                    let d = q.dist(*center);
                    Some(if (d - inner).abs() < (d - outer).abs() { -1.0 / inner } else { 1.0 / outer })
                }
                (Shape::HAnnulus { center, inner, outer }, Point::Hyperbolic(q)) => {
                    let d = q.dist(*center);
                    Some(if (d - inner).abs() < (d - outer).abs() { -1.0 / inner.tanh() } else { 1.0 / outer.tanh() })
                }
                (Shape::Ellipse(e), Point::Euclidean(q)) => Some(e.curvature_at(e.parameter_of(*q))),
                (Shape::Tube { pieces, radius }, Point::Euclidean(q)) => path::tube_boundary_curvature(pieces, *radius, *q),
                (Shape::Union(parts), _) => parts.iter().find_map(|p| curv(p, x, tol)),
                _ => None,
            }
        }
        curv(&self.shape, x, tol).ok_or_else(|| Error::Unsupported("curvature for this shape".into()))
    }

    pub fn polygon(points: &[Point]) -> Result<Self> {
        let space = points.first().ok_or_else(|| Error::arg("empty vertex list"))?.space();
        if points.iter().any(|p| p.space() != space) {
            return Err(Error::SpaceMismatch);
        }
        Domain::from_spec(DomainSpec {
            space,
            shape: ShapeSpec::Polygon {
                vertices: points.iter().map(Point::coords).collect(),
            },
        })
    }

    pub fn disc(center: Point, radius: f64) -> Result<Self> {
        Domain::from_spec(DomainSpec {
            space: center.space(),
            shape: ShapeSpec::Disc {
                center: center.coords(),
                radius,
            },
        })
    }

    pub fn annulus(center: Point, inner: f64, outer: f64) -> Result<Self> {
        Domain::from_spec(DomainSpec {
            space: center.space(),
            shape: ShapeSpec::Annulus {
                center: center.coords(),
                inner,
                outer,
            },
        })
    }

    pub fn ellipse(center: Vec2, a: f64, b: f64, angle: f64) -> Result<Self> {
        Domain::from_spec(DomainSpec {
            space: Space::Euclidean2,
            shape: ShapeSpec::Ellipse {
                center: center.to_array(),
                a,
                b,
                angle,
            },
        })
    }

    /// Regular polygon about the origin with a vertex on the positive x axis.
    pub fn regular_polygon(space: Space, n: usize, circumradius: f64) -> Result<Self> {
        Domain::from_spec(DomainSpec {
            space,
            shape: ShapeSpec::RegularPolygon {
                n,
                circumradius,
                center: None,
                rotation: 0.0,
            },
        })
    }

    /// Two squares of side `2a` centred at `(±(b + a), 0)` joined by the bar
    /// `[−b, b] × [−c, c]`.
    pub fn dumbbell(a: f64, b: f64, c: f64) -> Result<Self> {
        Domain::from_spec(DomainSpec {
            space: Space::Euclidean2,
            shape: ShapeSpec::Dumbbell { a, b, c },
        })
    }

    pub fn tube(pieces: Vec<Piece>, radius: f64) -> Result<Self> {
        Domain::from_spec(DomainSpec {
            space: Space::Euclidean2,
            shape: ShapeSpec::Tube2d { path: pieces, radius },
        })
    }

    pub fn union(parts: &[Domain]) -> Result<Self> {
        let space = parts.first().ok_or_else(|| Error::arg("empty union"))?.space;
        if parts.iter().any(|d| d.space != space) {
            return Err(Error::SpaceMismatch);
        }
        Domain::from_spec(DomainSpec {
            space,
            shape: ShapeSpec::Union {
                parts: parts.iter().map(|d| d.spec.shape.clone()).collect(),
            },
        })
    }

    /// Image of a polygonal domain under a hyperbolic isometry.
    pub fn map_hyperbolic(&self, iso: &Isometry) -> Result<Self> {
        let polys = self.polygons().ok_or_else(|| Error::Unsupported("only polygons are mapped".into()))?;
        let mapped: Vec<Domain> = polys
            .iter()
            .map(|v| {
                let pts: Vec<Point> = v
                    .iter()
                    .map(|p| p.hyperbolic().map(|q| Point::Hyperbolic(iso.apply(q).on_sheet())))
                    .collect::<Result<_>>()?;
                Domain::polygon(&pts)
            })
            .collect::<Result<_>>()?;
        if mapped.len() == 1 {
            Ok(mapped.into_iter().next().expect("one part"))
        } else {
            Domain::union(&mapped)
        }
    }
}
