//! Steiner symmetrization along a geodesic in ℝ² and ℍ².
//!
//! A [`SteinerFrame`] fixes a geodesic `g` and the geodesic `E` crossing it
//! orthogonally at the origin. Points are described by `(w, s)`: `w` is the
//! signed distance from `g` and `s` the arclength along `g` of the foot
//! point. The level sets of `w` are the g-lines (parallels in ℝ²,
//! hypercycles in ℍ²), the level set `s = 0` is `E`, and the area element is
//! `cosh w dw ds` in ℍ² (`dw ds` in ℝ²). Fibers are handled in `s`, so a
//! fiber length `ℓ(w)` has λ-measure `weight(w)·ℓ(w)`.

use rayon::prelude::*;
use serde::Serialize;

use crate::compare::{grid_verdict, logit_margin, ComparisonVerdict, Witness};
use crate::error::{Error, Result};
use crate::geometry::hyperbolic::{self, Frame, M3};
use crate::geometry::plane::{self, Vec2};
use crate::geometry::support::FiberLine;
use crate::geometry::{Domain, Point, Space};
use crate::heat::{Field, QuadratureConfig};
use crate::kernel::TimeKernel;
use crate::numeric::quad::{breakpoints, Adaptive};

#[derive(Clone, Copy, Debug)]
pub enum SteinerFrame {
    Euclidean { origin: Vec2, along: Vec2, across: Vec2 },
    /// `along` and `across` are unit tangents at `origin`.
    Hyperbolic { origin: M3, along: M3, across: M3 },
}

impl SteinerFrame {
    /// Euclidean frame with `g` through `origin` in direction `direction`.
    pub fn euclidean(origin: Vec2, direction: Vec2) -> Result<Self> {
        if !(direction.norm() > 0.0) || !origin.x.is_finite() || !origin.y.is_finite() {
            return Err(Error::arg("Steiner direction must be a finite non-zero vector"));
        }
        let along = direction.unit();
        Ok(SteinerFrame::Euclidean {
            origin,
            along,
            across: along.perp(),
        })
    }

    /// Hyperbolic frame with `g` leaving `origin` at tangent angle `angle`.
    pub fn hyperbolic(origin: M3, angle: f64) -> Self {
        let frame = Frame::at(origin);
        SteinerFrame::Hyperbolic {
            origin,
            along: frame.direction(angle),
            across: frame.direction(angle + std::f64::consts::FRAC_PI_2),
        }
    }

    /// Frame whose `g` runs from `a` to `b` and whose `E` bisects `ab`.
    pub fn through(a: &Point, b: &Point) -> Result<Self> {
        if a.dist(b)? <= 0.0 {
            return Err(Error::arg("Steiner frame needs two distinct points"));
        }
        match (a, b) {
            (Point::Euclidean(a), Point::Euclidean(b)) => Self::euclidean(a.lerp(*b, 0.5), *b - *a),
            (Point::Hyperbolic(a), Point::Hyperbolic(b)) => {
                let o = hyperbolic::geodesic_lerp(*a, *b, 0.5);
                Ok(Self::hyperbolic(o, Frame::at(o).angle_to(*b)))
            }
            _ => Err(Error::SpaceMismatch),
        }
    }

    pub fn space(&self) -> Space {
        match self {
            SteinerFrame::Euclidean { .. } => Space::Euclidean2,
            SteinerFrame::Hyperbolic { .. } => Space::Hyperbolic2,
        }
    }

    /// `(w, s)` coordinates of a point.
    pub fn coords(&self, p: &Point) -> Result<(f64, f64)> {
        match (self, p) {
            (SteinerFrame::Euclidean { origin, along, across }, Point::Euclidean(q)) => {
                let d = *q - *origin;
                Ok((d.dot(*across), d.dot(*along)))
            }
            (SteinerFrame::Hyperbolic { along, across, .. }, Point::Hyperbolic(q)) => {
                let w = q.mdot(*across).asinh();
                Ok((w, (q.mdot(*along) / w.cosh()).asinh()))
            }
            _ => Err(Error::SpaceMismatch),
        }
    }

    pub fn point(&self, w: f64, s: f64) -> Point {
        self.fiber(w).point(s)
    }

    /// Projection onto `E` along g-lines.
    pub fn project(&self, p: &Point) -> Result<Point> {
        let (w, _) = self.coords(p)?;
        Ok(self.point(w, 0.0))
    }

    /// Reflection in the geodesic orthogonal to `g` at arclength `s0`.
    pub fn reflect(&self, p: &Point, s0: f64) -> Result<Point> {
        let (w, s) = self.coords(p)?;
        Ok(self.point(w, 2.0 * s0 - s))
    }

    /// Ratio of fiber λ-measure to `s`-length on the g-line at `w`.
    pub fn weight(&self, w: f64) -> f64 {
        match self {
            SteinerFrame::Euclidean { .. } => 1.0,
            SteinerFrame::Hyperbolic { .. } => w.cosh(),
        }
    }

    /// Half-length in `s` of the chord cut from the g-line at `w` by the
    /// ball of radius `r` about `point(w0, 0)`.
    pub fn ball_half_chord(&self, w0: f64, r: f64, w: f64) -> Option<f64> {
        match self {
            SteinerFrame::Euclidean { .. } => {
                let q = r * r - (w - w0) * (w - w0);
                (q >= 0.0).then(|| q.sqrt())
            }
            SteinerFrame::Hyperbolic { .. } => {
                let c = (r.cosh() + w.sinh() * w0.sinh()) / (w.cosh() * w0.cosh());
                (c >= 1.0).then(|| c.acosh())
            }
        }
    }

    fn fiber(&self, w: f64) -> FiberLine {
        match *self {
            SteinerFrame::Euclidean { origin, along, across } => FiberLine::Euclidean {
                base: origin + across * w,
                dir: along,
            },
            SteinerFrame::Hyperbolic { origin, along, across } => FiberLine::Hyperbolic {
                o: origin,
                t: along,
                n: across,
                u: w,
            },
        }
    }

    fn check(&self, domain: &Domain) -> Result<()> {
        if domain.space() != self.space() {
            return Err(Error::SpaceMismatch);
        }
        Ok(())
    }
}

/// Closed intervals in `s` making up `Ω ∩ h_w`, sorted and disjoint.
pub fn fiber_intervals(domain: &Domain, frame: &SteinerFrame, w: f64) -> Result<Vec<(f64, f64)>> {
    frame.check(domain)?;
    Ok(intervals_unchecked(domain, frame, w))
}

fn intervals_unchecked(domain: &Domain, frame: &SteinerFrame, w: f64) -> Vec<(f64, f64)> {
    let line = frame.fiber(w);
    let mut cuts = Vec::new();
    for sup in domain.supports() {
        sup.fiber_crossings(&line, &mut cuts);
    }
    cuts.retain(|s| s.is_finite());
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();
    let mut out: Vec<(f64, f64)> = Vec::new();
    for pair in cuts.windows(2) {
        let (a, b) = (pair[0], pair[1]);
        if domain.contains_closed(&line.point(0.5 * (a + b))) {
            match out.last_mut() {
                Some(last) if last.1 == a => last.1 = b,
                _ => out.push((a, b)),
            }
        }
    }
    out
}

fn total_length(iv: &[(f64, f64)]) -> f64 {
    iv.iter().map(|(a, b)| b - a).sum()
}

fn overlap(a: &[(f64, f64)], b: &[(f64, f64)]) -> f64 {
    let (mut i, mut j, mut acc) = (0, 0, 0.0);
    while i < a.len() && j < b.len() {
        let lo = a[i].0.max(b[j].0);
        let hi = a[i].1.min(b[j].1);
        if hi > lo {
            acc += hi - lo;
        }
        if a[i].1 < b[j].1 {
            i += 1;
        } else {
            j += 1;
        }
    }
    acc
}

fn overlap_one(a: &[(f64, f64)], lo: f64, hi: f64) -> f64 {
    a.iter().map(|&(p, q)| (q.min(hi) - p.max(lo)).max(0.0)).sum()
}

/// Fiber length `ℓ(w)` in `s` units.
pub fn fiber_length(domain: &Domain, frame: &SteinerFrame, w: f64) -> Result<f64> {
    Ok(total_length(&fiber_intervals(domain, frame, w)?))
}

/// The `w`-range met by the domain (padded) and the `w` of its corners.
fn w_extent(domain: &Domain, frame: &SteinerFrame) -> Result<(f64, f64, Vec<f64>)> {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for p in domain.boundary_samples(128) {
        let (w, _) = frame.coords(&p)?;
        lo = lo.min(w);
        hi = hi.max(w);
    }
    let corners = domain
        .corners()
        .iter()
        .map(|p| frame.coords(p).map(|c| c.0))
        .collect::<Result<Vec<_>>>()?;
    let pad = 0.02 * (hi - lo) + 1e-9 * domain.diameter();
    Ok((lo - pad, hi + pad, corners))
}

/// Integral of `frame.weight(w)·f(w)` over the domain's `w`-range.
fn fiber_integral<F>(domain: &Domain, frame: &SteinerFrame, rel_tol: f64, f: F) -> Result<(f64, f64)>
where
    F: Fn(f64, &[(f64, f64)]) -> f64,
{
    frame.check(domain)?;
    let (lo, hi, corners) = w_extent(domain, frame)?;
    let pts = breakpoints(lo, hi, corners);
    let scale = domain.area().max(1e-300);
    let mut quad = Adaptive::new(rel_tol, 1e-15 * scale);
    quad.max_panels = 20_000;
    let est = quad.integrate(|w| frame.weight(w) * f(w, &intervals_unchecked(domain, frame, w)), &pts);
    Ok((est.value, est.error))
}

/// `∫ λ(Ω ∩ h_w) dw`: the domain area by fiber integration.
pub fn fibered_area(domain: &Domain, frame: &SteinerFrame) -> Result<f64> {
    Ok(fiber_integral(domain, frame, 1e-11, |_, iv| total_length(iv))?.0)
}

#[derive(Clone, Copy, Debug)]
pub struct SteinerConfig {
    /// Initial number of sampled fibers.
    pub fibers: usize,
    /// Target relative area error of the polygonal output.
    pub rel_tol: f64,
    pub max_fibers: usize,
}

impl Default for SteinerConfig {
    fn default() -> Self {
        SteinerConfig {
            fibers: 64,
            rel_tol: 1e-7,
            max_fibers: 40_000,
        }
    }
}

impl SteinerConfig {
    pub fn with_tol(rel_tol: f64) -> Self {
        SteinerConfig {
            rel_tol,
            ..Default::default()
        }
    }
}

/// Polygonal Steiner symmetral.
#[derive(Clone, Debug)]
pub struct Symmetrized {
    pub domain: Domain,
    pub frame: SteinerFrame,
    /// Sampled `(w, ℓ(w))`, ascending in `w`, including component ends.
    pub profile: Vec<(f64, f64)>,
    /// Estimated area between the polygon and the exact symmetral.
    pub approximation_area: f64,
    /// Largest sampled distance between polygon edges and the exact boundary.
    pub hausdorff: f64,
    /// `|area(polygon) − area(Ω)|`.
    pub area_error: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
enum Kind {
    Outside,
    Inside,
    End,
}

#[derive(Clone, Copy, Debug)]
struct Node {
    w: f64,
    len: f64,
    kind: Kind,
    /// The span to the next node needs no further refinement.
    settled: bool,
}

struct Profiler<'a> {
    domain: &'a Domain,
    frame: &'a SteinerFrame,
    zero: f64,
}

impl Profiler<'_> {
    fn node(&self, w: f64) -> Node {
        let len = total_length(&intervals_unchecked(self.domain, self.frame, w));
        Node {
            w,
            len,
            kind: if len > self.zero { Kind::Inside } else { Kind::Outside },
            settled: false,
        }
    }

    fn vertex(&self, n: &Node, sign: f64) -> Point {
        self.frame.point(n.w, sign * 0.5 * n.len)
    }

    /// Distance from the exact top boundary at the mid-fiber to the chord.
    fn chord_deviation(&self, a: &Node, b: &Node, mid: &Node) -> Result<(f64, f64)> {
        let (p, q, m) = (self.vertex(a, 1.0), self.vertex(b, 1.0), self.vertex(mid, 1.0));
        Ok(match (p, q, m) {
            (Point::Euclidean(p), Point::Euclidean(q), Point::Euclidean(m)) => (plane::segment_distance(m, p, q), p.dist(q)),
            (Point::Hyperbolic(p), Point::Hyperbolic(q), Point::Hyperbolic(m)) => {
                (hyperbolic::segment_distance(m, p, q), p.dist(q))
            }
            _ => return Err(Error::SpaceMismatch),
        })
    }
}

/// Steiner symmetrization of `domain` with respect to `frame`.
///
/// Fibers are sampled adaptively until the chord error of the output polygon
/// is below `cfg.rel_tol · area(Ω)`. Components of the output are separated
/// by fibers missing the domain.
pub fn steiner(domain: &Domain, frame: &SteinerFrame, cfg: &SteinerConfig) -> Result<Symmetrized> {
    frame.check(domain)?;
    if cfg.fibers < 2 || !(cfg.rel_tol > 0.0) || cfg.max_fibers < cfg.fibers {
        return Err(Error::arg("Steiner configuration needs ≥ 2 fibers and a positive tolerance"));
    }
    let scale = domain.diameter();
    let area = domain.area();
    let prof = Profiler {
        domain,
        frame,
        zero: 1e-13 * scale,
    };
    let (lo, hi, corners) = w_extent(domain, frame)?;
    let span = hi - lo;
    let mut ws: Vec<f64> = (0..=cfg.fibers).map(|k| lo + span * k as f64 / cfg.fibers as f64).collect();
    ws.extend(corners.iter().copied().filter(|w| *w > lo && *w < hi));
    ws.sort_by(f64::total_cmp);
    ws.dedup();
    let mut nodes: Vec<Node> = ws.par_iter().map(|&w| prof.node(w)).collect();
    let target = cfg.rel_tol * area;
    let wtol = 1e-14 * scale.max(1.0);
    let mut approx = 0.0;
    let mut hausdorff: f64 = 0.0;
    loop {
        locate_ends(&prof, &mut nodes, wtol);
        let mut pending: Vec<usize> = (0..nodes.len() - 1)
            .filter(|&i| !nodes[i].settled && nodes[i].kind != Kind::Outside && nodes[i + 1].kind != Kind::Outside)
            .collect();
        if pending.is_empty() {
            break;
        }
        if nodes.len() > cfg.max_fibers {
            return Err(Error::RefinementRequired(format!(
                "Steiner output needs more than {} fibers",
                cfg.max_fibers
            )));
        }
        let mids: Vec<Node> = pending
            .par_iter()
            .map(|&i| prof.node(0.5 * (nodes[i].w + nodes[i + 1].w)))
            .collect();
        let mut inserted = Vec::new();
        for (&i, mid) in pending.iter().zip(&mids) {
            let (a, b) = (nodes[i], nodes[i + 1]);
            let (dev, chord) = if mid.kind == Kind::Outside {
                (f64::INFINITY, 0.0)
            } else {
                prof.chord_deviation(&a, &b, mid)?
            };
            let err = 4.0 / 3.0 * dev * chord;
            let allowed = target * ((b.w - a.w) / span).max(chord / (4.0 * scale));
            if err <= allowed || b.w - a.w <= wtol {
                nodes[i].settled = true;
                approx += err;
                hausdorff = hausdorff.max(dev);
            } else {
                inserted.push(*mid);
            }
        }
        pending.clear();
        nodes.extend(inserted);
        nodes.sort_by(|a, b| a.w.total_cmp(&b.w));
    }
    if frame.space() == Space::Euclidean2 {
        drop_collinear(&mut nodes, 1e-13 * scale);
    }
    let out = assemble(&prof, &nodes, 1e-12 * scale)?;
    let area_error = (out.area() - area).abs();
    if area_error > 0.01 * area {
        return Err(Error::RefinementRequired(format!(
            "Steiner output area off by {:.3e} of {:.6}",
            area_error, area
        )));
    }
    Ok(Symmetrized {
        domain: out,
        frame: *frame,
        profile: nodes.iter().filter(|n| n.kind != Kind::Outside).map(|n| (n.w, n.len)).collect(),
        approximation_area: approx,
        hausdorff,
        area_error,
    })
}

/// Replaces every transition between an outside node and an inside node by
/// an end node located by bisection on the inside of the transition.
fn locate_ends(prof: &Profiler, nodes: &mut Vec<Node>, wtol: f64) {
    let mut ends = Vec::new();
    for i in 0..nodes.len() - 1 {
        let (a, b) = (nodes[i], nodes[i + 1]);
        let crossing = match (a.kind, b.kind) {
            (Kind::Outside, Kind::Inside) => Some((a.w, b.w)),
            (Kind::Inside, Kind::Outside) => Some((b.w, a.w)),
            _ => None,
        };
        if let Some((mut out, mut inn)) = crossing {
            let mut last_inside = b;
            if a.kind == Kind::Inside {
                last_inside = a;
            }
            while (inn - out).abs() > wtol {
                let m = 0.5 * (inn + out);
                if m == inn || m == out {
                    break;
                }
                let n = prof.node(m);
                if n.kind == Kind::Inside {
                    inn = m;
                    last_inside = n;
                } else {
                    out = m;
                }
            }
            last_inside.kind = Kind::End;
            last_inside.w = inn;
            ends.push(last_inside);
        }
    }
    if ends.is_empty() {
        return;
    }
    for e in ends {
        match nodes.iter_mut().find(|n| n.w == e.w) {
            Some(n) => n.kind = Kind::End,
            None => nodes.push(e),
        }
    }
    nodes.sort_by(|a, b| a.w.total_cmp(&b.w));
    // an end node must border the outside; interior duplicates are demoted
    for i in 1..nodes.len() - 1 {
        if nodes[i].kind == Kind::End && nodes[i - 1].kind != Kind::Outside && nodes[i + 1].kind != Kind::Outside {
            nodes[i].kind = Kind::Inside;
        }
    }
    for i in 0..nodes.len() - 1 {
        if nodes[i].kind == Kind::Outside || nodes[i + 1].kind == Kind::Outside {
            nodes[i].settled = true;
        }
    }
}

fn drop_collinear(nodes: &mut Vec<Node>, tol: f64) {
    let mut kept: Vec<Node> = Vec::with_capacity(nodes.len());
    for i in 0..nodes.len() {
        let n = nodes[i];
        let removable = n.kind == Kind::Inside
            && i + 1 < nodes.len()
            && nodes[i + 1].kind != Kind::Outside
            && kept.last().is_some_and(|p| p.kind != Kind::Outside);
        if removable {
            let (p, q) = (kept.last().expect("checked above"), nodes[i + 1]);
            let lin = p.len + (q.len - p.len) * (n.w - p.w) / (q.w - p.w);
            if (lin - n.len).abs() <= tol {
                continue;
            }
        }
        kept.push(n);
    }
    *nodes = kept;
}

fn assemble(prof: &Profiler, nodes: &[Node], tip: f64) -> Result<Domain> {
    let mut parts = Vec::new();
    let mut run: Vec<Node> = Vec::new();
    let flush = |run: &mut Vec<Node>, parts: &mut Vec<Domain>| -> Result<()> {
        if run.len() < 2 {
            run.clear();
            return Ok(());
        }
        let mut pts: Vec<Point> = Vec::with_capacity(2 * run.len());
        let is_tip = |n: &Node| n.len <= 2.0 * tip;
        for n in run.iter() {
            pts.push(prof.vertex(n, if is_tip(n) { 0.0 } else { 1.0 }));
        }
        for n in run.iter().rev() {
            if !is_tip(n) {
                pts.push(prof.vertex(n, -1.0));
            }
        }
        if pts.len() < 3 {
            run.clear();
            return Ok(());
        }
        parts.push(Domain::polygon(&pts)?);
        run.clear();
        Ok(())
    };
    for n in nodes {
        if n.kind == Kind::Outside {
            flush(&mut run, &mut parts)?;
        } else {
            run.push(*n);
        }
    }
    flush(&mut run, &mut parts)?;
    match parts.len() {
        0 => Err(Error::DegenerateDomain("Steiner symmetral is empty".into())),
        1 => Ok(parts.pop().expect("one part")),
        _ => Domain::union(&parts),
    }
}

/// Outcome of an (S1) check.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct MonotonicityCheck {
    pub holds: bool,
    pub fibers: usize,
    /// Largest `ℓ_A(w) − ℓ_B(w)` found (≤ 0 when nested).
    pub worst_excess: f64,
}

/// Checks that `S(A) ⊂ S(B)` fiber by fiber. The symmetrals are centered
/// intervals, so nesting reduces to `ℓ_A(w) ≤ ℓ_B(w)`. Fails with an
/// argument error when sampling shows `A ⊄ B`.
pub fn verify_s1(a: &Domain, b: &Domain, frame: &SteinerFrame, fibers: usize) -> Result<MonotonicityCheck> {
    frame.check(a)?;
    frame.check(b)?;
    let tol = 1e-10 * b.diameter();
    for p in a.boundary_samples(256) {
        if !b.contains_closed(&p) && b.boundary_distance(&p)? > tol {
            return Err(Error::arg("first domain is not contained in the second"));
        }
    }
    let (lo, hi, corners) = w_extent(a, frame)?;
    let mut ws: Vec<f64> = (0..=fibers.max(2)).map(|k| lo + (hi - lo) * k as f64 / fibers.max(2) as f64).collect();
    ws.extend(corners);
    let excess = ws
        .par_iter()
        .map(|&w| total_length(&intervals_unchecked(a, frame, w)) - total_length(&intervals_unchecked(b, frame, w)))
        .reduce(|| f64::NEG_INFINITY, f64::max);
    Ok(MonotonicityCheck {
        holds: excess <= tol,
        fibers: ws.len(),
        worst_excess: excess,
    })
}

/// Volumes of `B_r(x) ∩ Ω` and `B_r(π(x)) ∩ S(Ω)` for one radius.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct BallVolumes {
    pub r: f64,
    pub original: f64,
    pub symmetrized: f64,
    /// `symmetrized − original`, integrated from a pointwise non-negative
    /// fiber integrand.
    pub gap: f64,
    pub error: f64,
}

/// Ball volumes on a grid of radii, computed fiber by fiber against the
/// exact symmetral.
pub fn ball_volumes(domain: &Domain, frame: &SteinerFrame, x: &Point, radii: &[f64]) -> Result<Vec<BallVolumes>> {
    frame.check(domain)?;
    let (wx, sx) = frame.coords(x)?;
    let corners: Vec<f64> = w_extent(domain, frame)?.2;
    let scale = domain.area();
    radii
        .par_iter()
        .map(|&r| {
            if !(r >= 0.0) || !r.is_finite() {
                return Err(Error::arg("ball radius must be finite and non-negative"));
            }
            let pts = breakpoints(wx - r, wx + r, corners.iter().copied().chain([wx]));
            let mut quad = Adaptive::new(1e-10, 1e-14 * scale);
            quad.max_panels = 20_000;
            let fiber = |w: f64| -> (f64, f64) {
                let Some(h) = frame.ball_half_chord(wx, r, w) else {
                    return (0.0, 0.0);
                };
                let iv = intervals_unchecked(domain, frame, w);
                let orig = overlap_one(&iv, sx - h, sx + h);
                let sym = total_length(&iv).min(2.0 * h);
                (frame.weight(w) * orig, frame.weight(w) * sym)
            };
            let o = quad.integrate(|w| fiber(w).0, &pts);
            let s = quad.integrate(|w| fiber(w).1, &pts);
            let g = quad.integrate(
                |w| {
                    let (a, b) = fiber(w);
                    b - a
                },
                &pts,
            );
            Ok(BallVolumes {
                r,
                original: o.value,
                symmetrized: s.value,
                gap: g.value,
                error: o.error + s.error + g.error,
            })
        })
        .collect()
}

/// `vol(Ω Δ s_x(Ω))` for the reflection `s_x` in the geodesic orthogonal to
/// `g` through `x`.
pub fn essential_asymmetry(domain: &Domain, frame: &SteinerFrame, x: &Point) -> Result<f64> {
    let (_, sx) = frame.coords(x)?;
    let (v, _) = fiber_integral(domain, frame, 1e-10, |_, iv| {
        let mirrored: Vec<(f64, f64)> = iv.iter().rev().map(|&(a, b)| (2.0 * sx - b, 2.0 * sx - a)).collect();
        (2.0 * (total_length(iv) - overlap(iv, &mirrored))).max(0.0)
    })?;
    Ok(v.max(0.0))
}

/// Compares `f_Ω(t, x)` (first) with `f_{S(Ω)}(t, π(x))` (second) on the
/// given times. Budgets include the area between the output polygon and
/// the exact symmetral, weighted by the kernel maximum.
pub fn verify_symmcomp(
    domain: &Domain,
    frame: &SteinerFrame,
    x: &Point,
    times: &[f64],
    steiner_cfg: &SteinerConfig,
    quad: &QuadratureConfig,
) -> Result<ComparisonVerdict> {
    if !domain.contains_closed(x) {
        return Err(Error::arg("comparison point must lie in the domain"));
    }
    let sym = steiner(domain, frame, steiner_cfg)?;
    let px = frame.project(x)?;
    let spill = sym.approximation_area.max(sym.area_error);
    let trace = times
        .par_iter()
        .map(|&t| {
            let a = Field::tabulated(domain, t, 0.0, *quad)?.at(x)?;
            let b = Field::tabulated(&sym.domain, t, 0.0, *quad)?.at(&px)?;
            let peak = TimeKernel::direct(domain.space(), t)?.ln_density(0.0)?.exp();
            let mut m = logit_margin(t, &a, &b);
            let f = b.value.clamp(1e-300, 1.0);
            m.budget += spill * peak / (f * (1.0 - f).max(b.complement).max(1e-300));
            Ok(m)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut v = grid_verdict(trace, Witness::Steiner);
    let asym = essential_asymmetry(domain, frame, x)?;
    v.details.insert("essential_asymmetry".into(), asym);
    v.details.insert("approximation_area".into(), sym.approximation_area);
    v.details.insert("hausdorff".into(), sym.hausdorff);
    v.details.insert("area_error".into(), sym.area_error);
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square(cx: f64) -> Domain {
        Domain::polygon(&[
            Point::e(cx - 1.0, -1.0),
            Point::e(cx + 1.0, -1.0),
            Point::e(cx + 1.0, 1.0),
            Point::e(cx - 1.0, 1.0),
        ])
        .unwrap()
    }

    #[test]
    fn hyperbolic_coordinates_round_trip() {
        let f = SteinerFrame::hyperbolic(M3::from_chart(0.2, -0.1), 0.7);
        for &(w, s) in &[(0.0, 0.0), (0.5, -1.2), (-1.1, 0.3)] {
            let (w2, s2) = f.coords(&f.point(w, s)).unwrap();
            assert!((w - w2).abs() < 1e-12 && (s - s2).abs() < 1e-12);
        }
    }

    #[test]
    fn translated_square_symmetrizes_to_centered_square() {
        let f = SteinerFrame::euclidean(Vec2::new(0.0, 0.0), Vec2::new(1.0, 0.0)).unwrap();
        let s = steiner(&square(0.5), &f, &SteinerConfig::default()).unwrap();
        assert!(s.area_error < 1e-12, "{}", s.area_error);
        assert!(s.domain.contains_closed(&Point::e(0.99, 0.99)));
        assert!(!s.domain.contains_closed(&Point::e(1.01, 0.0)));
    }

    #[test]
    fn asymmetry_of_translated_square() {
        let f = SteinerFrame::euclidean(Vec2::new(0.0, 0.0), Vec2::new(1.0, 0.0)).unwrap();
        let a = essential_asymmetry(&square(0.5), &f, &Point::e(0.0, 0.0)).unwrap();
        assert!((a - 4.0).abs() < 1e-8, "{a}");
        let b = essential_asymmetry(&square(0.0), &f, &Point::e(0.0, 0.3)).unwrap();
        assert!(b.abs() < 1e-10);
    }
}
