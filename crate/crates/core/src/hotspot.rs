//! Hottest points of a domain, their motion in time, and the closed-form
//! dynamics of the square dumbbell.

use std::cmp::Ordering;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::plane::{convex_hull, point_in_polygon, Vec2};
use crate::geometry::{Domain, Point, Space};
use crate::heat::{temperature_gradient_hessian, Field, QuadratureConfig, Temperature};
use crate::numeric::optimize::nelder_mead;
use crate::numeric::roots::brent;
use crate::numeric::special::{erf, erf_diff, ln_1m_exp, ln_erfc};

/// `ln f − ln(1 − f)`: increasing in `f` and accurate at both ends.
pub fn logit(f: &Temperature) -> f64 {
    f.ln_value - f.ln_complement
}

/// Orders temperatures by heat.
pub fn compare_heat(a: &Temperature, b: &Temperature) -> Ordering {
    logit(a).total_cmp(&logit(b))
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct SearchConfig {
    /// Seeds per axis of the grid over the convex hull.
    pub grid: usize,
    /// Merge radius relative to the diameter.
    pub merge: f64,
    /// Step tolerance relative to the diameter.
    pub xtol: f64,
    /// Relative logit gap within which two maxima count as equal.
    pub tie: f64,
    pub max_iter: usize,
    pub quad: QuadratureConfig,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            grid: 7,
            merge: 1e-6,
            xtol: 1e-11,
            tie: 1e-9,
            max_iter: 200,
            quad: QuadratureConfig::default(),
        }
    }
}

/// A continuum of hottest points on a circle.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct Ring {
    pub center: Point,
    pub radius: f64,
}

/// `H(t)` as a list of clusters, with a ring when the maxima form one.
#[derive(Clone, Debug, Serialize)]
pub struct Hotspots {
    pub t: f64,
    pub points: Vec<Point>,
    pub ring: Option<Ring>,
    pub temperature: Temperature,
}

impl Hotspots {
    pub fn is_single(&self) -> bool {
        self.ring.is_none() && self.points.len() == 1
    }

    /// Number of separate pieces of `H(t)`.
    pub fn pieces(&self) -> usize {
        if self.ring.is_some() {
            1
        } else {
            self.points.len()
        }
    }
}

struct Ascent {
    point: Point,
    temp: Temperature,
}

fn hull_of(domain: &Domain) -> Vec<Vec2> {
    let samples: Vec<Vec2> = domain.boundary_samples(32).iter().map(|p| p.chart()).collect();
    convex_hull(&samples)
}

fn grid_seeds(domain: &Domain, n: usize) -> Vec<Point> {
    let hull = hull_of(domain);
    let (lo, hi) = domain.chart_box();
    let n = n.max(2);
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let c = Vec2::new(
                lo.x + (i as f64 + 0.5) / n as f64 * (hi.x - lo.x),
                lo.y + (j as f64 + 0.5) / n as f64 * (hi.y - lo.y),
            );
            if point_in_polygon(c, &hull) {
                out.push(Point::from_chart(domain.space(), c));
            }
        }
    }
    out
}

fn negative_definite(h: &[[f64; 2]; 2]) -> bool {
    h[0][0] < 0.0 && h[0][0] * h[1][1] - h[0][1] * h[1][0] > 0.0
}

/// Newton step for `H − μI` with the smallest shift `μ ≥ 0` that makes
/// it negative definite; flat directions such as a ring of maxima keep
/// the radial Newton step. `None` when `H` has no negative curvature.
fn shifted_newton_step(h: &[[f64; 2]; 2], g: [f64; 2]) -> Option<Vec2> {
    let (a, b, d) = (h[0][0], 0.5 * (h[0][1] + h[1][0]), h[1][1]);
    let mid = 0.5 * (a + d);
    let rad = (0.25 * (a - d) * (a - d) + b * b).sqrt();
    let (lo, hi) = (mid - rad, mid + rad);
    if !(lo < 0.0) {
        return None;
    }
    let mu = if hi < 0.0 { 0.0 } else { hi + 1e-6 * lo.abs() };
    let (a, d) = (a - mu, d - mu);
    let det = a * d - b * b;
    if !(det > 0.0 && a < 0.0) {
        return None;
    }
    Some(Vec2::new(-(d * g[0] - b * g[1]) / det, -(-b * g[0] + a * g[1]) / det))
}

fn ascend_newton(domain: &Domain, field: &Field, x0: Vec2, cfg: &SearchConfig) -> Result<Ascent> {
    let diam = domain.diameter();
    let xtol = cfg.xtol * diam;
    let t = field.time();
    let at = |v: Vec2| field.at(&Point::Euclidean(v));
    let mut x = x0;
    let mut fx = at(x)?;
    let mut trust = 0.1 * diam;
    for _ in 0..cfg.max_iter {
        let (g, h) = temperature_gradient_hessian(domain, t, &Point::Euclidean(x))?;
        let gv = Vec2::new(g[0], g[1]);
        let gn = gv.norm();
        if gn == 0.0 || !gn.is_finite() {
            break;
        }
        let newton = shifted_newton_step(&h, g);
        let mut step = newton.unwrap_or(gv * (trust / gn));
        if step.norm() > trust {
            step = step * (trust / step.norm());
        }
        let mut accepted = None;
        for k in 0..40 {
            let y = x + step;
            let fy = at(y)?;
            if compare_heat(&fy, &fx) != Ordering::Less {
                accepted = Some((y, fy, k == 0));
                break;
            }
            step = step * 0.5;
        }
        let Some((y, fy, full)) = accepted else { break };
        let moved = step.norm();
        x = y;
        fx = fy;
        trust = if full { (2.0 * trust).min(diam) } else { moved.max(xtol) };
        if moved < xtol {
            break;
        }
    }
    Ok(Ascent {
        point: Point::Euclidean(x),
        temp: fx,
    })
}

fn ascend_simplex(domain: &Domain, field: &Field, x0: Point, cfg: &SearchConfig) -> Result<Ascent> {
    let space = domain.space();
    let (lo, hi) = domain.chart_box();
    let scale = (hi - lo).norm();
    let mut failure = None;
    let objective = |c: [f64; 2]| -> f64 {
        if space == Space::Hyperbolic2 && c[0].hypot(c[1]) >= 1.0 {
            return f64::INFINITY;
        }
        match field.at(&Point::from_chart(space, Vec2::new(c[0], c[1]))) {
            Ok(f) => -logit(&f),
            Err(e) => {
                failure.get_or_insert(e);
                f64::INFINITY
            }
        }
    };
    let c0 = x0.chart();
    let (best, _) = nelder_mead(objective, [c0.x, c0.y], 0.02 * scale, cfg.xtol * scale, 20 * cfg.max_iter);
    if let Some(e) = failure {
        return Err(e);
    }
    let point = Point::from_chart(space, Vec2::new(best[0], best[1]));
    Ok(Ascent {
        temp: field.at(&point)?,
        point,
    })
}

fn ascend(domain: &Domain, field: &Field, x0: Point, cfg: &SearchConfig, smooth: bool) -> Result<Ascent> {
    match x0 {
        Point::Euclidean(v) if smooth => ascend_newton(domain, field, v, cfg),
        _ => ascend_simplex(domain, field, x0, cfg),
    }
}

fn detect_ring(points: &[Point], diam: f64) -> Option<Ring> {
    if points.len() < 5 || points[0].space() != Space::Euclidean2 {
        return None;
    }
    let pts: Vec<Vec2> = points.iter().map(|p| p.chart()).collect();
    // algebraic circle fit: |p|² = 2c·p + k
    let rows: Vec<Vec<f64>> = pts.iter().map(|p| vec![2.0 * p.x, 2.0 * p.y, 1.0]).collect();
    let rhs: Vec<f64> = pts.iter().map(|p| p.norm2()).collect();
    let sol = crate::numeric::fit::least_squares(&rows, &rhs).ok()?;
    let c = Vec2::new(sol[0], sol[1]);
    let radius = (sol[2] + c.norm2()).max(0.0).sqrt();
    let spread = pts.iter().map(|p| (p.dist(c) - radius).abs()).fold(0.0, f64::max);
    let mut angles: Vec<f64> = pts.iter().map(|p| (*p - c).angle()).collect();
    angles.sort_by(f64::total_cmp);
    let max_gap = angles
        .windows(2)
        .map(|w| w[1] - w[0])
        .chain(std::iter::once(angles[0] + std::f64::consts::TAU - angles[angles.len() - 1]))
        .fold(0.0, f64::max);
    (spread < 1e-4 * diam && radius > 1e-4 * diam && max_gap < std::f64::consts::PI).then_some(Ring {
        center: Point::Euclidean(c),
        radius,
    })
}

fn assemble(domain: &Domain, t: f64, found: Vec<Ascent>, cfg: &SearchConfig) -> Result<Hotspots> {
    let diam = domain.diameter();
    let best = found
        .iter()
        .max_by(|a, b| compare_heat(&a.temp, &b.temp))
        .ok_or_else(|| Error::SearchFailure(format!("no seed converged at t = {t}")))?;
    let top = logit(&best.temp);
    let tie = cfg.tie * top.abs().max(1.0) + best.temp.rel_err + best.temp.rel_err_complement;
    let mut kept: Vec<&Ascent> = found.iter().filter(|a| top - logit(&a.temp) <= tie).collect();
    kept.sort_by(|a, b| {
        let (p, q) = (a.point.chart(), b.point.chart());
        p.x.total_cmp(&q.x).then(p.y.total_cmp(&q.y))
    });
    let mut reps: Vec<&Ascent> = Vec::new();
    for a in kept {
        match reps.iter_mut().find(|r| r.point.dist(&a.point).map(|d| d <= cfg.merge * diam).unwrap_or(false)) {
            Some(r) => {
                if compare_heat(&a.temp, &r.temp) == Ordering::Greater {
                    *r = a;
                }
            }
            None => reps.push(a),
        }
    }
    let points: Vec<Point> = reps.iter().map(|a| a.point).collect();
    Ok(Hotspots {
        t,
        ring: detect_ring(&points, diam),
        points,
        temperature: best.temp,
    })
}

fn search(domain: &Domain, t: f64, extra: &[Point], cfg: &SearchConfig) -> Result<Hotspots> {
    let mut seeds = grid_seeds(domain, cfg.grid);
    seeds.extend_from_slice(extra);
    search_from(domain, t, &seeds, cfg)
}

fn search_from(domain: &Domain, t: f64, seeds: &[Point], cfg: &SearchConfig) -> Result<Hotspots> {
    let field = Field::tabulated(domain, t, domain.diameter(), cfg.quad)?;
    let smooth = domain.space() == Space::Euclidean2 && domain.boundary_pieces().is_ok();
    let found: Vec<Ascent> = seeds
        .par_iter()
        .map(|s| ascend(domain, &field, *s, cfg, smooth))
        .collect::<Result<_>>()?;
    assemble(domain, t, found, cfg)
}

/// Multi-start maximisation of `f(t, ·)` over the convex hull.
pub fn hottest_points(domain: &Domain, t: f64, cfg: &SearchConfig) -> Result<Hotspots> {
    search(domain, t, &[], cfg)
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EventKind {
    /// The number of pieces of `H(t)` decreased.
    Merge,
    /// `H(t)` became a single point for the first time.
    Collapse,
    /// The number of pieces increased.
    Split,
}

#[derive(Clone, Debug, Serialize)]
pub struct Event {
    pub kind: EventKind,
    /// Refined event time.
    pub t: f64,
    /// Grid times bracketing the event.
    pub bracket: (f64, f64),
}

#[derive(Clone, Debug, Serialize)]
pub struct Trajectory {
    pub samples: Vec<Hotspots>,
    pub events: Vec<Event>,
}

/// Follows `H(t)` along an increasing time grid, seeding each step from
/// the previous one, and locates changes in the number of pieces.
pub fn track(domain: &Domain, times: &[f64], cfg: &SearchConfig) -> Result<Trajectory> {
    if times.is_empty() || times.windows(2).any(|w| !(w[1] > w[0])) || !(times[0] > 0.0) {
        return Err(Error::arg("time grid must be positive and increasing"));
    }
    let mut samples: Vec<Hotspots> = Vec::with_capacity(times.len());
    for &t in times {
        let prev = samples.last().map(|h| h.points.clone()).unwrap_or_default();
        samples.push(search(domain, t, &prev, cfg)?);
    }
    let mut events = Vec::new();
    let mut collapsed = samples[0].is_single();
    for w in samples.windows(2) {
        let (a, b) = (&w[0], &w[1]);
        let (pa, pb) = (a.pieces(), b.pieces());
        let ring_closes = a.ring.is_some() && b.is_single();
        if pa == pb && !ring_closes {
            continue;
        }
        let single_after = b.is_single();
        let kind = if pb > pa {
            EventKind::Split
        } else if single_after && !collapsed {
            EventKind::Collapse
        } else {
            EventKind::Merge
        };
        let before = |h: &Hotspots| h.pieces() == pa && (h.ring.is_some() == a.ring.is_some());
        let seeds: Vec<Point> = thin(&a.points, 12).into_iter().chain(thin(&b.points, 12)).collect();
        let t = refine_event(domain, a.t, b.t, &seeds, &before, cfg)?;
        collapsed |= single_after;
        events.push(Event {
            kind,
            t,
            bracket: (a.t, b.t),
        });
    }
    Ok(Trajectory { samples, events })
}

/// At most `n` points, evenly spaced through the list.
fn thin(points: &[Point], n: usize) -> Vec<Point> {
    if points.len() <= n {
        return points.to_vec();
    }
    (0..n).map(|k| points[k * points.len() / n]).collect()
}

fn refine_event(
    domain: &Domain,
    mut lo: f64,
    mut hi: f64,
    seeds: &[Point],
    before: &dyn Fn(&Hotspots) -> bool,
    cfg: &SearchConfig,
) -> Result<f64> {
    for _ in 0..60 {
        if hi - lo <= 1e-5 * hi {
            break;
        }
        let mid = (lo * hi).sqrt();
        // Continuation from the maxima on both sides of the bracket.
        let h = search_from(domain, mid, seeds, cfg)?;
        if before(&h) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok((lo * hi).sqrt())
}

/// Outcome of the large-time uniqueness check.
#[derive(Clone, Debug, Serialize)]
pub struct Uniqueness {
    /// Smallest probe time from which `H(t)` is one point with a negative
    /// definite Hessian at every later probe.
    pub time: Option<f64>,
    /// `diam(hull)² / 2`: beyond it the Hessian is negative definite on the hull.
    pub sufficient_time: f64,
    /// `d/dt f(t, H(t)) < 0` at every probe from `time` on.
    pub decreasing: bool,
    pub hottest: Vec<Option<Point>>,
}

pub fn uniqueness_time_check(domain: &Domain, probes: &[f64], cfg: &SearchConfig) -> Result<Uniqueness> {
    if domain.space() != Space::Euclidean2 {
        return Err(Error::Unsupported("uniqueness check is Euclidean".into()));
    }
    let hull = hull_of(domain);
    let mut hull_diam: f64 = 0.0;
    for (i, p) in hull.iter().enumerate() {
        for q in &hull[i + 1..] {
            hull_diam = hull_diam.max(p.dist(*q));
        }
    }
    let mut single = Vec::with_capacity(probes.len());
    for &t in probes {
        let h = hottest_points(domain, t, cfg)?;
        let ok = if h.is_single() {
            let (_, hess) = temperature_gradient_hessian(domain, t, &h.points[0])?;
            negative_definite(&hess).then_some(h.points[0])
        } else {
            None
        };
        single.push(ok);
    }
    let first = (0..probes.len()).find(|&i| single[i..].iter().all(Option::is_some));
    let mut decreasing = first.is_some();
    if let Some(i0) = first {
        for (i, &t) in probes.iter().enumerate().skip(i0) {
            let x = single[i].expect("checked above");
            let dt = 1e-4 * t;
            let up = Field::new(domain, t + dt, cfg.quad)?.at(&x)?;
            let down = Field::new(domain, t - dt, cfg.quad)?.at(&x)?;
            decreasing &= compare_heat(&up, &down) == Ordering::Less;
        }
    }
    Ok(Uniqueness {
        time: first.map(|i| probes[i]),
        sufficient_time: 0.5 * hull_diam * hull_diam,
        decreasing,
        hottest: single,
    })
}

/// Square dumbbell: squares of side `2a` on `[b, b + 2a] × [−a, a]` and its
/// mirror image, joined by the bar `[−b, b] × [−c, c]`.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct DumbbellParams {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl DumbbellParams {
    pub fn new(a: f64, b: f64, c: f64) -> Result<Self> {
        if !(a > 0.0 && b > 0.0 && a.is_finite() && b.is_finite() && (0.0..a).contains(&c)) {
            return Err(Error::arg(format!("dumbbell needs a, b > 0 and 0 <= c < a (a={a}, b={b}, c={c})")));
        }
        Ok(DumbbellParams { a, b, c })
    }

    pub fn domain(&self) -> Result<Domain> {
        Domain::dumbbell(self.a, self.b, self.c)
    }

    fn far_end(&self) -> f64 {
        self.b + 2.0 * self.a
    }
}

fn ln_sinh(u: f64) -> f64 {
    if u < 20.0 {
        u.sinh().ln()
    } else {
        u - std::f64::consts::LN_2 + ln_1m_exp(-2.0 * u)
    }
}

fn check_time(t: f64) -> Result<()> {
    if t > 0.0 && t.is_finite() {
        Ok(())
    } else {
        Err(Error::arg(format!("time must be positive, got {t}")))
    }
}

/// `ln ∫_lo^hi e^{−y²/4t} dy` for `0 ≤ lo < hi`, stable for small `t`.
fn ln_gauss_segment(t: f64, lo: f64, hi: f64) -> f64 {
    let s = 2.0 * t.sqrt();
    let (u, v) = (lo / s, hi / s);
    let head = 0.5 * (std::f64::consts::PI * t).ln();
    if u < 1.0 {
        head + erf_diff(u, v).ln()
    } else {
        let (lu, lv) = (ln_erfc(u), ln_erfc(v));
        head + lu + ln_1m_exp(lv - lu)
    }
}

/// `ln h_t(x)` with `h_t(x) = sinh(bx/2t) / sinh((b+2a)x/2t)`.
pub fn dumbbell_ln_h(t: f64, x: f64, p: &DumbbellParams) -> Result<f64> {
    check_time(t)?;
    let x = x.abs();
    if x == 0.0 {
        return Ok((p.b / p.far_end()).ln());
    }
    Ok(ln_sinh(p.b * x / (2.0 * t)) - ln_sinh(p.far_end() * x / (2.0 * t)))
}

pub fn dumbbell_h(t: f64, x: f64, p: &DumbbellParams) -> Result<f64> {
    dumbbell_ln_h(t, x, p).map(f64::exp)
}

/// `ln g(t)`, the log of the right-hand side of the critical-point equation.
pub fn dumbbell_ln_g(t: f64, p: &DumbbellParams) -> Result<f64> {
    check_time(t)?;
    let DumbbellParams { a, b, c } = *p;
    let ratio = if c == 0.0 { 0.0 } else { ln_gauss_segment(t, 0.0, a) - ln_gauss_segment(t, c, a) };
    Ok(ratio - (a * a + a * b) / t)
}

pub fn dumbbell_g(t: f64, p: &DumbbellParams) -> Result<f64> {
    dumbbell_ln_g(t, p).map(f64::exp)
}

/// Positive hottest abscissa for `t < t₀`; `None` once `g(t) ≥ b/(b+2a)`.
pub fn dumbbell_x_of_t(t: f64, p: &DumbbellParams) -> Result<Option<f64>> {
    let lg = dumbbell_ln_g(t, p)?;
    if lg >= (p.b / p.far_end()).ln() {
        return Ok(None);
    }
    let hi = p.b + p.a;
    let f = |x: f64| dumbbell_ln_h(t, x, p).map(|v| v - lg).unwrap_or(f64::NAN);
    let lo = hi * 1e-300f64.max(f64::MIN_POSITIVE);
    Ok(Some(brent(f, lo, hi, 1e-15 * hi)?))
}

/// Closed form of `t₀` for `c = 0`.
pub fn dumbbell_t0_closed_form(a: f64, b: f64) -> f64 {
    let w = b + 2.0 * a;
    0.25 * (w * w - b * b) / (w.ln() - b.ln())
}

/// The collapse time: unique root of `g(t₀) = b/(b+2a)`.
pub fn dumbbell_t0(p: &DumbbellParams) -> Result<f64> {
    let target = (p.b / p.far_end()).ln();
    let f = |lt: f64| dumbbell_ln_g(lt.exp(), p).map(|v| v - target).unwrap_or(f64::NAN);
    let guess = dumbbell_t0_closed_form(p.a, p.b).ln();
    let (mut lo, mut hi) = (guess - 1.0, guess + 1.0);
    for _ in 0..200 {
        if f(lo) < 0.0 {
            break;
        }
        lo -= 1.0;
    }
    for _ in 0..200 {
        if f(hi) > 0.0 {
            break;
        }
        hi += 1.0;
    }
    Ok(brent(f, lo, hi, 1e-15)?.exp())
}

/// `f(t, (x, 0))` on the dumbbell axis from the product of error functions.
pub fn dumbbell_axis_temperature(t: f64, x: f64, p: &DumbbellParams) -> Result<f64> {
    check_time(t)?;
    let DumbbellParams { a, b, c } = *p;
    let s = 2.0 * t.sqrt();
    let w = p.far_end();
    let span = |lo: f64| erf_diff((lo - x) / s, (w - x) / s) + erf_diff((lo + x) / s, (w + x) / s);
    let (ec, ea) = (erf(c / s), erf(a / s));
    Ok(0.5 * (ec * span(0.0) + (ea - ec) * span(b)))
}
