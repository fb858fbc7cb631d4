//! Comparison of initial heat between two triples: the geometric criteria
//! and a numeric check on logarithmic time grids.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{Domain, Location, Point};
use crate::heat::{temperature, QuadratureConfig, Temperature, Triple};
use crate::hotspot::{hottest_points, logit, SearchConfig};
use crate::numeric::fit::least_squares;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    StrictlyHotter,
    HotterOrEqual,
    Inconclusive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Witness {
    Theorem1,
    Theorem2,
    CorollaryComplement,
    MeanCurvature,
    Momentum,
    NumericGrid,
    Steiner,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    First,
    Second,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::First => Side::Second,
            Side::Second => Side::First,
        }
    }
}

/// One comparison sample: `margin = first − second` against its budget.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct MarginSample {
    /// Time or radius of the sample.
    pub at: f64,
    pub first: f64,
    pub second: f64,
    pub margin: f64,
    pub budget: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ComparisonVerdict {
    pub relation: Relation,
    /// The hotter triple; `None` for ties and inconclusive outcomes.
    pub hotter: Option<Side>,
    pub witness: Witness,
    /// Horizon of the numeric grid.
    pub tau: Option<f64>,
    /// Smallest margin in favour of `hotter` (signed `first − second` otherwise).
    pub min_margin: f64,
    pub trace: Vec<MarginSample>,
    pub details: BTreeMap<String, f64>,
}

impl ComparisonVerdict {
    fn new(relation: Relation, hotter: Option<Side>, witness: Witness, min_margin: f64) -> Self {
        ComparisonVerdict {
            relation,
            hotter,
            witness,
            tau: None,
            min_margin,
            trace: Vec::new(),
            details: BTreeMap::new(),
        }
    }

    pub fn is_strict(&self, side: Side) -> bool {
        self.relation == Relation::StrictlyHotter && self.hotter == Some(side)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("verdicts serialize")
    }

    /// The same verdict with the roles of the triples exchanged.
    pub fn swapped(mut self) -> Self {
        self.hotter = self.hotter.map(Side::other);
        for s in &mut self.trace {
            std::mem::swap(&mut s.first, &mut s.second);
            s.margin = -s.margin;
        }
        if self.hotter.is_none() {
            self.min_margin = -self.min_margin;
        }
        self
    }
}

/// Verdict from a signed quantity where larger favours the first triple.
fn by_sign(diff: f64, tol: f64, witness: Witness) -> ComparisonVerdict {
    if diff > tol {
        ComparisonVerdict::new(Relation::StrictlyHotter, Some(Side::First), witness, diff)
    } else if diff < -tol {
        ComparisonVerdict::new(Relation::StrictlyHotter, Some(Side::Second), witness, -diff)
    } else {
        ComparisonVerdict::new(Relation::Inconclusive, None, witness, diff)
    }
}

/// Larger distance from the complement wins. The injectivity radius is
/// infinite in both model planes, so that hypothesis always holds.
pub fn criterion_theorem1(t1: &Triple, t2: &Triple) -> Result<ComparisonVerdict> {
    let r1 = t1.domain.distance_from_complement(&t1.point)?;
    let r2 = t2.domain.distance_from_complement(&t2.point)?;
    let mut v = by_sign(r1 - r2, 1e-12 * r1.max(r2).max(f64::MIN_POSITIVE), Witness::Theorem1);
    v.details.insert("distance_from_complement_first".into(), r1);
    v.details.insert("distance_from_complement_second".into(), r2);
    v.details.insert("injectivity_radius".into(), f64::INFINITY);
    Ok(v)
}

/// For points off the domains: the smaller distance to the domain wins.
pub fn criterion_complement(t1: &Triple, t2: &Triple) -> Result<ComparisonVerdict> {
    for t in [t1, t2] {
        if t.domain.contains(&t.point)? == Location::Inside {
            return Err(Error::arg("complement criterion needs points outside the domains"));
        }
    }
    let d1 = t1.domain.distance_to(&t1.point)?;
    let d2 = t2.domain.distance_to(&t2.point)?;
    let mut v = by_sign(d2 - d1, 1e-12 * d1.max(d2).max(f64::MIN_POSITIVE), Witness::CorollaryComplement);
    v.details.insert("distance_to_domain_first".into(), d1);
    v.details.insert("distance_to_domain_second".into(), d2);
    Ok(v)
}

fn sphere_budget(t: &Triple, r: f64) -> f64 {
    1e-12 * t.space().circumference(r)
}

/// Compares spherical area functions: `A₁ ≥ A₂` on `(0, R]` together with
/// `A₁ > A₂` on `(R, R̃)` makes the first triple strictly hotter, and
/// symmetrically for the second.
pub fn criterion_theorem2(t1: &Triple, t2: &Triple, r: f64, r_tilde: f64) -> Result<ComparisonVerdict> {
    if t1.space() != t2.space() {
        return Err(Error::SpaceMismatch);
    }
    if !(r > 0.0 && r_tilde > r && r_tilde.is_finite()) {
        return Err(Error::arg(format!("need 0 < R < R̃, got R = {r}, R̃ = {r_tilde}")));
    }
    let n = 400;
    let mut grid: Vec<f64> = (1..=n).map(|k| r * k as f64 / n as f64).collect();
    grid.extend((0..n).map(|k| r + (r_tilde - r) * (k as f64 + 0.5) / n as f64));
    let trace: Vec<MarginSample> = grid
        .par_iter()
        .map(|&s| {
            let a1 = t1.domain.spherical_area(&t1.point, s)?;
            let a2 = t2.domain.spherical_area(&t2.point, s)?;
            Ok(MarginSample {
                at: s,
                first: a1,
                second: a2,
                margin: a1 - a2,
                budget: sphere_budget(t1, s) + sphere_budget(t2, s),
            })
        })
        .collect::<Result<_>>()?;
    let (inner, outer) = trace.split_at(n);
    let side_holds = |sign: f64| {
        let weak = inner.iter().all(|m| sign * m.margin >= -m.budget);
        let strict = outer.iter().all(|m| sign * m.margin > m.budget);
        let margin = outer.iter().map(|m| sign * m.margin).fold(f64::INFINITY, f64::min);
        (weak && strict, margin)
    };
    let (first, m1) = side_holds(1.0);
    let (second, m2) = side_holds(-1.0);
    let mut v = if first {
        ComparisonVerdict::new(Relation::StrictlyHotter, Some(Side::First), Witness::Theorem2, m1)
    } else if second {
        ComparisonVerdict::new(Relation::StrictlyHotter, Some(Side::Second), Witness::Theorem2, m2)
    } else {
        ComparisonVerdict::new(Relation::Inconclusive, None, Witness::Theorem2, m1)
    };
    v.details.insert("R".into(), r);
    v.details.insert("R_tilde".into(), r_tilde);
    v.trace = trace;
    Ok(v)
}

/// Boundary curvature recovered from `A(r) = πr − κr² + O(r³)`.
pub fn fitted_curvature(domain: &Domain, z: &Point, r0: f64) -> Result<f64> {
    let rs: Vec<f64> = (0..10).map(|k| r0 * 0.5f64.powi(k)).collect();
    let mut rows = Vec::new();
    let mut y = Vec::new();
    for &r in &rs {
        let a = domain.spherical_area(z, r)?;
        rows.push(vec![1.0, r, r * r]);
        y.push((std::f64::consts::PI * r - a) / (r * r));
    }
    Ok(least_squares(&rows, &y)?[0])
}

/// Smaller boundary curvature is initially hotter. Also reports the
/// curvature fitted from the spherical area function at both points.
pub fn mean_curvature_compare(domain: &Domain, z1: &Point, z2: &Point) -> Result<ComparisonVerdict> {
    let k1 = domain.boundary_curvature(z1)?;
    let k2 = domain.boundary_curvature(z2)?;
    let scale = |k: f64| 0.05 * (1.0 / k.abs().max(1e-300)).min(domain.diameter());
    let f1 = fitted_curvature(domain, z1, scale(k1))?;
    let f2 = fitted_curvature(domain, z2, scale(k2))?;
    let mut v = by_sign(k2 - k1, 1e-12 * k1.abs().max(k2.abs()).max(1e-300), Witness::MeanCurvature);
    v.details.insert("curvature_first".into(), k1);
    v.details.insert("curvature_second".into(), k2);
    v.details.insert("fitted_curvature_first".into(), f1);
    v.details.insert("fitted_curvature_second".into(), f2);
    Ok(v)
}

/// Logit margin and its error budget for two temperatures.
pub(crate) fn logit_margin(at: f64, a: &Temperature, b: &Temperature) -> MarginSample {
    let (la, lb) = (logit(a), logit(b));
    let budget = a.rel_err + a.rel_err_complement + b.rel_err + b.rel_err_complement + 1e-14 * (la.abs() + lb.abs());
    MarginSample {
        at,
        first: la,
        second: lb,
        margin: la - lb,
        budget,
    }
}

pub(crate) fn grid_verdict(trace: Vec<MarginSample>, witness: Witness) -> ComparisonVerdict {
    if trace.iter().any(|m| !m.margin.is_finite()) {
        let mut v = ComparisonVerdict::new(Relation::Inconclusive, None, witness, f64::NAN);
        v.trace = trace;
        return v;
    }
    let all = |p: &dyn Fn(&MarginSample) -> bool| trace.iter().all(p);
    let min_of = |sign: f64| trace.iter().map(|m| sign * m.margin).fold(f64::INFINITY, f64::min);
    let mut v = if all(&|m| m.margin > m.budget) {
        ComparisonVerdict::new(Relation::StrictlyHotter, Some(Side::First), witness, min_of(1.0))
    } else if all(&|m| m.margin < -m.budget) {
        ComparisonVerdict::new(Relation::StrictlyHotter, Some(Side::Second), witness, min_of(-1.0))
    } else if all(&|m| m.margin.abs() <= m.budget) {
        ComparisonVerdict::new(Relation::HotterOrEqual, None, witness, min_of(1.0))
    } else if all(&|m| m.margin >= -m.budget) {
        ComparisonVerdict::new(Relation::HotterOrEqual, Some(Side::First), witness, min_of(1.0))
    } else if all(&|m| m.margin <= m.budget) {
        ComparisonVerdict::new(Relation::HotterOrEqual, Some(Side::Second), witness, min_of(-1.0))
    } else {
        ComparisonVerdict::new(Relation::Inconclusive, None, witness, min_of(1.0))
    };
    v.trace = trace;
    v
}

fn margins_at(t1: &Triple, t2: &Triple, times: &[f64], cfg: &QuadratureConfig) -> Result<Vec<MarginSample>> {
    times
        .par_iter()
        .map(|&t| {
            let a = temperature(t1, t, cfg)?;
            let b = temperature(t2, t, cfg)?;
            Ok(logit_margin(t, &a, &b))
        })
        .collect()
}

fn sign_of(m: &MarginSample) -> i8 {
    if m.margin > m.budget {
        1
    } else if m.margin < -m.budget {
        -1
    } else {
        0
    }
}

/// Compares temperatures on `t = τ·2^{−k}`, `k = 0..=depth`. Without `τ`,
/// it starts at 1 and halves until the ordering is the same at 8
/// consecutive times.
pub fn initially_hotter_numeric(
    t1: &Triple,
    t2: &Triple,
    tau: Option<f64>,
    depth: usize,
    cfg: &QuadratureConfig,
) -> Result<ComparisonVerdict> {
    let tau = match tau {
        Some(tau) if tau > 0.0 && tau.is_finite() => tau,
        Some(tau) => return Err(Error::arg(format!("horizon must be positive, got {tau}"))),
        None => discover_tau(t1, t2, cfg)?,
    };
    let times: Vec<f64> = (0..=depth).map(|k| tau * 0.5f64.powi(k as i32)).collect();
    let mut v = grid_verdict(margins_at(t1, t2, &times, cfg)?, Witness::NumericGrid);
    v.tau = Some(tau);
    Ok(v)
}

/// Compares temperatures on an explicit time grid.
pub fn compare_on_times(t1: &Triple, t2: &Triple, times: &[f64], cfg: &QuadratureConfig) -> Result<ComparisonVerdict> {
    if times.is_empty() || times.iter().any(|&t| !(t > 0.0 && t.is_finite())) {
        return Err(Error::arg("time grid must be non-empty and positive"));
    }
    let mut v = grid_verdict(margins_at(t1, t2, times, cfg)?, Witness::NumericGrid);
    v.tau = times.iter().cloned().reduce(f64::max);
    Ok(v)
}

fn discover_tau(t1: &Triple, t2: &Triple, cfg: &QuadratureConfig) -> Result<f64> {
    const RUN: usize = 8;
    const DEEPEST: i32 = 40;
    let mut signs: Vec<i8> = Vec::new();
    let mut j = 0;
    while j <= DEEPEST {
        let chunk: Vec<f64> = (j..(j + RUN as i32).min(DEEPEST + 1)).map(|k| 0.5f64.powi(k)).collect();
        signs.extend(margins_at(t1, t2, &chunk, cfg)?.iter().map(sign_of));
        j += chunk.len() as i32;
        for start in 0..signs.len().saturating_sub(RUN - 1) {
            if signs[start..start + RUN].iter().all(|&s| s == signs[start]) {
                return Ok(0.5f64.powi(start as i32));
            }
        }
    }
    Ok(0.5f64.powi(DEEPEST))
}

/// Compares the temperature at the centre of a regular polygon with the
/// hottest temperature of another polygon of equal area and side count.
pub fn momentum_check(
    regular: &Domain,
    center: &Point,
    other: &Domain,
    times: &[f64],
    search: &SearchConfig,
) -> Result<ComparisonVerdict> {
    if regular.space() != other.space() {
        return Err(Error::SpaceMismatch);
    }
    let sides = |d: &Domain| -> Result<Vec<Point>> {
        match d.polygons() {
            Some(mut p) if p.len() == 1 => Ok(p.remove(0)),
            _ => Err(Error::arg("momentum check needs simple polygons")),
        }
    };
    let (p1, p2) = (sides(regular)?, sides(other)?);
    if p1.len() != p2.len() {
        return Err(Error::arg("polygons have different numbers of sides"));
    }
    let (a1, a2) = (regular.area(), other.area());
    if (a1 - a2).abs() > 1e-9 * a1.max(a2) {
        return Err(Error::arg(format!("areas differ: {a1} vs {a2}")));
    }
    let n = p1.len();
    let edges: Vec<f64> = (0..n).map(|i| p1[i].dist(&p1[(i + 1) % n])).collect::<Result<_>>()?;
    let spokes: Vec<f64> = p1.iter().map(|p| p.dist(center)).collect::<Result<_>>()?;
    let spread = |v: &[f64]| {
        let hi = v.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let lo = v.iter().cloned().fold(f64::INFINITY, f64::min);
        (hi - lo) / hi
    };
    if spread(&edges) > 1e-9 || spread(&spokes) > 1e-9 {
        return Err(Error::arg("first polygon is not regular about the given centre"));
    }
    if times.is_empty() {
        return Err(Error::arg("empty time grid"));
    }
    let mut trace = Vec::with_capacity(times.len());
    let mut gap: f64 = 0.0;
    for &t in times {
        let f1 = temperature(&Triple::new(*center, regular.clone())?, t, &search.quad)?;
        let h = hottest_points(other, t, search)?;
        gap = gap.max((f1.value - h.temperature.value).abs());
        trace.push(logit_margin(t, &f1, &h.temperature));
    }
    let mut v = grid_verdict(trace, Witness::Momentum);
    v.details.insert("max_abs_temperature_gap".into(), gap);
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn disc(r: f64) -> Domain {
        Domain::disc(Point::e(0.0, 0.0), r).unwrap()
    }

    fn triple(p: Point, d: Domain) -> Triple {
        Triple::new(p, d).unwrap()
    }

    #[test]
    fn theorem1_orders_by_distance_from_complement() {
        let a = triple(Point::e(0.0, 0.0), disc(1.0));
        let b = triple(Point::e(0.0, 0.0), disc(2.0));
        let v = criterion_theorem1(&a, &b).unwrap();
        assert!(v.is_strict(Side::Second));
        assert!(criterion_theorem1(&b, &a).unwrap().is_strict(Side::First));
        assert_eq!(criterion_theorem1(&a, &a).unwrap().relation, Relation::Inconclusive);
    }

    #[test]
    fn complement_criterion() {
        let d = disc(1.0);
        let far = triple(Point::e(3.0, 0.0), d.clone());
        let near = triple(Point::e(0.0, 2.0), d.clone());
        assert!(criterion_complement(&far, &near).unwrap().is_strict(Side::Second));
        let b1 = triple(Point::e(1.0, 0.0), d.clone());
        let b2 = triple(Point::e(0.0, 1.0), d.clone());
        assert_eq!(criterion_complement(&b1, &b2).unwrap().relation, Relation::Inconclusive);
        let v = initially_hotter_numeric(&far, &near, Some(0.5), 6, &QuadratureConfig::default()).unwrap();
        assert!(v.is_strict(Side::Second));
    }

    #[test]
    fn numeric_identical_triples_tie() {
        let a = triple(Point::e(0.2, 0.1), disc(1.0));
        let v = initially_hotter_numeric(&a, &a, Some(1.0), 4, &QuadratureConfig::default()).unwrap();
        assert_eq!(v.relation, Relation::HotterOrEqual);
        assert_eq!(v.hotter, None);
        assert_eq!(v.min_margin, 0.0);
    }

    #[test]
    fn numeric_discovers_horizon() {
        let a = triple(Point::e(0.0, 0.0), disc(1.0));
        let b = triple(Point::e(0.5, 0.0), disc(1.0));
        let v = initially_hotter_numeric(&a, &b, None, 8, &QuadratureConfig::default()).unwrap();
        assert!(v.is_strict(Side::First));
        assert!(v.tau.unwrap() > 0.0);
    }

    #[test]
    fn theorem2_containment() {
        let small = Domain::polygon(&[Point::e(-1.0, -1.0), Point::e(1.0, -1.0), Point::e(1.0, 1.0), Point::e(-1.0, 1.0)]).unwrap();
        let big = Domain::polygon(&[Point::e(-1.0, -1.0), Point::e(1.5, -1.0), Point::e(1.5, 1.0), Point::e(-1.0, 1.0)]).unwrap();
        let a = triple(Point::e(0.0, 0.0), small);
        let b = triple(Point::e(0.0, 0.0), big);
        let v = criterion_theorem2(&a, &b, 1.0, 1.3).unwrap();
        assert!(v.is_strict(Side::Second), "{:?}", v.min_margin);
        assert!(criterion_theorem2(&b, &a, 1.0, 1.3).unwrap().is_strict(Side::First));
    }

    #[test]
    fn disc_curvature_fit() {
        let d = disc(1.0);
        let k = fitted_curvature(&d, &Point::e(1.0, 0.0), 0.05).unwrap();
        assert!((k - 1.0).abs() < 1e-3);
        let e = Domain::ellipse(crate::geometry::plane::Vec2::new(0.0, 0.0), 2.0, 1.0, 0.0).unwrap();
        let v = mean_curvature_compare(&e, &Point::e(0.0, 1.0), &Point::e(2.0, 0.0)).unwrap();
        assert!(v.is_strict(Side::First));
        assert!((v.details["fitted_curvature_first"] - 0.25).abs() < 1e-2);
        assert!((v.details["fitted_curvature_second"] - 2.0).abs() < 1e-2);
    }

    #[test]
    fn verdicts_swap() {
        let a = triple(Point::e(0.0, 0.0), disc(1.0));
        let b = triple(Point::e(0.0, 0.0), disc(2.0));
        let v = criterion_theorem1(&a, &b).unwrap();
        let w = criterion_theorem1(&b, &a).unwrap();
        assert_eq!(v.swapped().hotter, w.hotter);
    }
}
