//! Inradius and maximally interior points by multi-start maximisation of
//! the distance from the complement.

use rayon::prelude::*;
use serde::Serialize;

use super::plane::Vec2;
use super::{Domain, Location, Point};
use crate::error::{Error, Result};
use crate::numeric::optimize::nelder_mead;

#[derive(Clone, Copy, Debug)]
pub struct InteriorSearch {
    /// Seeds per axis of the chart grid.
    pub grid: usize,
    /// Points with `R ≥ R∞ − tol` count as maximal.
    pub tol: f64,
}

impl Default for InteriorSearch {
    fn default() -> Self {
        InteriorSearch { grid: 12, tol: 1e-8 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct InteriorProfile {
    pub inradius: f64,
    pub maximal_points: Vec<Point>,
}

/// Chart-grid points lying in the interior.
pub fn interior_seeds(domain: &Domain, per_axis: usize) -> Vec<Point> {
    let (lo, hi) = domain.chart_box();
    let n = per_axis.max(2);
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let u = (i as f64 + 0.5) / n as f64;
            let v = (j as f64 + 0.5) / n as f64;
            let c = Vec2::new(lo.x + u * (hi.x - lo.x), lo.y + v * (hi.y - lo.y));
            let p = Point::from_chart(domain.space(), c);
            if matches!(domain.contains(&p), Ok(Location::Inside)) {
                out.push(p);
            }
        }
    }
    out
}

/// Greedy clustering of points within `radius` of a cluster representative.
pub fn cluster(points: &[Point], radius: f64) -> Vec<Point> {
    let mut reps: Vec<Point> = Vec::new();
    for p in points {
        if !reps.iter().any(|q| q.dist(p).map(|d| d <= radius).unwrap_or(false)) {
            reps.push(*p);
        }
    }
    reps
}

pub fn inradius_and_maximal_points(domain: &Domain, search: &InteriorSearch) -> Result<InteriorProfile> {
    let mut seeds = interior_seeds(domain, search.grid);
    let mut g = search.grid;
    while seeds.is_empty() && g < 200 {
        g *= 2;
        seeds = interior_seeds(domain, g);
    }
    if seeds.is_empty() {
        return Err(Error::DegenerateDomain("no interior points found".into()));
    }
    let space = domain.space();
    let (lo, hi) = domain.chart_box();
    let step = 0.1 * (hi - lo).norm() / g as f64;
    let scale = (hi - lo).norm();
    let r_of = |c: [f64; 2]| {
        let p = Point::from_chart(space, Vec2::new(c[0], c[1]));
        if c[0].hypot(c[1]) >= 1.0 && space == super::Space::Hyperbolic2 {
            return 0.0;
        }
        domain.distance_from_complement(&p).unwrap_or(0.0)
    };
    let found: Vec<(Point, f64)> = seeds
        .par_iter()
        .map(|s| {
            let c = s.chart();
            let (best, val) = nelder_mead(|q| -r_of(q), [c.x, c.y], step, 1e-13 * scale, 4000);
            (Point::from_chart(space, Vec2::new(best[0], best[1])), -val)
        })
        .collect();
    let inradius = found.iter().map(|f| f.1).fold(0.0, f64::max);
    if inradius <= 0.0 {
        return Err(Error::DegenerateDomain("domain has empty interior".into()));
    }
    let maximal: Vec<Point> = found
        .iter()
        .filter(|(_, r)| *r >= inradius - search.tol)
        .map(|(p, _)| *p)
        .collect();
    Ok(InteriorProfile {
        inradius,
        maximal_points: cluster(&maximal, 1e-6 * domain.diameter()),
    })
}
