//! Temperature of the heat flow started from the indicator of a domain.
//!
//! The main path reduces the area integral to a radial one,
//! `f(t, x) = ∫ g(t, r) A(r) dr`, with `A(r)` measured exactly. The
//! complement `1 − f` is integrated separately over the part of each
//! circle outside the domain, so both tails stay accurate in log space.

use std::f64::consts::{PI, TAU};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::plane::{triangulate, Vec2};
use crate::geometry::{BoundaryPiece, Domain, Location, Point, Space};
use crate::kernel::TimeKernel;
use crate::numeric::fit::richardson;
use crate::numeric::quad::{gauss_legendre, Adaptive};
use crate::numeric::special::erf_diff;

/// Settings of the radial quadrature.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct QuadratureConfig {
    /// Initial uniform panels on the radial range.
    pub panels: usize,
    /// Absolute accuracy requested for the temperature.
    pub tol: f64,
    /// Relative accuracy of each radial integral.
    pub rel_tol: f64,
    /// Kernel mass allowed beyond the radial cutoff, relative to the integral.
    pub tail: f64,
    pub max_panels: usize,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            panels: 8,
            tol: 1e-9,
            rel_tol: 1e-12,
            tail: 1e-12,
            max_panels: 4000,
        }
    }
}

impl QuadratureConfig {
    pub fn with_tol(tol: f64) -> Result<Self> {
        let cfg = QuadratureConfig {
            tol,
            ..Default::default()
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.tol > 0.0 && self.rel_tol > 0.0 && self.tail > 0.0 && self.tail < 1.0) || self.panels == 0 {
            return Err(Error::arg("quadrature tolerances must be positive"));
        }
        Ok(())
    }

    fn relative(&self) -> f64 {
        self.rel_tol.min(self.tol)
    }

    /// Cutoff in the scaled radial variable `s` where `r² = r₀² + 4ts²`.
    fn s_max(&self) -> f64 {
        (1.0 / self.tail).ln().sqrt() + 3.0
    }
}

/// A point together with the domain and model space it is compared in.
#[derive(Clone, Debug)]
pub struct Triple {
    pub point: Point,
    pub domain: Domain,
}

impl Triple {
    pub fn new(point: Point, domain: Domain) -> Result<Self> {
        if point.space() != domain.space() {
            return Err(Error::SpaceMismatch);
        }
        Ok(Triple { point, domain })
    }

    pub fn space(&self) -> Space {
        self.domain.space()
    }
}

/// Temperature with its complement, logs, and error bars.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct Temperature {
    /// `f(t, x)` clamped to `[0, 1]`.
    pub value: f64,
    /// `1 − f(t, x)` from its own integral, clamped to `[0, 1]`.
    pub complement: f64,
    pub ln_value: f64,
    pub ln_complement: f64,
    /// Relative error bound of `value`.
    pub rel_err: f64,
    /// Relative error bound of `complement`.
    pub rel_err_complement: f64,
    /// `value + complement − 1` before clamping.
    pub residual: f64,
}

impl Temperature {
    /// Absolute error bound of `value`.
    pub fn abs_err(&self) -> f64 {
        (self.value * self.rel_err).min(self.complement * self.rel_err_complement + self.residual.abs())
    }
}

// Bound on the relative error of the exact arc measure.
const ARC_REL_ERR: f64 = 1e-13;

struct RadialPart {
    ln_value: f64,
    rel_err: f64,
}

/// `ln ∫ g(t, r) w(r) dr` over `[r0, r_end]` via `r = √(r0² + 4ts²)`.
fn radial_integral(
    kernel: &TimeKernel,
    r0: f64,
    r_end: f64,
    critical: &[f64],
    weight: &(dyn Fn(f64) -> Result<f64> + Sync),
    cfg: &QuadratureConfig,
) -> Result<RadialPart> {
    let t = kernel.time();
    let s_of = |r: f64| ((r * r - r0 * r0).max(0.0) / (4.0 * t)).sqrt();
    let s_end = if r_end.is_finite() { s_of(r_end).min(cfg.s_max()) } else { cfg.s_max() };
    if !(s_end > 0.0) {
        return Ok(RadialPart {
            ln_value: f64::NEG_INFINITY,
            rel_err: 0.0,
        });
    }
    let ln_g0 = kernel.ln_density(r0)?;
    let mut pts: Vec<f64> = critical.iter().filter(|&&r| r > r0 && r < r_end).map(|&r| s_of(r)).collect();
    pts.extend((1..cfg.panels).map(|k| s_end * k as f64 / cfg.panels as f64));
    let pts = crate::numeric::quad::breakpoints(0.0, s_end, pts);
    let mut failure = None;
    let integrand = |s: f64| -> f64 {
        let (r, jac) = if r0 == 0.0 {
            let c = 2.0 * t.sqrt();
            (c * s, c)
        } else {
            let r = (r0 * r0 + 4.0 * t * s * s).sqrt();
            (r, 4.0 * t * s / r)
        };
        if r <= 0.0 || jac == 0.0 {
            return 0.0;
        }
        let ratio = match kernel.space() {
            Space::Euclidean2 => (-s * s).exp(),
            Space::Hyperbolic2 => match kernel.ln_density(r) {
                Ok(l) => (l - ln_g0).exp(),
                Err(e) => {
                    failure.get_or_insert(e);
                    return 0.0;
                }
            },
        };
        if ratio == 0.0 {
            return 0.0;
        }
        match weight(r) {
            Ok(w) => ratio * w * jac,
            Err(e) => {
                failure.get_or_insert(e);
                0.0
            }
        }
    };
    let integrator = Adaptive {
        rel_tol: cfg.relative(),
        abs_tol: 0.0,
        max_panels: cfg.max_panels,
    };
    let est = integrator.integrate(integrand, &pts);
    if let Some(e) = failure {
        return Err(e);
    }
    // Near-tangent arcs at tiny `t/r0²` limit the attainable accuracy; an
    // estimate still inside the caller's tolerance is kept with its error.
    let achieved = est.error / est.value.abs().max(f64::MIN_POSITIVE);
    if !est.converged && !(achieved <= cfg.tol) {
        return Err(Error::Tolerance {
            what: "radial temperature integral".into(),
            achieved,
            wanted: cfg.relative(),
        });
    }
    if est.value <= 0.0 {
        return Ok(RadialPart {
            ln_value: f64::NEG_INFINITY,
            rel_err: 0.0,
        });
    }
    Ok(RadialPart {
        ln_value: ln_g0 + est.value.ln(),
        rel_err: est.error / est.value + ARC_REL_ERR + (-cfg.s_max().powi(2)).exp() + 3.0 * kernel.ln_error(),
    })
}

/// Temperature engine for one domain and one time.
pub struct Field<'a> {
    domain: &'a Domain,
    kernel: TimeKernel,
    cfg: QuadratureConfig,
}

impl<'a> Field<'a> {
    /// Direct kernel evaluation; best for a handful of points.
    pub fn new(domain: &'a Domain, t: f64, cfg: QuadratureConfig) -> Result<Self> {
        cfg.validate()?;
        Ok(Field {
            domain,
            kernel: TimeKernel::direct(domain.space(), t)?,
            cfg,
        })
    }

    /// Tabulated kernel covering queries within `reach` of the domain.
    pub fn tabulated(domain: &'a Domain, t: f64, reach: f64, cfg: QuadratureConfig) -> Result<Self> {
        cfg.validate()?;
        let r_max = domain.diameter() + reach + 2.0 * cfg.s_max() * t.sqrt();
        Ok(Field {
            domain,
            kernel: TimeKernel::tabulated(domain.space(), t, r_max)?,
            cfg,
        })
    }

    pub fn time(&self) -> f64 {
        self.kernel.time()
    }

    pub fn at(&self, x: &Point) -> Result<Temperature> {
        let d = self.domain;
        let space = d.space();
        let loc = d.contains(x)?;
        let critical = d.critical_radii(x)?;
        let far = critical.last().copied().unwrap_or(0.0);
        let (r_in, r_out) = match loc {
            Location::Inside => (0.0, d.distance_from_complement(x)?),
            Location::Outside => (d.distance_to(x)?, 0.0),
            Location::Boundary => (0.0, 0.0),
        };
        let circles = d.circles_about(x)?;
        let inside = |r: f64| -> Result<f64> { Ok(circles.split(r)?.0 / TAU * space.circumference(r)) };
        let outside = |r: f64| -> Result<f64> { Ok(circles.split(r)?.1 / TAU * space.circumference(r)) };
        let v = radial_integral(&self.kernel, r_in, far, &critical, &inside, &self.cfg)?;
        let c = radial_integral(&self.kernel, r_out, f64::INFINITY, &critical, &outside, &self.cfg)?;
        let (value, complement) = (v.ln_value.exp(), c.ln_value.exp());
        Ok(Temperature {
            value: value.clamp(0.0, 1.0),
            complement: complement.clamp(0.0, 1.0),
            ln_value: v.ln_value.min(0.0),
            ln_complement: c.ln_value.min(0.0),
            rel_err: v.rel_err,
            rel_err_complement: c.rel_err,
            residual: value + complement - 1.0,
        })
    }

    /// Evaluates many points in parallel; output order follows input.
    pub fn batch(&self, xs: &[Point]) -> Result<Vec<Temperature>> {
        xs.par_iter().map(|x| self.at(x)).collect()
    }
}

/// `f(t, x)` for the point and domain of a triple.
pub fn temperature(triple: &Triple, t: f64, cfg: &QuadratureConfig) -> Result<Temperature> {
    Field::new(&triple.domain, t, *cfg)?.at(&triple.point)
}

/// Temperatures of one triple over several times, in input order.
pub fn temperature_series(triple: &Triple, times: &[f64], cfg: &QuadratureConfig) -> Result<Vec<Temperature>> {
    times.par_iter().map(|&t| temperature(triple, t, cfg)).collect()
}

/// Cross-check for Euclidean polygons: triangulate, refine, and apply a
/// collapsed Gauss–Legendre product rule to the Gaussian kernel.
/// Returns `ln f(t, x)`.
pub fn temperature_direct2d(domain: &Domain, t: f64, x: &Point, order: usize) -> Result<f64> {
    if t <= 0.0 || !t.is_finite() {
        return Err(Error::arg(format!("time must be positive, got {t}")));
    }
    let x = x.euclidean()?;
    if domain.space() != Space::Euclidean2 {
        return Err(Error::SpaceMismatch);
    }
    let polys = domain
        .polygons()
        .ok_or_else(|| Error::Unsupported("direct quadrature needs a polygonal domain".into()))?;
    let h_max = t.sqrt();
    let mut tris = Vec::new();
    for poly in &polys {
        let v: Vec<Vec2> = poly.iter().map(|p| p.euclidean()).collect::<Result<_>>()?;
        for tri in triangulate(&v) {
            refine(tri, h_max, &mut tris);
        }
    }
    let near = |tri: &[Vec2; 3]| -> f64 {
        if crate::geometry::plane::point_in_polygon(x, tri) {
            0.0
        } else {
            (0..3)
                .map(|i| crate::geometry::plane::segment_distance(x, tri[i], tri[(i + 1) % 3]))
                .fold(f64::INFINITY, f64::min)
        }
    };
    let d_min = tris.iter().map(near).fold(f64::INFINITY, f64::min);
    let shift = d_min * d_min / (4.0 * t);
    let (nodes, weights) = gauss_legendre(order.max(2));
    let unit = |z: f64| 0.5 * (z + 1.0);
    let mut sum = 0.0;
    for tri in &tris {
        let dn = near(tri);
        if (dn * dn - d_min * d_min) / (4.0 * t) > 60.0 {
            continue;
        }
        let [a, b, c] = *tri;
        let twice_area = (b - a).cross(c - b).abs();
        for (i, &zu) in nodes.iter().enumerate() {
            let u = unit(zu);
            for (j, &zv) in nodes.iter().enumerate() {
                let v = unit(zv);
                let p = a + ((b - a) + (c - b) * v) * u;
                let w = 0.25 * weights[i] * weights[j] * u * twice_area;
                sum += w * (-((p - x).norm2() / (4.0 * t)) + shift).exp();
            }
        }
    }
    Ok(sum.ln() - shift - (4.0 * PI * t).ln())
}

fn refine(tri: [Vec2; 3], h_max: f64, out: &mut Vec<[Vec2; 3]>) {
    let [a, b, c] = tri;
    let longest = a.dist(b).max(b.dist(c)).max(c.dist(a));
    if longest <= h_max {
        out.push(tri);
        return;
    }
    let (ab, bc, ca) = (a.lerp(b, 0.5), b.lerp(c, 0.5), c.lerp(a, 0.5));
    for t in [[a, ab, ca], [ab, b, bc], [ca, bc, c], [ab, bc, ca]] {
        refine(t, h_max, out);
    }
}

/// Spatial gradient and Hessian of `f(t, ·)` at `x`, obtained by moving the
/// derivatives onto the boundary: `∇f = −∮ k ν ds` and
/// `∂ᵢ∂ⱼ f = ∮ k (xᵢ − yᵢ) νⱼ ds / 2t`.
pub fn temperature_gradient_hessian(domain: &Domain, t: f64, x: &Point) -> Result<([f64; 2], [[f64; 2]; 2])> {
    if t <= 0.0 || !t.is_finite() {
        return Err(Error::arg(format!("time must be positive, got {t}")));
    }
    let x = x.euclidean()?;
    let pieces = domain.boundary_pieces()?;
    let mut grad = [0.0; 2];
    let mut hess = [[0.0; 2]; 2];
    let norm = 1.0 / (4.0 * PI * t);
    for piece in &pieces {
        match *piece {
            BoundaryPiece::Segment { a, b } => {
                let len = a.dist(b);
                if len == 0.0 {
                    continue;
                }
                let u = (b - a) * (1.0 / len);
                let nu = Vec2::new(u.y, -u.x);
                let p = (x - a).dot(u);
                let q = (x - a).dot(nu);
                let e = norm * (-q * q / (4.0 * t)).exp();
                let st = t.sqrt();
                let i0 = (PI * t).sqrt() * erf_diff(-p / (2.0 * st), (len - p) / (2.0 * st));
                let i1 = 2.0 * t * ((-p * p / (4.0 * t)).exp() - (-(len - p).powi(2) / (4.0 * t)).exp());
                let m = [-i1 * u.x + q * i0 * nu.x, -i1 * u.y + q * i0 * nu.y];
                let n = [nu.x, nu.y];
                for i in 0..2 {
                    grad[i] -= e * i0 * n[i];
                    for j in 0..2 {
                        hess[i][j] += e * m[i] * n[j] / (2.0 * t);
                    }
                }
            }
            BoundaryPiece::Arc {
                center,
                radius,
                start,
                sweep,
            } => {
                let sign = sweep.signum();
                let curve = move |tau: f64| {
                    let th = start + tau * sweep;
                    let (s, c) = th.sin_cos();
                    let y = center + Vec2::new(c, s) * radius;
                    let nu_ds = Vec2::new(c, s) * (sign * radius * sweep.abs());
                    (y, nu_ds)
                };
                let rel = (x - center).angle() - start;
                let mut focus = Vec::new();
                for k in -1..=1 {
                    focus.push((rel + k as f64 * TAU) / sweep);
                }
                let step = t.sqrt() / (radius * sweep.abs());
                boundary_moments(&curve, &focus, step, x, t, &mut grad, &mut hess);
            }
            BoundaryPiece::Ellipse(e) => {
                let curve = move |tau: f64| {
                    let th = tau * TAU;
                    let (s, c) = th.sin_cos();
                    let y = e.point_at(th);
                    let dy = Vec2::new(-e.a * s, e.b * c).rotate(e.angle) * TAU;
                    (y, Vec2::new(dy.y, -dy.x))
                };
                let rel = e.parameter_of(x).rem_euclid(TAU) / TAU;
                let focus = vec![rel - 1.0, rel, rel + 1.0];
                let step = t.sqrt() / (e.a.max(e.b) * TAU);
                boundary_moments(&curve, &focus, step, x, t, &mut grad, &mut hess);
            }
        }
    }
    Ok((grad, hess))
}

/// Adds the boundary integrals of a curve parametrized on `[0, 1]`, where
/// `curve(τ)` returns the point and `ν ds/dτ`.
fn boundary_moments(
    curve: &(dyn Fn(f64) -> (Vec2, Vec2) + Sync),
    focus: &[f64],
    step: f64,
    x: Vec2,
    t: f64,
    grad: &mut [f64; 2],
    hess: &mut [[f64; 2]; 2],
) {
    let norm = 1.0 / (4.0 * PI * t);
    let mut pts = Vec::new();
    for &f in focus {
        for k in [-8.0, -4.0, -2.0, -1.0, 0.0, 1.0, 2.0, 4.0, 8.0] {
            pts.push(f + k * step);
        }
    }
    let pts = crate::numeric::quad::breakpoints(0.0, 1.0, pts);
    let scale = norm * (4.0 * PI * t).sqrt();
    let component = |which: usize| -> f64 {
        let integrand = |tau: f64| {
            let (y, nu) = curve(tau);
            let k = norm * (-(x - y).norm2() / (4.0 * t)).exp();
            let d = x - y;
            match which {
                0 => -k * nu.x,
                1 => -k * nu.y,
                2 => k * d.x * nu.x / (2.0 * t),
                3 => k * d.x * nu.y / (2.0 * t),
                4 => k * d.y * nu.x / (2.0 * t),
                _ => k * d.y * nu.y / (2.0 * t),
            }
        };
        let abs = if which < 2 { 1e-14 * scale } else { 1e-14 * scale / t.sqrt() };
        Adaptive::new(1e-12, abs).integrate(integrand, &pts).value
    };
    let v: Vec<f64> = (0..6).into_par_iter().map(component).collect();
    grad[0] += v[0];
    grad[1] += v[1];
    hess[0][0] += v[2];
    hess[0][1] += v[3];
    hess[1][0] += v[4];
    hess[1][1] += v[5];
}

/// Small-time limit of the temperature at a point, obtained twice.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct BoundaryLimit {
    /// Extrapolation of `A(r) / vol(S_r)` as `r → 0`.
    pub from_radius: f64,
    /// Extrapolation of `f(t, x)` as `t → 0`.
    pub from_time: f64,
    pub radius_change: f64,
    pub time_change: f64,
}

impl BoundaryLimit {
    pub fn value(&self) -> f64 {
        0.5 * (self.from_radius + self.from_time)
    }
}

/// `lim_{t→0} f(t, x)` by Richardson extrapolation in `r` and in `√t`.
pub fn boundary_limit(domain: &Domain, x: &Point, cfg: &QuadratureConfig) -> Result<BoundaryLimit> {
    match domain.contains(x)? {
        Location::Inside => {
            return Ok(BoundaryLimit {
                from_radius: 1.0,
                from_time: 1.0,
                radius_change: 0.0,
                time_change: 0.0,
            })
        }
        Location::Outside => {
            return Ok(BoundaryLimit {
                from_radius: 0.0,
                from_time: 0.0,
                radius_change: 0.0,
                time_change: 0.0,
            })
        }
        Location::Boundary => {}
    }
    let diam = domain.diameter();
    let feature = domain
        .critical_radii(x)?
        .into_iter()
        .find(|&r| r > 1e-9 * diam)
        .unwrap_or(diam);
    let r0 = (0.25 * feature).min(0.05 * diam);
    let space = domain.space();
    let ratios: Vec<f64> = (0..7)
        .map(|k| {
            let r = r0 * 0.5f64.powi(k);
            Ok(domain.spherical_area(x, r)? / space.circumference(r))
        })
        .collect::<Result<_>>()?;
    let (from_radius, radius_change) = richardson(&ratios, 2.0, &[1.0, 2.0, 3.0]);
    let t0 = (feature / 10.0).powi(2);
    let temps: Vec<f64> = (0..6)
        .into_par_iter()
        .map(|k| Ok(Field::new(domain, t0 * 0.25f64.powi(k), *cfg)?.at(x)?.value))
        .collect::<Result<_>>()?;
    let (from_time, time_change) = richardson(&temps, 2.0, &[1.0, 2.0, 3.0]);
    if !(radius_change < 1e-3 && time_change < 1e-3) {
        return Err(Error::LimitUndefined(format!(
            "extrapolations did not settle (radius change {radius_change:e}, time change {time_change:e})"
        )));
    }
    Ok(BoundaryLimit {
        from_radius,
        from_time,
        radius_change,
        time_change,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::special::erf;

    fn square() -> Domain {
        Domain::polygon(&[Point::e(-1.0, -1.0), Point::e(1.0, -1.0), Point::e(1.0, 1.0), Point::e(-1.0, 1.0)]).unwrap()
    }

    fn temp(d: &Domain, x: Point, t: f64) -> Temperature {
        Field::new(d, t, QuadratureConfig::default()).unwrap().at(&x).unwrap()
    }

    #[test]
    fn disc_center_closed_form() {
        let d = Domain::disc(Point::e(0.0, 0.0), 1.0).unwrap();
        let f = temp(&d, Point::e(0.0, 0.0), 0.25);
        assert!((f.value - (1.0 - (-1.0f64).exp())).abs() < 1e-12);
        assert!((f.complement - (-1.0f64).exp()).abs() < 1e-12);
        assert!(f.residual.abs() < 1e-12);
    }

    #[test]
    fn square_matches_erf_product() {
        let d = square();
        for &(x, y, t) in &[(0.3, 0.2, 0.05), (0.9, -0.5, 0.5), (1.5, 0.0, 0.1), (1.0, 1.0, 0.2)] {
            let oracle = |c: f64| 0.5 * (erf((1.0 - c) / (2.0 * f64::sqrt(t))) + erf((1.0 + c) / (2.0 * f64::sqrt(t))));
            let f = temp(&d, Point::e(x, y), t);
            assert!((f.value - oracle(x) * oracle(y)).abs() < 1e-11, "{x} {y} {t}: {}", f.value);
        }
    }

    #[test]
    fn far_point_stays_accurate_in_log_space() {
        let d = square();
        let t = 0.01;
        let f = temp(&d, Point::e(3.0, 0.0), t);
        // ln of the one-dimensional factor erfc(2/√(4t))/2 times ~1
        let ln_x = crate::numeric::special::ln_erfc(2.0 / (2.0 * t.sqrt())) - 2f64.ln();
        let ln_y = (0.5 * (2.0 * erf(1.0 / (2.0 * t.sqrt())))).ln();
        assert!((f.ln_value - (ln_x + ln_y)).abs() < 1e-9);
        let g = Field::new(&d, t, QuadratureConfig::default()).unwrap();
        let direct = temperature_direct2d(&d, t, &Point::e(3.0, 0.0), 12).unwrap();
        assert!((direct - f.ln_value).abs() < 1e-6);
        let e = crate::numeric::special::erfc(5.0);
        let oracle = (2.0 * e - e * e).ln();
        assert!((g.at(&Point::e(0.0, 0.0)).unwrap().ln_complement - oracle).abs() < 1e-9);
    }

    #[test]
    fn direct_quadrature_agrees() {
        let d = square();
        for &t in &[0.05, 0.5] {
            let x = Point::e(0.3, 0.2);
            let radial = temp(&d, x.clone(), t).value;
            let direct = temperature_direct2d(&d, t, &x, 12).unwrap().exp();
            assert!((radial - direct).abs() < 1e-7, "{radial} {direct}");
        }
    }

    #[test]
    fn gradient_matches_finite_differences() {
        let d = Domain::polygon(&[Point::e(0.0, 0.0), Point::e(2.0, 0.0), Point::e(0.5, 1.5)]).unwrap();
        let t = 0.3;
        let x = Vec2::new(0.7, 0.4);
        let (g, h) = temperature_gradient_hessian(&d, t, &Point::Euclidean(x)).unwrap();
        let f = |p: Vec2| temp(&d, Point::Euclidean(p), t).value;
        let eps = 1e-5;
        let fd = [
            (f(x + Vec2::new(eps, 0.0)) - f(x - Vec2::new(eps, 0.0))) / (2.0 * eps),
            (f(x + Vec2::new(0.0, eps)) - f(x - Vec2::new(0.0, eps))) / (2.0 * eps),
        ];
        for i in 0..2 {
            assert!((g[i] - fd[i]).abs() < 1e-5 * g[i].abs().max(1e-3), "{g:?} {fd:?}");
        }
        assert!((h[0][1] - h[1][0]).abs() < 1e-10);
        let e = 1e-4;
        let gx = |p: Vec2| temperature_gradient_hessian(&d, t, &Point::Euclidean(p)).unwrap().0;
        let hxx = (gx(x + Vec2::new(e, 0.0))[0] - gx(x - Vec2::new(e, 0.0))[0]) / (2.0 * e);
        assert!((hxx - h[0][0]).abs() < 1e-6);
    }

    #[test]
    fn smooth_pieces_gradient() {
        let d = Domain::ellipse(Vec2::new(0.0, 0.0), 2.0, 1.0, 0.3).unwrap();
        let t = 0.2;
        let x = Vec2::new(0.9, 0.3);
        let (g, _) = temperature_gradient_hessian(&d, t, &Point::Euclidean(x)).unwrap();
        let f = |p: Vec2| temp(&d, Point::Euclidean(p), t).value;
        let eps = 1e-5;
        let fx = (f(x + Vec2::new(eps, 0.0)) - f(x - Vec2::new(eps, 0.0))) / (2.0 * eps);
        assert!((g[0] - fx).abs() < 1e-6, "{} {}", g[0], fx);
        let a = Domain::annulus(Point::e(0.0, 0.0), 0.5, 1.5).unwrap();
        let (g, _) = temperature_gradient_hessian(&a, 0.1, &Point::e(0.8, 0.0)).unwrap();
        let f = |p: Vec2| temp(&a, Point::Euclidean(p), 0.1).value;
        let fx = (f(Vec2::new(0.8 + eps, 0.0)) - f(Vec2::new(0.8 - eps, 0.0))) / (2.0 * eps);
        assert!((g[0] - fx).abs() < 1e-6, "{} {}", g[0], fx);
        assert!(g[1].abs() < 1e-12);
    }

    #[test]
    fn boundary_limits() {
        let cfg = QuadratureConfig::default();
        let disc = Domain::disc(Point::e(0.0, 0.0), 1.0).unwrap();
        let b = boundary_limit(&disc, &Point::e(1.0, 0.0), &cfg).unwrap();
        assert!((b.from_radius - 0.5).abs() < 1e-6 && (b.from_time - 0.5).abs() < 1e-6, "{b:?}");
        let b = boundary_limit(&square(), &Point::e(1.0, 1.0), &cfg).unwrap();
        assert!((b.from_radius - 0.25).abs() < 1e-9 && (b.from_time - 0.25).abs() < 1e-6, "{b:?}");
        assert_eq!(boundary_limit(&square(), &Point::e(0.0, 0.0), &cfg).unwrap().value(), 1.0);
    }

    #[test]
    fn hyperbolic_disc_center_matches_radial_kernel_mass() {
        let d = Domain::disc(Point::h(0.0, 0.0), 1.0).unwrap();
        let t = 0.5;
        let f = temp(&d, Point::h(0.0, 0.0), t);
        let mass = crate::numeric::quad::integrate(
            |r| crate::kernel::hyperbolic2_kernel(t, r).unwrap() * TAU * r.sinh(),
            0.0,
            1.0,
            1e-13,
        );
        assert!((f.value - mass.value).abs() < 1e-10);
        assert!(f.residual.abs() < 1e-9);
        let tab = Field::tabulated(&d, t, 1.0, QuadratureConfig::default()).unwrap();
        assert!((tab.at(&Point::h(0.0, 0.0)).unwrap().value - f.value).abs() < 1e-9);
    }
}
