//! Angle asymptotics near a curved boundary and the spherical area of
//! tubes about plane and space curves.
//!
//! A sphere of radius `R + ε` about a point at distance `R` from a smooth
//! boundary leaves the domain through a cap whose half-angle grows like
//! `√ε`. The coefficient depends on the boundary curvature, which is what
//! makes curvier points of a tube initially hotter.

use std::f64::consts::{PI, TAU};

use nalgebra::Vector3;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numeric::fit::{least_squares, line_fit};
use crate::numeric::quad::integrate;
use crate::numeric::roots::brent;

/// Plane curve through the origin with horizontal tangent and signed
/// curvature `κ` there.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum PlanarModelCurve {
    Line,
    /// Circle of curvature `κ` (center `(0, 1/κ)`), arclength parametrized.
    Circle { curvature: f64 },
    /// Graph `y = κx²/2 + a x³`.
    Parabola { curvature: f64, cubic: f64 },
}

impl PlanarModelCurve {
    pub fn curvature(&self) -> f64 {
        match *self {
            PlanarModelCurve::Line => 0.0,
            PlanarModelCurve::Circle { curvature } | PlanarModelCurve::Parabola { curvature, .. } => curvature,
        }
    }

    pub fn point(&self, t: f64) -> (f64, f64) {
        match *self {
            PlanarModelCurve::Line => (t, 0.0),
            PlanarModelCurve::Circle { curvature: k } if k == 0.0 => (t, 0.0),
            PlanarModelCurve::Circle { curvature: k } => {
                let h = 0.5 * k * t;
                // 1 − cos(kt) = 2 sin²(kt/2)
                ((k * t).sin() / k, 2.0 * h.sin() * h.sin() / k)
            }
            PlanarModelCurve::Parabola { curvature, cubic } => (t, 0.5 * curvature * t * t + cubic * t * t * t),
        }
    }
}

fn check_radius(r: f64, kappa: f64) -> Result<()> {
    if !(r > 0.0) || !r.is_finite() || !kappa.is_finite() {
        return Err(Error::arg("radius must be positive and curvature finite"));
    }
    if r * kappa.abs() >= 1.0 {
        return Err(Error::arg(format!("need R|κ| < 1, got R = {r}, κ = {kappa}")));
    }
    Ok(())
}

/// Angle at `P = (0, R)` between the origin and the first crossing `Q` of
/// the circle `S_{R+ε}(P)` with the curve at positive parameter.
pub fn theta_exact(curve: &PlanarModelCurve, r: f64, eps: f64) -> Result<f64> {
    check_radius(r, curve.curvature())?;
    if !(eps > 0.0) || !eps.is_finite() {
        return Err(Error::arg("ε must be positive"));
    }
    // |c − P|² − (R+ε)², with R² − (R+ε)² written without cancellation
    let gap = |t: f64| {
        let (x, y) = curve.point(t);
        x * x + y * (y - 2.0 * r) - eps * (2.0 * r + eps)
    };
    let limit = match *curve {
        PlanarModelCurve::Circle { curvature: k } if k != 0.0 => PI / k.abs(),
        _ => 4.0 * (r + eps) + 1.0,
    };
    let mut hi = (eps * r).sqrt().min(0.5 * limit);
    while gap(hi) <= 0.0 {
        hi *= 2.0;
        if hi > limit {
            return Err(Error::arg(format!("ε = {eps} is too large: no crossing near the origin")));
        }
    }
    let t = brent(gap, 0.0, hi, 1e-16 * hi)?;
    let (x, y) = curve.point(t);
    Ok(x.atan2(r - y))
}

/// `√(2R)/(R+ε) · √ε / √(1 − Rκ)`.
pub fn theta_asymptotic(r: f64, kappa: f64, eps: f64) -> Result<f64> {
    check_radius(r, kappa)?;
    if !(eps >= 0.0) {
        return Err(Error::arg("ε must be non-negative"));
    }
    Ok((2.0 * r).sqrt() / (r + eps) * eps.sqrt() / (1.0 - r * kappa).sqrt())
}

/// Fitted small-ε behaviour against the closed-form coefficient.
#[derive(Clone, Debug, Serialize)]
pub struct FitReport {
    pub coefficient: f64,
    pub formula: f64,
    pub relative_error: f64,
    /// Fitted power of ε where meaningful.
    pub exponent: Option<f64>,
    pub eps_min: f64,
    pub eps_max: f64,
}

impl FitReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

/// `ε₀·4^{−k}`, `k = 0..n`.
pub fn eps_grid(eps0: f64, n: usize) -> Vec<f64> {
    (0..n).map(|k| eps0 * 0.25f64.powi(k as i32)).collect()
}

/// Fits `y(ε)/√ε = C + C₁√ε + C₂ε` after dropping the largest ε and
/// returns `C`.
fn sqrt_coefficient(eps: &[f64], y: &[f64]) -> Result<f64> {
    let mut pairs: Vec<(f64, f64)> = eps.iter().copied().zip(y.iter().copied()).collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    pairs.pop();
    if pairs.len() < 3 {
        return Err(Error::arg("coefficient fit needs at least four ε values"));
    }
    let rows: Vec<Vec<f64>> = pairs.iter().map(|&(e, _)| vec![1.0, e.sqrt(), e]).collect();
    let ys: Vec<f64> = pairs.iter().map(|&(e, v)| v / e.sqrt()).collect();
    Ok(least_squares(&rows, &ys)?[0])
}

fn report(coefficient: f64, formula: f64, exponent: Option<f64>, eps: &[f64]) -> FitReport {
    FitReport {
        coefficient,
        formula,
        relative_error: (coefficient - formula).abs() / formula.abs(),
        exponent,
        eps_min: eps.iter().copied().fold(f64::INFINITY, f64::min),
        eps_max: eps.iter().copied().fold(0.0, f64::max),
    }
}

/// Exponent and coefficient of `θ(ε) ≈ C ε^p` with `C` compared against
/// `√(2R)/(R√(1 − Rκ))`.
pub fn theta_fit(curve: &PlanarModelCurve, r: f64, eps: &[f64]) -> Result<FitReport> {
    let theta = eps
        .iter()
        .map(|&e| theta_exact(curve, r, e))
        .collect::<Result<Vec<_>>>()?;
    let mut order: Vec<usize> = (0..eps.len()).collect();
    order.sort_by(|&i, &j| eps[i].total_cmp(&eps[j]));
    let kept = &order[..order.len().saturating_sub(1)];
    let lx: Vec<f64> = kept.iter().map(|&i| eps[i].ln()).collect();
    let ly: Vec<f64> = kept.iter().map(|&i| theta[i].ln()).collect();
    let (_, slope) = line_fit(&lx, &ly)?;
    // θ·(R+ε)/R carries the coefficient without the 1/(R+ε) drift
    let scaled: Vec<f64> = theta.iter().zip(eps).map(|(t, e)| t * (r + e) / r).collect();
    let c = sqrt_coefficient(eps, &scaled)?;
    let kappa = curve.curvature();
    let formula = (2.0 * r).sqrt() / (r * (1.0 - r * kappa).sqrt());
    Ok(report(c, formula, Some(slope), eps))
}

/// `A(s)` for the point `z` on the center curve of the plane `R`-tube about
/// a circle of curvature `κ` (a straight strip when `κ = 0`), from exact
/// circle intersections.
pub fn tube2d_spherical_area(r: f64, kappa: f64, s: f64) -> Result<f64> {
    check_radius(r, kappa)?;
    if !(s > 0.0) {
        return Err(Error::arg("sphere radius must be positive"));
    }
    if s <= r {
        return Ok(TAU * s);
    }
    if kappa == 0.0 {
        return Ok(s * (TAU - 4.0 * (r / s).acos()));
    }
    let rho = 1.0 / kappa.abs();
    // |z + s(cos β, sin β)|² = ρ² + s² + 2ρs cos β against (ρ ± R)²
    let c_out = (r * (2.0 * rho + r) - s * s) / (2.0 * rho * s);
    let c_in = (r * (r - 2.0 * rho) - s * s) / (2.0 * rho * s);
    let outer = if c_out >= 1.0 {
        0.0
    } else if c_out <= -1.0 {
        PI
    } else {
        c_out.acos()
    };
    let inner = if c_in <= -1.0 {
        0.0
    } else if c_in >= 1.0 {
        PI
    } else {
        PI - c_in.acos()
    };
    Ok(s * (TAU - 2.0 * outer - 2.0 * inner).max(0.0))
}

/// `√(8R)(√(1 − Rκ) + √(1 + Rκ))`.
pub fn tube2d_coefficient(r: f64, kappa: f64) -> Result<f64> {
    check_radius(r, kappa)?;
    Ok((8.0 * r).sqrt() * ((1.0 - r * kappa).sqrt() + (1.0 + r * kappa).sqrt()))
}

/// Fits the `ε^{1/2}` coefficient of `2π(R+ε) − A(R+ε)` for the circular
/// tube and compares it with [`tube2d_coefficient`].
pub fn tube2d_area_expansion_check(r: f64, kappa: f64, eps: &[f64]) -> Result<FitReport> {
    let deficit = eps
        .iter()
        .map(|&e| Ok(TAU * (r + e) - tube2d_spherical_area(r, kappa, r + e)?))
        .collect::<Result<Vec<_>>>()?;
    let c = sqrt_coefficient(eps, &deficit)?;
    Ok(report(c, tube2d_coefficient(r, kappa)?, None, eps))
}

/// Arclength-parametrized space curves with closed-form derivatives.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SpaceCurve {
    Line,
    /// Circle of the given radius in the `xy`-plane about the origin.
    Circle { radius: f64 },
    /// `(a cos(t/w), a sin(t/w), b t/w)` with `w = √(a² + b²)`.
    Helix { a: f64, b: f64 },
}

impl SpaceCurve {
    /// Position and the first three derivatives.
    pub fn jet(&self, t: f64) -> [Vector3<f64>; 4] {
        match *self {
            SpaceCurve::Line => [Vector3::new(t, 0.0, 0.0), Vector3::x(), Vector3::zeros(), Vector3::zeros()],
            SpaceCurve::Circle { radius: a } => SpaceCurve::Helix { a, b: 0.0 }.jet(t),
            SpaceCurve::Helix { a, b } => {
                let w = a.hypot(b);
                let u = t / w;
                let (s, c) = u.sin_cos();
                [
                    Vector3::new(a * c, a * s, b * u),
                    Vector3::new(-a * s / w, a * c / w, b / w),
                    Vector3::new(-a * c, -a * s, 0.0) / (w * w),
                    Vector3::new(a * s, -a * c, 0.0) / (w * w * w),
                ]
            }
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct FrenetFrame {
    pub tangent: Vector3<f64>,
    pub normal: Vector3<f64>,
    pub binormal: Vector3<f64>,
    pub curvature: f64,
    pub torsion: f64,
}

pub fn frenet_frame(curve: &SpaceCurve, t: f64) -> Result<FrenetFrame> {
    let [_, d1, d2, d3] = curve.jet(t);
    let kappa = d2.norm();
    if !(kappa > 1e-14 * d1.norm()) {
        return Err(Error::LimitUndefined("Frenet frame undefined where the curvature vanishes".into()));
    }
    let tangent = d1 / d1.norm();
    let normal = d2 / kappa;
    let binormal = tangent.cross(&normal);
    let torsion = d1.cross(&d2).dot(&d3) / (kappa * kappa);
    Ok(FrenetFrame {
        tangent,
        normal,
        binormal,
        curvature: kappa,
        torsion,
    })
}

/// Speed factor `1 − Rκ₀cos α` of the distance-`R` curve in direction `α`
/// and the normal component `κ₀cos α (1 − Rκ₀cos α)` of its acceleration.
pub fn distance_curve_derivatives(kappa0: f64, r: f64, alpha: f64) -> Result<(f64, f64)> {
    check_radius(r, kappa0)?;
    let k = kappa0 * alpha.cos();
    let speed = 1.0 - r * k;
    Ok((speed, k * speed))
}

/// Planar curvature `κ₀cos α / (1 − Rκ₀cos α)` of the distance-`R` curve.
pub fn tube3d_planar_curvature(kappa0: f64, r: f64, alpha: f64) -> Result<f64> {
    // ⟨c̈, Jċ⟩/|ċ|³ with ċ = speed·g₁ and the g₂-part of c̈ equal to `normal`
    let (speed, normal) = distance_curve_derivatives(kappa0, r, alpha)?;
    Ok(speed * normal / speed.powi(3))
}

/// `∫₀^π √(1 − Rκ₀cos α) + √(1 + Rκ₀cos α) dα`.
pub fn tube3d_alpha_integral(kappa0: f64, r: f64) -> Result<f64> {
    check_radius(r, kappa0)?;
    let est = integrate(
        |a: f64| (1.0 - r * kappa0 * a.cos()).sqrt() + (1.0 + r * kappa0 * a.cos()).sqrt(),
        0.0,
        PI,
        1e-13,
    );
    Ok(est.value)
}

/// Area of `S_s(c(t₀)) ∩ Σ` for the solid tube `Σ` of radius `R` about a
/// circle of curvature `κ₀` (a straight line when `κ₀ = 0`), with `s` a
/// little above `R`.
///
/// In latitude `θ` from the normal great circle and longitude `α`, the part
/// of the sphere outside `Σ` is `|θ| < θ_α`; `θ_α` is found by root finding
/// on the exact distance to the center curve and `∫ sin θ_α dα` by the
/// trapezoidal rule, which is spectrally accurate for periodic integrands.
pub fn tube3d_spherical_area(kappa0: f64, r: f64, s: f64, longitudes: usize) -> Result<f64> {
    check_radius(r, kappa0)?;
    if kappa0 < 0.0 {
        return Err(Error::arg("space-curve curvature is non-negative"));
    }
    if !(s > r) || s > 2.0 * r {
        return Err(Error::arg("sphere radius must lie in (R, 2R]"));
    }
    // center curve point at the origin, tangent e_y, principal normal −e_x
    let rho = if kappa0 > 0.0 { 1.0 / kappa0 } else { f64::INFINITY };
    let dist = |p: Vector3<f64>| -> f64 {
        if rho.is_infinite() {
            p.x.hypot(p.z)
        } else {
            let q = Vector3::new(p.x + rho, p.y, p.z);
            (q.x.hypot(q.y) - rho).hypot(q.z)
        }
    };
    let f1 = Vector3::y();
    let f2 = -Vector3::x();
    let f3 = f1.cross(&f2);
    let n = longitudes.max(8);
    let sines: Vec<f64> = (0..n)
        .into_par_iter()
        .map(|k| {
            let alpha = TAU * k as f64 / n as f64;
            let g2 = f2 * alpha.cos() + f3 * alpha.sin();
            let excess = |th: f64| dist((g2 * th.cos() + f1 * th.sin()) * s) - r;
            if excess(0.5 * PI) >= 0.0 {
                return Err(Error::SearchFailure("sphere leaves the tube along the curve".into()));
            }
            brent(excess, 0.0, 0.5 * PI, 1e-15).map(f64::sin)
        })
        .collect::<Result<_>>()?;
    let mean: f64 = sines.iter().sum::<f64>() / n as f64;
    Ok(4.0 * PI * s * s - 2.0 * s * s * TAU * mean)
}

/// Fits the `ε^{1/2}` coefficient of `(4π(R+ε)² − A(R+ε)) / (√(8R)(R+ε))`
/// on the tube about a circle of curvature `κ₀` and compares it with the
/// α-integral.
pub fn tube3d_area_expansion_check(kappa0: f64, r: f64, eps: &[f64]) -> Result<FitReport> {
    let scaled = eps
        .iter()
        .map(|&e| {
            let s = r + e;
            let a = tube3d_spherical_area(kappa0, r, s, 1024)?;
            Ok((4.0 * PI * s * s - a) / ((8.0 * r).sqrt() * s))
        })
        .collect::<Result<Vec<_>>>()?;
    let c = sqrt_coefficient(eps, &scaled)?;
    Ok(report(c, tube3d_alpha_integral(kappa0, r)?, None, eps))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn line_angle_matches_arcsine() {
        let th = theta_exact(&PlanarModelCurve::Line, 1.0, 0.01).unwrap();
        assert!((th - ((0.0201f64).sqrt() / 1.01).asin()).abs() < 1e-13, "{th}");
        assert!((th - 0.140834).abs() < 5e-6);
        let asy = theta_asymptotic(1.0, 0.0, 0.01).unwrap();
        assert!((asy - 0.140021).abs() < 1e-6, "{asy}");
    }

    #[test]
    fn planar_curvature_reduces_to_offset_circles() {
        let (rho, r) = (2.0, 0.5);
        let inner = tube3d_planar_curvature(1.0 / rho, r, 0.0).unwrap();
        assert!((inner - 1.0 / (rho - r)).abs() < 1e-12);
        let outer = tube3d_planar_curvature(1.0 / rho, r, PI).unwrap();
        assert!((outer + 1.0 / (rho + r)).abs() < 1e-12);
        assert!(tube3d_planar_curvature(1.0 / rho, r, 0.5 * PI).unwrap().abs() < 1e-16);
    }

    #[test]
    fn cylinder_alpha_integral_is_two_pi() {
        assert!((tube3d_alpha_integral(0.0, 0.7).unwrap() - TAU).abs() < 1e-12);
    }
}
