//! Radial heat kernels of the model spaces and the Dirichlet heat kernel of
//! a rectangle.
//!
//! The hyperbolic-plane kernel uses McKean's integral
//!
//! ```text
//! k(t, d) = √2 e^{−t/4} (4πt)^{−3/2} ∫_d^∞ s e^{−s²/4t} / √(cosh s − cosh d) ds
//! ```
//!
//! evaluated after the substitution `s = √(d² + v²)`, which removes the
//! endpoint singularity and also covers `d = 0`.

use std::f64::consts::{LN_2, PI};

use crate::error::{Error, Result};
use crate::geometry::plane::Vec2;
use crate::geometry::Space;
use crate::numeric::quad::Adaptive;

fn check_time(t: f64) -> Result<()> {
    if t > 0.0 && t.is_finite() {
        Ok(())
    } else {
        Err(Error::arg(format!("time must be positive, got {t}")))
    }
}

fn check_distance(d: f64) -> Result<()> {
    if d >= 0.0 && d.is_finite() {
        Ok(())
    } else {
        Err(Error::arg(format!("distance must be non-negative, got {d}")))
    }
}

/// Logarithm of the Gaussian kernel of ℝⁿ.
pub fn euclidean_log_kernel(t: f64, d: f64, n: usize) -> Result<f64> {
    check_time(t)?;
    check_distance(d)?;
    if n == 0 {
        return Err(Error::arg("dimension must be at least 1"));
    }
    Ok(-0.5 * n as f64 * (4.0 * PI * t).ln() - d * d / (4.0 * t))
}

/// Gaussian kernel `(4πt)^{−n/2} e^{−d²/4t}` of ℝⁿ.
pub fn euclidean_kernel(t: f64, d: f64, n: usize) -> Result<f64> {
    euclidean_log_kernel(t, d, n).map(f64::exp)
}

fn ln_sinh(x: f64) -> f64 {
    if x > 20.0 {
        x - LN_2 + (-(-2.0 * x).exp()).ln_1p()
    } else {
        x.sinh().ln()
    }
}

/// Integrand `v / √(cosh s − cosh d)` with `s = √(d² + v²)`.
fn mckean_weight(v: f64, d: f64) -> f64 {
    if v < 1e-100 {
        return if d == 0.0 { 2f64.sqrt() } else { (2.0 * d / d.sinh()).sqrt() };
    }
    let s = d.hypot(v);
    let sum = s + d;
    // cosh s − cosh d = 2 sinh((s+d)/2) sinh((s−d)/2) and s − d = v²/(s + d)
    let ln_den = LN_2 + ln_sinh(0.5 * sum) + ln_sinh(0.5 * v * v / sum);
    (v.ln() - 0.5 * ln_den).exp()
}

/// Logarithm of the heat kernel of the hyperbolic plane.
pub fn hyperbolic2_log_kernel(t: f64, d: f64) -> Result<f64> {
    check_time(t)?;
    check_distance(d)?;
    let st = 2.0 * t.sqrt();
    let quad = Adaptive::new(1e-13, 0.0);
    let est = quad.integrate(
        |w| mckean_weight(st * w, d) * (-w * w).exp(),
        &[0.0, 0.5, 1.0, 1.5, 2.0, 3.0, 4.0, 5.5, 7.0, 9.0],
    );
    if !est.converged {
        return Err(Error::Tolerance {
            what: "hyperbolic kernel quadrature".into(),
            achieved: est.error / est.value.abs(),
            wanted: 1e-13,
        });
    }
    Ok(0.5 * LN_2 - 0.25 * t - 1.5 * (4.0 * PI * t).ln() - d * d / (4.0 * t) + (st * est.value).ln())
}

pub fn hyperbolic2_kernel(t: f64, d: f64) -> Result<f64> {
    hyperbolic2_log_kernel(t, d).map(f64::exp)
}

/// `Q(t, z) = z zᵀ / 2t − I`; the Hessian of the Gaussian kernel in `x` is
/// `k/(2t) · Q(t, x − y)`.
pub fn hessian_quadratic_form(t: f64, z: &[f64]) -> Result<Vec<Vec<f64>>> {
    check_time(t)?;
    let n = z.len();
    Ok((0..n)
        .map(|i| (0..n).map(|j| z[i] * z[j] / (2.0 * t) - if i == j { 1.0 } else { 0.0 }).collect())
        .collect())
}

/// Radial kernel of a model plane frozen at one time.
///
/// For ℍ² the log-kernel may be tabulated: the smooth remainder
/// `ln k + r²/4t` is stored on a uniform grid and interpolated by cubic
/// Hermite polynomials with fourth-order slopes.
#[derive(Clone, Debug)]
pub struct TimeKernel {
    space: Space,
    t: f64,
    table: Option<Table>,
    ln_error: f64,
}

#[derive(Clone, Debug)]
struct Table {
    h: f64,
    r_max: f64,
    q: Vec<f64>,
    dq: Vec<f64>,
}

impl TimeKernel {
    /// Kernel evaluated exactly at every call.
    pub fn direct(space: Space, t: f64) -> Result<Self> {
        check_time(t)?;
        Ok(TimeKernel { space, t, table: None, ln_error: 0.0 })
    }

    /// Kernel tabulated on `[0, r_max]` (exact beyond).
    pub fn tabulated(space: Space, t: f64, r_max: f64) -> Result<Self> {
        check_time(t)?;
        if space == Space::Euclidean2 {
            return Self::direct(space, t);
        }
        let h = (r_max / 1024.0).clamp(1e-4, 0.004);
        let n = (r_max / h).ceil() as usize + 1;
        let q_at = |i: isize| -> Result<f64> {
            let r = (i.unsigned_abs() as f64) * h;
            Ok(hyperbolic2_log_kernel(t, r)? + r * r / (4.0 * t))
        };
        let q: Vec<f64> = (0..n as isize + 3).map(q_at).collect::<Result<_>>()?;
        let at = |i: isize| q[i.unsigned_abs()];
        let dq = (0..n as isize + 1)
            .map(|i| (-at(i + 2) + 8.0 * at(i + 1) - 8.0 * at(i - 1) + at(i - 2)) / (12.0 * h))
            .collect();
        let mut kernel = TimeKernel {
            space,
            t,
            table: Some(Table {
                h,
                r_max: (n - 1) as f64 * h,
                q,
                dq,
            }),
            ln_error: 0.0,
        };
        // interpolation error measured at cell midpoints, with a safety factor
        let mut worst: f64 = 0.0;
        for i in (0..n - 1).step_by(4) {
            let r = (i as f64 + 0.5) * h;
            worst = worst.max((kernel.ln_density(r)? - hyperbolic2_log_kernel(t, r)?).abs());
        }
        kernel.ln_error = 4.0 * worst + 1e-14;
        Ok(kernel)
    }

    /// Bound on the absolute error of [`TimeKernel::ln_density`].
    pub fn ln_error(&self) -> f64 {
        self.ln_error
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn time(&self) -> f64 {
        self.t
    }

    /// `ln g(t, r)`.
    pub fn ln_density(&self, r: f64) -> Result<f64> {
        match (&self.table, self.space) {
            (_, Space::Euclidean2) => euclidean_log_kernel(self.t, r, 2),
            (Some(tab), _) if r <= tab.r_max && r >= 0.0 => {
                let x = r / tab.h;
                let i = (x.floor() as usize).min(tab.q.len() - 4);
                let s = x - i as f64;
                let (h00, h10, h01, h11) = (
                    (1.0 + 2.0 * s) * (1.0 - s) * (1.0 - s),
                    s * (1.0 - s) * (1.0 - s),
                    s * s * (3.0 - 2.0 * s),
                    s * s * (s - 1.0),
                );
                let q = h00 * tab.q[i] + h10 * tab.h * tab.dq[i] + h01 * tab.q[i + 1] + h11 * tab.h * tab.dq[i + 1];
                Ok(q - r * r / (4.0 * self.t))
            }
            _ => hyperbolic2_log_kernel(self.t, r),
        }
    }
}

/// Dirichlet heat kernel of the rectangle `[0, L₁] × [0, L₂]` by images.
#[derive(Clone, Copy, Debug)]
pub struct RectDirichletKernel {
    pub l1: f64,
    pub l2: f64,
}

/// One axis of the image series: free kernel `g(ξ − η)` and the image
/// excess `g(ξ − η) − p(ξ, η)`, both without cancellation.
fn axis_terms(t: f64, xi: f64, eta: f64, l: f64, n: i64) -> (f64, f64) {
    let g = |z: f64| (-z * z / (4.0 * t)).exp() / (4.0 * PI * t).sqrt();
    let free = g(xi - eta);
    let mut reflected = 0.0;
    let mut shifted = 0.0;
    for m in -n..=n {
        let shift = 2.0 * m as f64 * l;
        reflected += g(xi + eta + shift);
        if m != 0 {
            shifted += g(xi - eta + shift);
        }
    }
    (free, reflected - shifted)
}

impl RectDirichletKernel {
    pub fn new(l1: f64, l2: f64) -> Result<Self> {
        if l1 > 0.0 && l2 > 0.0 {
            Ok(RectDirichletKernel { l1, l2 })
        } else {
            Err(Error::arg("rectangle sides must be positive"))
        }
    }

    /// Image count making the discarded tail below `tol`.
    pub fn truncation(&self, t: f64, tol: f64) -> i64 {
        let l = self.l1.min(self.l2);
        ((t * (1.0 / tol).ln()).sqrt() / l).ceil() as i64 + 2
    }

    fn check(&self, p: Vec2) -> Result<()> {
        if p.x > 0.0 && p.x < self.l1 && p.y > 0.0 && p.y < self.l2 {
            Ok(())
        } else {
            Err(Error::arg(format!("point ({}, {}) is not inside the rectangle", p.x, p.y)))
        }
    }

    pub fn kernel(&self, t: f64, x: Vec2, y: Vec2, n: Option<i64>) -> Result<f64> {
        check_time(t)?;
        self.check(x)?;
        self.check(y)?;
        let n = n.unwrap_or_else(|| self.truncation(t, 1e-12));
        let (gx, ex) = axis_terms(t, x.x, y.x, self.l1, n);
        let (gy, ey) = axis_terms(t, x.y, y.y, self.l2, n);
        Ok((gx - ex) * (gy - ey))
    }

    /// `k_{ℝ²} − k_U^D`, computed from the image excesses.
    pub fn deficit(&self, t: f64, x: Vec2, y: Vec2) -> Result<f64> {
        check_time(t)?;
        self.check(x)?;
        self.check(y)?;
        let n = self.truncation(t, 1e-12);
        let (gx, ex) = axis_terms(t, x.x, y.x, self.l1, n);
        let (gy, ey) = axis_terms(t, x.y, y.y, self.l2, n);
        Ok(gx * ey + gy * ex - ex * ey)
    }
}
