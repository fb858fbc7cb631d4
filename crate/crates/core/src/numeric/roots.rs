//! Bracketed scalar root finding.

use crate::error::{Error, Result};

/// Brent's method on a sign-changing bracket `[a, b]`.
pub fn brent<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, xtol: f64) -> Result<f64> {
    let (mut a, mut b) = (a, b);
    let (mut fa, mut fb) = (f(a), f(b));
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() || !fa.is_finite() || !fb.is_finite() {
        return Err(Error::NotBracketed { lo: a, hi: b });
    }
    let (mut c, mut fc) = (b, fb);
    let (mut d, mut e) = (b - a, b - a);
    for _ in 0..300 {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol = 2.0 * f64::EPSILON * b.abs() + 0.5 * xtol;
        let xm = 0.5 * (c - b);
        if xm.abs() <= tol || fb == 0.0 {
            return Ok(b);
        }
        if e.abs() >= tol && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                let qq = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
                q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            }
            p = p.abs();
            if 2.0 * p < (3.0 * xm * q - (tol * q).abs()).min((e * q).abs()) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol { d } else { tol.copysign(xm) };
        fb = f(b);
    }
    Ok(b)
}

/// Plain bisection, useful when `f` is only a sign oracle.
pub fn bisect<F: FnMut(f64) -> bool>(mut is_right: F, mut lo: f64, mut hi: f64, xtol: f64) -> f64 {
    while hi - lo > xtol {
        let m = 0.5 * (lo + hi);
        if m <= lo || m >= hi {
            break;
        }
        if is_right(m) {
            hi = m;
        } else {
            lo = m;
        }
    }
    0.5 * (lo + hi)
}

/// Solves `a cos φ + b sin φ = c`, returning the solutions in `[0, 2π)`.
/// A tangential solution is returned once.
pub fn trig_linear(a: f64, b: f64, c: f64) -> Vec<f64> {
    let m = a.hypot(b);
    if m == 0.0 || c.abs() > m * (1.0 + 1e-14) {
        return Vec::new();
    }
    let base = b.atan2(a);
    let half = (c / m).clamp(-1.0, 1.0).acos();
    let wrap = |x: f64| x.rem_euclid(std::f64::consts::TAU);
    if half == 0.0 {
        vec![wrap(base)]
    } else {
        vec![wrap(base - half), wrap(base + half)]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn brent_finds_cubic_root() {
        let r = brent(|x| x * x * x - 2.0, 0.0, 2.0, 1e-15).unwrap();
        assert!((r - 2f64.cbrt()).abs() < 1e-14);
    }

    #[test]
    fn brent_rejects_missing_bracket() {
        assert!(brent(|x| x * x + 1.0, -1.0, 1.0, 1e-12).is_err());
    }

    #[test]
    fn trig_linear_solutions_satisfy_equation() {
        let (a, b, c) = (0.3, -1.2, 0.5);
        let sols = trig_linear(a, b, c);
        assert_eq!(sols.len(), 2);
        for p in sols {
            assert!((a * p.cos() + b * p.sin() - c).abs() < 1e-14);
        }
        assert!(trig_linear(1.0, 0.0, 2.0).is_empty());
    }
}
