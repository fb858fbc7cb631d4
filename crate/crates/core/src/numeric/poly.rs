//! Complex polynomial roots by simultaneous (Aberth) iteration.

use num_complex::Complex64;

fn horner(c: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &a in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + a;
    }
    (p, dp)
}

/// All roots of `Σ c[k] z^k`; coefficients are in ascending order and the
/// leading one must be non-zero.
pub fn roots(coeffs: &[Complex64]) -> Vec<Complex64> {
    let mut c = coeffs.to_vec();
    while c.len() > 1 && c[c.len() - 1].norm() == 0.0 {
        c.pop();
    }
    let n = c.len() - 1;
    if n == 0 {
        return Vec::new();
    }
    let lead = c[n];
    let radius = 1.0
        + c[..n]
            .iter()
            .map(|a| (a / lead).norm())
            .fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(0.5 * radius, 0.4 + std::f64::consts::TAU * k as f64 / n as f64))
        .collect();
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let (p, dp) = horner(&c, z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let mut s = Complex64::new(0.0, 0.0);
            for j in 0..n {
                if j != i {
                    s += 1.0 / (z[i] - z[j]);
                }
            }
            let w = ratio / (1.0 - ratio * s);
            if w.is_finite() {
                z[i] -= w;
                moved = moved.max(w.norm() / z[i].norm().max(1.0));
            }
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quartic_roots_on_unit_circle() {
        // (z^2 - 1)(z^2 + 1) = z^4 - 1
        let c = [-1.0, 0.0, 0.0, 0.0, 1.0].map(|x| Complex64::new(x, 0.0));
        let r = roots(&c);
        assert_eq!(r.len(), 4);
        for z in r {
            assert!((z.norm() - 1.0).abs() < 1e-12);
            assert!((z.powu(4) - 1.0).norm() < 1e-12);
        }
    }
}
