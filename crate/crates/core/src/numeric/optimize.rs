//! Derivative-free one- and two-dimensional optimisation.

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Golden-section search for a maximum of a unimodal `f` on `[a, b]`.
pub fn golden_max<F: FnMut(f64) -> f64>(mut f: F, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while (b - a).abs() > tol {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    if fc > fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

/// Nelder–Mead minimisation in two variables.
pub fn nelder_mead<F: FnMut([f64; 2]) -> f64>(
    mut f: F,
    x0: [f64; 2],
    step: f64,
    xtol: f64,
    max_iter: usize,
) -> ([f64; 2], f64) {
    let mut simplex = [x0, [x0[0] + step, x0[1]], [x0[0], x0[1] + step]];
    let mut vals = [f(simplex[0]), f(simplex[1]), f(simplex[2])];
    let lerp = |a: [f64; 2], b: [f64; 2], t: f64| [a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])];
    for _ in 0..max_iter {
        let mut idx = [0, 1, 2];
        idx.sort_by(|&i, &j| vals[i].total_cmp(&vals[j]));
        simplex = [simplex[idx[0]], simplex[idx[1]], simplex[idx[2]]];
        vals = [vals[idx[0]], vals[idx[1]], vals[idx[2]]];
        let size = (0..2)
            .map(|k| {
                let lo = simplex.iter().map(|p| p[k]).fold(f64::INFINITY, f64::min);
                let hi = simplex.iter().map(|p| p[k]).fold(f64::NEG_INFINITY, f64::max);
                hi - lo
            })
            .fold(0.0, f64::max);
        if size < xtol {
            break;
        }
        let centroid = lerp(simplex[0], simplex[1], 0.5);
        let reflected = lerp(simplex[2], centroid, 2.0);
        let fr = f(reflected);
        if fr < vals[0] {
            let expanded = lerp(simplex[2], centroid, 3.0);
            let fe = f(expanded);
            if fe < fr {
                simplex[2] = expanded;
                vals[2] = fe;
            } else {
                simplex[2] = reflected;
                vals[2] = fr;
            }
        } else if fr < vals[1] {
            simplex[2] = reflected;
            vals[2] = fr;
        } else {
            let contracted = if fr < vals[2] {
                lerp(simplex[2], centroid, 1.5)
            } else {
                lerp(simplex[2], centroid, 0.5)
            };
            let fc = f(contracted);
            if fc < vals[2].min(fr) {
                simplex[2] = contracted;
                vals[2] = fc;
            } else {
                for i in 1..3 {
                    simplex[i] = lerp(simplex[0], simplex[i], 0.5);
                    vals[i] = f(simplex[i]);
                }
            }
        }
    }
    let best = (0..3).min_by(|&i, &j| vals[i].total_cmp(&vals[j])).unwrap_or(0);
    (simplex[best], vals[best])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_finds_parabola_peak() {
        let (x, _) = golden_max(|x| -(x - 0.3) * (x - 0.3), -1.0, 2.0, 1e-10);
        assert!((x - 0.3).abs() < 1e-8);
    }

    #[test]
    fn nelder_mead_minimises_rosenbrock() {
        let (x, _) = nelder_mead(
            |p| (1.0 - p[0]).powi(2) + 100.0 * (p[1] - p[0] * p[0]).powi(2),
            [-1.0, 1.0],
            0.5,
            1e-10,
            5000,
        );
        assert!((x[0] - 1.0).abs() < 1e-6 && (x[1] - 1.0).abs() < 1e-6);
    }
}
