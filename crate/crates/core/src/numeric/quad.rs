//! Gauss–Legendre rules and a globally adaptive Gauss–Kronrod integrator.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

#[allow(clippy::excessive_precision)]
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];
#[allow(clippy::excessive_precision)]
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

/// Result of a quadrature with its error estimate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
    pub evals: usize,
    pub converged: bool,
}

/// Nodes and weights of the `n`-point Gauss–Legendre rule on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n > 0);
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, 0.0);
            for j in 0..n {
                let p2 = p1;
                p1 = p0;
                p0 = ((2 * j + 1) as f64 * z * p1 - j as f64 * p2) / (j + 1) as f64;
            }
            dp = n as f64 * (z * p0 - p1) / (z * z - 1.0);
            let dz = p0 / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
        w[n - 1 - i] = w[i];
    }
    (x, w)
}

fn rescale_error(err: f64, resabs: f64, resasc: f64) -> f64 {
    let mut e = err.abs();
    if resasc != 0.0 && e != 0.0 {
        e = resasc * (200.0 * e / resasc).powf(1.5).min(1.0);
    }
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        e = e.max(50.0 * f64::EPSILON * resabs);
    }
    e
}

/// 21-point Kronrod rule with embedded 10-point Gauss estimate.
pub fn qk21<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut resk = fc * WGK[10];
    let mut resg = 0.0;
    let mut resabs = resk.abs();
    let mut fv1 = [0.0; 10];
    let mut fv2 = [0.0; 10];
    for j in 0..10 {
        let x = h * XGK[j];
        let f1 = f(c - x);
        let f2 = f(c + x);
        fv1[j] = f1;
        fv2[j] = f2;
        if j % 2 == 1 {
            resg += WG[j / 2] * (f1 + f2);
        }
        resk += WGK[j] * (f1 + f2);
        resabs += WGK[j] * (f1.abs() + f2.abs());
    }
    let mean = 0.5 * resk;
    let mut resasc = WGK[10] * (fc - mean).abs();
    for j in 0..10 {
        resasc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let ah = h.abs();
    (resk * h, rescale_error((resk - resg) * h, resabs * ah, resasc * ah))
}

struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// Globally adaptive integrator: the panel with the largest error is
/// bisected until the total error meets `max(abs_tol, rel_tol * |I|)`.
#[derive(Clone, Copy, Debug)]
pub struct Adaptive {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_panels: usize,
}

impl Default for Adaptive {
    fn default() -> Self {
        Adaptive {
            rel_tol: 1e-11,
            abs_tol: 0.0,
            max_panels: 2000,
        }
    }
}

impl Adaptive {
    pub fn new(rel_tol: f64, abs_tol: f64) -> Self {
        Adaptive {
            rel_tol,
            abs_tol,
            ..Default::default()
        }
    }

    /// Integrates over consecutive intervals of the sorted `points`.
    pub fn integrate<F: FnMut(f64) -> f64>(&self, mut f: F, points: &[f64]) -> Estimate {
        let mut heap = BinaryHeap::new();
        let mut frozen_value = 0.0;
        let mut frozen_error = 0.0;
        let mut evals = 0;
        for w in points.windows(2) {
            if w[1] > w[0] {
                let (value, error) = qk21(&mut f, w[0], w[1]);
                evals += 21;
                heap.push(Panel {
                    a: w[0],
                    b: w[1],
                    value,
                    error,
                });
            }
        }
        loop {
            let (mut total, mut err) = (frozen_value, frozen_error);
            for p in heap.iter() {
                total += p.value;
                err += p.error;
            }
            let target = self.abs_tol.max(self.rel_tol * total.abs());
            let done = err <= target || heap.is_empty();
            if done || heap.len() >= self.max_panels || !total.is_finite() {
                return Estimate {
                    value: total,
                    error: err,
                    evals,
                    converged: done && total.is_finite(),
                };
            }
            let worst = heap.pop().expect("non-empty heap");
            let m = 0.5 * (worst.a + worst.b);
            if m <= worst.a || m >= worst.b || (worst.b - worst.a) < 1e-15 * m.abs().max(1e-300) {
                frozen_value += worst.value;
                frozen_error += worst.error;
                continue;
            }
            for (a, b) in [(worst.a, m), (m, worst.b)] {
                let (value, error) = qk21(&mut f, a, b);
                evals += 21;
                heap.push(Panel { a, b, value, error });
            }
        }
    }
}

/// Convenience wrapper over a single interval.
pub fn integrate<F: FnMut(f64) -> f64>(f: F, a: f64, b: f64, rel_tol: f64) -> Estimate {
    Adaptive::new(rel_tol, 0.0).integrate(f, &[a, b])
}

/// Sorts, clips to `[a, b]`, and deduplicates breakpoints.
pub fn breakpoints(a: f64, b: f64, interior: impl IntoIterator<Item = f64>) -> Vec<f64> {
    let mut pts: Vec<f64> = interior
        .into_iter()
        .filter(|x| x.is_finite() && *x > a && *x < b)
        .collect();
    pts.push(a);
    pts.push(b);
    pts.sort_by(f64::total_cmp);
    let scale = (b - a).abs().max(1e-300);
    pts.dedup_by(|x, y| (*x - *y).abs() <= 1e-13 * scale);
    if let Some(last) = pts.last_mut() {
        *last = b;
    }
    pts[0] = a;
    pts
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn legendre_rule_is_exact_for_polynomials() {
        let (x, w) = gauss_legendre(7);
        let s: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(12)).sum();
        assert!((s - 2.0 / 13.0).abs() < 1e-14);
        assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-14);
    }

    #[test]
    fn kronrod_integrates_smooth_function() {
        let (v, e) = qk21(&mut |x: f64| x.exp(), 0.0, 1.0);
        assert!((v - (1f64.exp() - 1.0)).abs() < 1e-15);
        assert!(e < 1e-12);
    }

    #[test]
    fn adaptive_handles_endpoint_singularity() {
        let est = integrate(|x: f64| 1.0 / x.sqrt(), 0.0, 1.0, 1e-10);
        assert!(est.converged);
        assert!((est.value - 2.0).abs() < 1e-9);
    }

    #[test]
    fn adaptive_respects_breakpoints() {
        let f = |x: f64| (x - 0.3).abs();
        let est = Adaptive::default().integrate(f, &breakpoints(0.0, 1.0, [0.3]));
        assert!((est.value - (0.045 + 0.245)).abs() < 1e-14);
    }
}
