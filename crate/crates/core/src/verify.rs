//! Acceptance suites: each one runs a numbered group of checks against
//! closed forms or independent computations and reports pass or fail.

use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::compare::{
    criterion_theorem2, initially_hotter_numeric, mean_curvature_compare, momentum_check, Relation, Side,
};
use crate::error::{Error, Result};
use crate::geometry::hyperbolic::M3;
use crate::geometry::path::Piece;
use crate::geometry::plane::Vec2;
use crate::geometry::random::star_polygon;
use crate::heat::{boundary_limit, temperature, QuadratureConfig, Triple};
use crate::hotspot::{
    dumbbell_t0, dumbbell_t0_closed_form, dumbbell_x_of_t, hottest_points, logit, DumbbellParams, SearchConfig,
};
use crate::kernel::{euclidean_kernel, hyperbolic2_log_kernel, RectDirichletKernel};
use crate::numeric::fit::{least_squares, line_fit};
use crate::numeric::quad::{breakpoints, Adaptive};
use crate::symmetrize::{ball_volumes, steiner, verify_s1, verify_symmcomp, SteinerConfig, SteinerFrame};
use crate::tube::{
    eps_grid, tube2d_coefficient, tube3d_area_expansion_check, tube3d_planar_curvature, theta_fit, PlanarModelCurve,
};
use crate::{Domain, Point, Space};

/// Suite names in criterion order.
pub const SUITES: [&str; 12] = [
    "kernel",
    "disc",
    "polygons",
    "dumbbell",
    "angle",
    "limits",
    "curvature",
    "steiner",
    "dirichlet",
    "tube",
    "momentum",
    "mass",
];

#[derive(Clone, Debug, Serialize)]
pub struct CheckLine {
    pub passed: bool,
    pub message: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub id: usize,
    pub suite: &'static str,
    pub title: &'static str,
    pub passed: bool,
    pub checks: Vec<CheckLine>,
    pub seconds: f64,
}

impl SuiteReport {
    /// One line: `[PASS] 3 polygons: ...` with the failed-check count.
    pub fn line(&self) -> String {
        let failed = self.checks.iter().filter(|c| !c.passed).count();
        format!(
            "[{}] {:>2} {:<10} {} ({} checks, {} failed, {:.1} s)",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.suite,
            self.title,
            self.checks.len(),
            failed,
            self.seconds
        )
    }
}

#[derive(Default)]
struct Checks(Vec<CheckLine>);

impl Checks {
    fn check(&mut self, passed: bool, message: String) {
        self.0.push(CheckLine { passed, message });
    }
}

/// Runs one suite by name or number, or every suite for `"all"`.
pub fn run(name: &str) -> Result<Vec<SuiteReport>> {
    if name == "all" {
        return Ok((1..=SUITES.len()).map(run_id).collect());
    }
    let id = match name.parse::<usize>() {
        Ok(k) if (1..=SUITES.len()).contains(&k) => k,
        _ => match SUITES.iter().position(|s| *s == name) {
            Some(i) => i + 1,
            None => {
                return Err(Error::arg(format!(
                    "unknown suite '{name}'; expected one of {}, or all",
                    SUITES.join(", ")
                )))
            }
        },
    };
    Ok(vec![run_id(id)])
}

fn run_id(id: usize) -> SuiteReport {
    let (title, body): (&'static str, fn(&mut Checks) -> Result<()>) = match id {
        1 => ("kernel conservation", kernel_conservation),
        2 => ("disc centre closed form", disc_closed_form),
        3 => ("regular polygons in both planes", regular_polygons),
        4 => ("square dumbbell hottest points", dumbbell),
        5 => ("tube angle asymptotics", angle_asymptotics),
        6 => ("boundary limits", limits),
        7 => ("ellipse curvature comparison", ellipse_curvature),
        8 => ("Steiner symmetrization", steiner_suite),
        9 => ("Dirichlet kernel decay", dirichlet_decay),
        10 => ("tubes about space curves", tubes),
        11 => ("regular polygon momentum", momentum),
        12 => ("tail versus annulus mass", tail_mass),
        _ => unreachable!("suite ids are validated"),
    };
    let start = Instant::now();
    let mut checks = Checks::default();
    if let Err(e) = body(&mut checks) {
        checks.check(false, format!("error: {e}"));
    }
    let passed = !checks.0.is_empty() && checks.0.iter().all(|c| c.passed);
    SuiteReport {
        id,
        suite: SUITES[id - 1],
        title,
        passed,
        checks: checks.0,
        seconds: start.elapsed().as_secs_f64(),
    }
}

fn kernel_conservation(c: &mut Checks) -> Result<()> {
    for t in [0.1f64, 0.5, 2.0] {
        let end = 2.0 * t + 12.0 * t.sqrt() + 2.0;
        let pts = breakpoints(0.0, end, (1..16).map(|k| k as f64 * end / 16.0));
        let quad = Adaptive::new(1e-11, 0.0);
        let flat = quad.integrate(|r| euclidean_kernel(t, r, 2).unwrap_or(f64::NAN) * TAU * r, &pts);
        c.check((flat.value - 1.0).abs() < 1e-6, format!("plane t={t}: mass {:.15}", flat.value));
        let hyp = quad.integrate(
            |r| (hyperbolic2_log_kernel(t, r).unwrap_or(f64::NAN) + (TAU * r.sinh()).ln()).exp(),
            &pts,
        );
        c.check((hyp.value - 1.0).abs() < 1e-6, format!("hyperbolic t={t}: mass {:.15}", hyp.value));
    }
    Ok(())
}

fn disc_closed_form(c: &mut Checks) -> Result<()> {
    let cfg = QuadratureConfig::default();
    for (r, t) in [(1.0, 0.1), (1.0, 1.0), (0.5, 0.05), (2.0, 0.5), (0.3, 2.0)] {
        let d = Domain::disc(Point::e(0.0, 0.0), r)?;
        let f = temperature(&Triple::new(Point::e(0.0, 0.0), d)?, t, &cfg)?;
        let exact = -(-r * r / (4.0 * t)).exp_m1();
        let err = (f.value - exact).abs();
        c.check(err < 1e-8, format!("R={r} t={t}: {:.15} vs {exact:.15} (error {err:.1e})", f.value));
    }
    Ok(())
}

fn regular_polygons(c: &mut Checks) -> Result<()> {
    let cfg = QuadratureConfig::default();
    for n in [3usize, 4, 6, 12] {
        for r in [0.5, 1.0, 2.0] {
            let e = Domain::regular_polygon(Space::Euclidean2, n, r)?;
            let h = Domain::regular_polygon(Space::Hyperbolic2, n, r)?;
            let (ce, ch) = (Point::e(0.0, 0.0), Point::h(0.0, 0.0));
            let re = e.distance_from_complement(&ce)?;
            let rh = h.distance_from_complement(&ch)?;
            let cos = (PI / n as f64).cos();
            let (fe, fh) = (cos * r, (cos * r.tanh()).atanh());
            let formula = (re - fe).abs() < 1e-12 && (rh - fh).abs() < 1e-12;
            c.check(
                formula && re > rh,
                format!("n={n} R={r}: inradii {re:.12} > {rh:.12} (formula errors {:.1e}, {:.1e})", re - fe, rh - fh),
            );
            let v = initially_hotter_numeric(&Triple::new(ce, e)?, &Triple::new(ch, h)?, Some(0.125), 7, &cfg)?;
            c.check(
                v.is_strict(Side::First),
                format!("n={n} R={r}: plane centre hotter on t=2^-3..2^-10, min logit margin {:.3e}", v.min_margin),
            );
        }
    }
    Ok(())
}

fn dumbbell(c: &mut Checks) -> Result<()> {
    for a in [0.5, 1.0, 2.0] {
        for b in [0.5, 1.0, 2.0] {
            let t0 = dumbbell_t0(&DumbbellParams::new(a, b, 0.0)?)?;
            let closed = dumbbell_t0_closed_form(a, b);
            let rel = (t0 - closed).abs() / closed;
            c.check(rel < 1e-10, format!("a={a} b={b}: t0 {t0:.15} vs closed form (relative {rel:.1e})"));
        }
    }
    let search = SearchConfig::default();
    for (a, b) in [(1.0, 1.0), (0.5, 1.0)] {
        let p = DumbbellParams::new(a, b, 0.0)?;
        let d = p.domain()?;
        let t0 = dumbbell_t0(&p)?;
        for s in [0.2, 0.5, 0.8] {
            let t = s * t0;
            let x = dumbbell_x_of_t(t, &p)?.ok_or_else(|| Error::arg("no hottest abscissa before t0"))?;
            let h = hottest_points(&d, t, &search)?;
            let mut worst: f64 = 0.0;
            for q in &h.points {
                let v = q.euclidean()?;
                worst = worst.max((v.x.abs() - x).abs()).max(v.y.abs());
            }
            let mirrored = h.points.len() == 2
                && h.points.iter().map(|q| q.euclidean().map(|v| v.x.signum())).sum::<Result<f64>>()? == 0.0;
            c.check(
                mirrored && worst < 1e-5,
                format!("a={a} b={b} t={s}·t0: ±{x:.9} against search, {} points, deviation {worst:.1e}", h.points.len()),
            );
        }
        let late = hottest_points(&d, 1.01 * t0, &search)?;
        let off = if late.is_single() { late.points[0].dist(&Point::e(0.0, 0.0))? } else { f64::INFINITY };
        c.check(off < 1e-5, format!("a={a} b={b} t=1.01·t0: single hottest point at distance {off:.1e} from origin"));
    }
    Ok(())
}

fn angle_asymptotics(c: &mut Checks) -> Result<()> {
    for (r, k) in [(1.0, 0.0), (1.0, 0.5), (0.5, -1.0)] {
        let rep = theta_fit(&PlanarModelCurve::Circle { curvature: k }, r, &eps_grid(1e-2, 7))?;
        let p = rep.exponent.unwrap_or(f64::NAN);
        c.check(
            (p - 0.5).abs() <= 0.01 && rep.relative_error < 0.01,
            format!(
                "R={r} κ={k}: exponent {p:.5}, coefficient {:.6} vs {:.6} (relative {:.1e})",
                rep.coefficient, rep.formula, rep.relative_error
            ),
        );
    }
    Ok(())
}

fn limits(c: &mut Checks) -> Result<()> {
    let cfg = QuadratureConfig::default();
    let square = Domain::polygon(&[Point::e(-1.0, -1.0), Point::e(1.0, -1.0), Point::e(1.0, 1.0), Point::e(-1.0, 1.0)])?;
    let hexagon = Domain::regular_polygon(Space::Euclidean2, 6, 1.0)?;
    let cases = [
        ("disc edge", Domain::disc(Point::e(0.0, 0.0), 1.0)?, Point::e(1.0, 0.0), 0.5),
        ("square corner", square, Point::e(1.0, 1.0), 0.25),
        ("hexagon vertex", hexagon, Point::e(1.0, 0.0), 1.0 / 3.0),
    ];
    for (name, d, x, target) in cases {
        let b = boundary_limit(&d, &x, &cfg)?;
        let ok = (b.from_radius - target).abs() < 1e-3
            && (b.from_time - target).abs() < 1e-3
            && (b.from_radius - b.from_time).abs() < 1e-3;
        c.check(
            ok,
            format!("{name}: radius limit {:.9}, time limit {:.9}, target {target:.9}", b.from_radius, b.from_time),
        );
    }
    Ok(())
}

fn ellipse_curvature(c: &mut Checks) -> Result<()> {
    let e = Domain::ellipse(Vec2::new(0.0, 0.0), 2.0, 1.0, 0.0)?;
    let (co, vx) = (Point::e(0.0, 1.0), Point::e(2.0, 0.0));
    let v = initially_hotter_numeric(
        &Triple::new(co, e.clone())?,
        &Triple::new(vx, e.clone())?,
        Some(0.0625),
        5,
        &QuadratureConfig::default(),
    )?;
    let beyond = v.trace.iter().map(|m| m.margin - m.budget).fold(f64::INFINITY, f64::min);
    c.check(
        v.is_strict(Side::First) && beyond > 0.0,
        format!("co-vertex hotter on t=2^-4..2^-9: min logit margin {:.3e}, beyond budget {beyond:.3e}", v.min_margin),
    );
    let m = mean_curvature_compare(&e, &co, &vx)?;
    let (k1, k2) = (m.details["fitted_curvature_first"], m.details["fitted_curvature_second"]);
    c.check((k1 - 0.25).abs() < 1e-2, format!("co-vertex fitted curvature {k1:.6} vs 0.25"));
    c.check((k2 - 2.0).abs() < 1e-2, format!("vertex fitted curvature {k2:.6} vs 2"));
    c.check(m.is_strict(Side::First), "curvature criterion favours the co-vertex".into());
    Ok(())
}

fn random_frame(rng: &mut ChaCha8Rng, space: Space) -> Result<SteinerFrame> {
    use rand::Rng;
    let angle = rng.gen_range(0.0..TAU);
    let (x, y) = (rng.gen_range(-0.3..0.3), rng.gen_range(-0.3..0.3));
    Ok(match space {
        Space::Euclidean2 => SteinerFrame::euclidean(Vec2::new(x, y), Vec2::polar(1.0, angle))?,
        Space::Hyperbolic2 => SteinerFrame::hyperbolic(M3::from_chart(x, y), angle),
    })
}

fn steiner_suite(c: &mut Checks) -> Result<()> {
    use rand::Rng;
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let cfg = SteinerConfig::default();
    for space in [Space::Euclidean2, Space::Hyperbolic2] {
        let mut worst: f64 = 0.0;
        for _ in 0..10 {
            let n = rng.gen_range(5..10);
            let d = star_polygon(&mut rng, space, n, 0.3, 1.0)?;
            let s = steiner(&d, &random_frame(&mut rng, space)?, &cfg)?;
            worst = worst.max((s.domain.area() - d.area()).abs() / d.area());
        }
        c.check(worst < 1e-6, format!("{space:?}: area preserved on 10 polygons, worst relative error {worst:.1e}"));
    }

    let discs = [
        (
            Domain::disc(Point::e(0.3, 0.7), 0.5)?,
            SteinerFrame::euclidean(Vec2::new(0.0, 0.0), Vec2::new(0.0, 1.0))?,
            Point::e(0.3, 0.7),
            0.5,
        ),
        (
            Domain::disc(Point::h(0.4, -0.2), 0.6)?,
            SteinerFrame::hyperbolic(M3::from_chart(0.0, 0.1), 0.4),
            Point::h(0.4, -0.2),
            0.6,
        ),
    ];
    for (d, f, center, r) in discs {
        let s = steiner(&d, &f, &cfg)?;
        let pc = f.project(&center)?;
        let mut worst: f64 = 0.0;
        for p in s.domain.boundary_samples(32) {
            worst = worst.max((p.dist(&pc)? - r).abs());
        }
        let tol = 10.0 * s.hausdorff.max(1e-5);
        c.check(
            worst < tol,
            format!("{:?}: disc maps to disc, radius deviation {worst:.1e} (resolution {tol:.1e})", d.space()),
        );
    }

    let times = [0.05, 0.2, 1.0];
    let quad = QuadratureConfig::default();
    let coarse = SteinerConfig::with_tol(1e-5);
    let mut cases: Vec<(Domain, SteinerFrame, Point)> = vec![(
        Domain::polygon(&[Point::e(-1.0, 0.0), Point::e(1.5, 0.0), Point::e(0.8, 1.1)])?,
        SteinerFrame::euclidean(Vec2::new(0.0, 0.0), Vec2::new(1.0, 0.0))?,
        Point::e(0.4, 0.35),
    )];
    for space in [Space::Euclidean2, Space::Euclidean2, Space::Hyperbolic2, Space::Hyperbolic2] {
        let n = rng.gen_range(5..8);
        let d = star_polygon(&mut rng, space, n, 0.4, 1.0)?;
        let f = random_frame(&mut rng, space)?;
        let x = match space {
            Space::Euclidean2 => Point::e(0.05, -0.05),
            Space::Hyperbolic2 => Point::h(0.05, -0.05),
        };
        cases.push((d, f, x));
    }
    for (i, (d, f, x)) in cases.iter().enumerate() {
        let radii: Vec<f64> = (1..=40).map(|k| k as f64 * d.diameter() / 20.0).collect();
        let vols = ball_volumes(d, f, x, &radii)?;
        let worst = vols.iter().map(|b| b.original - b.symmetrized).fold(f64::NEG_INFINITY, f64::max);
        c.check(worst <= 1e-9, format!("domain {i} ({:?}): ball volumes ordered on 40 radii, worst excess {worst:.1e}", d.space()));
        let v = verify_symmcomp(d, f, x, &times, &coarse, &quad)?;
        let holds = matches!(v.relation, Relation::StrictlyHotter | Relation::HotterOrEqual) && v.hotter != Some(Side::First);
        c.check(
            holds,
            format!("domain {i}: symmetral not colder at t=0.05,0.2,1 ({:?}, min margin {:.3e})", v.relation, v.min_margin),
        );
    }

    let (a, b, cc) = (Point::h(-0.6, 0.0), Point::h(0.6, 0.0), Point::h(0.5, 0.7));
    let tri = Domain::polygon(&[a, b, cc])?;
    let f = SteinerFrame::through(&a, &b)?;
    let iso = Domain::polygon(&[a, b, f.project(&cc)?])?;
    let x = Point::h(0.2, 0.2);
    let px = f.project(&x)?;
    let sym = steiner(&tri, &f, &coarse)?;
    let inside = verify_s1(&sym.domain, &iso, &f, 400)?;
    c.check(inside.holds, format!("hyperbolic triangle: symmetral inside isosceles triangle (excess {:.1e})", inside.worst_excess));
    let mut least = f64::INFINITY;
    for &t in &times {
        let ft = temperature(&Triple::new(x, tri.clone())?, t, &quad)?;
        let f0 = temperature(&Triple::new(px, iso.clone())?, t, &quad)?;
        let budget = ft.rel_err + ft.rel_err_complement + f0.rel_err + f0.rel_err_complement;
        least = least.min(logit(&f0) - logit(&ft) - budget);
    }
    c.check(least > 0.0, format!("hyperbolic triangle strictly colder than isosceles triangle, margin beyond budget {least:.3e}"));
    Ok(())
}

fn dirichlet_decay(c: &mut Checks) -> Result<()> {
    let k = RectDirichletKernel::new(1.0, 1.0)?;
    let d = 0.3;
    let m = 14;
    // sources at distance ≥ d from the boundary, targets on a grid of the open square
    let inner: Vec<f64> = (0..=4).map(|i| d + (1.0 - 2.0 * d) * i as f64 / 4.0).collect();
    let outer: Vec<f64> = (1..m).map(|i| i as f64 / m as f64).chain([1e-9, 1.0 - 1e-9]).collect();
    let times: Vec<f64> = (2..=8).map(|j| 0.5f64.powi(j)).collect();
    let mut ln_max = Vec::with_capacity(times.len());
    for &t in &times {
        let mut best = f64::NEG_INFINITY;
        for &x1 in &inner {
            for &x2 in &inner {
                for &y1 in &outer {
                    for &y2 in &outer {
                        best = best.max(k.deficit(t, Vec2::new(x1, x2), Vec2::new(y1, y2))?);
                    }
                }
            }
        }
        ln_max.push(best.ln());
    }
    let inv: Vec<f64> = times.iter().map(|t| 1.0 / t).collect();
    let rows: Vec<Vec<f64>> = times.iter().map(|t| vec![1.0, 1.0 / t, t.ln()]).collect();
    let slope = least_squares(&rows, &ln_max)?[1];
    let (_, raw) = line_fit(&inv, &ln_max)?;
    let target = -d * d / 4.0;
    let rel = (slope - target).abs() / target.abs();
    c.check(
        rel < 0.1,
        format!("slope of ln max deficit in 1/t: {slope:.6} vs {target:.6} (relative {rel:.1e}; without the ln t term {raw:.6})"),
    );
    Ok(())
}

fn tubes(c: &mut Checks) -> Result<()> {
    for (rho, r) in [(2.0, 0.5), (1.0, 0.25), (5.0, 1.5)] {
        let inner = tube3d_planar_curvature(1.0 / rho, r, 0.0)?;
        let outer = tube3d_planar_curvature(1.0 / rho, r, PI)?;
        let (e0, e1) = ((inner - 1.0 / (rho - r)).abs(), (outer + 1.0 / (rho + r)).abs());
        c.check(
            e0 < 1e-12 && e1 < 1e-12,
            format!("ρ={rho} R={r}: planar curvatures {inner:.15}, {outer:.15} (errors {e0:.1e}, {e1:.1e})"),
        );
    }
    let rep = tube3d_area_expansion_check(0.5, 0.5, &eps_grid(1e-2, 7))?;
    c.check(
        rep.relative_error < 0.02,
        format!(
            "torus ρ=2 R=0.5: coefficient {:.6} vs α-integral {:.6} (relative {:.1e})",
            rep.coefficient, rep.formula, rep.relative_error
        ),
    );
    let r = 0.5;
    let (flat, bent) = (tube2d_coefficient(r, 0.0)?, tube2d_coefficient(r, 0.5)?);
    let pieces = vec![
        Piece::Segment { from: [-4.0, 0.0], to: [0.0, 0.0] },
        Piece::Arc { center: [0.0, 2.0], radius: 2.0, start: -FRAC_PI_2, sweep: PI },
    ];
    let tube = Domain::tube(pieces, r)?;
    let v = criterion_theorem2(
        &Triple::new(Point::e(-2.0, 0.0), tube.clone())?,
        &Triple::new(Point::e(2.0, 2.0), tube)?,
        r,
        r + 0.02,
    )?;
    c.check(
        bent < flat && v.is_strict(Side::Second),
        format!("planar tube R=0.5: coefficients {bent:.6} < {flat:.6}, curvier point strictly hotter ({:?})", v.relation),
    );
    Ok(())
}

fn momentum(c: &mut Checks) -> Result<()> {
    let search = SearchConfig::default();
    let square = Domain::regular_polygon(Space::Euclidean2, 4, 2f64.sqrt())?;
    let rect = Domain::polygon(&[Point::e(-2.0, -0.5), Point::e(2.0, -0.5), Point::e(2.0, 0.5), Point::e(-2.0, 0.5)])?;
    let center = Point::e(0.0, 0.0);
    let v = momentum_check(&square, &center, &rect, &[0.1, 0.3, 1.0], &search)?;
    c.check(
        v.is_strict(Side::First) && v.min_margin > 0.0,
        format!("square over 4×1 rectangle at t=0.1,0.3,1: min logit margin {:.3e}", v.min_margin),
    );
    let (s, co) = (0.6f64.sin(), 0.6f64.cos());
    let turned: Vec<Point> = [(1.0, 0.0), (0.0, 1.0), (-1.0, 0.0), (0.0, -1.0)]
        .iter()
        .map(|&(x, y)| Point::e(0.3 + 2f64.sqrt() * (co * x - s * y), -0.7 + 2f64.sqrt() * (s * x + co * y)))
        .collect();
    let copy = Domain::polygon(&turned)?;
    let w = momentum_check(&square, &center, &copy, &[0.1, 0.3, 1.0], &search)?;
    let gap = w.details["max_abs_temperature_gap"];
    c.check(gap < 1e-9, format!("congruent copy: temperature gap {gap:.1e}"));
    Ok(())
}

fn tail_mass(c: &mut Checks) -> Result<()> {
    let (r1, r2, r3) = (0.5f64, 1.0f64, 1.5f64);
    let o = Point::e(0.0, 0.0);
    let ring = Domain::annulus(o, r1, r2)?;
    let ball = Domain::disc(o, r3)?;
    let cfg = QuadratureConfig::default();
    for k in 2..=12 {
        let t = 0.5f64.powi(k);
        let exact_tail = -r3 * r3 / (4.0 * t);
        let exact_ring = -r1 * r1 / (4.0 * t) + (-(-(r2 * r2 - r1 * r1) / (4.0 * t)).exp()).ln_1p();
        let tail = temperature(&Triple::new(o, ball.clone())?, t, &cfg)?.ln_complement;
        let mass = temperature(&Triple::new(o, ring.clone())?, t, &cfg)?.ln_value;
        let agree = (tail - exact_tail).abs() < 1e-8 * exact_tail.abs() && (mass - exact_ring).abs() < 1e-8 * exact_ring.abs();
        c.check(
            agree && tail < mass,
            format!("t=2^-{k}: ln tail {tail:.9} < ln annulus {mass:.9} (closed forms {exact_tail:.9}, {exact_ring:.9})"),
        );
    }
    Ok(())
}
