use std::f64::consts::TAU;

use heatcomp::geometry::hyperbolic::{Isometry, M3};
use heatcomp::geometry::plane::{convex_hull, Vec2};
use heatcomp::geometry::random::{interior_point, star_polygon};
use heatcomp::heat::{temperature, temperature_direct2d, Field, QuadratureConfig, Triple};
use heatcomp::kernel::{euclidean_kernel, hyperbolic2_kernel};
use heatcomp::numeric::quad::Adaptive;
use heatcomp::{Domain, Point, Space};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use statrs::function::erf::erf;

fn space_of(hyperbolic: bool) -> Space {
    if hyperbolic {
        Space::Hyperbolic2
    } else {
        Space::Euclidean2
    }
}

fn temp(d: &Domain, x: &Point, t: f64) -> f64 {
    Field::new(d, t, QuadratureConfig::default()).unwrap().at(x).unwrap().value
}

/// Convex hull of a polygon, taken in the Klein chart for ℍ².
fn hull(d: &Domain) -> Domain {
    let pts: Vec<Vec2> = d.polygons().unwrap()[0].iter().map(|p| p.chart()).collect();
    let h: Vec<Point> = convex_hull(&pts).into_iter().map(|c| Point::from_chart(d.space(), c)).collect();
    Domain::polygon(&h).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn temperature_lies_strictly_between_zero_and_one(seed in any::<u64>(), hyperbolic in any::<bool>()) {
        let space = space_of(hyperbolic);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = star_polygon(&mut rng, space, 6, 0.3, 1.0).unwrap();
        let x = interior_point(&mut rng, &d);
        let t = 10f64.powf(rng.gen_range(-3.0..1.0));
        let f = Field::new(&d, t, QuadratureConfig::default()).unwrap().at(&x).unwrap();
        prop_assert!(f.value > 0.0 && f.value < 1.0);
        prop_assert!(f.complement > 0.0 && f.complement < 1.0);
        prop_assert!(f.residual.abs() < 1e-9);
    }

    #[test]
    fn larger_domain_is_hotter(seed in any::<u64>(), hyperbolic in any::<bool>()) {
        let space = space_of(hyperbolic);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = star_polygon(&mut rng, space, 7, 0.3, 1.0).unwrap();
        let big = hull(&d);
        let x = interior_point(&mut rng, &d);
        for t in [0.01, 0.1, 1.0] {
            let (small, large) = (temp(&d, &x, t), temp(&big, &x, t));
            prop_assert!(small <= large + 1e-9, "t={}: {} > {}", t, small, large);
        }
    }
}

#[test]
fn radial_engine_matches_direct_quadrature() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..5 {
        let d = star_polygon(&mut rng, Space::Euclidean2, 5, 0.4, 1.0).unwrap();
        let x = Point::e(rng.gen_range(-1.2..1.2), rng.gen_range(-1.2..1.2));
        let t = rng.gen_range(0.02..0.5);
        let radial = temp(&d, &x, t);
        let direct = temperature_direct2d(&d, t, &x, 12).unwrap().exp();
        assert!((radial - direct).abs() < 1e-7, "t={t} x={x:?}: {radial} vs {direct}");
    }
}

#[test]
fn square_matches_product_of_error_functions() {
    let sq = Domain::polygon(&[Point::e(-1.0, -1.0), Point::e(1.0, -1.0), Point::e(1.0, 1.0), Point::e(-1.0, 1.0)]).unwrap();
    let line = |x: f64, t: f64| 0.5 * (erf((1.0 - x) / (4.0 * t).sqrt()) + erf((1.0 + x) / (4.0 * t).sqrt()));
    for (x, y, t) in [(0.0, 0.0, 0.3), (0.5, -0.2, 0.05), (0.9, 0.9, 0.01), (1.5, 0.3, 0.2), (0.2, 0.1, 2.0)] {
        let f = temp(&sq, &Point::e(x, y), t);
        let exact = line(x, t) * line(y, t);
        assert!((f - exact).abs() < 1e-10, "({x}, {y}) t={t}: {f} vs {exact}");
    }
}

#[test]
fn hyperbolic_disc_center_matches_radial_kernel_integral() {
    for (radius, t) in [(0.5, 0.1), (1.0, 0.5), (2.0, 1.0)] {
        let d = Domain::disc(Point::h(0.0, 0.0), radius).unwrap();
        let f = temp(&d, &Point::h(0.0, 0.0), t);
        let oracle = Adaptive::new(1e-13, 1e-15)
            .integrate(|r| hyperbolic2_kernel(t, r).unwrap() * TAU * r.sinh(), &[0.0, radius])
            .value;
        assert!((f - oracle).abs() < 1e-9, "R={radius} t={t}: {f} vs {oracle}");
    }
}

#[test]
fn far_points_are_cold() {
    let d = Domain::regular_polygon(Space::Euclidean2, 6, 1.0).unwrap();
    let f = Field::new(&d, 0.01, QuadratureConfig::default()).unwrap().at(&Point::e(5.0, 0.0)).unwrap();
    assert!(f.value < 1e-20 && f.value > 0.0, "{}", f.value);
    assert!(f.ln_value < -100.0);
    let h = Domain::regular_polygon(Space::Hyperbolic2, 6, 0.5).unwrap();
    let g = Field::new(&h, 0.01, QuadratureConfig::default()).unwrap().at(&Point::h(8.0, 0.0)).unwrap();
    assert!(g.value < 1e-20);
}

#[test]
fn tiny_triangle_acts_like_a_point_mass() {
    let eps = 1e-3;
    for space in [Space::Euclidean2, Space::Hyperbolic2] {
        let (c, x) = match space {
            Space::Euclidean2 => (Point::e(0.3, 0.2), Point::e(1.0, 0.5)),
            Space::Hyperbolic2 => (Point::h(0.3, 0.2), Point::h(1.0, 0.5)),
        };
        let to_c = match &c {
            Point::Euclidean(_) => Isometry::identity(),
            Point::Hyperbolic(m) => Isometry::translation_to(*m),
        };
        let verts: Vec<Point> = (0..3)
            .map(|k| {
                let phi = TAU * k as f64 / 3.0;
                match &c {
                    Point::Euclidean(v) => Point::Euclidean(*v + Vec2::polar(eps, phi)),
                    Point::Hyperbolic(_) => Point::Hyperbolic(to_c.apply(M3::polar(eps, phi))),
                }
            })
            .collect();
        let tri = Domain::polygon(&verts).unwrap();
        let t = 0.2;
        let d = x.dist(&c).unwrap();
        let density = match space {
            Space::Euclidean2 => euclidean_kernel(t, d, 2).unwrap(),
            Space::Hyperbolic2 => hyperbolic2_kernel(t, d).unwrap(),
        };
        let f = temp(&tri, &x, t);
        let approx = tri.area() * density;
        assert!((f / approx - 1.0).abs() < 1e-4, "{space:?}: {f} vs {approx}");
    }
}

#[test]
fn tabulated_kernel_stays_within_reported_error() {
    let mut rng = ChaCha8Rng::seed_from_u64(33);
    for space in [Space::Euclidean2, Space::Hyperbolic2] {
        let d = star_polygon(&mut rng, space, 8, 0.3, 1.0).unwrap();
        for t in [0.005, 0.1, 1.0] {
            let direct = Field::new(&d, t, QuadratureConfig::default()).unwrap();
            let table = Field::tabulated(&d, t, 0.5, QuadratureConfig::default()).unwrap();
            for _ in 0..5 {
                let x = interior_point(&mut rng, &d);
                let (a, b) = (direct.at(&x).unwrap(), table.at(&x).unwrap());
                let budget = a.abs_err() + b.abs_err() + 1e-15;
                assert!((a.value - b.value).abs() <= budget, "{space:?} t={t}: {} vs {}", a.value, b.value);
            }
        }
    }
}

#[test]
fn hyperbolic_isometries_preserve_temperature() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let d = star_polygon(&mut rng, Space::Hyperbolic2, 6, 0.3, 1.0).unwrap();
    let x = interior_point(&mut rng, &d);
    let g = Isometry::translation_to(M3::from_chart(0.7, -0.4)).compose(&Isometry::rotation(1.1));
    let moved = d.map_hyperbolic(&g).unwrap();
    let gx = Point::Hyperbolic(g.apply(x.hyperbolic().unwrap()));
    let cfg = QuadratureConfig::default();
    for t in [0.02, 0.3] {
        let a = temperature(&Triple::new(x.clone(), d.clone()).unwrap(), t, &cfg).unwrap();
        let b = temperature(&Triple::new(gx.clone(), moved.clone()).unwrap(), t, &cfg).unwrap();
        assert!((a.value - b.value).abs() < 1e-9, "t={t}: {} vs {}", a.value, b.value);
    }
}

#[test]
fn gaussian_kernel_satisfies_the_semigroup_law() {
    let (t, s) = (0.3, 0.5);
    let (x, y) = (Vec2::new(0.2, -0.1), Vec2::new(-0.4, 0.7));
    let quad = Adaptive::new(1e-10, 1e-14);
    let span = [-12.0, -2.0, 0.0, 2.0, 12.0];
    let inner = |z1: f64| {
        quad.integrate(
            |z2: f64| {
                let z = Vec2::new(z1, z2);
                euclidean_kernel(t, x.dist(z), 2).unwrap() * euclidean_kernel(s, z.dist(y), 2).unwrap()
            },
            &span,
        )
        .value
    };
    let composed = quad.integrate(inner, &span).value;
    let direct = euclidean_kernel(t + s, x.dist(y), 2).unwrap();
    assert!((composed - direct).abs() < 1e-6, "{composed} vs {direct}");
}
