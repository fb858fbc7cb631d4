use heatcomp::compare::*;
use heatcomp::geometry::hyperbolic::{Isometry, M3};
use heatcomp::geometry::path::Piece;
use heatcomp::geometry::random::{interior_point, star_polygon};
use heatcomp::heat::{QuadratureConfig, Triple};
use heatcomp::hotspot::SearchConfig;
use heatcomp::{Domain, Point, Space};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn triple(p: Point, d: &Domain) -> Triple {
    Triple::new(p, d.clone()).unwrap()
}

fn random_triple(rng: &mut ChaCha8Rng, space: Space) -> Triple {
    let d = star_polygon(rng, space, 6, 0.3, 1.0).unwrap();
    let x = interior_point(rng, &d);
    Triple::new(x, d).unwrap()
}

fn rect(x0: f64, x1: f64, h: f64) -> Vec<Point> {
    vec![Point::e(x0, -h), Point::e(x1, -h), Point::e(x1, h), Point::e(x0, h)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn swapping_triples_swaps_the_verdict(seed in any::<u64>(), hyperbolic in any::<bool>()) {
        let space = if hyperbolic { Space::Hyperbolic2 } else { Space::Euclidean2 };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b) = (random_triple(&mut rng, space), random_triple(&mut rng, space));
        let ab = criterion_theorem1(&a, &b).unwrap();
        let ba = criterion_theorem1(&b, &a).unwrap().swapped();
        prop_assert_eq!(ab.relation, ba.relation);
        prop_assert_eq!(ab.hotter, ba.hotter);
        let cfg = QuadratureConfig::default();
        let nab = initially_hotter_numeric(&a, &b, Some(0.05), 3, &cfg).unwrap();
        let nba = initially_hotter_numeric(&b, &a, Some(0.05), 3, &cfg).unwrap().swapped();
        prop_assert_eq!(nab.relation, nba.relation);
        prop_assert_eq!(nab.hotter, nba.hotter);
        for (p, q) in nab.trace.iter().zip(&nba.trace) {
            prop_assert!((p.margin - q.margin).abs() <= 1e-12 * (1.0 + p.margin.abs()));
        }
    }

    #[test]
    fn strict_distance_criterion_agrees_with_numeric_grid(seed in any::<u64>(), hyperbolic in any::<bool>()) {
        let space = if hyperbolic { Space::Hyperbolic2 } else { Space::Euclidean2 };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b) = (random_triple(&mut rng, space), random_triple(&mut rng, space));
        let v = criterion_theorem1(&a, &b).unwrap();
        let r1 = v.details["distance_from_complement_first"];
        let r2 = v.details["distance_from_complement_second"];
        prop_assume!((r1 - r2).abs() > 0.1 * r1.max(r2));
        let tau = r1.max(r2).powi(2) / 40.0;
        let n = initially_hotter_numeric(&a, &b, Some(tau), 5, &QuadratureConfig::default()).unwrap();
        prop_assert_eq!(n.relation, Relation::StrictlyHotter);
        prop_assert_eq!(n.hotter, v.hotter);
    }
}

#[test]
fn verdicts_survive_isometries() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let (a, b) = (random_triple(&mut rng, Space::Hyperbolic2), random_triple(&mut rng, Space::Hyperbolic2));
    let g = Isometry::translation_to(M3::from_chart(-0.6, 0.9)).compose(&Isometry::rotation(2.3));
    let move_triple = |t: &Triple| {
        let p = Point::Hyperbolic(g.apply(t.point.hyperbolic().unwrap()));
        Triple::new(p, t.domain.map_hyperbolic(&g).unwrap()).unwrap()
    };
    let (ga, gb) = (move_triple(&a), move_triple(&b));
    let v = criterion_theorem1(&a, &b).unwrap();
    let w = criterion_theorem1(&ga, &gb).unwrap();
    assert_eq!((v.relation, v.hotter), (w.relation, w.hotter));
    for key in ["distance_from_complement_first", "distance_from_complement_second"] {
        assert!((v.details[key] - w.details[key]).abs() < 1e-9);
    }
    let cfg = QuadratureConfig::default();
    let n = initially_hotter_numeric(&a, &b, Some(0.02), 3, &cfg).unwrap();
    let m = initially_hotter_numeric(&ga, &gb, Some(0.02), 3, &cfg).unwrap();
    assert_eq!((n.relation, n.hotter), (m.relation, m.hotter));
    for (p, q) in n.trace.iter().zip(&m.trace) {
        assert!((p.margin - q.margin).abs() < 1e-6 * (1.0 + p.margin.abs()));
    }

    // Rigid motion of the plane.
    let (rot, shift) = (0.8f64, (1.5, -2.0));
    let map = |p: &Point| {
        let v = p.euclidean().unwrap().rotate(rot);
        Point::e(v.x + shift.0, v.y + shift.1)
    };
    let d = star_polygon(&mut rng, Space::Euclidean2, 7, 0.3, 1.0).unwrap();
    let moved = Domain::polygon(&d.polygons().unwrap()[0].iter().map(map).collect::<Vec<_>>()).unwrap();
    let x = interior_point(&mut rng, &d);
    let fixed = triple(Point::e(0.0, 0.0), &Domain::disc(Point::e(0.0, 0.0), 0.25).unwrap());
    let n = initially_hotter_numeric(&triple(x.clone(), &d), &fixed, Some(0.05), 3, &cfg).unwrap();
    let m = initially_hotter_numeric(&triple(map(&x), &moved), &fixed, Some(0.05), 3, &cfg).unwrap();
    for (p, q) in n.trace.iter().zip(&m.trace) {
        assert!((p.margin - q.margin).abs() < 1e-7 * (1.0 + p.margin.abs()));
    }
}

#[test]
fn narrowing_beyond_the_inradius_is_detected_by_sphere_areas() {
    // Same strip near the point; the second one narrows a little further out.
    let wide = Domain::polygon(&rect(-3.0, 3.0, 0.5)).unwrap();
    let narrowed = Domain::polygon(&[
        Point::e(-3.0, -0.5),
        Point::e(0.3, -0.5),
        Point::e(0.3, -0.45),
        Point::e(3.0, -0.45),
        Point::e(3.0, 0.45),
        Point::e(0.3, 0.45),
        Point::e(0.3, 0.5),
        Point::e(-3.0, 0.5),
    ])
    .unwrap();
    let (a, b) = (triple(Point::e(0.0, 0.0), &wide), triple(Point::e(0.0, 0.0), &narrowed));
    assert_eq!(criterion_theorem1(&a, &b).unwrap().relation, Relation::Inconclusive);
    let v = criterion_theorem2(&a, &b, 0.55, 0.6).unwrap();
    assert!(v.is_strict(Side::First), "{:?}", v.relation);
    let n = initially_hotter_numeric(&a, &b, Some(0.02), 4, &QuadratureConfig::default()).unwrap();
    assert!(n.is_strict(Side::First), "{}", n.to_json());
}

#[test]
fn flat_side_of_a_stadium_is_hotter_than_its_cap() {
    let stadium = Domain::tube(vec![Piece::Segment { from: [-1.0, 0.0], to: [1.0, 0.0] }], 0.5).unwrap();
    let (flat, cap) = (Point::e(0.0, 0.5), Point::e(1.5, 0.0));
    let v = mean_curvature_compare(&stadium, &flat, &cap).unwrap();
    assert!(v.is_strict(Side::First));
    assert!(v.details["curvature_first"].abs() < 1e-12);
    assert!((v.details["curvature_second"] - 2.0).abs() < 1e-12);
    assert!(v.details["fitted_curvature_first"].abs() < 1e-6);
    assert!((v.details["fitted_curvature_second"] - 2.0).abs() < 1e-4);
    let n = initially_hotter_numeric(&triple(flat, &stadium), &triple(cap, &stadium), Some(0.01), 4, &QuadratureConfig::default()).unwrap();
    assert!(n.is_strict(Side::First), "{}", n.to_json());
}

#[test]
fn regular_quadrilateral_beats_an_equal_area_quadrilateral() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let square = Domain::regular_polygon(Space::Euclidean2, 4, 2f64.sqrt()).unwrap();
    let raw: Vec<(f64, f64)> = vec![(-1.3, -0.7), (1.1, -0.9), (1.4, 0.8), (-0.6, 1.2)];
    let jitter: Vec<(f64, f64)> = raw.iter().map(|&(x, y)| (x + rng.gen_range(-0.1..0.1), y + rng.gen_range(-0.1..0.1))).collect();
    let probe = Domain::polygon(&jitter.iter().map(|&(x, y)| Point::e(x, y)).collect::<Vec<_>>()).unwrap();
    let k = (square.area() / probe.area()).sqrt();
    let quad = Domain::polygon(&jitter.iter().map(|&(x, y)| Point::e(k * x, k * y)).collect::<Vec<_>>()).unwrap();
    let v = momentum_check(&square, &Point::e(0.0, 0.0), &quad, &[0.05, 0.2, 0.8], &SearchConfig::default()).unwrap();
    assert!(v.is_strict(Side::First), "{}", v.to_json());
}

#[test]
fn criteria_reject_mismatched_input() {
    let e = triple(Point::e(0.0, 0.0), &Domain::disc(Point::e(0.0, 0.0), 1.0).unwrap());
    let h = triple(Point::h(0.0, 0.0), &Domain::disc(Point::h(0.0, 0.0), 1.0).unwrap());
    assert!(criterion_theorem2(&e, &h, 0.5, 1.0).is_err());
    assert!(criterion_theorem2(&e, &e, 1.0, 0.5).is_err());
    assert!(criterion_complement(&e, &e).is_err());
    assert!(initially_hotter_numeric(&e, &e, Some(-1.0), 3, &QuadratureConfig::default()).is_err());
    assert!(Triple::new(Point::h(0.0, 0.0), Domain::disc(Point::e(0.0, 0.0), 1.0).unwrap()).is_err());
}
