use heatcomp::geometry::interior::{inradius_and_maximal_points, InteriorSearch};
use heatcomp::geometry::plane::{point_in_polygon, IndexedPolygon, Vec2};
use heatcomp::geometry::random::{interior_point, star_polygon};
use heatcomp::numeric::quad::Adaptive;
use heatcomp::{Domain, Location, Point, Space};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn space_of(hyperbolic: bool) -> Space {
    if hyperbolic {
        Space::Hyperbolic2
    } else {
        Space::Euclidean2
    }
}

fn chart_point(rng: &mut ChaCha8Rng, space: Space, half: f64) -> Point {
    let (x, y) = (rng.gen_range(-half..half), rng.gen_range(-half..half));
    match space {
        Space::Euclidean2 => Point::e(x, y),
        Space::Hyperbolic2 => Point::h(x, y),
    }
}

fn coarea_total(d: &Domain, x: &Point) -> f64 {
    let mut cuts = vec![0.0];
    cuts.extend(d.critical_radii(x).unwrap());
    cuts.dedup();
    Adaptive::new(1e-12, 1e-14).integrate(|r| d.spherical_area(x, r).unwrap(), &cuts).value
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn distance_from_complement_is_lipschitz(seed in any::<u64>(), hyperbolic in any::<bool>()) {
        let space = space_of(hyperbolic);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = star_polygon(&mut rng, space, 7, 0.3, 1.0).unwrap();
        for _ in 0..10 {
            let (x, y) = (chart_point(&mut rng, space, 1.1), chart_point(&mut rng, space, 1.1));
            let gap = (d.distance_from_complement(&x).unwrap() - d.distance_from_complement(&y).unwrap()).abs();
            prop_assert!(gap <= x.dist(&y).unwrap() + 1e-12);
        }
    }

    #[test]
    fn positive_distance_means_interior(seed in any::<u64>(), hyperbolic in any::<bool>()) {
        let space = space_of(hyperbolic);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = star_polygon(&mut rng, space, 6, 0.3, 1.0).unwrap();
        for _ in 0..20 {
            let x = chart_point(&mut rng, space, 1.1);
            let inside = d.contains(&x).unwrap() == Location::Inside;
            prop_assert_eq!(inside, d.distance_from_complement(&x).unwrap() > 0.0);
        }
    }

    #[test]
    fn arc_measure_never_exceeds_circumference(seed in any::<u64>(), hyperbolic in any::<bool>()) {
        let space = space_of(hyperbolic);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = star_polygon(&mut rng, space, 8, 0.3, 1.0).unwrap();
        let x = chart_point(&mut rng, space, 0.8);
        for _ in 0..10 {
            let r = rng.gen_range(0.01..2.5);
            let a = d.spherical_area(&x, r).unwrap();
            prop_assert!(a >= 0.0 && a <= space.circumference(r) * (1.0 + 1e-12));
        }
    }

    #[test]
    fn exact_arcs_match_sampling(seed in any::<u64>(), hyperbolic in any::<bool>()) {
        let space = space_of(hyperbolic);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = star_polygon(&mut rng, space, 9, 0.3, 1.0).unwrap();
        let x = chart_point(&mut rng, space, 0.8);
        for _ in 0..5 {
            let r = rng.gen_range(0.05..2.0);
            let exact = d.spherical_area(&x, r).unwrap();
            let mut sampled = d.spherical_area_sampled(&x, r, 4096).unwrap();
            if (exact - sampled).abs() >= 1e-8 {
                // Arcs shorter than the sampling step need a finer sweep.
                sampled = d.spherical_area_sampled(&x, r, 2_000_000).unwrap();
            }
            prop_assert!((exact - sampled).abs() < 1e-8, "r={} {} vs {}", r, exact, sampled);
        }
    }

    #[test]
    fn indexed_polygon_agrees_with_crossing_rule(seed in any::<u64>(), n in 3usize..200) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = star_polygon(&mut rng, Space::Euclidean2, n, 0.2, 1.0).unwrap();
        let pts: Vec<Vec2> = d.polygons().unwrap()[0].iter().map(|p| p.euclidean().unwrap()).collect();
        let idx = IndexedPolygon::new(pts.clone());
        for _ in 0..200 {
            let p = Vec2::new(rng.gen_range(-1.2..1.2), rng.gen_range(-1.2..1.2));
            prop_assert_eq!(idx.contains(p), point_in_polygon(p, &pts));
        }
    }
}

#[test]
fn coarea_recovers_area() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for (space, tol) in [(Space::Euclidean2, 1e-6), (Space::Hyperbolic2, 1e-4)] {
        for _ in 0..10 {
            let d = star_polygon(&mut rng, space, 6, 0.3, 1.0).unwrap();
            let x = chart_point(&mut rng, space, 0.9);
            let total = coarea_total(&d, &x);
            assert!((total - d.area()).abs() < tol * d.area(), "{space:?}: {total} vs {}", d.area());
        }
    }
    let ring = Domain::annulus(Point::h(0.1, 0.0), 0.3, 0.9).unwrap();
    let x = Point::h(0.0, 0.5);
    assert!((coarea_total(&ring, &x) - ring.area()).abs() < 1e-4 * ring.area());
}

#[test]
fn arcs_of_curved_domains_match_sampling() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let domains = [
        Domain::disc(Point::h(0.2, -0.1), 0.7).unwrap(),
        Domain::annulus(Point::e(0.0, 0.0), 0.4, 1.0).unwrap(),
        Domain::dumbbell(1.0, 1.0, 0.3).unwrap(),
    ];
    for d in &domains {
        let x = interior_point(&mut rng, d);
        for r in [0.1, 0.5, 0.9, 1.7, 3.1] {
            let exact = d.spherical_area(&x, r).unwrap();
            let sampled = d.spherical_area_sampled(&x, r, 4096).unwrap();
            assert!((exact - sampled).abs() < 1e-8, "r={r}: {exact} vs {sampled}");
        }
    }
}

#[test]
fn triangle_is_maximal_at_its_incenter() {
    let (a, b, c) = (Vec2::new(0.0, 0.0), Vec2::new(4.0, 0.0), Vec2::new(0.0, 3.0));
    let tri = Domain::polygon(&[Point::Euclidean(a), Point::Euclidean(b), Point::Euclidean(c)]).unwrap();
    let prof = inradius_and_maximal_points(&tri, &InteriorSearch::default()).unwrap();
    assert!((prof.inradius - 1.0).abs() < 1e-8, "inradius {}", prof.inradius);
    assert_eq!(prof.maximal_points.len(), 1);
    assert!(prof.maximal_points[0].euclidean().unwrap().dist(Vec2::new(1.0, 1.0)) < 1e-4);
}

#[test]
fn annulus_maximal_points_fill_the_middle_circle() {
    let ring = Domain::annulus(Point::e(0.0, 0.0), 0.5, 1.5).unwrap();
    let prof = inradius_and_maximal_points(&ring, &InteriorSearch::default()).unwrap();
    assert!((prof.inradius - 0.5).abs() < 1e-8);
    assert!(prof.maximal_points.len() > 2);
    for p in &prof.maximal_points {
        assert!((p.euclidean().unwrap().norm() - 1.0).abs() < 1e-4);
    }
}

#[test]
fn dumbbell_has_two_maximal_points() {
    let d = Domain::dumbbell(1.0, 1.0, 0.2).unwrap();
    let prof = inradius_and_maximal_points(&d, &InteriorSearch::default()).unwrap();
    assert!((prof.inradius - 1.0).abs() < 1e-8);
    // The bar opening leaves R = 1 on a short axis segment inside each square.
    let reach = 1.0 - 0.96f64.sqrt();
    let (mut left, mut right) = (0, 0);
    for p in &prof.maximal_points {
        let v = p.euclidean().unwrap();
        assert!(v.y.abs() < 1e-4 && (v.x.abs() - 2.0).abs() <= reach + 1e-4 && v.x.abs() <= 2.0 + 1e-4, "{v:?}");
        if v.x < 0.0 {
            left += 1;
        } else {
            right += 1;
        }
    }
    assert!(left > 0 && right > 0);
}

#[test]
fn domains_round_trip_through_json() {
    let d = Domain::regular_polygon(Space::Hyperbolic2, 5, 0.8).unwrap();
    let back = Domain::from_json(&d.to_json()).unwrap();
    assert_eq!(back.spec(), d.spec());
    assert!((back.area() - d.area()).abs() < 1e-14);
    let err = Domain::from_json("{\n  \"space\": \"euclidean2\",\n  \"shape\": {\"type\": \"disc\", \"radius\": }\n}");
    assert!(err.unwrap_err().to_string().contains("line 3"));
}
