use heatcomp::geometry::plane::{point_in_polygon, Vec2};
use heatcomp::hotspot::*;
use heatcomp::{Domain, Point};

fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|k| lo * (hi / lo).powf(k as f64 / (n - 1) as f64)).collect()
}

fn right_triangle() -> (Domain, Vec<Vec2>) {
    let v = vec![Vec2::new(0.0, 0.0), Vec2::new(4.0, 0.0), Vec2::new(0.0, 3.0)];
    let d = Domain::polygon(&v.iter().map(|p| Point::Euclidean(*p)).collect::<Vec<_>>()).unwrap();
    (d, v)
}

#[test]
fn triangle_hotspot_moves_from_incenter_to_centroid() {
    let (tri, verts) = right_triangle();
    let traj = track(&tri, &log_grid(1e-3, 10.0, 6), &SearchConfig::default()).unwrap();
    assert!(traj.events.is_empty(), "{:?}", traj.events);
    for h in &traj.samples {
        assert!(h.is_single(), "t={}: {:?}", h.t, h.points);
        assert!(point_in_polygon(h.points[0].euclidean().unwrap(), &verts));
    }
    let first = traj.samples[0].points[0].euclidean().unwrap();
    let last = traj.samples.last().unwrap().points[0].euclidean().unwrap();
    assert!(first.dist(Vec2::new(1.0, 1.0)) < 0.01, "{first:?}");
    assert!(last.dist(Vec2::new(4.0 / 3.0, 1.0)) < 0.01, "{last:?}");
    // Monotone approach to the centroid.
    let gaps: Vec<f64> = traj.samples.iter().map(|h| h.points[0].euclidean().unwrap().dist(Vec2::new(4.0 / 3.0, 1.0))).collect();
    assert!(gaps.windows(2).all(|w| w[1] <= w[0] + 1e-6), "{gaps:?}");
}

#[test]
fn triangle_hotspot_is_eventually_unique() {
    let (tri, _) = right_triangle();
    let u = uniqueness_time_check(&tri, &[0.5, 2.0, 12.5, 20.0], &SearchConfig::default()).unwrap();
    assert!((u.sufficient_time - 12.5).abs() < 1e-9);
    assert!(u.time.is_some_and(|t| t <= u.sufficient_time));
    assert!(u.decreasing);
}

#[test]
fn annulus_ring_collapses_to_the_center() {
    let ring = Domain::annulus(Point::e(0.0, 0.0), 1.0 / 3.0, 1.0).unwrap();
    let cfg = SearchConfig::default();
    let traj = track(&ring, &log_grid(0.02, 1.0, 5), &cfg).unwrap();
    assert!(traj.samples[0].ring.is_some());
    assert!(traj.samples.last().unwrap().is_single());
    let collapse: Vec<&Event> = traj.events.iter().filter(|e| matches!(e.kind, EventKind::Collapse)).collect();
    assert_eq!(collapse.len(), 1, "{:?}", traj.events);
    let e = collapse[0];
    assert!(e.bracket.0 < e.t && e.t < e.bracket.1);
    let after = hottest_points(&ring, e.t * 1.01, &cfg).unwrap();
    assert!(after.is_single() && after.points[0].dist(&Point::e(0.0, 0.0)).unwrap() < 1e-4);
    let before = hottest_points(&ring, e.t * 0.9, &cfg).unwrap();
    assert!(!before.is_single());
}

#[test]
fn dumbbell_hotspots_meet_at_the_predicted_time() {
    let p = DumbbellParams::new(1.0, 1.0, 0.0).unwrap();
    let d = p.domain().unwrap();
    let t0 = dumbbell_t0(&p).unwrap();
    let traj = track(&d, &[0.6 * t0, 0.9 * t0, 1.2 * t0], &SearchConfig::default()).unwrap();
    assert_eq!(traj.samples[0].points.len(), 2);
    let event = traj.events.first().unwrap_or_else(|| panic!("no event"));
    assert!(matches!(event.kind, EventKind::Collapse), "{:?}", event.kind);
    assert!((event.t / t0 - 1.0).abs() < 1e-4, "{} vs {t0}", event.t);
}

#[test]
fn hotspots_respect_mirror_symmetry() {
    let p = DumbbellParams::new(1.0, 1.0, 0.0).unwrap();
    let d = p.domain().unwrap();
    let h = hottest_points(&d, 0.5 * dumbbell_t0(&p).unwrap(), &SearchConfig::default()).unwrap();
    assert_eq!(h.points.len(), 2);
    let (a, b) = (h.points[0].euclidean().unwrap(), h.points[1].euclidean().unwrap());
    assert!((a.x + b.x).abs() < 1e-6 && (a.y - b.y).abs() < 1e-6 && a.y.abs() < 1e-6, "{a:?} {b:?}");

    let trapezoid = Domain::polygon(&[Point::e(-2.0, 0.0), Point::e(2.0, 0.0), Point::e(0.7, 1.5), Point::e(-0.7, 1.5)]).unwrap();
    for t in [0.01, 0.3, 3.0] {
        let h = hottest_points(&trapezoid, t, &SearchConfig::default()).unwrap();
        assert!(h.is_single());
        assert!(h.points[0].euclidean().unwrap().x.abs() < 1e-6, "t={t}: {:?}", h.points);
    }
}

#[test]
fn hyperbolic_regular_polygon_is_hottest_at_its_center() {
    let d = Domain::regular_polygon(heatcomp::Space::Hyperbolic2, 5, 0.9).unwrap();
    let h = hottest_points(&d, 0.2, &SearchConfig::default()).unwrap();
    assert!(h.is_single());
    assert!(h.points[0].dist(&Point::h(0.0, 0.0)).unwrap() < 1e-5, "{:?}", h.points);
}

#[test]
fn track_rejects_bad_grids() {
    let d = Domain::disc(Point::e(0.0, 0.0), 1.0).unwrap();
    let cfg = SearchConfig::default();
    assert!(track(&d, &[], &cfg).is_err());
    assert!(track(&d, &[0.2, 0.1], &cfg).is_err());
    assert!(track(&d, &[0.0, 0.1], &cfg).is_err());
}
