use matchstick::geometry::{
    classify_segments, distance, point_segment_distance, rigid_align, IntersectionKind, Point, Segment,
};
use proptest::prelude::*;

fn coord() -> impl Strategy<Value = f64> {
    -10.0..10.0f64
}

fn point() -> impl Strategy<Value = Point> {
    (coord(), coord()).prop_map(|(x, y)| Point::new(x, y))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 10_000, ..ProptestConfig::default() })]

    #[test]
    fn triangle_inequality(a in point(), b in point(), c in point()) {
        prop_assert!(distance(a, c) <= distance(a, b) + distance(b, c) + 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 2_000, ..ProptestConfig::default() })]

    #[test]
    fn classification_is_symmetric(a in point(), b in point(), c in point(), d in point()) {
        prop_assume!(distance(a, b) > 1e-3 && distance(c, d) > 1e-3);
        let (s1, s2) = (Segment::new(a, b), Segment::new(c, d));
        let x = classify_segments(&s1, &s2, 1e-9).unwrap();
        let y = classify_segments(&s2, &s1, 1e-9).unwrap();
        prop_assert_eq!(x.kind, y.kind);
        prop_assert!((x.clearance - y.clearance).abs() <= 1e-12);
    }

    #[test]
    fn clearance_matches_dense_sampling(a in point(), b in point(), c in point(), d in point()) {
        prop_assume!(distance(a, b) > 1e-2 && distance(c, d) > 1e-2);
        let (s1, s2) = (Segment::new(a, b), Segment::new(c, d));
        let class = classify_segments(&s1, &s2, 1e-9).unwrap();
        prop_assume!(class.kind == IntersectionKind::Disjoint);
        // sample one segment densely, measure exactly to the other
        let brute = |p: &Segment, q: &Segment| {
            let steps = 20_000;
            (0..=steps)
                .map(|i| {
                    let t = i as f64 / steps as f64;
                    point_segment_distance(p.a + (p.b - p.a) * t, q)
                })
                .fold(f64::INFINITY, f64::min)
        };
        let oracle = brute(&s1, &s2).min(brute(&s2, &s1));
        // the minimum of two segments' distance is attained at an endpoint, so
        // dense sampling is exact up to the endpoint samples; 1e-6 bounds it anyway
        prop_assert!((class.clearance - oracle).abs() <= 1e-6, "{} vs {}", class.clearance, oracle);
    }

    #[test]
    fn alignment_recovers_rigid_motion(
        pts in prop::collection::vec(point(), 2..30),
        angle in -3.2..3.2f64,
        tx in coord(),
        ty in coord(),
    ) {
        let moved: Vec<Point> = pts.iter().map(|p| p.rotated(angle) + Point::new(tx, ty)).collect();
        let (_, rmsd) = rigid_align(&pts, &moved, false).unwrap();
        prop_assert!(rmsd <= 1e-12, "rmsd {rmsd}");
    }
}
