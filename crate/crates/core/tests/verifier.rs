mod common;

use matchstick::corpus::{all_entries, get_graph};
use matchstick::geometry::{distance, Point};
use matchstick::model::{unit_square, unit_triangle};
use matchstick::verifier::{check_coincidence, check_crossings, check_regular, verify, Coincidence};
use matchstick::{Edge, Graph, IntersectionKind, ToleranceProfile};

#[test]
fn harborth_is_a_matchstick_graph() {
    let r = verify(&get_graph("harborth_52").unwrap(), &ToleranceProfile::default());
    assert!(r.is_matchstick && r.is_near_matchstick && r.degrees_ok);
    assert!(r.max_unit_deviation <= 1e-9);
    assert!(r.crossings.is_empty() && r.coincidences.is_empty());
}

#[test]
fn fifty_vertex_graph_is_near_matchstick_only() {
    let g = get_graph("fig_50v_asym").unwrap();
    let r = verify(&g, &ToleranceProfile::default());
    assert!(!r.is_matchstick && r.is_near_matchstick);
    assert_eq!(r.red_deviations.len(), 3);
    assert!(check_regular(&g, 4).ok);
    assert!(check_coincidence(&g, &ToleranceProfile::default()).is_empty());
}

#[test]
fn unit_square_fails_degrees() {
    let r = verify(&unit_square(), &ToleranceProfile::default());
    assert!(!r.degrees_ok && !r.is_matchstick);
}

#[test]
fn no_corpus_entry_has_crossings() {
    let p = ToleranceProfile::default();
    for e in all_entries() {
        let g = &e.graph;
        let scan = check_crossings(g, &p);
        assert!(scan.violations.is_empty(), "{}", e.id);
        // independent brute force: exact segment-segment minimum distance
        // over non-adjacent pairs
        let seg_dist = |a: Edge, b: Edge| {
            let (p0, p1, q0, q1) = (g.vertices()[a.0], g.vertices()[a.1], g.vertices()[b.0], g.vertices()[b.1]);
            let pd = |x: Point, s0: Point, s1: Point| {
                let d = s1 - s0;
                let t = ((x - s0).dot(d) / d.norm_squared()).clamp(0.0, 1.0);
                distance(x, s0 + d * t)
            };
            pd(p0, q0, q1).min(pd(p1, q0, q1)).min(pd(q0, p0, p1)).min(pd(q1, p0, p1))
        };
        let mut oracle = f64::INFINITY;
        for (i, &a) in g.edges().iter().enumerate() {
            for &b in &g.edges()[i + 1..] {
                if !a.shares_endpoint(&b) {
                    oracle = oracle.min(seg_dist(a, b));
                }
            }
        }
        assert!((scan.min_clearance - oracle).abs() < 1e-12, "{}: {} vs {oracle}", e.id, scan.min_clearance);
    }
}

#[test]
fn near_matchstick_except_the_limit_drawing() {
    let p = ToleranceProfile::default();
    for e in all_entries() {
        let r = verify(&e.graph, &p);
        // eps_42_limit has two gray edges off by 2.5e-5 in the source
        assert_eq!(r.is_near_matchstick, e.id != "eps_42_limit", "{}", e.id);
        assert!(!r.is_matchstick || r.is_near_matchstick);
        assert_eq!(r.is_matchstick, e.id == "harborth_52", "{}", e.id);
    }
}

#[test]
fn epsilon_limit_is_nearly_degenerate() {
    let g = get_graph("eps_27_right").unwrap();
    let loose = ToleranceProfile { coincidence_tol: 0.05, ..ToleranceProfile::default() };
    assert!(!check_coincidence(&g, &loose).is_empty());
    assert!(check_coincidence(&g, &ToleranceProfile::default()).is_empty());
}

#[test]
fn duplicated_vertex_always_coincides() {
    for (seed, e) in all_entries().into_iter().enumerate().step_by(5) {
        let g = &e.graph;
        let v = seed % g.vertex_count();
        let mut pts = g.vertices().to_vec();
        pts.push(pts[v]);
        let mut edges: Vec<(usize, usize)> = g.edges().iter().map(|e| (e.0, e.1)).collect();
        edges.push((g.adjacency()[v][0], pts.len() - 1));
        let dup = Graph::new(pts, &edges, &[]).unwrap();
        let n = dup.vertex_count() - 1;
        assert!(verify(&dup, &ToleranceProfile::default())
            .coincidences
            .iter()
            .any(|c| matches!(c, Coincidence::Vertices { u, v: w, .. } if *u == v && *w == n)));
    }
}

#[test]
fn releasing_a_red_edge_raises_unit_deviation() {
    let p = ToleranceProfile::default();
    for e in all_entries() {
        let g = &e.graph;
        let before = verify(g, &p).max_unit_deviation;
        for (i, &red) in g.red_edges().iter().enumerate() {
            if (g.edge_length(red) - 1.0).abs() <= p.unit_tol {
                continue;
            }
            let rest: Vec<Edge> = g.red_edges().iter().copied().enumerate().filter(|&(j, _)| j != i).map(|(_, e)| e).collect();
            let after = verify(&g.with_red_edges(&rest).unwrap(), &p).max_unit_deviation;
            assert!(after > before, "{} {}", e.id, red);
        }
    }
}

#[test]
fn crossing_scan_ignores_edge_order() {
    let g = get_graph("fig_53v_a").unwrap();
    let mut pts = g.vertices().to_vec();
    // drag one vertex across the drawing to create violations
    pts[0] = Point::new(pts[0].x + 1.3, pts[0].y - 0.4);
    let moved = g.with_vertices(pts.clone());
    let want = check_crossings(&moved, &ToleranceProfile::default());
    assert!(!want.violations.is_empty());
    let mut reversed: Vec<(usize, usize)> = g.edges().iter().rev().map(|e| (e.1, e.0)).collect();
    reversed.rotate_left(17);
    let shuffled = Graph::new(pts, &reversed, &[]).unwrap();
    let got = check_crossings(&shuffled, &ToleranceProfile::default());
    assert_eq!(got.violations, want.violations);
    assert_eq!(got.min_clearance, want.min_clearance);
}

#[test]
fn endpoint_touch_is_a_coincidence_not_a_crossing() {
    let t = unit_triangle();
    let mut pts = t.vertices().to_vec();
    pts.push(Point::new(2.0, 0.0));
    pts.push(Point::new(1.0, 0.0));
    let g = Graph::new(pts, &[(0, 1), (1, 2), (0, 2), (3, 4)], &[]).unwrap();
    let p = ToleranceProfile::default();
    assert!(check_crossings(&g, &p).violations.iter().all(|c| c.class.kind != IntersectionKind::EndpointTouch));
    assert!(check_coincidence(&g, &p).iter().any(|c| matches!(c, Coincidence::Vertices { u: 1, v: 4, .. })));
    assert!(!verify(&g, &p).is_near_matchstick);
}
