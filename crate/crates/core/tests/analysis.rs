mod common;

use std::collections::{BTreeSet, VecDeque};
use std::f64::consts::PI;

use matchstick::analysis::{detect_symmetry, frame_triangles, outer_boundary, triangles, SymmetryLabel, SymmetryTransform};
use matchstick::corpus::{all_entries, get_graph, is_example_figure};
use matchstick::geometry::{distance, Point};
use matchstick::{Edge, Graph, ToleranceProfile};

/// Labels for entries whose captions carry none, recorded from this
/// detector at the default tolerance.
const UNCAPTIONED: &[(&str, &str)] = &[
    ("harborth_52", "rotational(2)"),
    ("fig_51v_a", "asymmetric"),
    ("fig_51v_b", "asymmetric"),
    ("fig_51v_c", "asymmetric"),
    ("fig_53v_a", "asymmetric"),
    ("fig_53v_b", "mirror"),
    ("fig_54v_a", "point"),
    ("fig_54v_b", "point"),
    ("fig_54v_c", "point"),
    ("fig_54v_d", "rotational(2)"),
    ("fig_54v_e", "point"),
    ("fig_55v", "mirror"),
    ("fig_56v_a", "point"),
    ("fig_56v_b", "point"),
    ("fig_56v_c", "point"),
    ("fig_56v_d", "point"),
    ("fig_56v_e", "point"),
    ("fig_56v_f", "rotational(4)"),
    ("fig_57v_a", "rotational(3)"),
    ("fig_57v_b", "rotational(3)"),
    ("fig_58v_a", "point"),
    ("fig_58v_b", "point"),
    ("fig_58v_c", "point"),
    ("fig_59v", "point"),
];

fn label(g: &Graph) -> String {
    detect_symmetry(g, &ToleranceProfile::default()).label.to_string()
}

#[test]
fn caption_labels_reproduce() {
    for e in all_entries() {
        let Some(want) = e.graph.symmetry_label() else { continue };
        if e.id == "fig_61v_point" {
            continue;
        }
        assert_eq!(label(&e.graph), want, "{}", e.id);
    }
}

#[test]
fn uncaptioned_labels_frozen() {
    for &(id, want) in UNCAPTIONED {
        assert_eq!(label(&get_graph(id).unwrap()), want, "{id}");
    }
    assert_eq!(UNCAPTIONED.len() + all_entries().iter().filter(|e| e.graph.symmetry_label().is_some()).count(), 43);
}

#[test]
fn off_center_vertex_breaks_point_symmetry() {
    // the middle vertex of this drawing sits 0.0112 from the centroid of
    // the rest, every other vertex is symmetric to 1e-14
    let g = get_graph("fig_61v_point").unwrap();
    assert_eq!(detect_symmetry(&g, &ToleranceProfile::default()).label, SymmetryLabel::Asymmetric);
    let loose = ToleranceProfile { symmetry_tol: 0.03, ..ToleranceProfile::default() };
    assert_eq!(detect_symmetry(&g, &loose).label, SymmetryLabel::Point);
    let mid = g.vertex_by_label(61).unwrap();
    let rest: Vec<Point> = (0..g.vertex_count()).filter(|&v| v != mid).map(|v| g.vertices()[v]).collect();
    let c = rest.iter().fold(Point::default(), |a, &p| a + p) * (1.0 / rest.len() as f64);
    assert!((distance(c, g.vertices()[mid]) - 0.0112).abs() < 5e-4);
}

#[test]
fn permutations_preserve_points_and_edges() {
    let p = ToleranceProfile::default();
    for e in all_entries() {
        let g = &e.graph;
        let r = detect_symmetry(g, &p);
        assert_eq!(r.transforms.len(), r.vertex_permutations.len());
        for (t, perm) in r.transforms.iter().zip(&r.vertex_permutations) {
            let mut seen = perm.clone();
            seen.sort_unstable();
            assert_eq!(seen, (0..g.vertex_count()).collect::<Vec<_>>());
            for (v, &w) in perm.iter().enumerate() {
                assert!(distance(t.apply(g.vertices()[v]), g.vertices()[w]) <= p.symmetry_tol);
            }
            let mapped: BTreeSet<Edge> = g.edges().iter().map(|e| Edge::new(perm[e.0], perm[e.1])).collect();
            assert_eq!(mapped, g.edges().iter().copied().collect::<BTreeSet<_>>(), "{}", e.id);
        }
    }
}

#[test]
fn symmetry_is_covariant_under_rigid_motion() {
    let p = ToleranceProfile::default();
    let (angle, shift) = (0.4321, Point::new(2.0, -1.0));
    for id in ["fig_60v_rot3", "fig_61v_mirror", "fig_62v_point_a", "eps_27_left", "fig_50v_asym"] {
        let g = get_graph(id).unwrap();
        let moved = common::rotate(&g, angle, shift);
        let (a, b) = (detect_symmetry(&g, &p), detect_symmetry(&moved, &p));
        assert_eq!(a.label, b.label, "{id}");
        assert_eq!(a.vertex_permutations, b.vertex_permutations, "{id}");
        for (s, t) in a.transforms.iter().zip(&b.transforms) {
            match (s, t) {
                (SymmetryTransform::Rotation { order: k1, center: c1, .. }, SymmetryTransform::Rotation { order: k2, center: c2, .. }) => {
                    assert_eq!(k1, k2);
                    assert!(distance(c1.rotated(angle) + shift, *c2) < 1e-9);
                }
                (SymmetryTransform::Mirror { axis_angle: a1, .. }, SymmetryTransform::Mirror { axis_angle: a2, .. }) => {
                    let d = (a1 + angle - a2).rem_euclid(PI);
                    assert!(d.min(PI - d) < 1e-9, "{id}");
                }
                _ => panic!("{id}: transform kinds differ"),
            }
        }
    }
}

/// Vertices touching the unbounded region of the drawing, found by
/// rasterizing all edges on a grid of spacing `h` and flood-filling from the
/// border.
fn rasterized_outer_vertices(g: &Graph, h: f64) -> BTreeSet<usize> {
    let pts = g.vertices();
    let min_x = pts.iter().map(|p| p.x).fold(f64::INFINITY, f64::min) - 10.0 * h;
    let min_y = pts.iter().map(|p| p.y).fold(f64::INFINITY, f64::min) - 10.0 * h;
    let max_x = pts.iter().map(|p| p.x).fold(f64::NEG_INFINITY, f64::max) + 10.0 * h;
    let max_y = pts.iter().map(|p| p.y).fold(f64::NEG_INFINITY, f64::max) + 10.0 * h;
    let (w, ht) = (((max_x - min_x) / h) as usize + 1, ((max_y - min_y) / h) as usize + 1);
    let cell = |p: Point| (((p.x - min_x) / h) as usize, ((p.y - min_y) / h) as usize);
    let mut blocked = vec![false; w * ht];
    for &e in g.edges() {
        let (a, b) = (pts[e.0], pts[e.1]);
        let steps = (distance(a, b) / (0.25 * h)).ceil() as usize;
        for i in 0..=steps {
            let (cx, cy) = cell(a + (b - a) * (i as f64 / steps as f64));
            for dy in 0..3 {
                for dx in 0..3 {
                    blocked[(cy + dy - 1) * w + cx + dx - 1] = true;
                }
            }
        }
    }
    let mut outside = vec![false; w * ht];
    let mut queue = VecDeque::from([0usize]);
    outside[0] = true;
    while let Some(i) = queue.pop_front() {
        let (x, y) = (i % w, i / w);
        let mut push = |j: usize| {
            if !blocked[j] && !outside[j] {
                outside[j] = true;
                queue.push_back(j);
            }
        };
        if x > 0 { push(i - 1) }
        if x + 1 < w { push(i + 1) }
        if y > 0 { push(i - w) }
        if y + 1 < ht { push(i + w) }
    }
    (0..pts.len())
        .filter(|&v| {
            let (cx, cy) = cell(pts[v]);
            (cy - 3..=cy + 3).any(|y| (cx - 3..=cx + 3).any(|x| outside[y * w + x]))
        })
        .collect()
}

#[test]
fn outer_boundary_matches_rasterization() {
    let p = ToleranceProfile::default();
    for id in ["fig_50v_asym", "harborth_52", "eps_27_left", "fig_62v_point_b"] {
        let g = get_graph(id).unwrap();
        let cycle = outer_boundary(&g, &p).unwrap();
        let set: BTreeSet<usize> = cycle.iter().copied().collect();
        assert_eq!(set.len(), cycle.len(), "{id}: repeated vertex");
        assert_eq!(set, rasterized_outer_vertices(&g, 1e-3), "{id}");
    }
}

fn signed_area(g: &Graph, cycle: &[usize]) -> f64 {
    let pts = g.vertices();
    0.5 * (0..cycle.len()).map(|i| pts[cycle[i]].cross(pts[cycle[(i + 1) % cycle.len()]])).sum::<f64>()
}

#[test]
fn outer_boundary_shape() {
    let p = ToleranceProfile::default();
    for e in all_entries() {
        let g = &e.graph;
        let cycle = outer_boundary(g, &p).unwrap();
        let start = (0..g.vertex_count())
            .min_by(|&a, &b| {
                let (pa, pb) = (g.vertices()[a], g.vertices()[b]);
                pa.x.total_cmp(&pb.x).then(pa.y.total_cmp(&pb.y))
            })
            .unwrap();
        assert_eq!(cycle[0], start);
        for i in 0..cycle.len() {
            assert!(g.edges().binary_search(&Edge::new(cycle[i], cycle[(i + 1) % cycle.len()])).is_ok(), "{}", e.id);
        }
        assert!(signed_area(g, &cycle) > 0.0, "{}: not counter-clockwise", e.id);
    }
}

#[test]
fn outer_boundary_is_rotation_invariant() {
    let p = ToleranceProfile::default();
    for e in all_entries().into_iter().step_by(3) {
        let a = outer_boundary(&e.graph, &p).unwrap();
        let b = outer_boundary(&common::rotate(&e.graph, 2.2, Point::new(1.0, 1.0)), &p).unwrap();
        assert_eq!(a.len(), b.len());
        let k = b.iter().position(|&v| v == a[0]).unwrap();
        let mut rotated = b.clone();
        rotated.rotate_left(k);
        assert_eq!(rotated, a, "{}", e.id);
    }
}

#[test]
fn frames_are_clean_on_every_example() {
    let p = ToleranceProfile::default();
    for e in all_entries() {
        let g = &e.graph;
        let f = frame_triangles(g, &p).unwrap();
        if is_example_figure(&e.id) || e.id == "harborth_52" {
            assert!(f.red_in_frame.is_empty(), "{}", e.id);
        }
        let outer: BTreeSet<usize> = f.outer_cycle.iter().copied().collect();
        let all = triangles(g);
        for t in &f.frame_triangles {
            assert!(all.contains(t));
            assert!(t.iter().any(|v| outer.contains(v)));
            let l = [g.edge_length(Edge::new(t[0], t[1])), g.edge_length(Edge::new(t[1], t[2])), g.edge_length(Edge::new(t[0], t[2]))];
            let spread = l.iter().copied().fold(f64::MIN, f64::max) - l.iter().copied().fold(f64::MAX, f64::min);
            assert!(spread <= 10.0 * p.unit_tol);
        }
    }
}

#[test]
fn brute_force_triangle_count() {
    for e in all_entries().into_iter().step_by(7) {
        let g = &e.graph;
        let n = g.vertex_count();
        let has = |a: usize, b: usize| g.edges().binary_search(&Edge::new(a, b)).is_ok();
        let mut count = 0;
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    if has(a, b) && has(b, c) && has(a, c) {
                        count += 1;
                    }
                }
            }
        }
        assert_eq!(triangles(g).len(), count, "{}", e.id);
    }
}

#[test]
fn disconnected_drawing_has_no_outer_face() {
    let g = Graph::new(
        vec![Point::new(0.0, 0.0), Point::new(1.0, 0.0), Point::new(5.0, 0.0), Point::new(6.0, 0.0)],
        &[(0, 1), (2, 3)],
        &[],
    )
    .unwrap();
    assert!(outer_boundary(&g, &ToleranceProfile::default()).is_err());
}
