//! Structural analysis of a plane drawing: the outer boundary walk, frame
//! triangles on that boundary, and point-set symmetry classification.

use std::collections::BTreeSet;
use std::f64::consts::{PI, TAU};
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::geometry::{distance, Point};
use crate::model::{Edge, Graph, ToleranceProfile};
use crate::verifier::check_crossings;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FrameReport {
    /// Counter-clockwise, starting at the lexicographically smallest vertex.
    pub outer_cycle: Vec<usize>,
    pub frame_triangles: Vec<[usize; 3]>,
    pub red_in_frame: Vec<Edge>,
}

fn heading(from: Point, to: Point) -> f64 {
    (to.y - from.y).atan2(to.x - from.x)
}

/// Counter-clockwise turn from `reference` to `angle`, in `(0, 2π]`.
fn ccw_turn(reference: f64, angle: f64) -> f64 {
    let d = (angle - reference).rem_euclid(TAU);
    if d <= 1e-15 { TAU } else { d }
}

/// Walks the unbounded face of a crossing-free connected drawing.
///
/// Starts at the smallest vertex by `(x, y)` and at every step leaves by the
/// edge that turns most clockwise relative to the arrival direction, which
/// traces the boundary counter-clockwise.
pub fn outer_boundary(g: &Graph, profile: &ToleranceProfile) -> Result<Vec<usize>> {
    let crossings = check_crossings(g, profile).violations.len();
    if crossings > 0 {
        return Err(Error::CrossingDrawing(crossings));
    }
    if g.vertex_count() == 0 {
        return Ok(Vec::new());
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let pts = g.vertices();
    let adj = g.adjacency();
    let start = (0..pts.len())
        .min_by(|&a, &b| pts[a].x.total_cmp(&pts[b].x).then(pts[a].y.total_cmp(&pts[b].y)))
        .expect("non-empty");
    if adj[start].is_empty() {
        return Ok(vec![start]);
    }
    let next = |v: usize, reference: f64| -> usize {
        *adj[v]
            .iter()
            .min_by(|&&a, &&b| {
                ccw_turn(reference, heading(pts[v], pts[a])).total_cmp(&ccw_turn(reference, heading(pts[v], pts[b])))
            })
            .expect("connected vertex has neighbors")
    };
    // pretend we arrived heading south, so the reference points north
    let first = next(start, PI / 2.0);
    let mut cycle = vec![start];
    let (mut prev, mut cur) = (start, first);
    let limit = 2 * g.edges().len() + 1;
    for _ in 0..limit {
        let w = next(cur, heading(pts[cur], pts[prev]));
        if cur == start && w == first {
            return Ok(cycle);
        }
        cycle.push(cur);
        prev = cur;
        cur = w;
    }
    unreachable!("face walk visits each directed edge at most once")
}

/// All 3-cycles `[a, b, c]` with `a < b < c`.
pub fn triangles(g: &Graph) -> Vec<[usize; 3]> {
    let adj = g.adjacency();
    let mut out = Vec::new();
    for e in g.edges() {
        let (u, v) = (e.0, e.1);
        let (mut i, mut j) = (0, 0);
        while i < adj[u].len() && j < adj[v].len() {
            let (a, b) = (adj[u][i], adj[v][j]);
            if a == b {
                if a > v {
                    out.push([u, v, a]);
                }
                i += 1;
                j += 1;
            } else if a < b {
                i += 1;
            } else {
                j += 1;
            }
        }
    }
    out.sort_unstable();
    out
}

pub fn frame_triangles(g: &Graph, profile: &ToleranceProfile) -> Result<FrameReport> {
    let outer_cycle = outer_boundary(g, profile)?;
    let on_outer: BTreeSet<usize> = outer_cycle.iter().copied().collect();
    let tol = 10.0 * profile.unit_tol;
    let mut red = BTreeSet::new();
    let frame: Vec<[usize; 3]> = triangles(g)
        .into_iter()
        .filter(|t| {
            let l = [
                distance(g.vertices()[t[0]], g.vertices()[t[1]]),
                distance(g.vertices()[t[1]], g.vertices()[t[2]]),
                distance(g.vertices()[t[0]], g.vertices()[t[2]]),
            ];
            let spread = l.iter().copied().fold(f64::MIN, f64::max) - l.iter().copied().fold(f64::MAX, f64::min);
            spread <= tol && t.iter().any(|v| on_outer.contains(v))
        })
        .collect();
    for t in &frame {
        for e in [Edge::new(t[0], t[1]), Edge::new(t[1], t[2]), Edge::new(t[0], t[2])] {
            if g.is_red(e) {
                red.insert(e);
            }
        }
    }
    Ok(FrameReport { outer_cycle, frame_triangles: frame, red_in_frame: red.into_iter().collect() })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SymmetryLabel {
    Asymmetric,
    Mirror,
    /// Rotation by π and no mirror.
    Point,
    Rotational(u32),
}

impl fmt::Display for SymmetryLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SymmetryLabel::Asymmetric => f.write_str("asymmetric"),
            SymmetryLabel::Mirror => f.write_str("mirror"),
            SymmetryLabel::Point => f.write_str("point"),
            SymmetryLabel::Rotational(k) => write!(f, "rotational({k})"),
        }
    }
}

impl Serialize for SymmetryLabel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum SymmetryTransform {
    /// Rotation by `2π / order` about `center`.
    Rotation { order: u32, angle: f64, center: Point },
    /// Reflection in the line through `center` at `axis_angle` (radians, in `[0, π)`).
    Mirror { axis_angle: f64, center: Point },
}

impl SymmetryTransform {
    pub fn apply(&self, p: Point) -> Point {
        match *self {
            SymmetryTransform::Rotation { angle, center, .. } => (p - center).rotated(angle) + center,
            SymmetryTransform::Mirror { axis_angle, center } => reflect(p - center, axis_angle) + center,
        }
    }
}

fn reflect(q: Point, axis_angle: f64) -> Point {
    let (s, c) = (2.0 * axis_angle).sin_cos();
    Point::new(c * q.x + s * q.y, s * q.x - c * q.y)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SymmetryReport {
    pub label: SymmetryLabel,
    pub transforms: Vec<SymmetryTransform>,
    /// `vertex_permutations[i][v]` is the image of vertex `v` under `transforms[i]`.
    pub vertex_permutations: Vec<Vec<usize>>,
}

/// Nearest-neighbor matching of transformed vertices; `None` unless it is a
/// bijection within `tol` that maps edges to edges.
fn match_transform(g: &Graph, image: impl Fn(Point) -> Point, tol: f64) -> Option<Vec<usize>> {
    let pts = g.vertices();
    let mut perm = Vec::with_capacity(pts.len());
    let mut used = vec![false; pts.len()];
    for &p in pts {
        let q = image(p);
        let (j, d) = pts
            .iter()
            .enumerate()
            .map(|(j, &r)| (j, distance(q, r)))
            .min_by(|a, b| a.1.total_cmp(&b.1))?;
        if d > tol || used[j] {
            return None;
        }
        used[j] = true;
        perm.push(j);
    }
    g.edges()
        .iter()
        .all(|e| g.edges().binary_search(&Edge::new(perm[e.0], perm[e.1])).is_ok())
        .then_some(perm)
}

/// Rotations of order 2–12 and mirror axes, all through the vertex centroid.
pub fn detect_symmetry(g: &Graph, profile: &ToleranceProfile) -> SymmetryReport {
    let pts = g.vertices();
    let tol = profile.symmetry_tol;
    let mut transforms = Vec::new();
    let mut perms = Vec::new();
    if pts.len() < 2 {
        return SymmetryReport { label: SymmetryLabel::Asymmetric, transforms, vertex_permutations: perms };
    }
    let center = pts.iter().fold(Point::default(), |a, &p| a + p) * (1.0 / pts.len() as f64);

    let mut max_order = 0;
    for order in 2..=12u32 {
        let t = SymmetryTransform::Rotation { order, angle: TAU / order as f64, center };
        if let Some(perm) = match_transform(g, |p| t.apply(p), tol) {
            max_order = order;
            transforms.push(t);
            perms.push(perm);
        }
    }

    // Any mirror sends the vertex farthest from the center to some vertex at
    // the same radius; each such partner fixes one candidate axis.
    let rel: Vec<Point> = pts.iter().map(|&p| p - center).collect();
    let anchor = (0..rel.len()).max_by(|&a, &b| rel[a].norm().total_cmp(&rel[b].norm()).then(b.cmp(&a))).unwrap();
    let mut axes: Vec<f64> = Vec::new();
    if rel[anchor].norm() > tol {
        for (j, q) in rel.iter().enumerate() {
            if (q.norm() - rel[anchor].norm()).abs() > tol {
                continue;
            }
            let dir = if j == anchor {
                rel[anchor]
            } else {
                let sum = rel[anchor] + *q;
                if sum.norm() > tol { sum } else { (rel[anchor] - *q).perp() }
            };
            let angle = dir.y.atan2(dir.x).rem_euclid(PI);
            if !axes.iter().any(|a| (a - angle).abs() < 1e-9 || (PI - (a - angle).abs()) < 1e-9) {
                axes.push(angle);
            }
        }
    }
    axes.sort_by(f64::total_cmp);
    let mut mirrors = 0;
    for axis_angle in axes {
        let t = SymmetryTransform::Mirror { axis_angle, center };
        if let Some(perm) = match_transform(g, |p| t.apply(p), tol) {
            mirrors += 1;
            transforms.push(t);
            perms.push(perm);
        }
    }

    let label = match (max_order, mirrors) {
        (0, 0) => SymmetryLabel::Asymmetric,
        (0, _) => SymmetryLabel::Mirror,
        (2, 0) => SymmetryLabel::Point,
        (k, _) => SymmetryLabel::Rotational(k),
    };
    SymmetryReport { label, transforms, vertex_permutations: perms }
}
