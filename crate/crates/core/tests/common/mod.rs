#![allow(dead_code)]

use matchstick::geometry::Point;
use matchstick::Graph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Every coordinate shifted by an independent uniform offset in `[-amp, amp]`.
pub fn perturb(g: &Graph, amp: f64, seed: u64) -> Graph {
    let mut r = rng(seed);
    let pts = g
        .vertices()
        .iter()
        .map(|p| Point::new(p.x + r.random_range(-amp..=amp), p.y + r.random_range(-amp..=amp)))
        .collect();
    g.with_vertices(pts)
}

pub fn rotate(g: &Graph, angle: f64, shift: Point) -> Graph {
    g.with_vertices(g.vertices().iter().map(|p| p.rotated(angle) + shift).collect())
}

/// Random connected graph: a spanning tree plus a few extra edges, with
/// vertices spread over a 3×3 box.
pub fn random_graph(r: &mut ChaCha8Rng, n: usize) -> Graph {
    let pts: Vec<Point> = (0..n).map(|_| Point::new(r.random_range(0.0..3.0), r.random_range(0.0..3.0))).collect();
    let mut edges = Vec::new();
    for v in 1..n {
        edges.push((r.random_range(0..v), v));
    }
    for _ in 0..n {
        let (a, b) = (r.random_range(0..n), r.random_range(0..n));
        let e = (a.min(b), a.max(b));
        if a != b && !edges.iter().any(|&(x, y)| (x.min(y), x.max(y)) == e) {
            edges.push(e);
        }
    }
    Graph::new(pts, &edges, &[]).unwrap()
}
