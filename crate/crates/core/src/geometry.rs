//! Planar primitives: points, segments, orientation and intersection tests,
//! and 2D Procrustes alignment.
//!
//! Everything is `f64` with explicit tolerances; there are no exact or
//! adaptive predicates here.

use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point in the plane, in units of the matchstick length.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn dot(self, other: Point) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// z-component of the 3D cross product.
    pub fn cross(self, other: Point) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn norm_squared(self) -> f64 {
        self.dot(self)
    }

    /// Rotated by +90°.
    pub fn perp(self) -> Point {
        Point::new(-self.y, self.x)
    }

    pub fn rotated(self, angle: f64) -> Point {
        let (s, c) = angle.sin_cos();
        Point::new(c * self.x - s * self.y, s * self.x + c * self.y)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, rhs: Point) -> Point {
        Point::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, rhs: Point) -> Point {
        Point::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Neg for Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point::new(-self.x, -self.y)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    fn mul(self, rhs: f64) -> Point {
        Point::new(self.x * rhs, self.y * rhs)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment {
    pub a: Point,
    pub b: Point,
}

impl Segment {
    pub const fn new(a: Point, b: Point) -> Self {
        Self { a, b }
    }

    pub fn length(&self) -> f64 {
        distance(self.a, self.b)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IntersectionKind {
    Disjoint,
    /// The segments cross at a point interior to both.
    ProperCross,
    /// An endpoint of one segment coincides with an endpoint of the other.
    EndpointTouch,
    /// An endpoint of one segment lies on the interior of the other.
    InteriorTouch,
    CollinearOverlap,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IntersectionClass {
    pub kind: IntersectionKind,
    /// Minimum distance between the two segments; zero unless disjoint.
    pub clearance: f64,
}

pub fn distance(p: Point, q: Point) -> f64 {
    (p - q).norm()
}

/// Sign of `(b - a) × (c - a)`, with values within `tol · s²` treated as
/// collinear, where `s` is the largest coordinate magnitude of the inputs.
pub fn orientation(a: Point, b: Point, c: Point, tol: f64) -> i8 {
    let cross = (b - a).cross(c - a);
    let s = [a, b, c]
        .iter()
        .flat_map(|p| [p.x.abs(), p.y.abs()])
        .fold(0.0, f64::max);
    if cross.abs() <= tol * s * s {
        0
    } else if cross > 0.0 {
        1
    } else {
        -1
    }
}

pub fn point_segment_distance(p: Point, s: &Segment) -> f64 {
    let d = s.b - s.a;
    let len2 = d.norm_squared();
    if len2 == 0.0 {
        return distance(p, s.a);
    }
    let t = ((p - s.a).dot(d) / len2).clamp(0.0, 1.0);
    distance(p, s.a + d * t)
}

fn endpoint_clearance(s1: &Segment, s2: &Segment) -> f64 {
    [
        point_segment_distance(s1.a, s2),
        point_segment_distance(s1.b, s2),
        point_segment_distance(s2.a, s1),
        point_segment_distance(s2.b, s1),
    ]
    .into_iter()
    .fold(f64::INFINITY, f64::min)
}

/// Classifies how two segments meet.
///
/// Both segments must be longer than `tol`; `tol` is used for the collinearity
/// test (see [`orientation`]) and as the absolute touching distance.
pub fn classify_segments(s1: &Segment, s2: &Segment, tol: f64) -> Result<IntersectionClass> {
    if s1.length() <= tol || s2.length() <= tol {
        return Err(Error::DegenerateSegment);
    }
    let meet = |kind| Ok(IntersectionClass { kind, clearance: 0.0 });
    let clearance = endpoint_clearance(s1, s2);

    let o1 = orientation(s1.a, s1.b, s2.a, tol);
    let o2 = orientation(s1.a, s1.b, s2.b, tol);
    let o3 = orientation(s2.a, s2.b, s1.a, tol);
    let o4 = orientation(s2.a, s2.b, s1.b, tol);

    if o1 == 0 && o2 == 0 && o3 == 0 && o4 == 0 {
        // measure along the longer segment so the result does not depend on argument order
        let (long, short) = if s1.length() >= s2.length() { (s1, s2) } else { (s2, s1) };
        let dir = (long.b - long.a) * (1.0 / long.length());
        let (l0, l1) = (0.0_f64, long.length());
        let (t0, t1) = {
            let u = (short.a - long.a).dot(dir);
            let v = (short.b - long.a).dot(dir);
            (u.min(v), u.max(v))
        };
        let overlap = l1.min(t1) - l0.max(t0);
        if overlap > tol {
            return meet(IntersectionKind::CollinearOverlap);
        }
        if clearance <= tol {
            return meet(IntersectionKind::EndpointTouch);
        }
        return Ok(IntersectionClass { kind: IntersectionKind::Disjoint, clearance });
    }

    let shared = [
        distance(s1.a, s2.a),
        distance(s1.a, s2.b),
        distance(s1.b, s2.a),
        distance(s1.b, s2.b),
    ]
    .into_iter()
    .fold(f64::INFINITY, f64::min);
    if shared <= tol {
        return meet(IntersectionKind::EndpointTouch);
    }
    if o1 * o2 < 0 && o3 * o4 < 0 {
        return meet(IntersectionKind::ProperCross);
    }
    if clearance <= tol {
        return meet(IntersectionKind::InteriorTouch);
    }
    Ok(IntersectionClass { kind: IntersectionKind::Disjoint, clearance })
}

/// A rigid motion of the plane, optionally preceded by the reflection
/// `(x, y) -> (x, -y)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RigidTransform {
    pub angle: f64,
    pub translation: Point,
    pub reflect: bool,
}

impl RigidTransform {
    pub const IDENTITY: RigidTransform =
        RigidTransform { angle: 0.0, translation: Point::new(0.0, 0.0), reflect: false };

    pub fn apply(&self, p: Point) -> Point {
        let p = if self.reflect { Point::new(p.x, -p.y) } else { p };
        p.rotated(self.angle) + self.translation
    }
}

fn centroid(points: &[Point]) -> Point {
    let sum = points.iter().fold(Point::default(), |acc, &p| acc + p);
    sum * (1.0 / points.len() as f64)
}

fn align_proper(a: &[Point], b: &[Point], reflect: bool) -> (RigidTransform, f64) {
    let a: Vec<Point> =
        a.iter().map(|p| if reflect { Point::new(p.x, -p.y) } else { *p }).collect();
    let ca = centroid(&a);
    let cb = centroid(b);
    let (mut sin_sum, mut cos_sum) = (0.0, 0.0);
    for (p, q) in a.iter().zip(b) {
        let (p, q) = (*p - ca, *q - cb);
        cos_sum += p.dot(q);
        sin_sum += p.cross(q);
    }
    let angle = sin_sum.atan2(cos_sum);
    let translation = cb - ca.rotated(angle);
    let t = RigidTransform { angle, translation, reflect: false };
    let sq: f64 = a.iter().zip(b).map(|(p, q)| (t.apply(*p) - *q).norm_squared()).sum();
    (RigidTransform { reflect, ..t }, (sq / a.len() as f64).sqrt())
}

/// Least-squares rigid registration of `a` onto `b` (index correspondence).
///
/// Returns the transform `T` minimizing `Σ |T(a_i) - b_i|²` and the RMS residual.
pub fn rigid_align(a: &[Point], b: &[Point], allow_reflection: bool) -> Result<(RigidTransform, f64)> {
    if a.len() != b.len() || a.len() < 2 {
        return Err(Error::SizeMismatch(a.len(), b.len()));
    }
    let proper = align_proper(a, b, false);
    if !allow_reflection {
        return Ok(proper);
    }
    let mirrored = align_proper(a, b, true);
    Ok(if mirrored.1 < proper.1 { mirrored } else { proper })
}
