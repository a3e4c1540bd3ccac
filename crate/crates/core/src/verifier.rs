//! Matchstick checks on a drawing: regularity, unit lengths, crossings,
//! coincidences, and the four construction rules.

use serde::Serialize;

use crate::analysis::FrameReport;
use crate::geometry::{classify_segments, distance, point_segment_distance, IntersectionClass, IntersectionKind};
use crate::model::{degree_sequence, edge_lengths, Edge, Graph, ToleranceProfile};
use crate::rigidity::RigidityReport;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegularityCheck {
    pub ok: bool,
    pub offending: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Crossing {
    pub first: Edge,
    pub second: Edge,
    pub class: IntersectionClass,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CrossingScan {
    pub violations: Vec<Crossing>,
    /// Smallest clearance among non-adjacent edge pairs (infinite if there are none).
    pub min_clearance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Coincidence {
    Vertices { u: usize, v: usize, distance: f64 },
    VertexEdge { vertex: usize, edge: Edge, distance: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RedDeviation {
    pub edge: Edge,
    pub deviation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub degrees_ok: bool,
    pub offending_vertices: Vec<usize>,
    /// Largest `|length - 1|` over non-red edges.
    pub max_unit_deviation: f64,
    pub red_deviations: Vec<RedDeviation>,
    pub crossings: Vec<Crossing>,
    pub coincidences: Vec<Coincidence>,
    pub min_clearance: f64,
    pub is_matchstick: bool,
    pub is_near_matchstick: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RuleReport {
    pub rule1_rigid: bool,
    pub rule2_frame_clean: bool,
    pub rule3_red_count: usize,
    pub rule3_ok: bool,
    pub rule4_deviation_cap: bool,
    pub notes: Vec<String>,
}

impl RuleReport {
    pub fn all_pass(&self) -> bool {
        self.rule1_rigid && self.rule2_frame_clean && self.rule3_ok && self.rule4_deviation_cap
    }
}

pub fn check_regular(g: &Graph, k: usize) -> RegularityCheck {
    let offending: Vec<usize> =
        degree_sequence(g).into_iter().enumerate().filter(|&(_, d)| d != k).map(|(v, _)| v).collect();
    RegularityCheck { ok: offending.is_empty(), offending }
}

/// Pairwise scan of all edge pairs that do not share an endpoint.
///
/// Touching endpoints of non-adjacent edges are left to
/// [`check_coincidence`]; everything else that is not disjoint is a violation.
pub fn check_crossings(g: &Graph, profile: &ToleranceProfile) -> CrossingScan {
    let edges = g.edges();
    let mut violations = Vec::new();
    let mut min_clearance = f64::INFINITY;
    for (i, e1) in edges.iter().enumerate() {
        for e2 in &edges[i + 1..] {
            if e1.shares_endpoint(e2) {
                continue;
            }
            let class = match classify_segments(&g.segment(*e1), &g.segment(*e2), profile.coincidence_tol) {
                Ok(c) => c,
                // a zero-length edge touches whatever it sits on
                Err(_) => IntersectionClass { kind: IntersectionKind::InteriorTouch, clearance: 0.0 },
            };
            min_clearance = min_clearance.min(class.clearance);
            match class.kind {
                IntersectionKind::Disjoint | IntersectionKind::EndpointTouch => {}
                _ => violations.push(Crossing { first: *e1, second: *e2, class }),
            }
        }
    }
    CrossingScan { violations, min_clearance }
}

/// Vertex pairs and (vertex, non-incident edge) pairs closer than
/// `coincidence_tol`.
pub fn check_coincidence(g: &Graph, profile: &ToleranceProfile) -> Vec<Coincidence> {
    let pts = g.vertices();
    let tol = profile.coincidence_tol;
    let mut out = Vec::new();
    for u in 0..pts.len() {
        for v in u + 1..pts.len() {
            let d = distance(pts[u], pts[v]);
            if d < tol {
                out.push(Coincidence::Vertices { u, v, distance: d });
            }
        }
    }
    for &e in g.edges() {
        let seg = g.segment(e);
        for (w, &p) in pts.iter().enumerate() {
            if e.contains(w) {
                continue;
            }
            let d = point_segment_distance(p, &seg);
            if d < tol {
                out.push(Coincidence::VertexEdge { vertex: w, edge: e, distance: d });
            }
        }
    }
    out
}

pub fn verify(g: &Graph, profile: &ToleranceProfile) -> VerificationReport {
    let regular = check_regular(g, 4);
    let mut max_unit_deviation: f64 = 0.0;
    let mut red_deviations = Vec::new();
    for l in edge_lengths(g) {
        if g.is_red(l.edge) {
            red_deviations.push(RedDeviation { edge: l.edge, deviation: l.deviation });
        } else {
            max_unit_deviation = max_unit_deviation.max(l.deviation.abs());
        }
    }
    let scan = check_crossings(g, profile);
    let coincidences = check_coincidence(g, profile);
    let is_near_matchstick = regular.ok
        && max_unit_deviation <= profile.unit_tol
        && scan.violations.is_empty()
        && coincidences.is_empty();
    VerificationReport {
        degrees_ok: regular.ok,
        offending_vertices: regular.offending,
        max_unit_deviation,
        is_matchstick: is_near_matchstick && red_deviations.is_empty(),
        red_deviations,
        crossings: scan.violations,
        coincidences,
        min_clearance: scan.min_clearance,
        is_near_matchstick,
    }
}

pub fn check_construction_rules(
    g: &Graph,
    rig: &RigidityReport,
    frame: &FrameReport,
    profile: &ToleranceProfile,
) -> RuleReport {
    let mut notes = Vec::new();
    let red_count = g.red_edges().len();
    let worst = g
        .red_edges()
        .iter()
        .map(|&e| (e, (g.edge_length(e) - 1.0).abs()))
        .max_by(|a, b| a.1.total_cmp(&b.1));
    let rule4 = worst.is_none_or(|(_, d)| d <= profile.rule_deviation_cap);
    if !rig.infinitesimally_rigid {
        notes.push(format!("rule 1: {} non-trivial infinitesimal flex(es)", rig.dof));
    }
    for e in &frame.red_in_frame {
        notes.push(format!("rule 2: red edge {e} lies in a frame triangle"));
    }
    if red_count > 3 {
        notes.push(format!("rule 3: {red_count} forbidden distances (at most 3 allowed)"));
    }
    if let Some((e, d)) = worst.filter(|_| !rule4) {
        notes.push(format!("rule 4: red edge {e} deviates by {d:.6} (cap {})", profile.rule_deviation_cap));
    }
    RuleReport {
        rule1_rigid: rig.infinitesimally_rigid,
        rule2_frame_clean: frame.red_in_frame.is_empty(),
        rule3_red_count: red_count,
        rule3_ok: red_count <= 3,
        rule4_deviation_cap: rule4,
        notes,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Point;
    use crate::model::{unit_square, unit_triangle};

    #[test]
    fn regularity() {
        let t = unit_triangle();
        assert!(check_regular(&t, 2).ok);
        let r = check_regular(&t, 4);
        assert!(!r.ok);
        assert_eq!(r.offending, vec![0, 1, 2]);
    }

    #[test]
    fn crossing_pair_found() {
        let g = Graph::new(
            vec![Point::new(0.0, 0.0), Point::new(1.0, 1.0), Point::new(0.0, 1.0), Point::new(1.0, 0.0)],
            &[(0, 1), (2, 3)],
            &[],
        )
        .unwrap();
        let scan = check_crossings(&g, &ToleranceProfile::default());
        assert_eq!(scan.violations.len(), 1);
        assert_eq!(scan.violations[0].class.kind, IntersectionKind::ProperCross);
        assert_eq!(scan.min_clearance, 0.0);
    }

    #[test]
    fn triangle_has_no_coincidences() {
        assert!(check_coincidence(&unit_triangle(), &ToleranceProfile::default()).is_empty());
    }

    #[test]
    fn duplicated_vertex_is_reported() {
        let t = unit_triangle();
        let mut pts = t.vertices().to_vec();
        pts.push(pts[2]);
        let g = Graph::new(pts, &[(0, 1), (1, 2), (0, 2), (0, 3)], &[]).unwrap();
        let report = verify(&g, &ToleranceProfile::default());
        assert!(report
            .coincidences
            .iter()
            .any(|c| matches!(c, Coincidence::Vertices { u: 2, v: 3, .. })));
    }

    #[test]
    fn square_fails_degree_check() {
        let r = verify(&unit_square(), &ToleranceProfile::default());
        assert!(!r.degrees_ok);
        assert!(!r.is_matchstick && !r.is_near_matchstick);
        assert_eq!(r.max_unit_deviation, 0.0);
    }
}
