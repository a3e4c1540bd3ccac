//! The graph data model and its on-disk format.
//!
//! A graph file is a UTF-8 JSON document:
//!
//! ```text
//! {
//!   "id": "fig_50v_asym",
//!   "caption": "50 vertices, asymmetric: ...",
//!   "symmetry": "asymmetric",
//!   "labels": [1, 2, ...],                 (optional)
//!   "vertices": [["<decimal>", "<decimal>"], ...],
//!   "edges": [[u, v], ...],
//!   "red_edges": [[u, v], ...],
//!   "claimed_deviations": [{"edge": [u, v], "length": "<decimal>"}, ...]
//! }
//! ```
//!
//! Indices are 0-based. `labels` maps each vertex to the 1-based label used in
//! figure captions when those labels are not simply `index + 1`. Coordinates
//! are decimal strings so published literals survive a round trip unchanged;
//! plain JSON numbers are accepted on input.

use std::collections::BTreeSet;
use std::fmt;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, ParseError, Result};
use crate::geometry::{distance, Point, Segment};

/// An undirected edge, always stored with `0 < 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "[usize; 2]", into = "[usize; 2]")]
pub struct Edge(pub usize, pub usize);

impl Edge {
    pub fn new(u: usize, v: usize) -> Self {
        if u <= v { Edge(u, v) } else { Edge(v, u) }
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0 == v || self.1 == v
    }

    pub fn shares_endpoint(&self, other: &Edge) -> bool {
        other.contains(self.0) || other.contains(self.1)
    }
}

impl From<[usize; 2]> for Edge {
    fn from([u, v]: [usize; 2]) -> Self {
        Edge::new(u, v)
    }
}

impl From<Edge> for [usize; 2] {
    fn from(e: Edge) -> Self {
        [e.0, e.1]
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.0, self.1)
    }
}

/// A caption value attached to a red edge, kept as printed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimedDeviation {
    pub edge: Edge,
    pub length: String,
}

impl ClaimedDeviation {
    pub fn value(&self) -> f64 {
        self.length.parse().unwrap_or(f64::NAN)
    }
}

/// A straight-line drawing with unit-length intent.
///
/// Immutable once built; the `with_*` methods return modified copies.
#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    id: String,
    caption: String,
    symmetry: Option<String>,
    labels: Option<Vec<u32>>,
    vertices: Vec<Point>,
    literals: Option<Vec<[String; 2]>>,
    edges: Vec<Edge>,
    red_edges: Vec<Edge>,
    claimed: Vec<ClaimedDeviation>,
}

impl Graph {
    /// Builds a graph from coordinates and edge lists, checking every
    /// structural invariant. Edge pairs may be given in either order.
    pub fn new(vertices: Vec<Point>, edges: &[(usize, usize)], red: &[(usize, usize)]) -> Result<Self> {
        let n = vertices.len();
        let mut set = BTreeSet::new();
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(ParseError::IndexOutOfRange(u, v, n).into());
            }
            if u == v {
                return Err(ParseError::SelfLoop(u).into());
            }
            if !set.insert(Edge::new(u, v)) {
                return Err(ParseError::DuplicateEdge(Edge::new(u, v)).into());
            }
        }
        let mut red_set = BTreeSet::new();
        for &(u, v) in red {
            let e = Edge::new(u, v);
            if !set.contains(&e) {
                return Err(ParseError::RedEdgeNotInEdges(e).into());
            }
            red_set.insert(e);
        }
        Ok(Graph {
            id: String::new(),
            caption: String::new(),
            symmetry: None,
            labels: None,
            vertices,
            literals: None,
            edges: set.into_iter().collect(),
            red_edges: red_set.into_iter().collect(),
            claimed: Vec::new(),
        })
    }

    pub fn with_metadata(mut self, id: &str, caption: &str, symmetry: Option<&str>) -> Self {
        self.id = id.to_owned();
        self.caption = caption.to_owned();
        self.symmetry = symmetry.map(str::to_owned);
        self
    }

    /// Same combinatorics and metadata, new coordinates. Stored coordinate
    /// literals are dropped.
    pub fn with_vertices(&self, vertices: Vec<Point>) -> Self {
        assert_eq!(vertices.len(), self.vertices.len(), "vertex count must not change");
        Graph { vertices, literals: None, ..self.clone() }
    }

    /// Replaces the red set. Claims on edges that are no longer red are dropped.
    pub fn with_red_edges(&self, red: &[Edge]) -> Result<Self> {
        let mut red_set = BTreeSet::new();
        for &e in red {
            let e = Edge::new(e.0, e.1);
            if self.edges.binary_search(&e).is_err() {
                return Err(ParseError::RedEdgeNotInEdges(e).into());
            }
            red_set.insert(e);
        }
        let claimed = self.claimed.iter().filter(|c| red_set.contains(&c.edge)).cloned().collect();
        Ok(Graph { red_edges: red_set.into_iter().collect(), claimed, ..self.clone() })
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn caption(&self) -> &str {
        &self.caption
    }

    pub fn symmetry_label(&self) -> Option<&str> {
        self.symmetry.as_deref()
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    /// Sorted by `(u, v)`.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Sorted by `(u, v)`.
    pub fn red_edges(&self) -> &[Edge] {
        &self.red_edges
    }

    pub fn is_red(&self, e: Edge) -> bool {
        self.red_edges.binary_search(&e).is_ok()
    }

    pub fn claimed_deviations(&self) -> &[ClaimedDeviation] {
        &self.claimed
    }

    /// Caption label of vertex `v` (1-based).
    pub fn label(&self, v: usize) -> u32 {
        match &self.labels {
            Some(l) => l[v],
            None => v as u32 + 1,
        }
    }

    /// Vertex index carrying caption label `label`.
    pub fn vertex_by_label(&self, label: u32) -> Option<usize> {
        match &self.labels {
            Some(l) => l.iter().position(|&x| x == label),
            None => (label >= 1 && (label as usize) <= self.vertices.len()).then(|| label as usize - 1),
        }
    }

    pub fn edge_length(&self, e: Edge) -> f64 {
        distance(self.vertices[e.0], self.vertices[e.1])
    }

    pub fn segment(&self, e: Edge) -> Segment {
        Segment::new(self.vertices[e.0], self.vertices[e.1])
    }

    /// Sorted neighbor lists.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for e in &self.edges {
            adj[e.0].push(e.1);
            adj[e.1].push(e.0);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertices.len();
        if n == 0 {
            return true;
        }
        let adj = self.adjacency();
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == n
    }
}

/// Every numeric threshold used by the checks.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ToleranceProfile {
    /// Largest `|length - 1|` for an edge to count as unit.
    pub unit_tol: f64,
    /// Vertex-vertex and vertex-edge distances below this are coincidences.
    pub coincidence_tol: f64,
    /// Relative singular-value cutoff for numeric rank.
    pub rank_tol: f64,
    /// Largest point-matching distance under a candidate symmetry.
    pub symmetry_tol: f64,
    /// Largest allowed red-edge deviation under the construction rules.
    pub rule_deviation_cap: f64,
}

impl Default for ToleranceProfile {
    fn default() -> Self {
        Self { unit_tol: 1e-6, coincidence_tol: 1e-6, rank_tol: 1e-8, symmetry_tol: 1e-6, rule_deviation_cap: 0.10 }
    }
}

impl ToleranceProfile {
    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("unit_tol", self.unit_tol),
            ("coincidence_tol", self.coincidence_tol),
            ("rank_tol", self.rank_tol),
            ("symmetry_tol", self.symmetry_tol),
        ];
        for (name, v) in positive {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::InvalidConfig(format!("{name} must be positive, got {v}")));
            }
        }
        if !(self.rule_deviation_cap > 0.0 && self.rule_deviation_cap < 1.0) {
            return Err(Error::InvalidConfig(format!(
                "rule_deviation_cap must lie in (0, 1), got {}",
                self.rule_deviation_cap
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EdgeLength {
    pub edge: Edge,
    pub length: f64,
    pub deviation: f64,
}

pub fn degree_sequence(g: &Graph) -> Vec<usize> {
    let mut deg = vec![0; g.vertex_count()];
    for e in g.edges() {
        deg[e.0] += 1;
        deg[e.1] += 1;
    }
    deg
}

/// One entry per edge, sorted by `(u, v)`.
pub fn edge_lengths(g: &Graph) -> Vec<EdgeLength> {
    g.edges()
        .iter()
        .map(|&edge| {
            let length = g.edge_length(edge);
            EdgeLength { edge, length, deviation: length - 1.0 }
        })
        .collect()
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawCoord {
    Text(String),
    Number(f64),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGraph {
    #[serde(default)]
    id: String,
    #[serde(default)]
    caption: String,
    #[serde(default)]
    symmetry: Option<String>,
    #[serde(default)]
    labels: Option<Vec<u32>>,
    vertices: Vec<[RawCoord; 2]>,
    edges: Vec<[usize; 2]>,
    #[serde(default)]
    red_edges: Vec<[usize; 2]>,
    #[serde(default)]
    claimed_deviations: Vec<RawClaim>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawClaim {
    edge: [usize; 2],
    length: String,
}

/// Parses a graph document.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let raw: RawGraph = serde_json::from_str(text).map_err(|e| ParseError::Malformed(e.to_string()))?;
    graph_from_raw(raw)
}

/// Parses a graph document that has already been read into a JSON value.
pub fn graph_from_value(value: serde_json::Value) -> Result<Graph> {
    let raw: RawGraph = serde_json::from_value(value).map_err(|e| ParseError::Malformed(e.to_string()))?;
    graph_from_raw(raw)
}

fn graph_from_raw(raw: RawGraph) -> Result<Graph> {
    let mut vertices = Vec::with_capacity(raw.vertices.len());
    let mut literals = Vec::with_capacity(raw.vertices.len());
    let mut all_text = true;
    for (i, [x, y]) in raw.vertices.into_iter().enumerate() {
        let coord = |c: RawCoord| -> Result<(f64, Option<String>)> {
            let (v, lit) = match c {
                RawCoord::Text(s) => match s.trim().parse::<f64>() {
                    Ok(v) if s == s.trim() => (v, Some(s)),
                    _ => return Err(ParseError::BadCoordinate { vertex: i, text: s }.into()),
                },
                RawCoord::Number(v) => (v, None),
            };
            if !v.is_finite() {
                return Err(ParseError::BadCoordinate { vertex: i, text: v.to_string() }.into());
            }
            Ok((v, lit))
        };
        let (xv, xl) = coord(x)?;
        let (yv, yl) = coord(y)?;
        vertices.push(Point::new(xv, yv));
        match (xl, yl) {
            (Some(a), Some(b)) => literals.push([a, b]),
            _ => all_text = false,
        }
    }
    if let Some(labels) = &raw.labels {
        if labels.len() != vertices.len() {
            return Err(ParseError::LabelCount { labels: labels.len(), vertices: vertices.len() }.into());
        }
    }
    let edges: Vec<(usize, usize)> = raw.edges.iter().map(|&[u, v]| (u, v)).collect();
    let red: Vec<(usize, usize)> = raw.red_edges.iter().map(|&[u, v]| (u, v)).collect();
    let mut g = Graph::new(vertices, &edges, &red)?;
    // duplicates in the red list are tolerated by the set but not by the format
    if g.red_edges.len() != red.len() {
        let mut seen = BTreeSet::new();
        let dup = red.iter().map(|&(u, v)| Edge::new(u, v)).find(|e| !seen.insert(*e)).unwrap();
        return Err(ParseError::DuplicateEdge(dup).into());
    }
    for c in &raw.claimed_deviations {
        let e = Edge::from(c.edge);
        if !g.is_red(e) {
            return Err(ParseError::ClaimNotRed(e).into());
        }
        if c.length.trim().parse::<f64>().is_err() {
            return Err(ParseError::Malformed(format!("claimed length {:?} is not a number", c.length)).into());
        }
    }
    g.id = raw.id;
    g.caption = raw.caption;
    g.symmetry = raw.symmetry;
    g.labels = raw.labels;
    g.literals = all_text.then_some(literals);
    g.claimed = raw
        .claimed_deviations
        .into_iter()
        .map(|c| ClaimedDeviation { edge: Edge::from(c.edge), length: c.length })
        .collect();
    Ok(g)
}

fn json_str(s: &str) -> String {
    serde_json::to_string(s).expect("string serialization cannot fail")
}

fn block(out: &mut String, key: &str, rows: impl Iterator<Item = String>) {
    let rows: Vec<String> = rows.collect();
    if rows.is_empty() {
        write!(out, "  \"{key}\": []").unwrap();
        return;
    }
    write!(out, "  \"{key}\": [\n    {}\n  ]", rows.join(",\n    ")).unwrap();
}

/// Formats a coordinate so that parsing it back yields the same `f64`.
pub fn format_coordinate(v: f64) -> String {
    // Display prints the shortest round-tripping decimal, without exponent
    format!("{v}")
}

/// Writes the canonical document for `g`. Deterministic; corpus files are
/// stored in exactly this layout.
pub fn serialize_graph(g: &Graph) -> String {
    let mut out = String::from("{\n");
    writeln!(out, "  \"id\": {},", json_str(&g.id)).unwrap();
    writeln!(out, "  \"caption\": {},", json_str(&g.caption)).unwrap();
    let sym = g.symmetry.as_deref().map_or_else(|| "null".to_owned(), json_str);
    writeln!(out, "  \"symmetry\": {sym},").unwrap();
    if let Some(labels) = &g.labels {
        let list: Vec<String> = labels.iter().map(u32::to_string).collect();
        writeln!(out, "  \"labels\": [{}],", list.join(", ")).unwrap();
    }
    let coords: Vec<[String; 2]> = match &g.literals {
        Some(l) => l.clone(),
        None => g.vertices.iter().map(|p| [format_coordinate(p.x), format_coordinate(p.y)]).collect(),
    };
    block(&mut out, "vertices", coords.iter().map(|[x, y]| format!("[{}, {}]", json_str(x), json_str(y))));
    out.push_str(",\n");
    block(&mut out, "edges", g.edges.iter().map(|e| format!("[{}, {}]", e.0, e.1)));
    out.push_str(",\n");
    block(&mut out, "red_edges", g.red_edges.iter().map(|e| format!("[{}, {}]", e.0, e.1)));
    out.push_str(",\n");
    block(
        &mut out,
        "claimed_deviations",
        g.claimed
            .iter()
            .map(|c| format!("{{\"edge\": [{}, {}], \"length\": {}}}", c.edge.0, c.edge.1, json_str(&c.length))),
    );
    out.push_str("\n}\n");
    out
}

/// The graph document as a JSON value (for embedding in service responses).
pub fn graph_to_value(g: &Graph) -> serde_json::Value {
    serde_json::from_str(&serialize_graph(g)).expect("serializer emits valid JSON")
}

/// Equilateral unit triangle with vertices (0,0), (1,0), (1/2, √3/2).
pub fn unit_triangle() -> Graph {
    let h = 3f64.sqrt() / 2.0;
    Graph::new(
        vec![Point::new(0.0, 0.0), Point::new(1.0, 0.0), Point::new(0.5, h)],
        &[(0, 1), (1, 2), (0, 2)],
        &[],
    )
    .expect("valid")
    .with_metadata("unit_triangle", "unit triangle", None)
}

/// Unit square as a 4-cycle.
pub fn unit_square() -> Graph {
    Graph::new(
        vec![Point::new(0.0, 0.0), Point::new(1.0, 0.0), Point::new(1.0, 1.0), Point::new(0.0, 1.0)],
        &[(0, 1), (1, 2), (2, 3), (0, 3)],
        &[],
    )
    .expect("valid")
    .with_metadata("unit_square", "unit square", None)
}
