//! Least-squares relaxation of vertex coordinates toward target edge lengths,
//! and continuation along a flex that drives red edges toward unit length.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::Point;
use crate::model::{Edge, Graph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RelaxMode {
    /// Every edge, red included, is pulled toward length 1.
    #[default]
    AllUnit,
    /// Red edges carry weight 0 unless `red_weight` says otherwise.
    PreserveRed,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RelaxConfig {
    pub mode: RelaxMode,
    pub unit_weight: f64,
    /// Defaults to 1 in `all_unit` mode and 0 in `preserve_red` mode.
    pub red_weight: Option<f64>,
    pub max_iterations: usize,
    pub gradient_tol: f64,
    pub damping_init: f64,
    /// `(fully pinned vertex, vertex pinned perpendicular to the line between them)`.
    pub pinned: (usize, usize),
    pub record_trajectory: bool,
}

impl Default for RelaxConfig {
    fn default() -> Self {
        Self {
            mode: RelaxMode::AllUnit,
            unit_weight: 1.0,
            red_weight: None,
            max_iterations: 500,
            gradient_tol: 1e-12,
            damping_init: 1e-3,
            pinned: (0, 1),
            record_trajectory: false,
        }
    }
}

impl RelaxConfig {
    pub fn with_mode(mode: RelaxMode) -> Self {
        Self { mode, ..Self::default() }
    }

    pub fn effective_red_weight(&self) -> f64 {
        self.red_weight.unwrap_or(match self.mode {
            RelaxMode::AllUnit => 1.0,
            RelaxMode::PreserveRed => 0.0,
        })
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidConfig(msg));
        let red = self.effective_red_weight();
        if !(self.unit_weight >= 0.0 && self.unit_weight.is_finite() && red >= 0.0 && red.is_finite()) {
            return bad(format!("weights must be finite and non-negative (unit {}, red {red})", self.unit_weight));
        }
        if self.max_iterations == 0 {
            return bad("max_iterations must be at least 1".into());
        }
        if !(self.gradient_tol >= 0.0) || !(self.damping_init > 0.0 && self.damping_init.is_finite()) {
            return bad("gradient_tol must be non-negative and damping_init positive".into());
        }
        let (a, b) = self.pinned;
        if a == b || a >= n || b >= n {
            return bad(format!("pinned vertices ({a}, {b}) must be distinct indices below {n}"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RelaxResult {
    pub final_vertices: Vec<Point>,
    /// Objective before the first step and after every accepted step.
    pub objective_history: Vec<f64>,
    pub converged: bool,
    pub iterations: usize,
    /// Largest `|length - 1|` over non-red edges.
    pub max_unit_residual: f64,
    /// `length - 1` per red edge, in sorted edge order.
    pub red_residuals: Vec<f64>,
    pub trajectory: Option<Vec<Vec<Point>>>,
}

impl RelaxResult {
    pub fn final_objective(&self) -> f64 {
        *self.objective_history.last().expect("history starts with the initial objective")
    }

    pub fn max_red_deviation(&self) -> f64 {
        self.red_residuals.iter().fold(0.0, |m, r| m.max(r.abs()))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FlexContinuationConfig {
    pub shrink_factor: f64,
    pub target_red_deviation: f64,
    pub unit_residual_cap: f64,
    pub max_stages: usize,
    /// Iteration cap for each stage's solve.
    pub max_iterations: usize,
    pub record_trajectory: bool,
}

impl Default for FlexContinuationConfig {
    fn default() -> Self {
        Self {
            shrink_factor: 0.5,
            target_red_deviation: 1e-2,
            unit_residual_cap: 1e-8,
            max_stages: 60,
            max_iterations: 500,
            record_trajectory: true,
        }
    }
}

impl FlexContinuationConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.shrink_factor > 0.0 && self.shrink_factor < 1.0) {
            return Err(Error::InvalidConfig(format!("shrink_factor must lie in (0, 1), got {}", self.shrink_factor)));
        }
        if !(self.target_red_deviation > 0.0 && self.unit_residual_cap > 0.0) {
            return Err(Error::InvalidConfig("target_red_deviation and unit_residual_cap must be positive".into()));
        }
        if self.max_iterations == 0 {
            return Err(Error::InvalidConfig("max_iterations must be at least 1".into()));
        }
        Ok(())
    }
}

/// Gray edges weigh this much more than red ones during continuation.
pub const CONTINUATION_WEIGHT_RATIO: f64 = 1e6;

/// Smallest fraction of the requested red-deviation reduction a stage must
/// achieve to be accepted.
pub const MIN_STAGE_PROGRESS: f64 = 0.01;

fn check_lengths(g: &Graph, targets: &[f64], weights: &[f64]) -> Result<()> {
    let m = g.edges().len();
    if targets.len() != m {
        return Err(Error::SizeMismatch(targets.len(), m));
    }
    if weights.len() != m {
        return Err(Error::SizeMismatch(weights.len(), m));
    }
    Ok(())
}

fn residuals_at(pts: &[Point], edges: &[Edge], targets: &[f64], weights: &[f64]) -> DVector<f64> {
    DVector::from_iterator(
        edges.len(),
        edges.iter().enumerate().map(|(i, e)| weights[i].sqrt() * ((pts[e.0] - pts[e.1]).norm() - targets[i])),
    )
}

fn jacobian_at(pts: &[Point], edges: &[Edge], weights: &[f64]) -> Result<DMatrix<f64>> {
    let mut j = DMatrix::zeros(edges.len(), 2 * pts.len());
    for (row, &e) in edges.iter().enumerate() {
        let d = pts[e.0] - pts[e.1];
        let len = d.norm();
        if len == 0.0 || !len.is_finite() {
            return Err(Error::ZeroLengthEdge(e));
        }
        let s = weights[row].sqrt() / len;
        j[(row, 2 * e.0)] = s * d.x;
        j[(row, 2 * e.0 + 1)] = s * d.y;
        j[(row, 2 * e.1)] = -s * d.x;
        j[(row, 2 * e.1 + 1)] = -s * d.y;
    }
    Ok(j)
}

/// `sqrt(w) · (length − target)` per edge, in sorted edge order.
pub fn residuals(g: &Graph, targets: &[f64], weights: &[f64]) -> Result<Vec<f64>> {
    check_lengths(g, targets, weights)?;
    Ok(residuals_at(g.vertices(), g.edges(), targets, weights).iter().copied().collect())
}

/// `½ Σ r²`.
pub fn objective(r: &[f64]) -> f64 {
    0.5 * r.iter().map(|x| x * x).sum::<f64>()
}

/// Derivative of [`residuals`] with respect to `(x0, y0, x1, y1, …)`.
pub fn jacobian(g: &Graph, targets: &[f64], weights: &[f64]) -> Result<DMatrix<f64>> {
    check_lengths(g, targets, weights)?;
    jacobian_at(g.vertices(), g.edges(), weights)
}

/// Free coordinates after gauge fixing: every coordinate except the first
/// pinned vertex, and only the along-axis coordinate of the second.
struct Gauge {
    pin: usize,
    slide: usize,
    axis: Point,
    n: usize,
}

impl Gauge {
    fn new(pts: &[Point], pin: usize, slide: usize) -> Self {
        let d = pts[slide] - pts[pin];
        let axis = if d.norm() > 0.0 { d * (1.0 / d.norm()) } else { Point::new(1.0, 0.0) };
        Self { pin, slide, axis, n: pts.len() }
    }

    fn dim(&self) -> usize {
        2 * self.n - 3
    }

    /// Columns of `j` mapped onto the free coordinates.
    fn reduce(&self, j: &DMatrix<f64>) -> DMatrix<f64> {
        let mut out = DMatrix::zeros(j.nrows(), self.dim());
        let mut col = 0;
        for v in 0..self.n {
            if v == self.pin {
                continue;
            }
            if v == self.slide {
                let c = j.column(2 * v) * self.axis.x + j.column(2 * v + 1) * self.axis.y;
                out.set_column(col, &c);
                col += 1;
            } else {
                out.set_column(col, &j.column(2 * v));
                out.set_column(col + 1, &j.column(2 * v + 1));
                col += 2;
            }
        }
        out
    }

    fn step(&self, pts: &[Point], delta: &DVector<f64>) -> Vec<Point> {
        let mut out = pts.to_vec();
        let mut col = 0;
        for (v, p) in out.iter_mut().enumerate() {
            if v == self.pin {
                continue;
            }
            if v == self.slide {
                *p = *p + self.axis * delta[col];
                col += 1;
            } else {
                *p = *p + Point::new(delta[col], delta[col + 1]);
                col += 2;
            }
        }
        out
    }
}

struct Solve {
    vertices: Vec<Point>,
    history: Vec<f64>,
    converged: bool,
    iterations: usize,
    trajectory: Option<Vec<Vec<Point>>>,
}

const MAX_DAMPING: f64 = 1e20;

/// Levenberg–Marquardt on `½‖r‖²` with `(JᵀJ + λI)` steps.
#[allow(clippy::too_many_arguments)]
fn levenberg_marquardt(
    start: &[Point],
    edges: &[Edge],
    targets: &[f64],
    weights: &[f64],
    pinned: (usize, usize),
    max_iterations: usize,
    gradient_tol: f64,
    damping_init: f64,
    record: bool,
) -> Result<Solve> {
    let gauge = Gauge::new(start, pinned.0, pinned.1);
    let mut pts = start.to_vec();
    let mut r = residuals_at(&pts, edges, targets, weights);
    let mut f = 0.5 * r.norm_squared();
    if !f.is_finite() {
        return Err(Error::Divergence);
    }
    let mut history = vec![f];
    let mut trajectory = record.then(|| vec![pts.clone()]);
    let mut lambda = damping_init;
    let mut converged = false;
    let mut iterations = 0;
    while iterations < max_iterations {
        let j = gauge.reduce(&jacobian_at(&pts, edges, weights)?);
        let grad = j.tr_mul(&r);
        if grad.norm() <= gradient_tol {
            converged = true;
            break;
        }
        iterations += 1;
        let jtj = j.tr_mul(&j);
        let accepted = loop {
            let mut a = jtj.clone();
            for i in 0..a.nrows() {
                a[(i, i)] += lambda;
            }
            let step = a.cholesky().map(|c| c.solve(&(-&grad)));
            if let Some(delta) = step {
                let trial = gauge.step(&pts, &delta);
                let tr = residuals_at(&trial, edges, targets, weights);
                let tf = 0.5 * tr.norm_squared();
                if tf.is_nan() {
                    return Err(Error::Divergence);
                }
                if tf < f {
                    lambda = (lambda / 10.0).max(1e-300);
                    break Some((trial, tr, tf));
                }
            }
            lambda *= 10.0;
            if lambda > MAX_DAMPING {
                break None;
            }
        };
        let Some((trial, tr, tf)) = accepted else {
            // no descent step exists at working precision
            converged = true;
            break;
        };
        let decrease = (f - tf) / f;
        pts = trial;
        r = tr;
        f = tf;
        history.push(f);
        if let Some(t) = trajectory.as_mut() {
            t.push(pts.clone());
        }
        if decrease < 1e-15 {
            converged = true;
            break;
        }
    }
    Ok(Solve { vertices: pts, history, converged, iterations, trajectory })
}

fn summarize(g: &Graph, pts: &[Point]) -> (f64, Vec<f64>) {
    let mut max_unit: f64 = 0.0;
    let mut red = Vec::new();
    for &e in g.edges() {
        let dev = (pts[e.0] - pts[e.1]).norm() - 1.0;
        if g.is_red(e) {
            red.push(dev);
        } else {
            max_unit = max_unit.max(dev.abs());
        }
    }
    (max_unit, red)
}

fn into_result(g: &Graph, s: Solve) -> RelaxResult {
    let (max_unit_residual, red_residuals) = summarize(g, &s.vertices);
    RelaxResult {
        final_vertices: s.vertices,
        objective_history: s.history,
        converged: s.converged,
        iterations: s.iterations,
        max_unit_residual,
        red_residuals,
        trajectory: s.trajectory,
    }
}

/// Relaxes all coordinates toward unit edge lengths.
pub fn relax(g: &Graph, cfg: &RelaxConfig) -> Result<RelaxResult> {
    let n = g.vertex_count();
    if n < 2 {
        return Err(Error::TooFewVertices { needed: 2, actual: n });
    }
    cfg.validate(n)?;
    let red_w = cfg.effective_red_weight();
    let weights: Vec<f64> =
        g.edges().iter().map(|&e| if g.is_red(e) { red_w } else { cfg.unit_weight }).collect();
    let targets = vec![1.0; g.edges().len()];
    let s = levenberg_marquardt(
        g.vertices(),
        g.edges(),
        &targets,
        &weights,
        cfg.pinned,
        cfg.max_iterations,
        cfg.gradient_tol,
        cfg.damping_init,
        cfg.record_trajectory,
    )?;
    Ok(into_result(g, s))
}

/// Minimum-norm Gauss–Newton steps on the gray edges alone, restoring unit
/// length after a penalty solve has left small gray residuals.
fn project_gray(pts: &[Point], gray: &[Edge]) -> Result<Vec<Point>> {
    let ones = vec![1.0; gray.len()];
    let mut pts = pts.to_vec();
    let mut best = residuals_at(&pts, gray, &ones, &ones).amax();
    for _ in 0..20 {
        if best <= 1e-15 {
            break;
        }
        let r = residuals_at(&pts, gray, &ones, &ones);
        let j = jacobian_at(&pts, gray, &ones)?;
        let delta = j.svd(true, true).solve(&(-r), 1e-12).map_err(|_| Error::Divergence)?;
        let trial: Vec<Point> =
            pts.iter().enumerate().map(|(v, &p)| p + Point::new(delta[2 * v], delta[2 * v + 1])).collect();
        let next = residuals_at(&trial, gray, &ones, &ones).amax();
        if !(next < best) {
            break;
        }
        pts = trial;
        best = next;
    }
    Ok(pts)
}

/// Walks red edges toward unit length in geometric stages while keeping gray
/// edges unit. Returns the accepted stages; an empty list means the first
/// stage already stalled.
pub fn flex_continuation(g: &Graph, cfg: &FlexContinuationConfig) -> Result<Vec<RelaxResult>> {
    cfg.validate()?;
    if g.red_edges().is_empty() {
        return Err(Error::InvalidConfig("flex continuation needs at least one red edge".into()));
    }
    let n = g.vertex_count();
    if n < 2 {
        return Err(Error::TooFewVertices { needed: 2, actual: n });
    }
    let gray: Vec<Edge> = g.edges().iter().copied().filter(|&e| !g.is_red(e)).collect();
    let weights: Vec<f64> =
        g.edges().iter().map(|&e| if g.is_red(e) { 1.0 } else { CONTINUATION_WEIGHT_RATIO }).collect();
    let mut pts = g.vertices().to_vec();
    let mut red_targets: Vec<f64> = g.red_edges().iter().map(|&e| g.edge_length(e)).collect();
    let mut current_dev = red_targets.iter().fold(0.0, |m: f64, t| m.max((t - 1.0).abs()));
    let mut stages = Vec::new();
    for _ in 0..cfg.max_stages {
        if current_dev <= cfg.target_red_deviation {
            break;
        }
        for t in red_targets.iter_mut() {
            *t = 1.0 + cfg.shrink_factor * (*t - 1.0);
        }
        let requested = current_dev - red_targets.iter().fold(0.0, |m: f64, t| m.max((t - 1.0).abs()));
        let mut k = 0;
        let targets: Vec<f64> = g
            .edges()
            .iter()
            .map(|&e| {
                if g.is_red(e) {
                    k += 1;
                    red_targets[k - 1]
                } else {
                    1.0
                }
            })
            .collect();
        let mut s = levenberg_marquardt(
            &pts,
            g.edges(),
            &targets,
            &weights,
            (0, 1),
            cfg.max_iterations,
            0.0,
            1e-3,
            cfg.record_trajectory,
        )?;
        s.vertices = project_gray(&s.vertices, &gray)?;
        if let Some(t) = s.trajectory.as_mut() {
            t.push(s.vertices.clone());
        }
        let stage = into_result(g, s);
        let dev = stage.max_red_deviation();
        let progress = current_dev - dev;
        if !(stage.max_unit_residual <= cfg.unit_residual_cap && progress > 0.0 && progress >= MIN_STAGE_PROGRESS * requested)
        {
            break;
        }
        pts = stage.final_vertices.clone();
        current_dev = dev;
        stages.push(stage);
    }
    Ok(stages)
}
