//! Infinitesimal rigidity of a drawing via its rigidity matrix.
//!
//! The matrix has one row per constrained edge and two columns per vertex;
//! its null space always contains the three trivial motions of the plane.
//! Anything beyond those is a non-trivial infinitesimal flex.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Edge, Graph, ToleranceProfile};

/// Which edges act as fixed-length bars.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RigidityMode {
    /// Only unit (non-red) edges are bars; red edges may change length.
    /// This is the notion under which Epsilon graphs are flexible.
    #[default]
    ReleaseRed,
    /// Every edge, red or not, is a bar.
    AllEdges,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RigidityReport {
    pub mode: RigidityMode,
    pub rank: usize,
    pub dof: usize,
    pub infinitesimally_rigid: bool,
    /// Orthonormal, sign-fixed basis of the non-trivial flexes (2n entries each).
    pub flex_basis: Vec<Vec<f64>>,
    /// Descending.
    pub singular_values: Vec<f64>,
    /// Smallest singular value counted in the rank, relative to the largest.
    pub smallest_kept_ratio: f64,
    /// Largest singular value treated as zero, relative to the largest (0 if none).
    pub largest_dropped_ratio: f64,
}

fn fill_rows(g: &Graph, edges: &[Edge]) -> DMatrix<f64> {
    let n = g.vertex_count();
    let pts = g.vertices();
    let mut m = DMatrix::zeros(edges.len(), 2 * n);
    for (row, e) in edges.iter().enumerate() {
        let d = pts[e.0] - pts[e.1];
        m[(row, 2 * e.0)] = d.x;
        m[(row, 2 * e.0 + 1)] = d.y;
        m[(row, 2 * e.1)] = -d.x;
        m[(row, 2 * e.1 + 1)] = -d.y;
    }
    m
}

/// Rigidity matrix over all edges, `|E| × 2n`.
pub fn rigidity_matrix(g: &Graph) -> Result<DMatrix<f64>> {
    rigidity_matrix_for(g, RigidityMode::AllEdges)
}

pub fn rigidity_matrix_for(g: &Graph, mode: RigidityMode) -> Result<DMatrix<f64>> {
    if g.vertex_count() < 2 {
        return Err(Error::TooFewVertices { needed: 2, actual: g.vertex_count() });
    }
    let edges: Vec<Edge> = match mode {
        RigidityMode::AllEdges => g.edges().to_vec(),
        RigidityMode::ReleaseRed => g.edges().iter().copied().filter(|&e| !g.is_red(e)).collect(),
    };
    Ok(fill_rows(g, &edges))
}

fn singular_values(m: &DMatrix<f64>) -> Vec<f64> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return Vec::new();
    }
    let mut s: Vec<f64> = m.clone().svd(false, false).singular_values.iter().copied().collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

/// Number of singular values above `rank_tol · σ_max`.
pub fn numeric_rank(m: &DMatrix<f64>, rank_tol: f64) -> usize {
    let s = singular_values(m);
    match s.first() {
        Some(&max) if max > 0.0 => s.iter().filter(|&&v| v > rank_tol * max).count(),
        _ => 0,
    }
}

/// Translations in x and y and the rotation about the centroid, orthonormalized.
pub fn trivial_motions(g: &Graph) -> Vec<DVector<f64>> {
    let n = g.vertex_count();
    let pts = g.vertices();
    let c = pts.iter().fold(crate::geometry::Point::default(), |a, &p| a + p) * (1.0 / n as f64);
    let tx = DVector::from_fn(2 * n, |i, _| if i % 2 == 0 { 1.0 } else { 0.0 });
    let ty = DVector::from_fn(2 * n, |i, _| if i % 2 == 1 { 1.0 } else { 0.0 });
    let rot = DVector::from_fn(2 * n, |i, _| {
        let p = pts[i / 2] - c;
        if i % 2 == 0 { -p.y } else { p.x }
    });
    orthonormalize(vec![tx, ty, rot], 1e-12)
}

fn orthonormalize(vs: Vec<DVector<f64>>, tol: f64) -> Vec<DVector<f64>> {
    let mut out: Vec<DVector<f64>> = Vec::new();
    for mut v in vs {
        for _ in 0..2 {
            for u in &out {
                let proj = u.dot(&v);
                v -= u * proj;
            }
        }
        let norm = v.norm();
        if norm > tol {
            out.push(v / norm);
        }
    }
    out
}

fn sign_fix(v: &mut DVector<f64>) {
    if let Some(first) = v.iter().copied().find(|x| x.abs() > 1e-12) {
        if first < 0.0 {
            v.neg_mut();
        }
    }
}

pub fn analyze_rigidity(g: &Graph, profile: &ToleranceProfile, mode: RigidityMode) -> Result<RigidityReport> {
    let n = g.vertex_count();
    if n < 3 {
        return Err(Error::TooFewVertices { needed: 3, actual: n });
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let m = rigidity_matrix_for(g, mode)?;
    let cols = 2 * n;
    // pad to at least square so the SVD yields a complete right basis
    let rows = m.nrows().max(cols);
    let mut padded = DMatrix::zeros(rows, cols);
    padded.view_mut((0, 0), (m.nrows(), cols)).copy_from(&m);
    let svd = padded.svd(false, true);
    let v_t = svd.v_t.expect("requested V");
    let sigma = &svd.singular_values;
    let sigma_max = sigma.iter().copied().fold(0.0, f64::max);
    let cutoff = profile.rank_tol * sigma_max;
    let rank = if sigma_max > 0.0 { sigma.iter().filter(|&&s| s > cutoff).count() } else { 0 };
    let null: Vec<DVector<f64>> = (0..sigma.len())
        .filter(|&i| sigma_max == 0.0 || sigma[i] <= cutoff)
        .map(|i| v_t.row(i).transpose())
        .collect();

    let dof = (2 * n).saturating_sub(3 + rank);
    let trivial = trivial_motions(g);
    let mut flex_basis = Vec::new();
    if dof > 0 && !null.is_empty() {
        // project trivial motions out of the null space, keep the dominant directions
        let k = null.len();
        let mut proj = DMatrix::zeros(cols, k);
        for (j, v) in null.iter().enumerate() {
            let mut w = v.clone();
            for t in &trivial {
                let c = t.dot(&w);
                w -= t * c;
            }
            proj.set_column(j, &w);
        }
        let psvd = proj.svd(true, false);
        let u = psvd.u.expect("requested U");
        let mut order: Vec<usize> = (0..psvd.singular_values.len()).collect();
        order.sort_by(|&a, &b| psvd.singular_values[b].total_cmp(&psvd.singular_values[a]));
        let picked: Vec<DVector<f64>> =
            order.into_iter().take(dof).map(|i| u.column(i).into_owned()).collect();
        for mut v in orthonormalize(picked, 1e-12) {
            sign_fix(&mut v);
            flex_basis.push(v.iter().copied().collect());
        }
    }

    let mut sv: Vec<f64> = sigma.iter().copied().collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    sv.truncate(m.nrows().min(cols));
    let ratio = |s: f64| if sigma_max > 0.0 { s / sigma_max } else { 0.0 };
    let smallest_kept_ratio = sv.iter().copied().filter(|&s| s > cutoff).fold(0.0, |_, s| ratio(s));
    let largest_dropped_ratio = sv.iter().copied().find(|&s| s <= cutoff).map_or(0.0, ratio);
    Ok(RigidityReport {
        mode,
        rank,
        dof,
        infinitesimally_rigid: dof == 0,
        flex_basis,
        singular_values: sv,
        smallest_kept_ratio,
        largest_dropped_ratio,
    })
}
