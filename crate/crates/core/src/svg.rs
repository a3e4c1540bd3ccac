//! SVG rendering of a drawing.

use std::fmt::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::Graph;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SvgStyle {
    /// Pixels per unit length.
    pub scale: f64,
    /// In units.
    pub vertex_radius: f64,
    /// In units.
    pub stroke_width: f64,
    pub gray_stroke: String,
    pub red_stroke: String,
    pub vertex_fill: String,
    /// Padding around the bounding box, as a fraction of its larger side.
    pub margin: f64,
}

impl Default for SvgStyle {
    fn default() -> Self {
        Self {
            scale: 100.0,
            vertex_radius: 0.02,
            stroke_width: 0.01,
            gray_stroke: "#808080".into(),
            red_stroke: "#ff0000".into(),
            vertex_fill: "#000000".into(),
            margin: 0.05,
        }
    }
}

impl SvgStyle {
    pub fn validate(&self) -> Result<()> {
        if !(self.scale > 0.0 && self.scale.is_finite()) {
            return Err(Error::InvalidConfig(format!("scale must be positive, got {}", self.scale)));
        }
        if !(self.margin >= 0.0 && self.margin.is_finite()) {
            return Err(Error::InvalidConfig(format!("margin must be non-negative, got {}", self.margin)));
        }
        if !(self.vertex_radius >= 0.0 && self.stroke_width >= 0.0) {
            return Err(Error::InvalidConfig("vertex_radius and stroke_width must be non-negative".into()));
        }
        Ok(())
    }
}

fn num(v: f64) -> String {
    let s = format!("{v:.4}");
    if s == "-0.0000" { "0.0000".into() } else { s }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

/// Lines for the edges in sorted order, then one circle per vertex. The
/// y-axis points up, as in the source figures.
pub fn export_svg(g: &Graph, style: &SvgStyle) -> Result<String> {
    style.validate()?;
    let pts = g.vertices();
    let (mut min_x, mut min_y, mut max_x, mut max_y) = (0.0_f64, 0.0_f64, 0.0_f64, 0.0_f64);
    if let Some(first) = pts.first() {
        (min_x, min_y, max_x, max_y) = (first.x, first.y, first.x, first.y);
        for p in pts {
            min_x = min_x.min(p.x);
            min_y = min_y.min(p.y);
            max_x = max_x.max(p.x);
            max_y = max_y.max(p.y);
        }
    }
    let extent = (max_x - min_x).max(max_y - min_y);
    let pad = style.margin * if extent > 0.0 { extent } else { 1.0 };
    let s = style.scale;
    let px = |x: f64| num((x - min_x + pad) * s);
    let py = |y: f64| num((max_y + pad - y) * s);
    let width = num((max_x - min_x + 2.0 * pad) * s);
    let height = num((max_y - min_y + 2.0 * pad) * s);

    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" viewBox=\"0 0 {width} {height}\">"
    );
    if !g.id().is_empty() {
        let _ = writeln!(out, "  <title>{}</title>", escape(g.id()));
    }
    let _ = writeln!(out, "  <g stroke-width=\"{}\" stroke-linecap=\"round\">", num(style.stroke_width * s));
    for &e in g.edges() {
        let (a, b) = (pts[e.0], pts[e.1]);
        let color = if g.is_red(e) { &style.red_stroke } else { &style.gray_stroke };
        let _ = writeln!(
            out,
            "    <line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{}\"/>",
            px(a.x),
            py(a.y),
            px(b.x),
            py(b.y),
            escape(color)
        );
    }
    out.push_str("  </g>\n");
    let _ = writeln!(out, "  <g fill=\"{}\">", escape(&style.vertex_fill));
    let r = num(style.vertex_radius * s);
    for p in pts {
        let _ = writeln!(out, "    <circle cx=\"{}\" cy=\"{}\" r=\"{r}\"/>", px(p.x), py(p.y));
    }
    out.push_str("  </g>\n</svg>\n");
    Ok(out)
}
