//! SVG drawings of instances and solutions. Output is plain text built by
//! hand, so identical inputs give byte-identical files.

use std::fmt::Write;

use crate::geom::{BBox, Point, Polygon};
use crate::model::{Instance, Solution};
use crate::verifier::{verify_placements, Violation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Palette {
    #[default]
    Pastel,
    Mono,
}

impl std::str::FromStr for Palette {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "pastel" => Ok(Palette::Pastel),
            "mono" => Ok(Palette::Mono),
            _ => Err(format!("unknown palette {s:?}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RenderSpec {
    pub palette: Palette,
    /// Output pixels per coordinate unit.
    pub scale: f64,
    /// Draw unplaced items in a tray to the right of the container.
    pub show_unplaced: bool,
    /// Draw solutions that fail verification instead of refusing.
    pub force: bool,
}

impl Default for RenderSpec {
    fn default() -> Self {
        RenderSpec {
            palette: Palette::Pastel,
            scale: 1.0,
            show_unplaced: false,
            force: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RenderError {
    #[error("refusing to render an invalid solution ({0:?}); use force to draw it anyway")]
    RenderOfInvalidSolution(Violation),
    #[error("solution is for instance {0:?}")]
    InstanceMismatch(String),
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

fn fill(palette: Palette, i: usize) -> String {
    match palette {
        Palette::Pastel => hsl_hex((i * 137 % 360) as f64, 0.6, 0.72),
        Palette::Mono => "#d0d0d0".to_string(),
    }
}

/// `#rrggbb` for a hue in degrees; plain SVG 1.1 has no `hsl()`.
fn hsl_hex(h: f64, s: f64, l: f64) -> String {
    let c = (1.0 - (2.0 * l - 1.0).abs()) * s;
    let hp = h / 60.0;
    let x = c * (1.0 - (hp % 2.0 - 1.0).abs());
    let (r, g, b) = match hp as u32 {
        0 => (c, x, 0.0),
        1 => (x, c, 0.0),
        2 => (0.0, c, x),
        3 => (0.0, x, c),
        4 => (x, 0.0, c),
        _ => (c, 0.0, x),
    };
    let m = l - c / 2.0;
    let byte = |v: f64| ((v + m) * 255.0).round() as u8;
    format!("#{:02x}{:02x}{:02x}", byte(r), byte(g), byte(b))
}

/// Points attribute with `y` flipped about `top` so the drawing is upright.
fn points(poly: &Polygon, t: Point, top: i64) -> String {
    let mut out = String::new();
    for (k, p) in poly.vertices().iter().enumerate() {
        if k > 0 {
            out.push(' ');
        }
        let _ = write!(out, "{},{}", p.x + t.x, top - (p.y + t.y));
    }
    out
}

/// Offsets laying out the unplaced items in shelves to the right of `area`.
fn tray(inst: &Instance, unplaced: &[usize], area: BBox) -> Vec<(usize, Point)> {
    let gap = (area.width().max(area.height()) / 50).max(1);
    let x0 = area.max_x + 2 * gap;
    let row_limit = x0 + area.width().max(1);
    let (mut x, mut y, mut row_h) = (x0, area.min_y, 0);
    let mut out = Vec::new();
    for &i in unplaced {
        let b = inst.items()[i].polygon.bbox();
        if x > x0 && x + b.width() > row_limit {
            x = x0;
            y += row_h + gap;
            row_h = 0;
        }
        out.push((i, Point::new(x - b.min_x, y - b.min_y)));
        x += b.width() + gap;
        row_h = row_h.max(b.height());
    }
    out
}

pub fn render(
    inst: &Instance,
    solution: Option<&Solution>,
    spec: &RenderSpec,
) -> Result<String, RenderError> {
    if let Some(sol) = solution {
        if sol.instance_name != inst.name() {
            return Err(RenderError::InstanceMismatch(sol.instance_name.clone()));
        }
        let report = verify_placements(inst, sol);
        if let (false, Some(v)) = (spec.force, report.violation) {
            return Err(RenderError::RenderOfInvalidSolution(v));
        }
    }
    let placed: Vec<(usize, Point)> = solution
        .map(|s| {
            s.placements
                .iter()
                .filter(|p| p.item_index < inst.len())
                .map(|p| (p.item_index, p.offset))
                .collect()
        })
        .unwrap_or_default();
    let cb = inst.container().bbox();
    let trayed = if spec.show_unplaced {
        let mut is_placed = vec![false; inst.len()];
        for &(i, _) in &placed {
            is_placed[i] = true;
        }
        let unplaced: Vec<usize> = (0..inst.len()).filter(|&i| !is_placed[i]).collect();
        tray(inst, &unplaced, cb)
    } else {
        Vec::new()
    };

    let mut bounds = cb;
    for &(i, t) in placed.iter().chain(&trayed) {
        bounds = bounds.union(&inst.items()[i].polygon.bbox().translate(t));
    }
    let margin = (bounds.width().max(bounds.height()) / 100).max(1);
    let stroke = (bounds.width().max(bounds.height()) as f64 / 800.0).max(0.05);
    let top = bounds.max_y;
    let (vw, vh) = (bounds.width() + 2 * margin, bounds.height() + 2 * margin);

    let mut svg = String::new();
    let _ = writeln!(svg, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="{} {} {} {}">"#,
        vw as f64 * spec.scale,
        vh as f64 * spec.scale,
        bounds.min_x - margin,
        -margin,
        vw,
        vh
    );
    let _ = writeln!(svg, "<title>{}</title>", escape(inst.name()));
    let _ = writeln!(
        svg,
        r##"<polygon class="container" points="{}" fill="#ffffff" stroke="#000000" stroke-width="{}"/>"##,
        points(inst.container(), Point::ORIGIN, top),
        stroke * 2.0
    );
    for (class, list) in [("placed", &placed), ("unplaced", &trayed)] {
        if list.is_empty() {
            continue;
        }
        let _ = writeln!(svg, r#"<g class="{class}">"#);
        for &(i, t) in list.iter() {
            let _ = writeln!(
                svg,
                r##"<polygon data-item="{i}" points="{}" fill="{}" stroke="#333333" stroke-width="{stroke}"/>"##,
                points(&inst.items()[i].polygon, t, top),
                fill(spec.palette, i)
            );
        }
        let _ = writeln!(svg, "</g>");
    }
    let _ = writeln!(svg, "</svg>");
    Ok(svg)
}
