//! ASCII and SVG barcode plots.
//!
//! Bars are stacked top to bottom in (dimension, birth, death) order. H0 is
//! drawn in black, H1 in red and H2 in blue; infinite bars run to the right
//! edge and end in an arrow.

use std::fmt::Write as _;

use crate::homology::{Bar, Barcode};

const PREFIX: usize = 4;

#[derive(Debug, Clone, PartialEq)]
pub struct RenderSpec {
    /// Right edge of the plot; `None` means 1.2 × the largest finite
    /// endpoint, or 1.0 when there is none.
    pub eps_max: Option<f64>,
    /// Total ASCII line width.
    pub columns: usize,
    /// SVG canvas width in pixels.
    pub width: u32,
    /// SVG height per bar in pixels.
    pub row_height: u32,
}

impl Default for RenderSpec {
    fn default() -> Self {
        Self {
            eps_max: None,
            columns: 100,
            width: 640,
            row_height: 14,
        }
    }
}

impl RenderSpec {
    pub fn resolved_eps_max(&self, bc: &Barcode) -> f64 {
        match self.eps_max {
            Some(e) if e > 0.0 && e.is_finite() => e,
            _ => bc.largest_finite_endpoint().map_or(1.0, |m| 1.2 * m),
        }
    }
}

pub fn dimension_color(dim: usize) -> &'static str {
    match dim {
        0 => "black",
        1 => "red",
        2 => "blue",
        _ => "gray",
    }
}

fn sorted_bars(bc: &Barcode) -> Vec<(usize, Bar)> {
    let mut bars: Vec<(usize, Bar)> = bc.iter().map(|(d, b)| (d, *b)).collect();
    bars.sort_by(|(da, a), (db, b)| {
        da.cmp(db)
            .then(a.birth.total_cmp(&b.birth))
            .then(a.death.to_f64().total_cmp(&b.death.to_f64()))
    });
    bars
}

fn tick_label(v: f64) -> String {
    let s = format!("{v:.3}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s.is_empty() { "0".into() } else { s.to_string() }
}

pub fn render_ascii(bc: &Barcode, spec: &RenderSpec) -> String {
    let eps_max = spec.resolved_eps_max(bc);
    // One column is reserved for the arrow of infinite bars.
    let plot = spec.columns.saturating_sub(PREFIX + 1).max(10);
    let col = |x: f64| (((x / eps_max) * plot as f64).round().max(0.0) as usize).min(plot);

    let mut header: Vec<char> = " ".repeat(PREFIX + plot + 1).chars().collect();
    header[..3].copy_from_slice(&['e', 'p', 's']);
    for k in 0..=4 {
        let pos = PREFIX + k * plot / 4;
        let label = tick_label(eps_max * k as f64 / 4.0);
        let start = (pos + label.len()).min(header.len()) - label.len();
        for (i, c) in label.chars().enumerate() {
            header[start + i] = c;
        }
    }
    let mut out = header.into_iter().collect::<String>().trim_end().to_string();
    out.push('\n');

    for (dim, bar) in sorted_bars(bc) {
        let start = col(bar.birth);
        let (end, arrow) = match bar.death.finite() {
            Some(d) => (col(d).max(start + 1).min(plot), false),
            None => (plot, true),
        };
        let _ = write!(out, "{:<width$}", format!("H{dim}"), width = PREFIX);
        out.push_str(&" ".repeat(start));
        out.push_str(&"-".repeat(end.saturating_sub(start).max(1)));
        if arrow {
            out.push('>');
        }
        out.push('\n');
    }
    out
}

pub fn render_svg(bc: &Barcode, spec: &RenderSpec) -> String {
    let eps_max = spec.resolved_eps_max(bc);
    let bars = sorted_bars(bc);
    let (left, right, top, bottom) = (40.0, 20.0, 10.0, 30.0);
    let width = spec.width as f64;
    let row = spec.row_height as f64;
    let height = top + bottom + row * bars.len().max(1) as f64;
    let plot_w = width - left - right;
    let x = |v: f64| left + plot_w * (v / eps_max).clamp(0.0, 1.0);

    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{}" height="{}" viewBox="0 0 {} {}">"#,
        spec.width, height, spec.width, height
    );
    s.push_str("<defs>\n");
    for dim in 0..=bc.max_dim().max(2) {
        let c = dimension_color(dim);
        let _ = writeln!(
            s,
            r#"<marker id="arrow-h{dim}" markerWidth="8" markerHeight="8" refX="6" refY="4" orient="auto"><path d="M0,0 L8,4 L0,8 z" fill="{c}"/></marker>"#
        );
    }
    s.push_str("</defs>\n");

    let axis_y = height - bottom + 5.0;
    let _ = writeln!(
        s,
        r#"<path d="M{left:.2},{axis_y:.2} H{:.2}" stroke="black" stroke-width="1" fill="none"/>"#,
        left + plot_w
    );
    for k in 0..=4 {
        let v = eps_max * k as f64 / 4.0;
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" font-size="10" text-anchor="middle">{}</text>"#,
            x(v),
            axis_y + 14.0,
            tick_label(v)
        );
    }

    for (i, (dim, bar)) in bars.iter().enumerate() {
        let y = top + row * (i as f64 + 0.5);
        let x1 = x(bar.birth);
        let (x2, marker) = match bar.death.finite() {
            Some(d) => (x(d), String::new()),
            None => (left + plot_w - 6.0, format!(r#" marker-end="url(#arrow-h{dim})""#)),
        };
        let _ = writeln!(
            s,
            r#"<line x1="{x1:.2}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="{}" stroke-width="2" data-dim="{dim}"{marker}/>"#,
            x2.max(x1),
            dimension_color(*dim)
        );
    }
    s.push_str("</svg>\n");
    s
}
