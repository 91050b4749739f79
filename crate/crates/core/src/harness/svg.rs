use std::fmt::Write as _;
use std::io::Write;

use rand::Rng;

use super::ExperimentRecord;
use crate::error::Result;
use crate::sampling::RandomSource;

/// Layout options for [`emit_svg_scatter`].
#[derive(Debug, Clone, PartialEq)]
pub struct ScatterAxes {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    /// Horizontal reference line (for example a known `q*`).
    pub reference_line: Option<f64>,
    /// Points are shifted horizontally by up to this much.
    pub jitter: f64,
    /// Seed for the jitter, so plots are reproducible.
    pub seed: u64,
}

impl Default for ScatterAxes {
    fn default() -> Self {
        ScatterAxes {
            title: String::new(),
            x_label: "p".into(),
            y_label: "modularity".into(),
            reference_line: None,
            jitter: 0.0,
            seed: 0,
        }
    }
}

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 440.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 20.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 60.0;
const TICKS: usize = 5;

fn padded(lo: f64, hi: f64) -> (f64, f64) {
    if (hi - lo).abs() < 1e-12 {
        (lo - 0.5, hi + 0.5)
    } else {
        let pad = (hi - lo) * 0.05;
        (lo - pad, hi + pad)
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Writes a self-contained SVG scatter of `score` against `param_value`.
pub fn emit_svg_scatter<W: Write>(records: &[ExperimentRecord], axes: &ScatterAxes, mut out: W) -> Result<()> {
    let mut rng = RandomSource::new(axes.seed);
    let points: Vec<(f64, f64)> = records
        .iter()
        .map(|r| {
            let dx = if axes.jitter > 0.0 { rng.gen_range(-axes.jitter..=axes.jitter) } else { 0.0 };
            (r.param_value + dx, r.score)
        })
        .collect();

    let xs = points.iter().map(|p| p.0);
    let mut ys: Vec<f64> = points.iter().map(|p| p.1).collect();
    ys.extend(axes.reference_line);
    let (x0, x1) = padded(
        xs.clone().fold(f64::INFINITY, f64::min).min(0.0),
        xs.fold(f64::NEG_INFINITY, f64::max).max(1.0),
    );
    let (y0, y1) = if ys.is_empty() {
        (0.0, 1.0)
    } else {
        padded(
            ys.iter().copied().fold(f64::INFINITY, f64::min),
            ys.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        )
    };
    let plot_w = WIDTH - LEFT - RIGHT;
    let plot_h = HEIGHT - TOP - BOTTOM;
    let sx = |x: f64| LEFT + (x - x0) / (x1 - x0) * plot_w;
    let sy = |y: f64| TOP + (1.0 - (y - y0) / (y1 - y0)) * plot_h;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(s, r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<text x="{}" y="24" text-anchor="middle" font-size="14">{}</text>"#,
        WIDTH / 2.0,
        escape(&axes.title)
    );
    let _ = writeln!(
        s,
        r#"<rect x="{LEFT}" y="{TOP}" width="{plot_w}" height="{plot_h}" fill="none" stroke="black"/>"#
    );
    for i in 0..=TICKS {
        let t = i as f64 / TICKS as f64;
        let (xv, yv) = (x0 + t * (x1 - x0), y0 + t * (y1 - y0));
        let (px, py) = (sx(xv), sy(yv));
        let _ = writeln!(
            s,
            r#"<line x1="{px:.2}" y1="{b:.2}" x2="{px:.2}" y2="{b2:.2}" stroke="black"/><text x="{px:.2}" y="{ty:.2}" text-anchor="middle">{xv:.2}</text>"#,
            b = TOP + plot_h,
            b2 = TOP + plot_h + 5.0,
            ty = TOP + plot_h + 18.0
        );
        let _ = writeln!(
            s,
            r#"<line x1="{l:.2}" y1="{py:.2}" x2="{LEFT:.2}" y2="{py:.2}" stroke="black"/><text x="{tx:.2}" y="{ty:.2}" text-anchor="end">{yv:.3}</text>"#,
            l = LEFT - 5.0,
            tx = LEFT - 8.0,
            ty = py + 4.0
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}" text-anchor="middle">{}</text>"#,
        LEFT + plot_w / 2.0,
        HEIGHT - 15.0,
        escape(&axes.x_label)
    );
    let _ = writeln!(
        s,
        r#"<text x="18" y="{y}" text-anchor="middle" transform="rotate(-90 18 {y})">{}</text>"#,
        escape(&axes.y_label),
        y = TOP + plot_h / 2.0
    );
    if let Some(q) = axes.reference_line {
        let _ = writeln!(
            s,
            r#"<line x1="{LEFT:.2}" y1="{y:.2}" x2="{x2:.2}" y2="{y:.2}" stroke="black" stroke-dasharray="6 4"/>"#,
            y = sy(q),
            x2 = LEFT + plot_w
        );
    }
    for (x, y) in points {
        let _ = writeln!(
            s,
            r#"<circle cx="{:.2}" cy="{:.2}" r="2.5" fill="red" fill-opacity="0.6"/>"#,
            sx(x),
            sy(y)
        );
    }
    s.push_str("</svg>\n");
    out.write_all(s.as_bytes())?;
    Ok(())
}
