use std::fmt::Write as _;

use super::report::{Figure, RunReport};

const SIZE: f64 = 600.0;
const MARGIN: f64 = 30.0;
const COLORS: [&str; 4] = ["#d62728", "#2ca02c", "#1f77b4", "#9467bd"];
const NEUTRAL: &str = "#7f7f7f";

fn color(class: Option<usize>) -> &'static str {
    class.map_or(NEUTRAL, |c| COLORS[c % COLORS.len()])
}

/// SVG 1.1 drawing of a report's figure: bodies, points colored by part,
/// the query, labelled lines and projection images. A report without a
/// figure gives an empty canvas with the operation name.
pub fn render_svg(report: &RunReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(out, r#"<title>{}</title>"#, escape(&report.operation));
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    if let Some(fig) = &report.figure {
        draw(&mut out, fig);
    }
    out.push_str("</svg>\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

struct View {
    lo: [f64; 2],
    scale: f64,
}

impl View {
    fn of(fig: &Figure) -> Option<Self> {
        let all = fig
            .points
            .iter()
            .chain(fig.query.iter())
            .chain(fig.images.iter().map(|i| &i.at))
            .chain(fig.bodies.iter().flatten())
            .filter(|p| p[0].is_finite() && p[1].is_finite());
        let (mut lo, mut hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
        for p in all {
            for j in 0..2 {
                lo[j] = lo[j].min(p[j]);
                hi[j] = hi[j].max(p[j]);
            }
        }
        if !lo[0].is_finite() {
            return None;
        }
        let span = (hi[0] - lo[0]).max(hi[1] - lo[1]).max(1e-9);
        Some(View {
            lo: [lo[0] - 0.05 * span, lo[1] - 0.05 * span],
            scale: (SIZE - 2.0 * MARGIN) / (1.1 * span),
        })
    }

    fn map(&self, p: [f64; 2]) -> (f64, f64) {
        (
            MARGIN + (p[0] - self.lo[0]) * self.scale,
            SIZE - MARGIN - (p[1] - self.lo[1]) * self.scale,
        )
    }
}

fn draw(out: &mut String, fig: &Figure) {
    let Some(v) = View::of(fig) else { return };
    let _ = writeln!(
        out,
        r#"<g id="bodies" fill-opacity="0.15" stroke-width="1">"#
    );
    for (i, body) in fig.bodies.iter().enumerate() {
        let c = color(fig.body_classes.get(i).copied().flatten());
        let pts: Vec<String> = body
            .iter()
            .map(|&p| {
                let (x, y) = v.map(p);
                format!("{x:.3},{y:.3}")
            })
            .collect();
        let _ = writeln!(
            out,
            r#"<polygon points="{}" fill="{c}" stroke="{c}"/>"#,
            pts.join(" ")
        );
    }
    out.push_str("</g>\n");

    let _ = writeln!(out, r#"<g id="lines" stroke-width="1.2" fill="none">"#);
    let reach = 4.0 * SIZE / v.scale;
    for (k, l) in fig.lines.iter().enumerate() {
        let norm = l.direction[0].hypot(l.direction[1]);
        if norm == 0.0 || !norm.is_finite() {
            continue;
        }
        let d = [l.direction[0] / norm * reach, l.direction[1] / norm * reach];
        let (x1, y1) = v.map([l.point[0] - d[0], l.point[1] - d[1]]);
        let (x2, y2) = v.map([l.point[0] + d[0], l.point[1] + d[1]]);
        let dash = if k == 0 {
            ""
        } else {
            r#" stroke-dasharray="6 3""#
        };
        let _ = writeln!(
            out,
            r#"<line x1="{x1:.3}" y1="{y1:.3}" x2="{x2:.3}" y2="{y2:.3}" stroke="black"{dash}><title>{}</title></line>"#,
            escape(&l.label)
        );
    }
    out.push_str("</g>\n");

    let _ = writeln!(out, r#"<g id="images">"#);
    for img in &fig.images {
        let (x, y) = v.map(img.at);
        let c = color(img.class);
        let fill = if img.up { "white" } else { c };
        let _ = writeln!(
            out,
            r#"<rect x="{:.3}" y="{:.3}" width="6" height="6" fill="{fill}" stroke="{c}"/>"#,
            x - 3.0,
            y - 3.0
        );
    }
    out.push_str("</g>\n");

    let _ = writeln!(out, r#"<g id="points" stroke="black" stroke-width="0.5">"#);
    for (i, &p) in fig.points.iter().enumerate() {
        let (x, y) = v.map(p);
        let c = color(fig.classes.get(i).copied().flatten());
        let _ = writeln!(out, r#"<circle cx="{x:.3}" cy="{y:.3}" r="4" fill="{c}"/>"#);
    }
    out.push_str("</g>\n");

    if let Some(q) = fig.query {
        let (x, y) = v.map(q);
        let _ = writeln!(
            out,
            r#"<g id="query" stroke="black" stroke-width="2"><line x1="{:.3}" y1="{y:.3}" x2="{:.3}" y2="{y:.3}"/><line x1="{x:.3}" y1="{:.3}" x2="{x:.3}" y2="{:.3}"/></g>"#,
            x - 7.0,
            x + 7.0,
            y - 7.0,
            y + 7.0
        );
    }
}
