//! Deterministic artifact writers: summary JSON, sweep CSV, and minimal SVG
//! line charts. No timestamps, no environment-dependent content.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use percept_fusion::io::fmt_g9;
use serde::Serialize;

#[derive(Debug, Serialize)]
pub struct Summary {
    pub schema_version: u32,
    pub command: String,
    pub scenario: String,
    pub seed: u64,
    pub n_reps: u64,
    pub params: BTreeMap<String, f64>,
    pub metrics: BTreeMap<String, f64>,
    pub primary_metric: String,
    pub effect_direction: String,
    /// Set when the scenario encodes a model prediction rather than an
    /// established effect.
    pub model_prediction: bool,
}

pub fn write_text(path: &Path, content: &str) -> std::io::Result<()> {
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent)?;
    }
    fs::write(path, content)
}

pub fn summary_json(summary: &Summary) -> String {
    let mut s = serde_json::to_string_pretty(summary).expect("summary serializes");
    s.push('\n');
    s
}

/// Sweep table: one row per grid cell, metrics in sorted key order.
pub fn sweep_csv(
    scenario: &str,
    axis_names: &[String],
    rows: &[(Vec<f64>, BTreeMap<String, f64>)],
) -> String {
    let metric_names: Vec<&String> = rows
        .first()
        .map(|(_, m)| m.keys().collect())
        .unwrap_or_default();
    let mut out = String::from("scenario");
    for a in axis_names {
        out.push_str(&format!(",{a}"));
    }
    for m in &metric_names {
        out.push_str(&format!(",{m}"));
    }
    out.push('\n');
    for (coords, metrics) in rows {
        out.push_str(scenario);
        for c in coords {
            out.push_str(&format!(",{}", fmt_g9(*c)));
        }
        for m in &metric_names {
            out.push_str(&format!(",{}", fmt_g9(metrics[*m])));
        }
        out.push('\n');
    }
    out
}

/// Minimal line/scatter SVG: one polyline over labelled axes.
pub fn line_chart_svg(title: &str, x_label: &str, y_label: &str, points: &[(f64, f64)]) -> String {
    multi_line_chart_svg(title, x_label, y_label, &[(String::new(), points.to_vec())])
}

const PALETTE: [&str; 6] = ["#1f6fb2", "#b23a1f", "#2c8a4b", "#7a4bb2", "#b2941f", "#1fb2a5"];

/// One polyline per series, palette-cycled, with a small legend when series
/// are named.
pub fn multi_line_chart_svg(
    title: &str,
    x_label: &str,
    y_label: &str,
    series: &[(String, Vec<(f64, f64)>)],
) -> String {
    const W: f64 = 640.0;
    const H: f64 = 400.0;
    const ML: f64 = 70.0;
    const MR: f64 = 20.0;
    const MT: f64 = 40.0;
    const MB: f64 = 50.0;
    let all: Vec<(f64, f64)> = series.iter().flat_map(|(_, pts)| pts.iter().copied()).collect();
    let (x_min, x_max) = bounds(all.iter().map(|p| p.0));
    let (y_min, y_max) = bounds(all.iter().map(|p| p.1));
    let sx = |x: f64| ML + (x - x_min) / (x_max - x_min).max(1e-12) * (W - ML - MR);
    let sy = |y: f64| H - MB - (y - y_min) / (y_max - y_min).max(1e-12) * (H - MT - MB);
    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {W} {H}\" font-family=\"monospace\" font-size=\"12\">\n"
    ));
    svg.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    svg.push_str(&format!(
        "<text x=\"{:.1}\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">{}</text>\n",
        W / 2.0,
        xml_escape(title)
    ));
    // Axes.
    svg.push_str(&format!(
        "<line x1=\"{ML}\" y1=\"{MT}\" x2=\"{ML}\" y2=\"{:.1}\" stroke=\"black\"/>\n",
        H - MB
    ));
    svg.push_str(&format!(
        "<line x1=\"{ML}\" y1=\"{:.1}\" x2=\"{:.1}\" y2=\"{:.1}\" stroke=\"black\"/>\n",
        H - MB,
        W - MR,
        H - MB
    ));
    // Extremal tick labels.
    svg.push_str(&format!(
        "<text x=\"{ML}\" y=\"{:.1}\" text-anchor=\"middle\">{:.3}</text>\n",
        H - MB + 18.0,
        x_min
    ));
    svg.push_str(&format!(
        "<text x=\"{:.1}\" y=\"{:.1}\" text-anchor=\"middle\">{:.3}</text>\n",
        W - MR,
        H - MB + 18.0,
        x_max
    ));
    svg.push_str(&format!(
        "<text x=\"{:.1}\" y=\"{:.1}\" text-anchor=\"end\">{:.3}</text>\n",
        ML - 6.0,
        H - MB,
        y_min
    ));
    svg.push_str(&format!(
        "<text x=\"{:.1}\" y=\"{:.1}\" text-anchor=\"end\">{:.3}</text>\n",
        ML - 6.0,
        MT + 4.0,
        y_max
    ));
    svg.push_str(&format!(
        "<text x=\"{:.1}\" y=\"{:.1}\" text-anchor=\"middle\">{}</text>\n",
        (W + ML - MR) / 2.0,
        H - 12.0,
        xml_escape(x_label)
    ));
    svg.push_str(&format!(
        "<text x=\"16\" y=\"{:.1}\" text-anchor=\"middle\" transform=\"rotate(-90 16 {:.1})\">{}</text>\n",
        (H + MT - MB) / 2.0,
        (H + MT - MB) / 2.0,
        xml_escape(y_label)
    ));
    for (si, (label, points)) in series.iter().enumerate() {
        let color = PALETTE[si % PALETTE.len()];
        let coords: Vec<String> = points
            .iter()
            .map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y)))
            .collect();
        svg.push_str(&format!(
            "<polyline fill=\"none\" stroke=\"{color}\" stroke-width=\"2\" points=\"{}\"/>\n",
            coords.join(" ")
        ));
        for &(x, y) in points {
            svg.push_str(&format!(
                "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"3\" fill=\"{color}\"/>\n",
                sx(x),
                sy(y)
            ));
        }
        if !label.is_empty() {
            let ly = MT + 14.0 * si as f64;
            svg.push_str(&format!(
                "<text x=\"{:.1}\" y=\"{ly:.1}\" fill=\"{color}\">{}</text>\n",
                W - MR - 150.0,
                xml_escape(label)
            ));
        }
    }
    svg.push_str("</svg>\n");
    svg
}

fn bounds(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for v in values {
        lo = lo.min(v);
        hi = hi.max(v);
    }
    if !lo.is_finite() || !hi.is_finite() {
        (0.0, 1.0)
    } else if lo == hi {
        (lo - 0.5, hi + 0.5)
    } else {
        (lo, hi)
    }
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
