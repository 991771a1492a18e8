//! Hand-written SVG: a heatmap over the `(alpha, beta)` grid with the
//! regime curve `d = 1/4`, and a single-curve line plot.

use std::f64::consts::FRAC_PI_6;
use std::fmt::Write;

use crate::table::fmt_num;

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 520.0;
const X0: f64 = 80.0;
const Y0: f64 = 50.0;
const PW: f64 = 520.0;
const PH: f64 = 400.0;

/// Viridis anchor colors, dark to light.
const STOPS: [(f64, f64, f64); 5] = [
    (68.0, 1.0, 84.0),
    (59.0, 82.0, 139.0),
    (33.0, 145.0, 140.0),
    (94.0, 201.0, 98.0),
    (253.0, 231.0, 37.0),
];

/// Color for `t in [0, 1]`; luminance increases with `t`.
pub fn color(t: f64) -> String {
    let t = t.clamp(0.0, 1.0) * (STOPS.len() - 1) as f64;
    let i = (t.floor() as usize).min(STOPS.len() - 2);
    let f = t - i as f64;
    let (a, b) = (STOPS[i], STOPS[i + 1]);
    let mix = |x: f64, y: f64| (x + (y - x) * f).round() as u8;
    format!("#{:02x}{:02x}{:02x}", mix(a.0, b.0), mix(a.1, b.1), mix(a.2, b.2))
}

/// `beta` on the curve `d = 1/4` for `|alpha| <= pi/6`.
pub fn regime_curve_beta(alpha: f64) -> Option<f64> {
    let s = alpha.sin();
    let rem = 0.25 - s * s;
    (rem >= -1e-15).then(|| rem.max(0.0).sqrt() / alpha.cos())
}

fn header(out: &mut String, title: &str) {
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(out, r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
    let _ = writeln!(
        out,
        r#"<text x="{}" y="28" text-anchor="middle" font-size="16">{}</text>"#,
        X0 + PW / 2.0,
        escape(title)
    );
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn axis_labels(out: &mut String, x: (&str, f64, f64), y: (&str, f64, f64)) {
    let _ = writeln!(
        out,
        r#"<rect x="{X0}" y="{Y0}" width="{PW}" height="{PH}" fill="none" stroke="black"/>"#
    );
    let yb = Y0 + PH;
    let _ = writeln!(out, r#"<text x="{X0}" y="{}" text-anchor="start">{}</text>"#, yb + 18.0, fmt_short(x.1));
    let _ = writeln!(out, r#"<text x="{}" y="{}" text-anchor="end">{}</text>"#, X0 + PW, yb + 18.0, fmt_short(x.2));
    let _ = writeln!(out, r#"<text x="{}" y="{}" text-anchor="middle">{}</text>"#, X0 + PW / 2.0, yb + 36.0, x.0);
    let _ = writeln!(out, r#"<text x="{}" y="{yb}" text-anchor="end">{}</text>"#, X0 - 6.0, fmt_short(y.1));
    let _ = writeln!(out, r#"<text x="{}" y="{}" text-anchor="end">{}</text>"#, X0 - 6.0, Y0 + 10.0, fmt_short(y.2));
    let _ = writeln!(
        out,
        r#"<text x="20" y="{}" text-anchor="middle" transform="rotate(-90 20 {})">{}</text>"#,
        Y0 + PH / 2.0,
        Y0 + PH / 2.0,
        y.0
    );
}

fn fmt_short(x: f64) -> String {
    format!("{x:.4}").trim_end_matches('0').trim_end_matches('.').to_string()
}

/// Heatmap of `values` (alpha-major, `alphas.len() x betas.len()`) with the
/// regime curve overlaid. Assumes evenly spaced, increasing axes.
pub fn heatmap(alphas: &[f64], betas: &[f64], values: &[f64], title: &str) -> String {
    let mut out = String::new();
    header(&mut out, title);
    if alphas.is_empty() || betas.is_empty() {
        let _ = writeln!(out, r#"<text x="{}" y="{}" text-anchor="middle">no data</text>"#, X0 + PW / 2.0, Y0 + PH / 2.0);
        out.push_str("</svg>\n");
        return out;
    }
    let (na, nb) = (alphas.len(), betas.len());
    let (cw, ch) = (PW / na as f64, PH / nb as f64);
    let finite = values.iter().copied().filter(|v| v.is_finite());
    let lo = finite.clone().fold(f64::INFINITY, f64::min);
    let hi = finite.fold(f64::NEG_INFINITY, f64::max);
    let scale = |v: f64| if hi > lo { (v - lo) / (hi - lo) } else { 0.5 };

    let _ = writeln!(out, r#"<g shape-rendering="crispEdges">"#);
    for i in 0..na {
        for j in 0..nb {
            let v = values[i * nb + j];
            let fill = if v.is_finite() { color(scale(v)) } else { "#bbbbbb".to_string() };
            let _ = writeln!(
                out,
                r#"<rect x="{:.2}" y="{:.2}" width="{:.2}" height="{:.2}" fill="{fill}"/>"#,
                X0 + i as f64 * cw,
                Y0 + PH - (j + 1) as f64 * ch,
                cw + 0.01,
                ch + 0.01
            );
        }
    }
    let _ = writeln!(out, "</g>");

    // data -> pixel, cell centers at the grid values
    let da = if na > 1 { alphas[1] - alphas[0] } else { 1.0 };
    let db = if nb > 1 { betas[1] - betas[0] } else { 1.0 };
    let px = |a: f64| X0 + ((a - alphas[0]) / da + 0.5) * cw;
    let py = |b: f64| Y0 + PH - ((b - betas[0]) / db + 0.5) * ch;
    let pts: Vec<String> = (0..=200)
        .filter_map(|k| {
            let a = -FRAC_PI_6 + 2.0 * FRAC_PI_6 * k as f64 / 200.0;
            regime_curve_beta(a).map(|b| format!("{:.2},{:.2}", px(a), py(b)))
        })
        .collect();
    let _ = writeln!(
        out,
        r#"<clipPath id="plot"><rect x="{X0}" y="{Y0}" width="{PW}" height="{PH}"/></clipPath>"#
    );
    let _ = writeln!(
        out,
        r#"<polyline id="regime-curve" clip-path="url(#plot)" fill="none" stroke="white" stroke-width="2" stroke-dasharray="6 3" points="{}"/>"#,
        pts.join(" ")
    );

    axis_labels(
        &mut out,
        ("alpha (rad)", alphas[0], alphas[na - 1]),
        ("beta", betas[0], betas[nb - 1]),
    );

    // color bar
    let bx = X0 + PW + 30.0;
    for k in 0..50 {
        let t = k as f64 / 49.0;
        let _ = writeln!(
            out,
            r#"<rect x="{bx}" y="{:.2}" width="18" height="{:.2}" fill="{}"/>"#,
            Y0 + PH - (k + 1) as f64 * PH / 50.0,
            PH / 50.0 + 0.01,
            color(t)
        );
    }
    let _ = writeln!(out, r#"<text x="{}" y="{}">{}</text>"#, bx + 22.0, Y0 + PH, fmt_num(lo));
    let _ = writeln!(out, r#"<text x="{}" y="{}">{}</text>"#, bx + 22.0, Y0 + 10.0, fmt_num(hi));
    out.push_str("</svg>\n");
    out
}

/// Line plot of `(x, y)` points, with an optional dashed horizontal level.
pub fn line_plot(points: &[(f64, f64)], level: Option<f64>, title: &str) -> String {
    let mut out = String::new();
    header(&mut out, title);
    let xmax = points.iter().map(|p| p.0).fold(0.0, f64::max).max(1e-12);
    let ymax = points
        .iter()
        .map(|p| p.1)
        .chain(level)
        .filter(|v| v.is_finite())
        .fold(0.0, f64::max)
        .max(1e-12)
        * 1.05;
    let px = |x: f64| X0 + x / xmax * PW;
    let py = |y: f64| Y0 + PH - y / ymax * PH;
    let pts: Vec<String> = points
        .iter()
        .filter(|p| p.1.is_finite())
        .map(|&(x, y)| format!("{:.2},{:.2}", px(x), py(y)))
        .collect();
    if let Some(l) = level {
        let _ = writeln!(
            out,
            r#"<line id="level" x1="{X0}" x2="{}" y1="{:.2}" y2="{:.2}" stroke="gray" stroke-dasharray="6 3"/>"#,
            X0 + PW,
            py(l),
            py(l)
        );
        let _ = writeln!(out, r#"<text x="{}" y="{:.2}">{}</text>"#, X0 + PW + 6.0, py(l) + 4.0, fmt_num(l));
    }
    let _ = writeln!(
        out,
        r#"<polyline id="profile" fill="none" stroke="rgb(33,145,140)" stroke-width="2" points="{}"/>"#,
        pts.join(" ")
    );
    axis_labels(&mut out, ("r", 0.0, xmax), ("weighted modulus", 0.0, ymax));
    out.push_str("</svg>\n");
    out
}
