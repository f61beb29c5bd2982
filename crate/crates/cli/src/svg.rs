//! Static SVG bar charts.

use std::fmt::Write;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 320.0;
const MARGIN: f64 = 40.0;

/// Vertical bars at labelled positions, scaled to the largest value.
pub fn bar_chart(title: &str, x_label: &str, bars: &[(f64, f64)]) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(out, r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
    let _ = writeln!(
        out,
        r#"<text x="{}" y="20" text-anchor="middle" font-family="sans-serif" font-size="14">{}</text>"#,
        WIDTH / 2.0,
        escape(title)
    );
    let base = HEIGHT - MARGIN;
    let _ = writeln!(
        out,
        r#"<line x1="{MARGIN}" y1="{base}" x2="{}" y2="{base}" stroke="black"/>"#,
        WIDTH - MARGIN
    );
    let _ = writeln!(
        out,
        r#"<text x="{}" y="{}" text-anchor="middle" font-family="sans-serif" font-size="12">{}</text>"#,
        WIDTH / 2.0,
        HEIGHT - 8.0,
        escape(x_label)
    );
    if !bars.is_empty() {
        let (lo, hi) = bars
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), (x, _)| (lo.min(*x), hi.max(*x)));
        let top = bars.iter().map(|(_, v)| *v).fold(0.0, f64::max);
        let span = (hi - lo).max(1.0);
        let inner = WIDTH - 2.0 * MARGIN;
        let bar_w = (inner / bars.len() as f64 * 0.8).max(1.0);
        for (x, v) in bars {
            let cx = MARGIN + (x - lo) / span * (inner - bar_w) + bar_w / 2.0;
            let h = if top > 0.0 { v / top * (base - MARGIN) } else { 0.0 };
            let _ = writeln!(
                out,
                r#"<rect x="{:.3}" y="{:.3}" width="{:.3}" height="{:.3}" fill="steelblue"><title>{x}: {v:e}</title></rect>"#,
                cx - bar_w / 2.0,
                base - h,
                bar_w,
                h
            );
        }
        for x in [lo, hi] {
            let cx = MARGIN + (x - lo) / span * (inner - bar_w) + bar_w / 2.0;
            let _ = writeln!(
                out,
                r#"<text x="{cx:.3}" y="{}" text-anchor="middle" font-family="sans-serif" font-size="10">{x}</text>"#,
                base + 14.0
            );
        }
    }
    out.push_str("</svg>\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
