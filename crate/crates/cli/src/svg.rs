//! Minimal hand-written SVG charts.

use std::fmt::Write as _;

use ogp_core::experiments::{OverlapHistogram, ScalingFitResult};

const W: f64 = 640.0;
const H: f64 = 360.0;
const LEFT: f64 = 60.0;
const RIGHT: f64 = 20.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 50.0;

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn frame(title: &str, x_label: &str, y_label: &str) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(s, r#"<rect width="{W}" height="{H}" fill="white"/>"#);
    let _ = writeln!(s, r#"<text x="{}" y="22" text-anchor="middle" font-size="14">{}</text>"#, W / 2.0, escape(title));
    let _ = writeln!(
        s,
        r#"<line x1="{LEFT}" y1="{}" x2="{}" y2="{}" stroke="black"/>"#,
        H - BOTTOM,
        W - RIGHT,
        H - BOTTOM
    );
    let _ = writeln!(s, r#"<line x1="{LEFT}" y1="{TOP}" x2="{LEFT}" y2="{}" stroke="black"/>"#, H - BOTTOM);
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}" text-anchor="middle">{}</text>"#,
        (LEFT + W - RIGHT) / 2.0,
        H - 12.0,
        escape(x_label)
    );
    let _ = writeln!(
        s,
        r#"<text x="16" y="{}" text-anchor="middle" transform="rotate(-90 16 {})">{}</text>"#,
        (TOP + H - BOTTOM) / 2.0,
        (TOP + H - BOTTOM) / 2.0,
        escape(y_label)
    );
    s
}

fn tick_x(s: &mut String, x: f64, label: &str) {
    let _ = writeln!(s, r#"<line x1="{x:.2}" y1="{}" x2="{x:.2}" y2="{}" stroke="black"/>"#, H - BOTTOM, H - BOTTOM + 4.0);
    let _ = writeln!(s, r#"<text x="{x:.2}" y="{}" text-anchor="middle">{label}</text>"#, H - BOTTOM + 16.0);
}

fn tick_y(s: &mut String, y: f64, label: &str) {
    let _ = writeln!(s, r#"<line x1="{}" y1="{y:.2}" x2="{LEFT}" y2="{y:.2}" stroke="black"/>"#, LEFT - 4.0);
    let _ = writeln!(s, r#"<text x="{}" y="{:.2}" text-anchor="end">{label}</text>"#, LEFT - 6.0, y + 4.0);
}

/// Bar chart of an overlap histogram; a gap candidate is shaded.
pub fn histogram(hist: &OverlapHistogram) -> String {
    let p = &hist.provenance;
    let title = format!("overlaps, {} θ={} {} ({} pairs)", p.instance, p.theta, p.sampler, hist.samples);
    let mut s = frame(&title, "overlap |I1 ∩ I2| / n", "pairs");
    let plot_w = W - LEFT - RIGHT;
    let plot_h = H - TOP - BOTTOM;
    let x = |v: f64| LEFT + v * plot_w;
    let max = hist.counts.iter().copied().max().unwrap_or(0).max(1) as f64;
    if let Some((a, b)) = hist.gap {
        let _ = writeln!(
            s,
            r##"<rect x="{:.2}" y="{TOP}" width="{:.2}" height="{plot_h}" fill="#fde2e2"/>"##,
            x(a),
            x(b) - x(a)
        );
    }
    for (lo, hi, c) in hist.bars() {
        if c == 0 {
            continue;
        }
        let h = c as f64 / max * plot_h;
        let _ = writeln!(
            s,
            r##"<rect x="{:.2}" y="{:.2}" width="{:.2}" height="{h:.2}" fill="#4a7ab7"><title>[{lo}, {hi}): {c}</title></rect>"##,
            x(lo),
            H - BOTTOM - h,
            (x(hi) - x(lo)).max(1.0),
        );
    }
    for v in [0.0, 0.25, 0.5, 0.75, 1.0] {
        tick_x(&mut s, x(v), &v.to_string());
    }
    tick_y(&mut s, TOP, &format!("{}", max as u64));
    tick_y(&mut s, H - BOTTOM, "0");
    if hist.insufficient_yield {
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{}" text-anchor="middle">insufficient yield: fewer than two θ-optimal samples</text>"#,
            W / 2.0,
            H / 2.0
        );
    }
    s.push_str("</svg>\n");
    s
}

/// Scatter of `cut/n - d/(2K)` against `sqrt(d)` with error bars and the
/// fitted line.
pub fn scaling(fit: &ScalingFitResult) -> String {
    let title = format!("cut/n - d/(2K), K={}; fit slope {:.4} ± {:.4}", fit.k, fit.gamma, fit.gamma_se);
    let mut s = frame(&title, "sqrt(d)", "cut/n - d/(2K)");
    let pts: Vec<(f64, f64, f64)> = fit
        .points
        .iter()
        .map(|p| (p.d.sqrt(), p.mean - p.d / (2.0 * fit.k as f64), p.stderr))
        .collect();
    let line = |x: f64| fit.intercept + fit.gamma * x;
    let xmax = pts.iter().map(|p| p.0).fold(0.0, f64::max) * 1.1;
    let mut ys: Vec<f64> = pts.iter().flat_map(|p| [p.1 - p.2, p.1 + p.2]).collect();
    ys.extend([0.0, line(0.0), line(xmax)]);
    let (ymin, ymax) = ys.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &y| (a.min(y), b.max(y)));
    let span = (ymax - ymin).max(1e-9);
    let (ymin, ymax) = (ymin - 0.05 * span, ymax + 0.05 * span);
    let plot_w = W - LEFT - RIGHT;
    let plot_h = H - TOP - BOTTOM;
    let px = |x: f64| LEFT + x / xmax.max(1e-9) * plot_w;
    let py = |y: f64| H - BOTTOM - (y - ymin) / (ymax - ymin) * plot_h;
    let _ = writeln!(
        s,
        r##"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="#c0392b"/>"##,
        px(0.0),
        py(line(0.0)),
        px(xmax),
        py(line(xmax))
    );
    for &(x, y, se) in &pts {
        let _ = writeln!(
            s,
            r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="black"/>"#,
            px(x),
            py(y - se),
            px(x),
            py(y + se)
        );
        let _ = writeln!(s, r##"<circle cx="{:.2}" cy="{:.2}" r="4" fill="#4a7ab7"/>"##, px(x), py(y));
        tick_x(&mut s, px(x), &format!("{x:.2}"));
    }
    tick_y(&mut s, py(ymin), &format!("{ymin:.3}"));
    tick_y(&mut s, py(ymax), &format!("{ymax:.3}"));
    s.push_str("</svg>\n");
    s
}
