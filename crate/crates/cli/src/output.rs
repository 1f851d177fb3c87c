//! CSV, plot-data and SVG renderings of a trajectory.

use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use bevholt::{Scalar, Trajectory};

/// `n,z` rows under a header; exact backends keep `p/q`.
pub fn csv<T: Scalar>(trajectory: &Trajectory<T>) -> String {
    let mut out = String::from("n,z\n");
    for (n, z) in trajectory.values().iter().enumerate() {
        let _ = writeln!(out, "{n},{}", z.render());
    }
    out
}

/// Real part as `f64`, which is what the plots show.
fn plotted<T: Scalar>(z: &T) -> f64 {
    z.to_complex().re
}

/// Two whitespace-separated columns `n z`, real part only.
pub fn plot_data<T: Scalar>(trajectory: &Trajectory<T>) -> String {
    let mut out = String::new();
    for (n, z) in trajectory.values().iter().enumerate() {
        let _ = writeln!(out, "{n} {:?}", plotted(z));
    }
    out
}

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 480.0;
const MARGIN_LEFT: f64 = 80.0;
const MARGIN_RIGHT: f64 = 20.0;
const MARGIN_TOP: f64 = 40.0;
const MARGIN_BOTTOM: f64 = 40.0;

fn strand_colour(j: usize, k: usize) -> String {
    let hue = 360.0 * j as f64 / k as f64;
    format!("hsl({hue:.0},65%,40%)")
}

fn axis_label(x: f64) -> String {
    if x == 0.0 || (1e-3..1e5).contains(&x.abs()) {
        let s = format!("{x:.4}");
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        format!("{x:.3e}")
    }
}

/// `z_n` against `n`, one polyline per strand.
pub fn svg<T: Scalar>(trajectory: &Trajectory<T>, title: &str) -> String {
    let k = trajectory.order();
    let points: Vec<(usize, f64)> = trajectory
        .values()
        .iter()
        .enumerate()
        .map(|(n, z)| (n, plotted(z)))
        .filter(|(_, y)| y.is_finite())
        .collect();
    let x_max = trajectory.len().saturating_sub(1).max(1) as f64;
    let (mut y_min, mut y_max) = points
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &(_, y)| (lo.min(y), hi.max(y)));
    if !y_min.is_finite() {
        (y_min, y_max) = (-1.0, 1.0);
    } else if y_min == y_max {
        (y_min, y_max) = (y_min - 1.0, y_max + 1.0);
    }
    let plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
    let plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;
    let sx = |n: f64| MARGIN_LEFT + plot_w * n / x_max;
    let sy = |y: f64| MARGIN_TOP + plot_h * (y_max - y) / (y_max - y_min);

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        out,
        r#"<text x="{}" y="24" text-anchor="middle" font-size="14">{}</text>"#,
        WIDTH / 2.0,
        escape(title)
    );
    let (x0, x1) = (MARGIN_LEFT, WIDTH - MARGIN_RIGHT);
    let (y0, y1) = (HEIGHT - MARGIN_BOTTOM, MARGIN_TOP);
    let _ = writeln!(
        out,
        r#"<path d="M{x0} {y1} L{x0} {y0} L{x1} {y0}" fill="none" stroke="black"/>"#
    );
    if y_min < 0.0 && y_max > 0.0 {
        let zero = sy(0.0);
        let _ = writeln!(
            out,
            r##"<line x1="{x0}" y1="{zero:.2}" x2="{x1}" y2="{zero:.2}" stroke="#bbb" stroke-dasharray="4 3"/>"##
        );
    }
    let _ = writeln!(out, r#"<text x="{x0}" y="{}" text-anchor="middle">0</text>"#, y0 + 16.0);
    let _ = writeln!(
        out,
        r#"<text x="{x1}" y="{}" text-anchor="middle">{}</text>"#,
        y0 + 16.0,
        x_max
    );
    let _ = writeln!(
        out,
        r#"<text x="{}" y="{}" text-anchor="end">{}</text>"#,
        x0 - 6.0,
        y0,
        axis_label(y_min)
    );
    let _ = writeln!(
        out,
        r#"<text x="{}" y="{}" text-anchor="end">{}</text>"#,
        x0 - 6.0,
        y1 + 10.0,
        axis_label(y_max)
    );
    for j in 0..k {
        let coords: Vec<String> = points
            .iter()
            .filter(|(n, _)| n % k == j)
            .map(|&(n, y)| format!("{:.2},{:.2}", sx(n as f64), sy(y)))
            .collect();
        if coords.is_empty() {
            continue;
        }
        let _ = writeln!(
            out,
            r#"<polyline fill="none" stroke="{}" stroke-width="1.2" points="{}"/>"#,
            strand_colour(j, k),
            coords.join(" ")
        );
    }
    out.push_str("</svg>\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Writes through a temporary sibling and renames it into place.
pub fn write_atomic(path: &Path, contents: &str) -> io::Result<()> {
    let mut tmp = PathBuf::from(path);
    let name = path
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_default();
    tmp.set_file_name(format!(".{name}.tmp"));
    fs::write(&tmp, contents)?;
    fs::rename(&tmp, path)
}
