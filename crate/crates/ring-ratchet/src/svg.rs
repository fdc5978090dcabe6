//! Minimal native SVG rendering: polyline plots for time series and scatter
//! plots for portraits. CSV is the authoritative output; these exist so a
//! run can be eyeballed without external tooling.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::Result;

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 500.0;
const MARGIN: f64 = 55.0;

struct Frame {
    x_min: f64,
    x_max: f64,
    y_min: f64,
    y_max: f64,
}

impl Frame {
    fn from_data(xs: &[f64], ys: &[f64]) -> Frame {
        let (mut x_min, mut x_max) = (f64::INFINITY, f64::NEG_INFINITY);
        let (mut y_min, mut y_max) = (f64::INFINITY, f64::NEG_INFINITY);
        for &x in xs {
            x_min = x_min.min(x);
            x_max = x_max.max(x);
        }
        for &y in ys {
            y_min = y_min.min(y);
            y_max = y_max.max(y);
        }
        // negated comparisons double as NaN guards
        #[allow(clippy::neg_cmp_op_on_partial_ord)]
        if !(x_min < x_max) {
            x_max = x_min + 1.0;
        }
        #[allow(clippy::neg_cmp_op_on_partial_ord)]
        if !(y_min < y_max) {
            y_min -= 0.5;
            y_max += 0.5;
        }
        Frame {
            x_min,
            x_max,
            y_min,
            y_max,
        }
    }

    fn px(&self, x: f64) -> f64 {
        MARGIN + (x - self.x_min) / (self.x_max - self.x_min) * (WIDTH - 2.0 * MARGIN)
    }

    fn py(&self, y: f64) -> f64 {
        HEIGHT - MARGIN - (y - self.y_min) / (self.y_max - self.y_min) * (HEIGHT - 2.0 * MARGIN)
    }
}

fn document_open(title: &str, x_label: &str, y_label: &str, frame: &Frame) -> String {
    let mut s = String::new();
    let _ = write!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" \
         viewBox=\"0 0 {WIDTH} {HEIGHT}\">\n\
         <rect width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"white\"/>\n\
         <text x=\"{tx}\" y=\"24\" text-anchor=\"middle\" font-size=\"16\" \
         font-family=\"sans-serif\">{title}</text>\n",
        tx = WIDTH / 2.0
    );
    // axes box and labels
    let _ = write!(
        s,
        "<rect x=\"{m}\" y=\"{m}\" width=\"{w}\" height=\"{h}\" fill=\"none\" \
         stroke=\"black\" stroke-width=\"1\"/>\n\
         <text x=\"{tx}\" y=\"{by}\" text-anchor=\"middle\" font-size=\"13\" \
         font-family=\"sans-serif\">{x_label}</text>\n\
         <text x=\"16\" y=\"{my}\" text-anchor=\"middle\" font-size=\"13\" \
         font-family=\"sans-serif\" transform=\"rotate(-90 16 {my})\">{y_label}</text>\n",
        m = MARGIN,
        w = WIDTH - 2.0 * MARGIN,
        h = HEIGHT - 2.0 * MARGIN,
        tx = WIDTH / 2.0,
        by = HEIGHT - 14.0,
        my = HEIGHT / 2.0,
    );
    for (value, label_fmt) in [
        (frame.x_min, frame.px(frame.x_min)),
        (frame.x_max, frame.px(frame.x_max)),
    ] {
        let _ = writeln!(
            s,
            "<text x=\"{label_fmt}\" y=\"{y}\" text-anchor=\"middle\" font-size=\"11\" \
             font-family=\"sans-serif\">{value:.4}</text>",
            y = HEIGHT - MARGIN + 18.0
        );
    }
    for (value, py) in [
        (frame.y_min, frame.py(frame.y_min)),
        (frame.y_max, frame.py(frame.y_max)),
    ] {
        let _ = writeln!(
            s,
            "<text x=\"{x}\" y=\"{py}\" text-anchor=\"end\" font-size=\"11\" \
             font-family=\"sans-serif\">{value:.4}</text>",
            x = MARGIN - 6.0
        );
    }
    s
}

const SERIES_COLORS: [&str; 4] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd"];

/// Write a polyline plot of one or more named series sharing an x axis.
pub fn line_plot(
    path: &Path,
    title: &str,
    x_label: &str,
    y_label: &str,
    xs: &[f64],
    series: &[(&str, &[f64])],
) -> Result<()> {
    let all_y: Vec<f64> = series
        .iter()
        .flat_map(|(_, ys)| ys.iter().copied())
        .collect();
    let frame = Frame::from_data(xs, &all_y);
    let mut s = document_open(title, x_label, y_label, &frame);
    for (i, (name, ys)) in series.iter().enumerate() {
        let color = SERIES_COLORS[i % SERIES_COLORS.len()];
        let mut points = String::new();
        // cap the polyline at ~4000 vertices; finer detail is in the CSV
        let stride = (xs.len() / 4000).max(1);
        for (j, (&x, &y)) in xs.iter().zip(ys.iter()).enumerate() {
            if j % stride == 0 && y.is_finite() {
                let _ = write!(points, "{:.2},{:.2} ", frame.px(x), frame.py(y));
            }
        }
        let _ = write!(
            s,
            "<polyline points=\"{points}\" fill=\"none\" stroke=\"{color}\" \
             stroke-width=\"1.2\"/>\n\
             <text x=\"{lx}\" y=\"{ly}\" font-size=\"12\" font-family=\"sans-serif\" \
             fill=\"{color}\">{name}</text>\n",
            lx = MARGIN + 8.0,
            ly = MARGIN + 16.0 + 15.0 * i as f64,
        );
    }
    s.push_str("</svg>\n");
    std::fs::write(path, s)?;
    Ok(())
}

/// Write a scatter plot of (x, y) points.
pub fn scatter_plot(
    path: &Path,
    title: &str,
    x_label: &str,
    y_label: &str,
    points: &[(f64, f64)],
) -> Result<()> {
    let xs: Vec<f64> = points.iter().map(|p| p.0).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.1).collect();
    let frame = Frame::from_data(&xs, &ys);
    let mut s = document_open(title, x_label, y_label, &frame);
    let stride = (points.len() / 20_000).max(1);
    for (i, &(x, y)) in points.iter().enumerate() {
        if i % stride == 0 {
            let _ = writeln!(
                s,
                "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"1.2\" fill=\"#1f77b4\"/>",
                frame.px(x),
                frame.py(y)
            );
        }
    }
    s.push_str("</svg>\n");
    std::fs::write(path, s)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn line_plot_writes_valid_svg() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("plot.svg");
        let xs: Vec<f64> = (0..100).map(|i| i as f64).collect();
        let ys: Vec<f64> = xs.iter().map(|x| (x * 0.1).sin()).collect();
        line_plot(&path, "test", "t", "I", &xs, &[("current", &ys)]).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert!(text.starts_with("<svg"));
        assert!(text.contains("<polyline"));
        assert!(text.trim_end().ends_with("</svg>"));
    }

    #[test]
    fn scatter_plot_writes_points() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("scatter.svg");
        scatter_plot(&path, "t", "x", "y", &[(0.0, 1.0), (1.0, 2.0)]).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert!(text.contains("<circle"));
    }
}
