//! Deterministic CSV/JSON/SVG rendering of results.
//!
//! All emitters are pure functions from data to bytes: numbers are printed
//! with fixed formatting, map keys are sorted, and nothing consults clocks,
//! locales, or randomness, so identical inputs give byte-identical artifacts.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::spectrum::Spectrum;
use crate::sweep::{MSeriesPoint, PopcountStudy, ScalingStudy, SweepResult};

/// Renders a readout distribution as CSV rows `(bin, bitstring, probability)`.
pub fn distribution_csv(probs: &[f64]) -> Result<String> {
    if !probs.len().is_power_of_two() || probs.len() < 2 {
        return Err(Error::InvalidArgument(format!(
            "distribution length {} is not a power of two",
            probs.len()
        )));
    }
    let bits = probs.len().trailing_zeros() as usize;
    let mut out = String::from("# format_version=1\nbin,bitstring,probability\n");
    for (bin, p) in probs.iter().enumerate() {
        out.push_str(&format!("{bin},{bin:0bits$b},{p:.17e}\n", bits = bits));
    }
    Ok(out)
}

/// JSON summary of a sweep (per-phase rows live in the CSV, not here).
pub fn sweep_summary(result: &SweepResult) -> Value {
    json!({
        "format_version": 1,
        "points": result.per_phase.len(),
        "min_success": result.min_success,
        "mean_success": result.mean_success,
        "std_success": result.std_success,
        "max_failure": result.max_failure,
        "log10_max_failure": if result.max_failure > 0.0 {
            Value::from(result.max_failure.log10())
        } else {
            Value::Null
        },
        "precision_limited": result.precision_limited,
    })
}

/// JSON summary of a padding-scaling study, fits included.
pub fn scaling_summary(study: &ScalingStudy) -> Value {
    let points: Vec<Value> = study
        .points
        .iter()
        .map(|row| {
            json!({
                "padding": row.padding,
                "alpha": row.alpha,
                "max_failure": row.max_failure,
                "min_success": row.min_success,
                "precision_limited": row.precision_limited,
                "query_cost": row.query_cost,
            })
        })
        .collect();
    let fit_json = |fit: &crate::sweep::ScalingFit| {
        json!({
            "model": fit.model.name(),
            "intercept": fit.intercept,
            "slope": fit.slope,
            "residual_norm": fit.residual_norm,
        })
    };
    json!({
        "format_version": 1,
        "window": study.window.name(),
        "num_bits": study.num_bits,
        "points": points,
        "log_fit": study.log_fit.as_ref().map(fit_json),
        "loglog_fit": study.loglog_fit.as_ref().map(fit_json),
    })
}

/// JSON summary of a register-size series.
pub fn m_series_summary(points: &[MSeriesPoint]) -> Value {
    let rows: Vec<Value> = points
        .iter()
        .map(|pt| {
            json!({
                "num_bits": pt.num_bits,
                "mean_success": pt.mean_success,
                "std_success": pt.std_success,
                "min_success": pt.min_success,
            })
        })
        .collect();
    json!({ "format_version": 1, "points": rows })
}

/// JSON summary of a bit-pattern bias study.
pub fn popcount_summary(study: &PopcountStudy) -> Value {
    json!({
        "format_version": 1,
        "values": study.rows.len(),
        "spearman_popcount_failure": study.spearman,
    })
}

/// Serializes a JSON value with sorted keys and trailing newline.
pub fn json_bytes(value: &Value) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("valid JSON value");
    text.push('\n');
    text
}

// ---------------------------------------------------------------------------
// SVG rendering
// ---------------------------------------------------------------------------

const PLOT_COLORS: [&str; 6] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf",
];

fn fmt(v: f64) -> String {
    format!("{v:.3}")
}

/// Minimal deterministic SVG surface.
pub struct SvgCanvas {
    width: f64,
    height: f64,
    body: String,
}

impl SvgCanvas {
    pub fn new(width: f64, height: f64) -> Self {
        Self {
            width,
            height,
            body: String::new(),
        }
    }

    pub fn line(&mut self, x1: f64, y1: f64, x2: f64, y2: f64, stroke: &str, width: f64) {
        self.body.push_str(&format!(
            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{stroke}\" stroke-width=\"{}\"/>\n",
            fmt(x1), fmt(y1), fmt(x2), fmt(y2), fmt(width)
        ));
    }

    pub fn polyline(&mut self, pts: &[(f64, f64)], stroke: &str, width: f64) {
        let coords: Vec<String> = pts
            .iter()
            .map(|&(x, y)| format!("{},{}", fmt(x), fmt(y)))
            .collect();
        self.body.push_str(&format!(
            "<polyline points=\"{}\" fill=\"none\" stroke=\"{stroke}\" stroke-width=\"{}\"/>\n",
            coords.join(" "),
            fmt(width)
        ));
    }

    pub fn rect(&mut self, x: f64, y: f64, w: f64, h: f64, fill: &str) {
        self.body.push_str(&format!(
            "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"{fill}\"/>\n",
            fmt(x), fmt(y), fmt(w), fmt(h)
        ));
    }

    pub fn circle(&mut self, x: f64, y: f64, r: f64, fill: &str) {
        self.body.push_str(&format!(
            "<circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"{fill}\"/>\n",
            fmt(x), fmt(y), fmt(r)
        ));
    }

    pub fn text(&mut self, x: f64, y: f64, size: f64, anchor: &str, content: &str) {
        let escaped = content
            .replace('&', "&amp;")
            .replace('<', "&lt;")
            .replace('>', "&gt;");
        self.body.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" font-size=\"{}\" font-family=\"monospace\" text-anchor=\"{anchor}\">{escaped}</text>\n",
            fmt(x), fmt(y), fmt(size)
        ));
    }

    pub fn finish(self) -> String {
        format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {} {}\" width=\"{}\" height=\"{}\">\n<rect x=\"0\" y=\"0\" width=\"{}\" height=\"{}\" fill=\"white\"/>\n{}</svg>\n",
            fmt(self.width), fmt(self.height), fmt(self.width), fmt(self.height),
            fmt(self.width), fmt(self.height), self.body
        )
    }
}

/// One plotted series: a label and its sample points.
pub struct Series<'a> {
    pub label: &'a str,
    pub points: Vec<(f64, f64)>,
}

struct Frame {
    x0: f64,
    y0: f64,
    w: f64,
    h: f64,
    xmin: f64,
    xmax: f64,
    ymin: f64,
    ymax: f64,
}

impl Frame {
    fn map(&self, x: f64, y: f64) -> (f64, f64) {
        let fx = if self.xmax > self.xmin {
            (x - self.xmin) / (self.xmax - self.xmin)
        } else {
            0.5
        };
        let fy = if self.ymax > self.ymin {
            (y - self.ymin) / (self.ymax - self.ymin)
        } else {
            0.5
        };
        (self.x0 + fx * self.w, self.y0 + self.h - fy * self.h)
    }
}

fn draw_frame(canvas: &mut SvgCanvas, frame: &Frame, title: &str, x_label: &str, y_label: &str) {
    canvas.line(frame.x0, frame.y0, frame.x0, frame.y0 + frame.h, "#000", 1.0);
    canvas.line(
        frame.x0,
        frame.y0 + frame.h,
        frame.x0 + frame.w,
        frame.y0 + frame.h,
        "#000",
        1.0,
    );
    canvas.text(
        frame.x0 + frame.w / 2.0,
        frame.y0 - 8.0,
        13.0,
        "middle",
        title,
    );
    canvas.text(
        frame.x0 + frame.w / 2.0,
        frame.y0 + frame.h + 30.0,
        11.0,
        "middle",
        x_label,
    );
    canvas.text(frame.x0 - 8.0, frame.y0 - 8.0, 11.0, "end", y_label);
    for t in 0..=4 {
        let f = t as f64 / 4.0;
        let x = frame.x0 + f * frame.w;
        let y = frame.y0 + frame.h - f * frame.h;
        canvas.line(x, frame.y0 + frame.h, x, frame.y0 + frame.h + 4.0, "#000", 1.0);
        canvas.line(frame.x0 - 4.0, y, frame.x0, y, "#000", 1.0);
        let xv = frame.xmin + f * (frame.xmax - frame.xmin);
        let yv = frame.ymin + f * (frame.ymax - frame.ymin);
        canvas.text(x, frame.y0 + frame.h + 16.0, 9.0, "middle", &fmt(xv));
        canvas.text(frame.x0 - 6.0, y + 3.0, 9.0, "end", &fmt(yv));
    }
}

fn data_bounds(series: &[Series<'_>]) -> (f64, f64, f64, f64) {
    let mut xmin = f64::INFINITY;
    let mut xmax = f64::NEG_INFINITY;
    let mut ymin = f64::INFINITY;
    let mut ymax = f64::NEG_INFINITY;
    for s in series {
        for &(x, y) in &s.points {
            if x.is_finite() {
                xmin = xmin.min(x);
                xmax = xmax.max(x);
            }
            if y.is_finite() {
                ymin = ymin.min(y);
                ymax = ymax.max(y);
            }
        }
    }
    if !xmin.is_finite() {
        (0.0, 1.0, 0.0, 1.0)
    } else {
        let pad = ((ymax - ymin).abs()).max(1e-12) * 0.05;
        (xmin, xmax.max(xmin + 1e-12), ymin - pad, ymax + pad)
    }
}

/// Multi-series line plot.  Marks each sample with a dot and lists series
/// labels in the top-right corner.
pub fn line_plot(
    title: &str,
    x_label: &str,
    y_label: &str,
    series: &[Series<'_>],
) -> String {
    let mut canvas = SvgCanvas::new(520.0, 360.0);
    let (xmin, xmax, ymin, ymax) = data_bounds(series);
    let frame = Frame {
        x0: 70.0,
        y0: 40.0,
        w: 410.0,
        h: 260.0,
        xmin,
        xmax,
        ymin,
        ymax,
    };
    draw_frame(&mut canvas, &frame, title, x_label, y_label);
    for (i, s) in series.iter().enumerate() {
        let color = PLOT_COLORS[i % PLOT_COLORS.len()];
        let pts: Vec<(f64, f64)> = s.points.iter().map(|&(x, y)| frame.map(x, y)).collect();
        if pts.len() > 1 {
            canvas.polyline(&pts, color, 1.5);
        }
        for &(x, y) in &pts {
            canvas.circle(x, y, 2.0, color);
        }
        canvas.text(
            frame.x0 + frame.w - 4.0,
            frame.y0 + 14.0 * (i as f64 + 1.0),
            10.0,
            "end",
            s.label,
        );
        let legend_y = frame.y0 + 14.0 * (i as f64 + 1.0) - 3.0;
        canvas.line(
            frame.x0 + frame.w - 70.0,
            legend_y,
            frame.x0 + frame.w - 50.0,
            legend_y,
            color,
            2.0,
        );
    }
    canvas.finish()
}

/// One bar in a cost chart.
pub struct CostBar<'a> {
    pub label: &'a str,
    pub queries: u64,
    /// Annotation above the bar (e.g. a max-failure exponent), empty to omit.
    pub annotation: String,
}

/// Bar chart of oracle query costs with per-bar annotations.
pub fn cost_chart(title: &str, bars: &[CostBar<'_>]) -> String {
    let mut canvas = SvgCanvas::new(520.0, 360.0);
    let max_q = bars.iter().map(|b| b.queries).max().unwrap_or(1).max(1) as f64;
    let frame_x0 = 70.0;
    let frame_y0 = 40.0;
    let frame_w = 410.0;
    let frame_h = 260.0;
    canvas.line(frame_x0, frame_y0, frame_x0, frame_y0 + frame_h, "#000", 1.0);
    canvas.line(
        frame_x0,
        frame_y0 + frame_h,
        frame_x0 + frame_w,
        frame_y0 + frame_h,
        "#000",
        1.0,
    );
    canvas.text(frame_x0 + frame_w / 2.0, frame_y0 - 8.0, 13.0, "middle", title);
    canvas.text(frame_x0 - 8.0, frame_y0 - 8.0, 11.0, "end", "queries");
    let slot = frame_w / bars.len().max(1) as f64;
    for (i, bar) in bars.iter().enumerate() {
        let color = PLOT_COLORS[i % PLOT_COLORS.len()];
        let h = frame_h * (bar.queries as f64 / max_q);
        let x = frame_x0 + i as f64 * slot + slot * 0.2;
        let y = frame_y0 + frame_h - h;
        canvas.rect(x, y, slot * 0.6, h, color);
        canvas.text(
            frame_x0 + i as f64 * slot + slot / 2.0,
            frame_y0 + frame_h + 16.0,
            10.0,
            "middle",
            bar.label,
        );
        canvas.text(
            frame_x0 + i as f64 * slot + slot / 2.0,
            (y - 18.0).max(12.0),
            10.0,
            "middle",
            &bar.queries.to_string(),
        );
        if !bar.annotation.is_empty() {
            canvas.text(
                frame_x0 + i as f64 * slot + slot / 2.0,
                (y - 6.0).max(24.0),
                9.0,
                "middle",
                &bar.annotation,
            );
        }
    }
    canvas.finish()
}

/// One row of the window triptych: amplitudes, spectrum, readout histogram.
pub struct TriptychRow<'a> {
    pub label: &'a str,
    /// Window profile in basis order.
    pub window: &'a [f64],
    pub spectrum: &'a Spectrum,
    /// Readout distribution over register values.
    pub distribution: &'a [f64],
}

/// Grid of (amplitude, spectrum, histogram) panels, one row per window.
pub fn window_triptych(rows: &[TriptychRow<'_>]) -> String {
    let panel_w = 240.0;
    let panel_h = 190.0;
    let mut canvas = SvgCanvas::new(3.0 * panel_w + 60.0, rows.len() as f64 * panel_h + 40.0);
    for (r, row) in rows.iter().enumerate() {
        let top = 40.0 + r as f64 * panel_h;
        // Amplitude panel.
        let amp_pts: Vec<(f64, f64)> = row
            .window
            .iter()
            .enumerate()
            .map(|(i, &v)| (i as f64, v))
            .collect();
        let amp = Series {
            label: row.label,
            points: amp_pts,
        };
        let (xmin, xmax, ymin, ymax) = data_bounds(std::slice::from_ref(&amp));
        let frame = Frame {
            x0: 50.0,
            y0: top,
            w: panel_w - 70.0,
            h: panel_h - 70.0,
            xmin,
            xmax,
            ymin: ymin.min(0.0),
            ymax,
        };
        draw_frame(&mut canvas, &frame, row.label, "basis state", "amplitude");
        let pts: Vec<(f64, f64)> = amp.points.iter().map(|&(x, y)| frame.map(x, y)).collect();
        canvas.polyline(&pts, PLOT_COLORS[0], 1.2);

        // Spectrum panel (dB).
        let spec_pts: Vec<(f64, f64)> = row
            .spectrum
            .frequencies
            .iter()
            .zip(&row.spectrum.power_db)
            .map(|(&f, &p)| (f, p.max(-160.0)))
            .collect();
        let spec = Series {
            label: "",
            points: spec_pts,
        };
        let (sxmin, sxmax, symin, symax) = data_bounds(std::slice::from_ref(&spec));
        let sframe = Frame {
            x0: 50.0 + panel_w,
            y0: top,
            w: panel_w - 70.0,
            h: panel_h - 70.0,
            xmin: sxmin,
            xmax: sxmax,
            ymin: symin,
            ymax: symax,
        };
        draw_frame(&mut canvas, &sframe, "spectrum", "frequency", "dB");
        let spts: Vec<(f64, f64)> = spec.points.iter().map(|&(x, y)| sframe.map(x, y)).collect();
        canvas.polyline(&spts, PLOT_COLORS[1], 1.0);

        // Histogram panel.
        let hx0 = 50.0 + 2.0 * panel_w;
        let hw = panel_w - 70.0;
        let hh = panel_h - 70.0;
        let max_p = row
            .distribution
            .iter()
            .cloned()
            .fold(f64::MIN_POSITIVE, f64::max);
        canvas.line(hx0, top, hx0, top + hh, "#000", 1.0);
        canvas.line(hx0, top + hh, hx0 + hw, top + hh, "#000", 1.0);
        canvas.text(hx0 + hw / 2.0, top - 8.0, 13.0, "middle", "readout");
        let slot = hw / row.distribution.len().max(1) as f64;
        for (i, &p) in row.distribution.iter().enumerate() {
            let bh = hh * (p / max_p);
            canvas.rect(
                hx0 + i as f64 * slot,
                top + hh - bh,
                (slot * 0.9).max(0.5),
                bh,
                PLOT_COLORS[2],
            );
        }
    }
    canvas.finish()
}
