//! Plot data and hand-written SVG.
//!
//! Every SVG uses an 800×600 viewBox. The plot area spans x ∈ [90, 770] and
//! y ∈ [40, 530]; data ranges are padded by 5% and mapped linearly, with y
//! growing upwards.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use super::pipeline::{write_file, RqasResult};
use super::stats::{cliff_fit, LinearFit, ValidationReport};
use crate::error::{Error, Result};

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 600.0;
const LEFT: f64 = 90.0;
const RIGHT: f64 = 770.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 530.0;

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

struct Axis {
    lo: f64,
    hi: f64,
}

impl Axis {
    fn fit(values: impl Iterator<Item = f64>) -> Axis {
        let (lo, hi) = values.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| {
            (a.min(v), b.max(v))
        });
        let pad = if hi > lo { 0.05 * (hi - lo) } else { 0.5 };
        Axis {
            lo: lo - pad,
            hi: hi + pad,
        }
    }

    fn map(&self, v: f64, from: f64, to: f64) -> f64 {
        from + (v - self.lo) / (self.hi - self.lo) * (to - from)
    }
}

struct Scatter<'a> {
    title: &'a str,
    x_label: &'a str,
    y_label: &'a str,
    points: Vec<(String, f64, f64)>,
    fit: Option<LinearFit>,
    annotation: String,
}

fn render(p: &Scatter) -> String {
    let ax = Axis::fit(p.points.iter().map(|t| t.1));
    let ay = Axis::fit(p.points.iter().map(|t| t.2));
    let px = |v: f64| ax.map(v, LEFT, RIGHT);
    let py = |v: f64| ay.map(v, BOTTOM, TOP);
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="13">"#
    );
    let _ = writeln!(
        s,
        r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#
    );
    let _ = writeln!(
        s,
        r#"<text x="{}" y="24" text-anchor="middle" font-size="16">{}</text>"#,
        WIDTH / 2.0,
        escape(p.title)
    );
    let _ = writeln!(
        s,
        r#"<path d="M{LEFT} {TOP}V{BOTTOM}H{RIGHT}" fill="none" stroke="black"/>"#
    );
    for i in 0..=4 {
        let fx = ax.lo + (ax.hi - ax.lo) * i as f64 / 4.0;
        let fy = ay.lo + (ay.hi - ay.lo) * i as f64 / 4.0;
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{}" text-anchor="middle">{:.3}</text>"#,
            px(fx),
            BOTTOM + 18.0,
            fx
        );
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{:.2}" text-anchor="end">{:.3}</text>"#,
            LEFT - 6.0,
            py(fy) + 4.0,
            fy
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}" text-anchor="middle">{}</text>"#,
        (LEFT + RIGHT) / 2.0,
        HEIGHT - 20.0,
        escape(p.x_label)
    );
    let _ = writeln!(
        s,
        r#"<text x="20" y="{0}" text-anchor="middle" transform="rotate(-90 20 {0})">{1}</text>"#,
        (TOP + BOTTOM) / 2.0,
        escape(p.y_label)
    );
    if let Some(f) = &p.fit {
        let (x0, x1) = (ax.lo, ax.hi);
        let _ = writeln!(
            s,
            r##"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="#c0392b" stroke-dasharray="6 4"/>"##,
            px(x0),
            py(f.predict(x0)),
            px(x1),
            py(f.predict(x1))
        );
    }
    for (label, x, y) in &p.points {
        let _ = writeln!(
            s,
            r##"<circle cx="{:.2}" cy="{:.2}" r="5" fill="#2c6fbb"/>"##,
            px(*x),
            py(*y)
        );
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}">{}</text>"#,
            px(*x) + 7.0,
            py(*y) - 7.0,
            escape(label)
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}">{}</text>"#,
        RIGHT - 220.0,
        TOP + 20.0,
        escape(&p.annotation)
    );
    s.push_str("</svg>\n");
    s
}

fn csv_bytes(header: [&str; 3], rows: &[(String, f64, f64)]) -> Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for (id, x, y) in rows {
        w.write_record([id.clone(), x.to_string(), y.to_string()])?;
    }
    w.into_inner()
        .map_err(|e| Error::io("<csv>", e.into_error()))
}

/// Writes `cliff.csv` (d_OO vs log₁₀ RQAS) and, when a report is given,
/// `validation.csv` (log₁₀ activity vs log₁₀ RQAS); with `svg` set, an SVG
/// rendering of each.
pub fn emit_plots(
    results: &[RqasResult],
    report: Option<&ValidationReport>,
    outdir: &Path,
    svg: bool,
) -> Result<Vec<PathBuf>> {
    if results.is_empty() {
        return Err(Error::InsufficientData(0));
    }
    let mut written = Vec::new();
    let mut emit = |name: &str, bytes: Vec<u8>| -> Result<()> {
        let path = outdir.join(name);
        write_file(&path, &bytes)?;
        written.push(path);
        Ok(())
    };

    let cliff: Vec<_> = results
        .iter()
        .map(|r| (r.variant.clone(), r.d_oo, r.log10_rqas))
        .collect();
    emit(
        "cliff.csv",
        csv_bytes(["variant", "d_OO", "log10_RQAS"], &cliff)?,
    )?;
    if svg {
        let fit = cliff_fit(results).ok();
        let annotation = fit.map_or(String::new(), |f| format!("slope {:.2} decades/Å", f.slope));
        let plot = Scatter {
            title: "Relative activity against O–O distance",
            x_label: "d_OO (Å)",
            y_label: "log10 RQAS",
            points: cliff,
            fit,
            annotation,
        };
        emit("cliff.svg", render(&plot).into_bytes())?;
    }

    if let Some(rep) = report {
        let pts: Vec<_> = rep
            .points
            .iter()
            .map(|p| (p.variant.clone(), p.log10_activity, p.log10_rqas))
            .collect();
        emit(
            "validation.csv",
            csv_bytes(["variant", "log10_activity", "log10_RQAS"], &pts)?,
        )?;
        if svg {
            let fit = LinearFit {
                slope: rep.slope,
                intercept: rep.intercept,
                r: rep.pearson_r,
                n: rep.n_points,
            };
            let plot = Scatter {
                title: "Predicted against measured activity",
                x_label: "log10 activity (% of WT)",
                y_label: "log10 RQAS",
                points: pts,
                fit: Some(fit),
                annotation: format!("r² = {:.3} (n = {})", rep.r_squared, rep.n_points),
            };
            emit("validation.svg", render(&plot).into_bytes())?;
        }
    }
    Ok(written)
}
