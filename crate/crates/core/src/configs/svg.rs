//! SVG rendering of sketches in an affine chart.

use std::fmt::Write as _;
use std::path::Path;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::coloring::LineColor;
use super::sketch::IncidenceSketch;
use crate::error::{Error, Result};
use crate::linalg::rank;
use crate::rational::{to_f64, Rational};
use crate::vogelplane::{dot, Basis, LinearForm, PlaneObject, Triple};

const SIZE: f64 = 800.0;
const MARGIN: f64 = 60.0;

/// Affine chart `X = x/h, Y = y/h`; the line `h = 0` is sent to infinity.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Chart {
    pub infinity: LinearForm,
    pub x: LinearForm,
    pub y: LinearForm,
}

impl Chart {
    fn with_infinity(h: LinearForm) -> Option<Chart> {
        let e = [LinearForm::primed([1, 0, 0]), LinearForm::primed([0, 1, 0]), LinearForm::primed([0, 0, 1])];
        for a in 0..3 {
            for b in a + 1..3 {
                let m = vec![h.coeffs().to_vec(), e[a].coeffs().to_vec(), e[b].coeffs().to_vec()];
                if rank(&m, 3) == 3 {
                    return Some(Chart { infinity: h, x: e[a].clone(), y: e[b].clone() });
                }
            }
        }
        None
    }

    /// The default chart sends `α′ = 0` to infinity.
    pub fn default_chart() -> Chart {
        Chart::with_infinity(LinearForm::primed([1, 0, 0])).expect("independent")
    }

    fn project(&self, p: &Triple) -> Option<(f64, f64)> {
        let h = dot(self.infinity.coeffs(), p);
        if h.is_zero() {
            return None;
        }
        Some((to_f64(&(dot(self.x.coeffs(), p) / &h)), to_f64(&(dot(self.y.coeffs(), p) / &h))))
    }

    /// `(a, b, c)` with `f = a·h + b·x + c·y`, so the chart line is
    /// `a + bX + cY = 0`.
    fn line_coeffs(&self, f: &LinearForm) -> [f64; 3] {
        let cols = [self.infinity.coeffs(), self.x.coeffs(), self.y.coeffs()];
        let t = f.coeffs();
        let det = |m: [&Triple; 3]| -> Rational {
            &m[0][0] * (&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1]) - &m[1][0] * (&m[0][1] * &m[2][2] - &m[0][2] * &m[2][1])
                + &m[2][0] * (&m[0][1] * &m[1][2] - &m[0][2] * &m[1][1])
        };
        let d = det(cols);
        std::array::from_fn(|i| {
            let mut m = cols;
            m[i] = t;
            to_f64(&(det(m) / &d))
        })
    }
}

/// Candidate lines at infinity, tried in order after the default.
fn chart_candidates() -> Vec<LinearForm> {
    let mut v = vec![LinearForm::primed([1, 0, 0]), LinearForm::primed([0, 1, 0]), LinearForm::primed([0, 0, 1])];
    for a in -3i64..=3 {
        for b in -3i64..=3 {
            for c in 1i64..=3 {
                v.push(LinearForm::primed([c, a, b]));
            }
        }
    }
    v
}

/// The default chart unless a drawn point lies at infinity there; then the
/// first candidate chart with all points finite.
pub fn choose_chart(sketch: &IncidenceSketch) -> Result<Chart> {
    let pts: Vec<Triple> = sketch.points.iter().map(|p| p.in_basis(Basis::Primed).coords().clone()).collect();
    for h in chart_candidates() {
        if pts.iter().all(|p| !dot(h.coeffs(), p).is_zero()) {
            if let Some(c) = Chart::with_infinity(h) {
                return Ok(c);
            }
        }
    }
    Err(Error::Degenerate("no chart keeps every point finite".into()))
}

fn stroke(c: LineColor) -> &'static str {
    match c {
        LineColor::Black => "#000000",
        LineColor::Red => "#c0392b",
        LineColor::Green => "#1e8449",
    }
}

/// Clips `a + bX + cY = 0` to the box; returns the two boundary points.
fn clip(l: [f64; 3], xmin: f64, xmax: f64, ymin: f64, ymax: f64) -> Option<((f64, f64), (f64, f64))> {
    let [a, b, c] = l;
    let mut hits: Vec<(f64, f64)> = Vec::new();
    if c.abs() > 1e-12 {
        for x in [xmin, xmax] {
            let y = -(a + b * x) / c;
            if (ymin..=ymax).contains(&y) {
                hits.push((x, y));
            }
        }
    }
    if b.abs() > 1e-12 {
        for y in [ymin, ymax] {
            let x = -(a + c * y) / b;
            if (xmin..=xmax).contains(&x) {
                hits.push((x, y));
            }
        }
    }
    hits.sort_by(|p, q| p.partial_cmp(q).expect("finite"));
    let first = *hits.first()?;
    let last = *hits.last()?;
    Some((first, last))
}

/// Renders the sketch as SVG 1.1. Coordinates are exact until this point
/// and only rounded for output, with fixed formatting.
pub fn render_svg(sketch: &IncidenceSketch) -> Result<String> {
    let chart = choose_chart(sketch)?;
    let pts: Vec<(f64, f64)> = sketch
        .points
        .iter()
        .map(|p| chart.project(&p.in_basis(Basis::Primed).coords().clone()).expect("chart keeps points finite"))
        .collect();
    if pts.is_empty() {
        return Err(Error::Degenerate("sketch has no points".into()));
    }
    let (mut xmin, mut xmax, mut ymin, mut ymax) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for &(x, y) in &pts {
        xmin = xmin.min(x);
        xmax = xmax.max(x);
        ymin = ymin.min(y);
        ymax = ymax.max(y);
    }
    let span = (xmax - xmin).max(ymax - ymin).max(1e-9);
    let pad = 0.1 * span;
    let (bx0, bx1, by0, by1) = (xmin - pad, xmin + span + pad, ymin - pad, ymin + span + pad);
    let scale = (SIZE - 2.0 * MARGIN) / (span + 2.0 * pad);
    let to_px = |(x, y): (f64, f64)| (MARGIN + (x - bx0) * scale, SIZE - MARGIN - (y - by0) * scale);

    let mut s = String::new();
    s.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n");
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{SIZE}\" height=\"{SIZE}\" viewBox=\"0 0 {SIZE} {SIZE}\">"
    );
    let _ = writeln!(s, "<title>{} points, {} lines; line at infinity {}</title>", sketch.points.len(), sketch.lines.len(), chart.infinity);
    s.push_str("<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n<g id=\"lines\" stroke-width=\"1.5\" font-family=\"sans-serif\" font-size=\"13\">\n");
    for line in &sketch.lines {
        let Some((p, q)) = clip(chart.line_coeffs(&line.form), bx0, bx1, by0, by1) else { continue };
        let (p, q) = (to_px(p), to_px(q));
        let color = stroke(line.color);
        let _ = writeln!(
            s,
            "<line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"{color}\"><title>{}: {}</title></line>",
            p.0, p.1, q.0, q.1, line.label, line.form
        );
        let _ = writeln!(s, "<text x=\"{:.2}\" y=\"{:.2}\" fill=\"{color}\" stroke=\"none\">{}</text>", q.0 + 4.0, q.1 - 4.0, line.label);
    }
    s.push_str("</g>\n<g id=\"points\" font-family=\"sans-serif\" font-size=\"12\">\n");
    for (i, &pt) in pts.iter().enumerate() {
        let (x, y) = to_px(pt);
        let _ = writeln!(s, "<circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"4\" fill=\"#000000\"><title>{}</title></circle>", sketch.points[i]);
        let _ = writeln!(s, "<text x=\"{:.2}\" y=\"{:.2}\">{}</text>", x + 6.0, y + 14.0, i + 1);
    }
    s.push_str("</g>\n</svg>\n");
    Ok(s)
}

/// Writes [`render_svg`] output to `path`.
pub fn emit_svg(sketch: &IncidenceSketch, path: &Path) -> Result<()> {
    let svg = render_svg(sketch)?;
    std::fs::write(path, svg)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::configs::sketch::sketch_from_q;
    use crate::identity::basic_lines;
    use crate::qsearch::builtins::builtin_q33;
    use crate::rational::int;

    fn q33_sketch() -> IncidenceSketch {
        let q = builtin_q33(&int(2), &int(3), &int(1), &int(1), false).unwrap();
        sketch_from_q(&q, &basic_lines(false)).unwrap().0
    }

    #[test]
    fn renders_nine_points_deterministically() {
        let sk = q33_sketch();
        let a = render_svg(&sk).unwrap();
        let b = render_svg(&sk).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.matches("<circle").count(), 9);
        assert_eq!(a.matches("<line ").count(), 9);
        assert!(a.starts_with("<?xml"));
    }

    #[test]
    fn falls_back_when_points_at_infinity() {
        // triple points on α′ = 0 would sit at infinity in the default chart
        let sk = q33_sketch();
        let c = choose_chart(&sk).unwrap();
        assert_ne!(c, Chart::default_chart());
        for p in &sk.points {
            assert!(c.project(p.coords()).is_some());
        }
    }

    #[test]
    fn writes_file() {
        let dir = std::env::temp_dir().join(format!("vogel-svg-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("q33.svg");
        emit_svg(&q33_sketch(), &path).unwrap();
        assert!(std::fs::read_to_string(&path).unwrap().contains("</svg>"));
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
