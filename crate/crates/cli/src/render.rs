//! Static SVG drawings of curves and subdivisions. Coordinates are converted
//! to floating point here and nowhere else.

use std::fmt::Write;

use tropic::curve::{NewtonSubdivision, PlaneTropicalCurve};
use tropic::exact::lattice::lattice_points_in;
use tropic::exact::rational::to_f64;
use tropic::exact::{IntVec2, PointQ2};

const PIXELS: f64 = 600.0;

#[derive(Clone, Copy, Debug)]
struct View {
    x0: f64,
    y0: f64,
    size: f64,
}

impl View {
    /// Square box around the points with a 10% margin on every side.
    fn fit(points: &[(f64, f64)]) -> View {
        let (mut x0, mut x1, mut y0, mut y1) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
        for &(x, y) in points {
            x0 = x0.min(x);
            x1 = x1.max(x);
            y0 = y0.min(y);
            y1 = y1.max(y);
        }
        if points.is_empty() {
            (x0, x1, y0, y1) = (0.0, 0.0, 0.0, 0.0);
        }
        // a lone vertex still needs room for its rays
        let span = (x1 - x0).max(y1 - y0).max(2.0);
        let (cx, cy) = ((x0 + x1) / 2.0, (y0 + y1) / 2.0);
        let size = span * 1.2;
        View { x0: cx - size / 2.0, y0: cy - size / 2.0, size }
    }

    fn px(&self, (x, y): (f64, f64)) -> (f64, f64) {
        let k = PIXELS / self.size;
        ((x - self.x0) * k, PIXELS - (y - self.y0) * k)
    }

    /// Parameter long enough to carry any ray out of the box.
    fn reach(&self) -> f64 {
        self.size * 3.0
    }
}

fn pt(p: &PointQ2) -> (f64, f64) {
    (to_f64(&p.x), to_f64(&p.y))
}

fn along(p: (f64, f64), dir: IntVec2, t: f64) -> (f64, f64) {
    (p.0 + dir.x as f64 * t, p.1 + dir.y as f64 * t)
}

fn header(out: &mut String) {
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{PIXELS}" height="{PIXELS}" viewBox="0 0 {PIXELS} {PIXELS}">"#
    );
    let _ = writeln!(out, r#"<rect width="{PIXELS}" height="{PIXELS}" fill="white"/>"#);
}

fn segment(out: &mut String, view: &View, a: (f64, f64), b: (f64, f64), weight: i64) {
    let (a, b) = (view.px(a), view.px(b));
    let _ = writeln!(
        out,
        r#"<line x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}" stroke="black" stroke-width="{:.1}"/>"#,
        a.0,
        a.1,
        b.0,
        b.1,
        1.0 + weight as f64
    );
}

fn label(out: &mut String, view: &View, at: (f64, f64), weight: i64) {
    if weight > 1 {
        let (x, y) = view.px(at);
        let _ = writeln!(out, r#"<text x="{:.3}" y="{:.3}" font-size="16" fill="blue">{weight}</text>"#, x + 4.0, y - 4.0);
    }
}

/// Weights other than 1 are labelled; ends are clipped at the frame.
pub fn render_curve(c: &PlaneTropicalCurve) -> String {
    let mut out = String::new();
    header(&mut out);
    let mut anchors: Vec<(f64, f64)> = c.vertices.iter().map(pt).collect();
    anchors.extend(c.lines.iter().map(|l| pt(&l.base)));
    if anchors.is_empty() {
        let _ = writeln!(out, r#"<text class="notice" x="20" y="30" font-size="16">empty curve</text>"#);
        out.push_str("</svg>\n");
        return out;
    }
    let view = View::fit(&anchors);
    let _ = writeln!(out, r#"<clipPath id="frame"><rect width="{PIXELS}" height="{PIXELS}"/></clipPath>"#);
    out.push_str("<g clip-path=\"url(#frame)\">\n");
    let mut labels = Vec::new();
    for e in &c.edges {
        let (a, b) = (pt(&c.vertices[e.from]), pt(&c.vertices[e.to]));
        segment(&mut out, &view, a, b, e.weight);
        labels.push((((a.0 + b.0) / 2.0, (a.1 + b.1) / 2.0), e.weight));
    }
    let label_t = view.size / 8.0;
    for r in &c.rays {
        let a = pt(&c.vertices[r.base]);
        segment(&mut out, &view, a, along(a, r.dir, view.reach()), r.weight);
        let norm = ((r.dir.x * r.dir.x + r.dir.y * r.dir.y) as f64).sqrt();
        labels.push((along(a, r.dir, label_t / norm), r.weight));
    }
    for l in &c.lines {
        let a = pt(&l.base);
        segment(&mut out, &view, along(a, l.dir, -view.reach()), along(a, l.dir, view.reach()), l.weight);
        labels.push((a, l.weight));
    }
    for v in &c.vertices {
        let (x, y) = view.px(pt(v));
        let _ = writeln!(out, r#"<circle cx="{x:.3}" cy="{y:.3}" r="3" fill="black"/>"#);
    }
    for (at, w) in labels {
        label(&mut out, &view, at, w);
    }
    out.push_str("</g>\n</svg>\n");
    out
}

/// Cells as polygons, lattice points of the polygon as dots.
pub fn render_subdivision(s: &NewtonSubdivision) -> String {
    let mut out = String::new();
    header(&mut out);
    let corners: Vec<(f64, f64)> = s.polygon.iter().map(|v| (v.x as f64, v.y as f64)).collect();
    let view = View::fit(&corners);
    for cell in &s.cells {
        let pts: Vec<String> = cell
            .iter()
            .map(|v| {
                let (x, y) = view.px((v.x as f64, v.y as f64));
                format!("{x:.3},{y:.3}")
            })
            .collect();
        let _ = writeln!(out, r#"<polygon points="{}" fill="none" stroke="black" stroke-width="2"/>"#, pts.join(" "));
    }
    for v in lattice_points_in(&s.polygon) {
        let (x, y) = view.px((v.x as f64, v.y as f64));
        let _ = writeln!(out, r#"<circle cx="{x:.3}" cy="{y:.3}" r="4" fill="black"/>"#);
    }
    out.push_str("</svg>\n");
    out
}
