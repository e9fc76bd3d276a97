use num_traits::Zero;
use serde::Serialize;

use super::graph::{Edge, Line, PlaneTropicalCurve, Ray};
use super::subdivision::NewtonSubdivision;
use crate::exact::lattice::twice_area;
use crate::exact::{int, primitive_decompose, IntVec2, PointQ2};
use crate::tropical::TropicalPolynomial;

/// A cell of the subdivision and the curve vertex dual to it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualCell {
    pub cell: Vec<IntVec2>,
    pub vertex: usize,
}

/// A subdivision edge and the index of its dual curve edge, ray or line.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualEdge {
    pub from: IntVec2,
    pub to: IntVec2,
    pub index: usize,
}

/// Bijections between the pieces of a corner locus and its subdivision.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct DualityCertificate {
    pub cells: Vec<DualCell>,
    pub bounded: Vec<DualEdge>,
    pub rays: Vec<DualEdge>,
    pub lines: Vec<DualEdge>,
}

/// Corner locus of `g` built from its Newton subdivision, with the
/// certificate tying each curve piece to its dual.
pub fn corner_locus(g: &TropicalPolynomial) -> (PlaneTropicalCurve, DualityCertificate) {
    let faces = g.lifted_hull();
    let sub = NewtonSubdivision::from_faces(g, &faces);
    let mut curve = PlaneTropicalCurve::empty();
    let mut cert = DualityCertificate::default();
    match sub.dimension() {
        0 => {}
        1 => {
            for f in &faces {
                let (p, q) = (f.cell[0], f.cell[1]);
                let (u, m) = primitive_decompose(q - p).expect("distinct ends");
                let cp = g.coefficient(((p.x as u32), (p.y as u32))).unwrap();
                let cq = g.coefficient(((q.x as u32), (q.y as u32))).unwrap();
                // c_p + <p,x> = c_q + <q,x>  <=>  <u,x> = (c_p - c_q) / m
                let t = (cp - cq) / int(m) / int(u.dot(u));
                let base = PointQ2::new(&t * int(u.x), &t * int(u.y));
                let line = Line { base, dir: IntVec2::new(-u.y, u.x), weight: m }.normalized();
                cert.lines.push(DualEdge { from: p, to: q, index: curve.lines.len() });
                curve.lines.push(line);
            }
        }
        _ => {
            for (i, f) in faces.iter().enumerate() {
                curve.vertices.push(PointQ2::new(-&f.affine.slope_x, -&f.affine.slope_y));
                cert.cells.push(DualCell { cell: f.cell.clone(), vertex: i });
            }
            for e in sub.edges() {
                let (u, m) = primitive_decompose(e.vector()).expect("distinct ends");
                let entry = DualEdge { from: e.from, to: e.to, index: 0 };
                match e.right {
                    Some(r) => {
                        cert.bounded.push(DualEdge { index: curve.edges.len(), ..entry });
                        curve.edges.push(Edge { from: e.left, to: r, weight: m });
                    }
                    None => {
                        cert.rays.push(DualEdge { index: curve.rays.len(), ..entry });
                        curve.rays.push(Ray { base: e.left, dir: IntVec2::new(u.y, -u.x), weight: m });
                    }
                }
            }
        }
    }
    let report = curve.check_balancing();
    assert!(report.balanced, "corner locus unbalanced: {:?}", report.residuals);
    (curve, cert)
}

/// Every dual cell is a triangle of area 1/2.
pub fn is_smooth(c: &PlaneTropicalCurve, cert: &DualityCertificate) -> bool {
    !cert.cells.is_empty()
        && cert.lines.is_empty()
        && cert.cells.iter().all(|d| twice_area(&d.cell) == 1)
        && c.edges.iter().all(|e| e.weight == 1)
        && c.rays.iter().all(|r| r.weight == 1)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeGenusReport {
    pub d: u32,
    pub g: i64,
    pub bound: i64,
    pub deficiency: i64,
    /// `sum over cells of 2*area - (valence - 2)`; twice the deficiency for
    /// connected curves.
    pub area_excess: i64,
    /// Every dual cell has the least area possible for its number of edges.
    pub minimal_areas: bool,
}

/// Degree, genus and the gap to the degree-genus bound. `None` when the ends
/// do not form a curve of some degree.
pub fn degree_genus_report(c: &PlaneTropicalCurve, cert: &DualityCertificate) -> Option<DegreeGenusReport> {
    let d = c.degree()?;
    let g = c.genus();
    let di = d as i64;
    let bound = (di - 1) * (di - 2) / 2;
    let area_excess: i64 = cert
        .cells
        .iter()
        .map(|dc| twice_area(&dc.cell) - (c.valence(dc.vertex) as i64 - 2))
        .sum();
    let minimal_areas = cert.lines.is_empty()
        && cert
            .cells
            .iter()
            .all(|dc| twice_area(&dc.cell) == c.valence(dc.vertex) as i64 - 2);
    Some(DegreeGenusReport { d, g, bound, deficiency: bound - g, area_excess, minimal_areas })
}

/// Orthogonality of every curve edge with its dual subdivision edge.
pub fn check_orthogonality(c: &PlaneTropicalCurve, cert: &DualityCertificate) -> bool {
    let bounded = cert.bounded.iter().all(|d| {
        let (dx, dy) = c.vertices[c.edges[d.index].to].sub(&c.vertices[c.edges[d.index].from]);
        let v = d.to - d.from;
        (dx * int(v.x) + dy * int(v.y)).is_zero()
    });
    let rays = cert.rays.iter().all(|d| c.rays[d.index].dir.dot(d.to - d.from) == 0);
    let lines = cert.lines.iter().all(|d| c.lines[d.index].dir.dot(d.to - d.from) == 0);
    bounded && rays && lines
}

/// Relevant terms attaining the maximum at `p` (at least two exactly on the curve).
pub fn tie_count(g: &TropicalPolynomial, p: &PointQ2) -> usize {
    g.relevant_support().active_terms(p).len()
}
