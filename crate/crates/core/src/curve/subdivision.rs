use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::CurveError;
use crate::exact::lattice::{convex_hull, lattice_points_in, orient, point_in_convex, twice_area};
use crate::exact::{feasible, int, IntVec2, LinearSystem, Rational, Relation, UpperFace};
use crate::tropical::TropicalPolynomial;

/// Lift height of one lattice point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftHeight {
    pub a: IntVec2,
    #[serde(with = "crate::exact::rational::serde_str")]
    pub c: Rational,
}

/// A polyhedral subdivision of a lattice polygon into convex lattice cells.
/// Cells list their corners counter-clockwise. For a degenerate (segment)
/// polygon the cells are the segments of the subdivision.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NewtonSubdivision {
    pub polygon: Vec<IntVec2>,
    pub cells: Vec<Vec<IntVec2>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub heights: Option<Vec<LiftHeight>>,
}

/// Edge of the cell complex. `from -> to` runs counter-clockwise around
/// `left`; `right` is the cell on the other side, absent on the boundary.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubdivisionEdge {
    pub from: IntVec2,
    pub to: IntVec2,
    pub left: usize,
    pub right: Option<usize>,
}

impl SubdivisionEdge {
    pub fn vector(&self) -> IntVec2 {
        self.to - self.from
    }
    pub fn is_interior(&self) -> bool {
        self.right.is_some()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularityReport {
    pub regular: bool,
    /// Heights on the vertices of the complex realising the subdivision.
    pub witness: Option<Vec<LiftHeight>>,
}

/// Subdivision induced by the lifted coefficients of `g`.
pub fn newton_subdivision(g: &TropicalPolynomial) -> NewtonSubdivision {
    NewtonSubdivision::from_faces(g, &g.lifted_hull())
}

impl NewtonSubdivision {
    pub(crate) fn from_faces(g: &TropicalPolynomial, faces: &[UpperFace]) -> Self {
        NewtonSubdivision {
            polygon: g.newton_polygon(),
            cells: faces.iter().map(|f| f.cell.clone()).collect(),
            heights: Some(g.lifted_points().into_iter().map(|(a, c)| LiftHeight { a, c }).collect()),
        }
    }

    /// Builds a subdivision from cells given in any vertex order; the polygon
    /// is the hull of all cells. Checks the tiling.
    pub fn from_cells(cells: Vec<Vec<IntVec2>>) -> Result<Self, CurveError> {
        let cells: Vec<Vec<IntVec2>> = cells.iter().map(|c| convex_hull(c)).collect();
        let all: Vec<IntVec2> = cells.iter().flatten().copied().collect();
        let s = NewtonSubdivision { polygon: convex_hull(&all), cells, heights: None };
        s.validate()?;
        Ok(s)
    }

    /// 2 for a genuine polygon, 1 for a segment, 0 for a point.
    pub fn dimension(&self) -> usize {
        match self.polygon.len() {
            0 | 1 => 0,
            2 => 1,
            _ => 2,
        }
    }

    /// Vertices of the cell complex, sorted.
    pub fn vertices(&self) -> Vec<IntVec2> {
        let set: BTreeSet<IntVec2> = self.cells.iter().flatten().copied().collect();
        set.into_iter().collect()
    }

    /// Boundary cycle of cell `i`: its corners plus any complex vertex lying
    /// on one of its sides, counter-clockwise.
    pub fn cell_cycle(&self, i: usize) -> Vec<IntVec2> {
        let verts = self.vertices();
        let cell = &self.cells[i];
        let n = cell.len();
        let mut out = Vec::new();
        for k in 0..n {
            let (a, b) = (cell[k], cell[(k + 1) % n]);
            out.push(a);
            if n < 3 {
                continue;
            }
            let mut between: Vec<IntVec2> = verts
                .iter()
                .copied()
                .filter(|&v| v != a && v != b && orient(a, b, v) == 0 && (v - a).dot(b - a) > 0 && (v - b).dot(a - b) > 0)
                .collect();
            between.sort_by_key(|&v| (v - a).dot(b - a));
            out.extend(between);
        }
        out
    }

    /// Edges of the complex of a 2-dimensional subdivision.
    pub fn edges(&self) -> Vec<SubdivisionEdge> {
        if self.dimension() < 2 {
            return Vec::new();
        }
        let mut by_key: BTreeMap<(IntVec2, IntVec2), SubdivisionEdge> = BTreeMap::new();
        for i in 0..self.cells.len() {
            let cyc = self.cell_cycle(i);
            for k in 0..cyc.len() {
                let (a, b) = (cyc[k], cyc[(k + 1) % cyc.len()]);
                match by_key.get_mut(&(b, a)) {
                    Some(e) => e.right = Some(i),
                    None => {
                        by_key.insert((a, b), SubdivisionEdge { from: a, to: b, left: i, right: None });
                    }
                }
            }
        }
        by_key.into_values().collect()
    }

    /// Checks that the cells are convex lattice polygons tiling the polygon
    /// with pairwise disjoint interiors.
    pub fn validate(&self) -> Result<(), CurveError> {
        let bad = |m: &str| Err(CurveError::MalformedSubdivision(m.to_string()));
        if self.cells.is_empty() {
            return bad("no cells");
        }
        if self.dimension() < 2 {
            return Ok(());
        }
        for cell in &self.cells {
            let hull = convex_hull(cell);
            let rotation = (hull.len() == cell.len())
                .then(|| hull.iter().position(|v| *v == cell[0]))
                .flatten()
                .is_some_and(|k| hull[k..].iter().chain(&hull[..k]).eq(cell.iter()));
            if cell.len() < 3 || !rotation {
                return bad("cell is not a strictly convex counter-clockwise polygon");
            }
            if !cell.iter().all(|&p| point_in_convex(&self.polygon, p)) {
                return bad("cell leaves the polygon");
            }
        }
        let total: i64 = self.cells.iter().map(|c| twice_area(c)).sum();
        if total != twice_area(&self.polygon) {
            return bad("cell areas do not add up to the polygon area");
        }
        for i in 0..self.cells.len() {
            for j in (i + 1)..self.cells.len() {
                if interiors_overlap(&self.cells[i], &self.cells[j]) {
                    return bad("cells overlap");
                }
            }
        }
        Ok(())
    }

    /// Decides whether some lift makes every cell a face of an upper hull: a
    /// single affine function per cell, strictly broken across every interior
    /// edge. Returns the lift when it exists.
    pub fn is_regular(&self) -> Result<RegularityReport, CurveError> {
        self.validate()?;
        let verts = self.vertices();
        if self.dimension() < 2 {
            // Any strictly concave function along the segment.
            let o = verts[0];
            let dir = *verts.last().unwrap() - o;
            let witness = verts.iter().map(|&v| LiftHeight { a: v, c: -int((v - o).dot(dir).pow(2)) }).collect();
            return Ok(RegularityReport { regular: true, witness: Some(witness) });
        }
        let index: BTreeMap<IntVec2, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut sys = LinearSystem::new(verts.len());
        // Gauge: the first cell is the zero plane.
        for &p in &self.cells[0][..3] {
            sys.push_sparse(&[(index[&p], int(1))], Relation::Eq, Rational::zero());
        }
        let planes: Vec<[IntVec2; 3]> = self.cells.iter().map(|c| [c[0], c[1], c[2]]).collect();
        for (i, plane) in planes.iter().enumerate() {
            for q in self.cell_cycle(i).into_iter().skip(1) {
                if plane.contains(&q) {
                    continue;
                }
                // h(q) - interpolated height = 0
                let mut terms = affine_terms(plane, q, &index);
                terms.push((index[&q], int(1)));
                sys.push_sparse(&terms, Relation::Eq, Rational::zero());
            }
        }
        for e in self.edges() {
            let Some(r) = e.right else { continue };
            for (here, there) in [(e.left, r), (r, e.left)] {
                let off = self.cell_cycle(there).into_iter().find(|&q| orient(e.from, e.to, q) != 0).unwrap();
                // h(off) < interpolated height from `here`
                let mut terms = affine_terms(&planes[here], off, &index);
                terms.push((index[&off], int(1)));
                sys.push_sparse(&terms, Relation::Lt, Rational::zero());
            }
        }
        let f = feasible(&sys);
        let witness = f
            .witness
            .map(|w| verts.iter().zip(w).map(|(&a, c)| LiftHeight { a, c }).collect());
        Ok(RegularityReport { regular: f.feasible, witness })
    }

    /// Cells as sorted corner lists, in a sorted list: a representation
    /// independent of listing order.
    pub fn cell_key(&self) -> Vec<Vec<IntVec2>> {
        let mut key: Vec<Vec<IntVec2>> = self
            .cells
            .iter()
            .map(|c| {
                let mut c = c.clone();
                c.sort();
                c
            })
            .collect();
        key.sort();
        key
    }
}

/// Terms `-(bary_k) * h(p_k)` expressing minus the affine interpolation of
/// the plane through `plane` at `q`.
fn affine_terms(plane: &[IntVec2; 3], q: IntVec2, index: &BTreeMap<IntVec2, usize>) -> Vec<(usize, Rational)> {
    let [p0, p1, p2] = *plane;
    let d = int(orient(p0, p1, p2));
    let alpha = int(orient(p0, q, p2)) / &d;
    let beta = int(orient(p0, p1, q)) / &d;
    let gamma = int(1) - &alpha - &beta;
    vec![(index[&p0], -gamma), (index[&p1], -alpha), (index[&p2], -beta)]
}

/// Separating-axis test on closed convex polygons: true when the interiors meet.
pub(crate) fn interiors_overlap(p: &[IntVec2], q: &[IntVec2]) -> bool {
    for poly in [p, q] {
        let n = poly.len();
        for k in 0..n {
            let e = poly[(k + 1) % n] - poly[k];
            let axis = IntVec2::new(e.y, -e.x);
            let (pmin, pmax) = project(p, axis);
            let (qmin, qmax) = project(q, axis);
            if pmax <= qmin || qmax <= pmin {
                return false;
            }
        }
    }
    true
}

fn project(poly: &[IntVec2], axis: IntVec2) -> (i64, i64) {
    let vals = poly.iter().map(|v| v.dot(axis));
    (vals.clone().min().unwrap(), vals.max().unwrap())
}

/// The standard triangle of degree `d`, counter-clockwise.
pub fn standard_triangle(d: u32) -> Vec<IntVec2> {
    let d = d as i64;
    vec![IntVec2::new(0, 0), IntVec2::new(d, 0), IntVec2::new(0, d)]
}

/// Every triangulation of the lattice polygon `polygon` into triangles of
/// area 1/2, each produced once.
pub fn unimodular_triangulations(polygon: &[IntVec2]) -> Vec<Vec<[IntVec2; 3]>> {
    let poly = convex_hull(polygon);
    if poly.len() < 3 {
        return Vec::new();
    }
    let points = lattice_points_in(&poly);
    let mut open: BTreeSet<(IntVec2, IntVec2)> = BTreeSet::new();
    for k in 0..poly.len() {
        let (a, b) = (poly[k], poly[(k + 1) % poly.len()]);
        let (step, len) = crate::exact::primitive_decompose(b - a).expect("distinct corners");
        for s in 0..len {
            open.insert((a + step * s, a + step * (s + 1)));
        }
    }
    let mut out = Vec::new();
    let mut tris = Vec::new();
    extend(&points, &mut open, &mut tris, &mut out);
    out
}

fn extend(
    points: &[IntVec2],
    open: &mut BTreeSet<(IntVec2, IntVec2)>,
    tris: &mut Vec<[IntVec2; 3]>,
    out: &mut Vec<Vec<[IntVec2; 3]>>,
) {
    let Some(&(a, b)) = open.iter().next() else {
        out.push(tris.clone());
        return;
    };
    for &c in points {
        if orient(a, b, c) != 1 {
            continue;
        }
        let t = [a, b, c];
        if tris.iter().any(|s| interiors_overlap(s, &t)) {
            continue;
        }
        let mut added = Vec::new();
        let mut removed = vec![(a, b)];
        open.remove(&(a, b));
        for (x, y) in [(b, c), (c, a)] {
            if open.remove(&(x, y)) {
                removed.push((x, y));
            } else {
                open.insert((y, x));
                added.push((y, x));
            }
        }
        tris.push(t);
        extend(points, open, tris, out);
        tris.pop();
        for e in added {
            open.remove(&e);
        }
        open.extend(removed);
    }
}

/// Regular unimodular triangulations of the degree-`d` triangle, each
/// carrying a realising lift. Supported for `d <= 2`.
pub fn enumerate_smooth_types(d: u32) -> Result<Vec<NewtonSubdivision>, CurveError> {
    if !(1..=2).contains(&d) {
        return Err(CurveError::UnsupportedDegree(d));
    }
    smooth_types(d)
}

/// As [`enumerate_smooth_types`], also accepting `d = 3`. Slow.
pub fn enumerate_smooth_types_experimental(d: u32) -> Result<Vec<NewtonSubdivision>, CurveError> {
    if !(1..=3).contains(&d) {
        return Err(CurveError::UnsupportedDegree(d));
    }
    smooth_types(d)
}

fn smooth_types(d: u32) -> Result<Vec<NewtonSubdivision>, CurveError> {
    let mut out = Vec::new();
    for tri in unimodular_triangulations(&standard_triangle(d)) {
        let mut s = NewtonSubdivision::from_cells(tri.iter().map(|t| t.to_vec()).collect())?;
        let report = s.is_regular()?;
        if report.regular {
            s.heights = report.witness;
            out.push(s);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tropical::parse;

    fn p(x: i64, y: i64) -> IntVec2 {
        IntVec2::new(x, y)
    }

    #[test]
    fn line_and_squared_line_are_trivial() {
        for text in ["x + y + 0", "x^2 + y^2 + 0"] {
            let s = newton_subdivision(&parse(text).unwrap());
            assert_eq!(s.cells.len(), 1, "{text}");
            assert!(s.edges().iter().all(|e| !e.is_interior()));
            assert!(s.is_regular().unwrap().regular);
        }
    }

    #[test]
    fn generic_conic_is_maximal() {
        let g = parse("-1*x^2 + 1*x*y + -1*y^2 + 1*x + 1*y + 0").unwrap();
        let s = newton_subdivision(&g);
        assert_eq!(s.cells.len(), 4);
        assert!(s.cells.iter().all(|c| twice_area(c) == 1));
        assert_eq!(s.edges().iter().filter(|e| e.is_interior()).count(), 3);
    }

    #[test]
    fn triangulation_counts() {
        assert_eq!(unimodular_triangulations(&standard_triangle(1)).len(), 1);
        assert_eq!(unimodular_triangulations(&standard_triangle(2)).len(), 4);
        // unit square: two diagonals
        assert_eq!(unimodular_triangulations(&[p(0, 0), p(1, 0), p(1, 1), p(0, 1)]).len(), 2);
    }

    #[test]
    fn smooth_types_of_small_degree() {
        assert_eq!(enumerate_smooth_types(1).unwrap().len(), 1);
        let conics = enumerate_smooth_types(2).unwrap();
        assert_eq!(conics.len(), 4);
        for s in &conics {
            assert_eq!(s.cells.len(), 4);
            assert!(s.cells.iter().all(|c| twice_area(c) == 1));
            // The witness lift induces the same subdivision.
            let g = TropicalPolynomial::from_terms(
                s.heights.as_ref().unwrap().iter().map(|h| ((h.a.x as u32, h.a.y as u32), h.c.clone())),
            )
            .unwrap();
            assert_eq!(newton_subdivision(&g).cell_key(), s.cell_key());
        }
        assert!(matches!(enumerate_smooth_types(3), Err(CurveError::UnsupportedDegree(3))));
    }

    #[test]
    fn mother_configuration_is_not_regular() {
        let (a, b, c) = (p(0, 0), p(4, 0), p(0, 4));
        let (i, j, k) = (p(1, 1), p(2, 1), p(1, 2));
        let s = NewtonSubdivision::from_cells(vec![
            vec![i, j, k],
            vec![a, b, j],
            vec![a, j, i],
            vec![b, c, k],
            vec![b, k, j],
            vec![c, a, i],
            vec![c, i, k],
        ])
        .unwrap();
        let r = s.is_regular().unwrap();
        assert!(!r.regular);
        assert!(r.witness.is_none());
    }

    #[test]
    fn mother_configuration_diagonal_choices() {
        // Each of the three quadrilaterals around the inner triangle takes
        // one of its two diagonals; only the two cyclic choices fail.
        let (a, b, c) = (p(0, 0), p(4, 0), p(0, 4));
        let (i, j, k) = (p(1, 1), p(2, 1), p(1, 2));
        let quads = [[a, b, j, i], [b, c, k, j], [c, a, i, k]];
        let mut irregular = 0;
        for mask in 0..8 {
            let mut cells = vec![vec![i, j, k]];
            for (n, q) in quads.iter().enumerate() {
                if mask >> n & 1 == 0 {
                    cells.push(vec![q[0], q[1], q[2]]);
                    cells.push(vec![q[0], q[2], q[3]]);
                } else {
                    cells.push(vec![q[0], q[1], q[3]]);
                    cells.push(vec![q[1], q[2], q[3]]);
                }
            }
            let s = NewtonSubdivision::from_cells(cells).unwrap();
            let r = s.is_regular().unwrap();
            match r.witness {
                Some(w) => {
                    let g = TropicalPolynomial::from_terms(
                        w.iter().map(|h| ((h.a.x as u32, h.a.y as u32), h.c.clone())),
                    )
                    .unwrap();
                    assert_eq!(newton_subdivision(&g).cell_key(), s.cell_key());
                }
                None => irregular += 1,
            }
        }
        assert_eq!(irregular, 2);
    }

    #[test]
    fn malformed_tilings_are_rejected() {
        let t = standard_triangle(2);
        // missing a cell
        let r = NewtonSubdivision::from_cells(vec![vec![p(0, 0), p(1, 0), p(0, 1)]]);
        assert!(r.is_ok(), "a single cell defines its own polygon");
        let overlap = NewtonSubdivision {
            polygon: t.clone(),
            cells: vec![vec![p(0, 0), p(2, 0), p(0, 2)], vec![p(0, 0), p(1, 0), p(0, 1)]],
            heights: None,
        };
        assert!(overlap.validate().is_err());
        let short = NewtonSubdivision { polygon: t, cells: vec![vec![p(0, 0), p(2, 0), p(1, 1)]], heights: None };
        assert!(short.validate().is_err());
    }

    #[test]
    fn json_round_trip() {
        let s = newton_subdivision(&parse("3*x + 2*y + 0").unwrap());
        let text = serde_json::to_string(&s).unwrap();
        assert!(text.contains(r#""heights":[{"a":[0,0],"c":"0"}"#), "{text}");
        let back: NewtonSubdivision = serde_json::from_str(&text).unwrap();
        assert_eq!(back, s);
    }
}
