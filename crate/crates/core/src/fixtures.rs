//! Concrete instances used by tests, the acceptance suite and the CLI.

use crate::curve::{Edge, NewtonSubdivision, PlaneTropicalCurve, Ray};
use crate::exact::{IntVec2, PointQ2};
use crate::tropical::{parse, TropicalPolynomial};

fn poly(text: &str) -> TropicalPolynomial {
    parse(text).expect("fixture parses")
}

/// Smooth cubic whose cycle has nine edges: the centre point is lifted far
/// above a boundary that is strictly concave along each side.
pub fn smooth_cubic() -> TropicalPolynomial {
    poly("x^3 + 3*x^2*y + 2*x*y^2 + y^3 + 3*x^2 + 20*x*y + 3*y^2 + 2*x + 2*y + 0")
}

/// Genus-one cubic with exactly one parallelogram in its subdivision.
pub fn parallelogram_cubic() -> TropicalPolynomial {
    poly("-4*x^3 + 1*x^2*y + 4*x*y^2 + -6*y^3 + x^2 + 3*x*y + -4*y^2 + -2*x + -3*y + -6")
}

/// Rational cubic: the interior lattice point is not a vertex of the
/// subdivision.
pub fn rational_cubic() -> TropicalPolynomial {
    poly("-3*x^3 + 1*x^2*y + 2*x*y^2 + -4*y^3 + 4*x^2 + -2*x*y + -3*y^2 + -2*x + 5*y + 4")
}

/// Generic conic (smooth, four vertices).
pub fn smooth_conic() -> TropicalPolynomial {
    poly("-1*x^2 + 1*x*y + -1*y^2 + 1*x + 1*y + 0")
}

/// Two smooth conics of different combinatorial types meeting in three
/// points with multiplicities 2, 1, 1. The first has the central triangle
/// in its subdivision, the second a fan from `(0,1)`.
pub fn crossing_conics() -> (TropicalPolynomial, TropicalPolynomial) {
    (
        poly("-1*x^2 + 4*x*y + y^2 + 5*x + 5*y + -1"),
        poly("-4*x^2 + -4*x*y + -5*y^2 + -3*x + 1*y + -4"),
    )
}

/// Vertex with the four ends `(2,1)`, `2*(0,-1)`, `(-1,-1)`, `(-1,2)`,
/// dual to a quadrilateral with one unused interior point.
pub fn quadrilateral_vertex() -> TropicalPolynomial {
    poly("x^2*y^3 + x^3*y + x*y + y^2 + x^2*y^2")
}

/// Two 3-valent vertices joined by a weight-2 edge, both of multiplicity 2;
/// its ends are not those of a curve of some degree.
pub fn two_vertex_curve() -> PlaneTropicalCurve {
    let u = IntVec2::new;
    PlaneTropicalCurve {
        vertices: vec![PointQ2::from_ints(0, 0), PointQ2::from_ints(0, 1)],
        edges: vec![Edge { from: 0, to: 1, weight: 2 }],
        rays: vec![
            Ray { base: 0, dir: u(-1, 0), weight: 1 },
            Ray { base: 0, dir: u(1, -2), weight: 1 },
            Ray { base: 1, dir: u(-1, 1), weight: 1 },
            Ray { base: 1, dir: u(1, 1), weight: 1 },
        ],
        lines: vec![],
    }
}

/// Triangulation of the triangle `(0,0), (4,0), (0,4)` around the inner
/// triangle `(1,1), (2,1), (1,2)` in which each quadrilateral is cut by the
/// diagonal from the outer corner it starts at, going around in one sense.
/// No lift realises it.
pub fn twisted_triangulation() -> NewtonSubdivision {
    let p = IntVec2::new;
    let (a, b, c) = (p(0, 0), p(4, 0), p(0, 4));
    let (i, j, k) = (p(1, 1), p(2, 1), p(1, 2));
    NewtonSubdivision::from_cells(vec![
        vec![i, j, k],
        vec![a, b, j],
        vec![a, j, i],
        vec![b, c, k],
        vec![b, k, j],
        vec![c, a, i],
        vec![c, i, k],
    ])
    .expect("valid tiling")
}
