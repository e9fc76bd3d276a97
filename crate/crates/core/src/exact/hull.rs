//! Upper hulls of lifted lattice point sets.
//!
//! A lifted point `(a, c_a)` sits over the exponent `a` at height `c_a`. The
//! upper faces of the convex hull of the lifts are exactly the domains of
//! linearity of the Legendre-type dual `x -> max_a <a,x> + c_a`; their
//! projections form the regular subdivision induced by the heights.
//!
//! Faces are found by exhaustive candidate checking over all triples of
//! points, which is plenty for supports of a few hundred points.

use std::collections::BTreeSet;

use num_traits::Zero;

use super::lattice::{convex_hull, det2, orient, IntVec2};
use super::rational::{int, Rational};

/// Affine function `(a.x, a.y) -> slope_x * a.x + slope_y * a.y + constant`
/// on exponent space.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Affine {
    pub slope_x: Rational,
    pub slope_y: Rational,
    pub constant: Rational,
}

impl Affine {
    pub fn eval(&self, a: IntVec2) -> Rational {
        &self.slope_x * int(a.x) + &self.slope_y * int(a.y) + &self.constant
    }
}

/// One upper face: the projected cell and the affine function whose graph
/// contains the face.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UpperFace {
    /// Corners of the cell, counter-clockwise. A 1-dimensional face lists its
    /// two endpoints and a 0-dimensional face its single point.
    pub cell: Vec<IntVec2>,
    pub affine: Affine,
    /// Every input exponent whose lift lies on the face, corners included.
    pub support: Vec<IntVec2>,
}

impl UpperFace {
    pub fn dimension(&self) -> usize {
        match self.cell.len() {
            1 => 0,
            2 => 1,
            _ => 2,
        }
    }
}

/// Upper faces of the lifted points. For a 2-dimensional point set only the
/// 2-dimensional faces are returned; for collinear input, the maximal
/// segments; for one point, one degenerate face.
pub fn upper_hull_lift(points: &[(IntVec2, Rational)]) -> Vec<UpperFace> {
    match points.len() {
        0 => Vec::new(),
        1 => vec![UpperFace {
            cell: vec![points[0].0],
            affine: Affine {
                slope_x: Rational::zero(),
                slope_y: Rational::zero(),
                constant: points[0].1.clone(),
            },
            support: vec![points[0].0],
        }],
        _ => {
            let a0 = points[0].0;
            let far = points.iter().map(|p| p.0).find(|&a| a != a0);
            let Some(a1) = far else {
                // Duplicate exponents are outside the contract; treat as one point.
                return upper_hull_lift(&points[..1]);
            };
            if points.iter().all(|p| orient(a0, a1, p.0) == 0) {
                collinear_faces(points, a0, a1 - a0)
            } else {
                planar_faces(points)
            }
        }
    }
}

fn plane_through(p: [&(IntVec2, Rational); 3]) -> Option<Affine> {
    let (a1, h1) = (p[0].0, &p[0].1);
    let e1 = p[1].0 - a1;
    let e2 = p[2].0 - a1;
    let d = det2(e1, e2);
    if d == 0 {
        return None;
    }
    let dh1 = &p[1].1 - h1;
    let dh2 = &p[2].1 - h1;
    let d = int(d);
    let slope_x = (&dh1 * int(e2.y) - &dh2 * int(e1.y)) / &d;
    let slope_y = (&dh2 * int(e1.x) - &dh1 * int(e2.x)) / &d;
    let constant = h1 - &slope_x * int(a1.x) - &slope_y * int(a1.y);
    Some(Affine { slope_x, slope_y, constant })
}

fn planar_faces(points: &[(IntVec2, Rational)]) -> Vec<UpperFace> {
    let n = points.len();
    let mut seen: BTreeSet<Vec<IntVec2>> = BTreeSet::new();
    let mut faces = Vec::new();
    // A point strictly below some candidate plane through hull points may still
    // be a corner of another face, so no early exclusion is attempted here.
    for i in 0..n {
        for j in (i + 1)..n {
            for k in (j + 1)..n {
                let Some(plane) = plane_through([&points[i], &points[j], &points[k]]) else {
                    continue;
                };
                let mut support = Vec::new();
                let mut supporting = true;
                for (a, h) in points {
                    let v = plane.eval(*a);
                    if *h > v {
                        supporting = false;
                        break;
                    }
                    if *h == v {
                        support.push(*a);
                    }
                }
                if !supporting {
                    continue;
                }
                support.sort();
                if seen.insert(support.clone()) {
                    faces.push(UpperFace { cell: convex_hull(&support), affine: plane, support });
                }
            }
        }
    }
    faces.sort_by(|a, b| a.cell.cmp(&b.cell));
    faces
}

fn collinear_faces(points: &[(IntVec2, Rational)], a0: IntVec2, dir: IntVec2) -> Vec<UpperFace> {
    let g = dir.lattice_length();
    let d = IntVec2::new(dir.x / g, dir.y / g);
    let norm2 = int(d.dot(d));
    // Coordinate along the primitive direction: a = a0 + k d.
    let coord = |a: IntVec2| (a - a0).dot(d) / d.dot(d);
    let mut pts: Vec<(i64, IntVec2, Rational)> =
        points.iter().map(|(a, h)| (coord(*a), *a, h.clone())).collect();
    pts.sort_by_key(|p| p.0);

    // Upper concave chain in (k, h).
    let mut chain: Vec<usize> = Vec::new();
    for idx in 0..pts.len() {
        while chain.len() >= 2 {
            let (p, q) = (&pts[chain[chain.len() - 2]], &pts[chain[chain.len() - 1]]);
            let r = &pts[idx];
            // q is dropped when it lies on or below the segment p-r.
            let lhs = (&q.2 - &p.2) * int(r.0 - p.0);
            let rhs = (&r.2 - &p.2) * int(q.0 - p.0);
            if lhs <= rhs {
                chain.pop();
            } else {
                break;
            }
        }
        chain.push(idx);
    }

    let mut faces = Vec::new();
    for w in chain.windows(2) {
        let (p, q) = (&pts[w[0]], &pts[w[1]]);
        let s = (&q.2 - &p.2) / int(q.0 - p.0);
        let slope_x = &s * int(d.x) / &norm2;
        let slope_y = &s * int(d.y) / &norm2;
        let constant = &p.2 - &slope_x * int(p.1.x) - &slope_y * int(p.1.y);
        let affine = Affine { slope_x, slope_y, constant };
        let mut support: Vec<IntVec2> = pts
            .iter()
            .filter(|r| r.0 >= p.0 && r.0 <= q.0 && affine.eval(r.1) == r.2)
            .map(|r| r.1)
            .collect();
        support.sort();
        let mut cell = vec![p.1, q.1];
        cell.sort();
        faces.push(UpperFace { cell, affine, support });
    }
    faces
}

/// Height of the upper hull over `q`, for `q` inside the projected hull.
pub fn hull_height(faces: &[UpperFace], q: IntVec2) -> Option<Rational> {
    faces.iter().map(|f| f.affine.eval(q)).min()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::rat;
    use proptest::prelude::*;

    fn v(x: i64, y: i64) -> IntVec2 {
        IntVec2::new(x, y)
    }

    #[test]
    fn unit_triangle_single_face() {
        let faces = upper_hull_lift(&[(v(1, 0), int(3)), (v(0, 1), int(2)), (v(0, 0), int(0))]);
        assert_eq!(faces.len(), 1);
        assert_eq!(faces[0].cell.len(), 3);
        assert_eq!(faces[0].affine.slope_x, int(3));
        assert_eq!(faces[0].affine.slope_y, int(2));
        assert_eq!(faces[0].affine.constant, int(0));
    }

    #[test]
    fn single_point_face() {
        let faces = upper_hull_lift(&[(v(0, 0), int(0))]);
        assert_eq!(faces.len(), 1);
        assert_eq!(faces[0].dimension(), 0);
    }

    #[test]
    fn point_below_enclosing_triangle_excluded() {
        let pts = [(v(0, 0), int(0)), (v(3, 0), int(0)), (v(0, 3), int(0)), (v(1, 1), int(-1))];
        let faces = upper_hull_lift(&pts);
        assert_eq!(faces.len(), 1);
        assert!(!faces[0].support.contains(&v(1, 1)));
        assert!(!faces.iter().any(|f| f.cell.contains(&v(1, 1))));
    }

    #[test]
    fn raised_interior_point_splits() {
        let pts = [(v(0, 0), int(0)), (v(3, 0), int(0)), (v(0, 3), int(0)), (v(1, 1), int(1))];
        let faces = upper_hull_lift(&pts);
        assert_eq!(faces.len(), 3);
        assert!(faces.iter().all(|f| f.cell.contains(&v(1, 1))));
    }

    #[test]
    fn collinear_chain() {
        // x^2 + 1*x + 0 : heights 0, 1, 0 on k = 2, 1, 0
        let pts = [(v(2, 0), int(0)), (v(1, 0), int(1)), (v(0, 0), int(0))];
        let faces = upper_hull_lift(&pts);
        assert_eq!(faces.len(), 2);
        let pts = [(v(2, 0), int(0)), (v(1, 0), int(-1)), (v(0, 0), int(0))];
        let faces = upper_hull_lift(&pts);
        assert_eq!(faces.len(), 1);
        assert_eq!(faces[0].support, vec![v(0, 0), v(2, 0)]);
        assert_eq!(hull_height(&faces, v(1, 0)), Some(int(0)));
    }

    fn lifted() -> impl Strategy<Value = Vec<(IntVec2, Rational)>> {
        proptest::collection::btree_map((0i64..4, 0i64..4), (-20i64..20, 1i64..4), 3..10).prop_map(|m| {
            m.into_iter().map(|((x, y), (n, d))| (v(x, y), rat(n, d))).collect()
        })
    }

    proptest! {
        #[test]
        fn hull_dominates_lifts(pts in lifted(), px in -10i64..10, py in -10i64..10) {
            let faces = upper_hull_lift(&pts);
            let corners: BTreeSet<IntVec2> = faces.iter().flat_map(|f| f.cell.iter().copied()).collect();
            let lift = |a: IntVec2| pts.iter().find(|p| p.0 == a).unwrap().1.clone();
            let x = (int(px), int(py));
            let value = |a: IntVec2, c: &Rational| &x.0 * int(a.x) + &x.1 * int(a.y) + c;
            let best_corner = corners.iter().map(|&a| value(a, &lift(a))).max().unwrap();
            for (a, c) in &pts {
                prop_assert!(value(*a, c) <= best_corner);
                let h = hull_height(&faces, *a).unwrap();
                prop_assert!(*c <= h);
                if corners.contains(a) {
                    prop_assert_eq!(c, &h);
                }
            }
        }
    }
}
