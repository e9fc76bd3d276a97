//! The linear system of a marked type: the marked points as integer-linear
//! functions of a root position and the edge lengths.

use std::collections::VecDeque;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::tree::MarkedTreeType;
use crate::curve::{Edge, PlaneTropicalCurve, Ray};
use crate::exact::{IntVec2, PointQ2, Rational};

/// Affine expression `c . unknowns` for each coordinate.
type Expr = (Vec<i64>, Vec<i64>);

/// Column layout: root `x, y`, then per slot the length up to its mark (or
/// the whole edge) and, for marked bounded edges, the remainder.
struct Layout {
    first: Vec<Option<usize>>,
    second: Vec<Option<usize>>,
    columns: usize,
}

fn layout(t: &MarkedTreeType) -> Layout {
    let s = &t.shape;
    let mut marked = vec![false; s.slot_count()];
    for &m in &t.marks {
        marked[m] = true;
    }
    let mut col = 2;
    let mut first = vec![None; s.slot_count()];
    let mut second = vec![None; s.slot_count()];
    for slot in 0..s.slot_count() {
        if !s.is_end(slot) || marked[slot] {
            first[slot] = Some(col);
            col += 1;
        }
        if !s.is_end(slot) && marked[slot] {
            second[slot] = Some(col);
            col += 1;
        }
    }
    Layout { first, second, columns: col }
}

fn add_scaled(e: &Expr, col: usize, v: IntVec2, sign: i64) -> Expr {
    let mut out = e.clone();
    out.0[col] += sign * v.x;
    out.1[col] += sign * v.y;
    out
}

/// Vertex expressions by walking the tree from vertex 0.
fn vertex_exprs(t: &MarkedTreeType, lay: &Layout) -> Vec<Expr> {
    let s = &t.shape;
    let n = lay.columns;
    let mut root = (vec![0; n], vec![0; n]);
    root.0[0] = 1;
    root.1[1] = 1;
    let mut exprs: Vec<Option<Expr>> = vec![None; s.vertices];
    exprs[0] = Some(root);
    let mut queue = VecDeque::from([0usize]);
    while let Some(v) = queue.pop_front() {
        for (slot, e) in s.edges.iter().enumerate() {
            let (w, sign) = if e.from == v {
                (e.to, 1)
            } else if e.to == v {
                (e.from, -1)
            } else {
                continue;
            };
            if exprs[w].is_some() {
                continue;
            }
            let base = exprs[v].clone().unwrap();
            let mut next = add_scaled(&base, lay.first[slot].unwrap(), e.vector, sign);
            if let Some(c) = lay.second[slot] {
                next = add_scaled(&next, c, e.vector, sign);
            }
            exprs[w] = Some(next);
            queue.push_back(w);
        }
    }
    exprs.into_iter().map(|e| e.expect("tree is connected")).collect()
}

/// Expression for each marked point.
fn mark_exprs(t: &MarkedTreeType, lay: &Layout, verts: &[Expr]) -> Vec<Expr> {
    let s = &t.shape;
    t.marks
        .iter()
        .map(|&slot| {
            let (v, dir) = if s.is_end(slot) {
                let e = &s.ends[slot - s.edges.len()];
                (e.vertex, e.dir)
            } else {
                let e = &s.edges[slot];
                (e.from, e.vector)
            };
            add_scaled(&verts[v], lay.first[slot].unwrap(), dir, 1)
        })
        .collect()
}

/// Square integer matrix of the type: rows `x`, `y` of each marked point.
pub fn system_matrix(t: &MarkedTreeType) -> Vec<Vec<i64>> {
    let lay = layout(t);
    let verts = vertex_exprs(t, &lay);
    let mut rows = Vec::new();
    for (x, y) in mark_exprs(t, &lay, &verts) {
        rows.push(x);
        rows.push(y);
    }
    rows
}

/// Determinant by fraction-free elimination.
pub fn bareiss_det(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    let mut a: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Unique solution of `m x = b`, or `None` when singular.
fn solve_linear(m: &[Vec<i64>], b: &[Rational]) -> Option<Vec<Rational>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> =
        m.iter().zip(b).map(|(r, bi)| r.iter().map(|&x| Rational::from_integer(x.into())).chain([bi.clone()]).collect()).collect();
    for k in 0..n {
        let p = (k..n).find(|&i| !a[i][k].is_zero())?;
        a.swap(k, p);
        let pivot = a[k][k].clone();
        for x in &mut a[k][k..] {
            *x = &*x / &pivot;
        }
        let row = a[k].clone();
        for (i, r) in a.iter_mut().enumerate() {
            if i != k && !r[k].is_zero() {
                let f = r[k].clone();
                for (x, y) in r[k..].iter_mut().zip(&row[k..]) {
                    *x -= &f * y;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n].clone()).collect())
}

/// Accepted solution of a marked type.
#[derive(Clone, Debug)]
pub struct TypeSolution {
    pub curve: PlaneTropicalCurve,
    /// Positions of the tree vertices, in shape order.
    pub positions: Vec<PointQ2>,
    pub multiplicity: u64,
}

#[derive(Clone, Debug)]
pub enum SolveOutcome {
    Solved(TypeSolution),
    /// The evaluation system is singular.
    Singular,
    /// The unique solution has a negative length.
    Infeasible,
    /// The unique solution has a zero length: the points sit on a wall.
    Wall,
}

/// Embedded curve of a tree shape at the given vertex positions.
pub(crate) fn embed(t: &MarkedTreeType, positions: &[PointQ2]) -> PlaneTropicalCurve {
    let s = &t.shape;
    let mut c = PlaneTropicalCurve::empty();
    c.vertices = positions.to_vec();
    for e in &s.edges {
        let w = e.vector.lattice_length();
        c.edges.push(Edge { from: e.from, to: e.to, weight: w });
    }
    for e in &s.ends {
        c.rays.push(Ray { base: e.vertex, dir: e.dir, weight: 1 });
    }
    c.canonical()
}

/// Solves the type exactly for the given points (one per mark).
///
/// Panics if `|det|` differs from the product of vertex multiplicities.
pub fn solve_type(t: &MarkedTreeType, pts: &[PointQ2]) -> SolveOutcome {
    assert_eq!(pts.len(), t.marks.len(), "one point per mark");
    let m = system_matrix(t);
    let det = bareiss_det(&m).abs();
    if det.is_zero() {
        return SolveOutcome::Singular;
    }
    assert_eq!(det, BigInt::from(t.multiplicity()), "determinant differs from the vertex multiplicity product");
    let b: Vec<Rational> = pts.iter().flat_map(|p| [p.x.clone(), p.y.clone()]).collect();
    let Some(x) = solve_linear(&m, &b) else {
        return SolveOutcome::Singular;
    };
    let lengths = &x[2..];
    if lengths.iter().any(|l| l.is_negative()) {
        return SolveOutcome::Infeasible;
    }
    if lengths.iter().any(|l| l.is_zero()) {
        return SolveOutcome::Wall;
    }
    let lay = layout(t);
    let positions: Vec<PointQ2> = vertex_exprs(t, &lay)
        .iter()
        .map(|(ex, ey)| {
            let eval = |e: &[i64]| e.iter().zip(&x).map(|(&c, v)| v * Rational::from_integer(c.into())).sum::<Rational>();
            PointQ2::new(eval(ex), eval(ey))
        })
        .collect();
    SolveOutcome::Solved(TypeSolution { curve: embed(t, &positions), positions, multiplicity: t.multiplicity() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumeration::tree::tree_shapes;

    fn line_type(marks: Vec<usize>) -> MarkedTreeType {
        MarkedTreeType { shape: tree_shapes(1).remove(0), marks }
    }

    #[test]
    fn bareiss_matches_hand_values() {
        assert_eq!(bareiss_det(&[vec![2, 1], vec![1, 3]]), BigInt::from(5));
        assert_eq!(bareiss_det(&[vec![0, 1], vec![1, 0]]), BigInt::from(-1));
        assert_eq!(bareiss_det(&[vec![1, 2], vec![2, 4]]), BigInt::zero());
        let m = vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]];
        assert_eq!(bareiss_det(&m), BigInt::from(4));
    }

    #[test]
    fn line_through_two_points() {
        let pts = [PointQ2::from_ints(0, 0), PointQ2::from_ints(3, 1)];
        let mut solved = Vec::new();
        for a in 0..3 {
            for b in 0..3 {
                if a == b {
                    continue;
                }
                if let SolveOutcome::Solved(s) = solve_type(&line_type(vec![a, b]), &pts) {
                    solved.push(s);
                }
            }
        }
        assert_eq!(solved.len(), 1);
        assert_eq!(solved[0].positions, vec![PointQ2::from_ints(2, 0)]);
        assert_eq!(solved[0].multiplicity, 1);
        assert!(solved[0].curve.contains(&pts[0]) && solved[0].curve.contains(&pts[1]));
    }

    #[test]
    fn marks_on_two_ends_always_split_properly() {
        let shape = tree_shapes(1).remove(0);
        assert!(shape.cut_ok(&[true, true, false], true));
        // a single cut leaves the vertex with two ends
        assert!(!shape.cut_ok(&[true, false, false], true));
        assert!(shape.cut_ok(&[true, false, false], false));
    }

    #[test]
    fn far_points_are_infeasible() {
        // on the horizontal end the first point must lie left of the vertex
        let pts = [PointQ2::from_ints(5, 0), PointQ2::from_ints(0, -7)];
        let shape = tree_shapes(1).remove(0);
        let left = shape.ends.iter().position(|e| e.dir == IntVec2::new(-1, 0)).unwrap();
        let down = shape.ends.iter().position(|e| e.dir == IntVec2::new(0, -1)).unwrap();
        let t = MarkedTreeType { shape, marks: vec![left, down] };
        assert!(matches!(solve_type(&t, &pts), SolveOutcome::Infeasible));
    }

    #[test]
    fn equal_heights_hit_a_wall() {
        let pts = [PointQ2::from_ints(0, 0), PointQ2::from_ints(3, 0)];
        let shape = tree_shapes(1).remove(0);
        let left = shape.ends.iter().position(|e| e.dir == IntVec2::new(-1, 0)).unwrap();
        let diag = shape.ends.iter().position(|e| e.dir == IntVec2::new(1, 1)).unwrap();
        let t = MarkedTreeType { shape, marks: vec![left, diag] };
        assert!(matches!(solve_type(&t, &pts), SolveOutcome::Wall));
    }
}
