use std::collections::BTreeMap;

use num_traits::Zero;

use super::pieces::{pieces_of, Piece};
use crate::curve::{Edge, Line, PlaneTropicalCurve, Ray};
use crate::exact::{det2, int, PointQ2, Rational};

/// Overlay of two curves: pieces are split wherever they cross or touch,
/// overlapping parts add their weights, and the result is canonicalised.
pub fn union(c1: &PlaneTropicalCurve, c2: &PlaneTropicalCurve) -> PlaneTropicalCurve {
    let zero = (Rational::zero(), Rational::zero());
    let mut pieces: Vec<Piece<Rational>> = pieces_of(c1, &zero);
    pieces.extend(pieces_of(c2, &zero));
    let vertices: Vec<&PointQ2> = c1.vertices.iter().chain(&c2.vertices).collect();

    let mut out = PlaneTropicalCurve::empty();
    let mut index: BTreeMap<PointQ2, usize> = BTreeMap::new();
    let mut vertex = |p: PointQ2, out: &mut PlaneTropicalCurve| {
        *index.entry(p.clone()).or_insert_with(|| {
            out.vertices.push(p);
            out.vertices.len() - 1
        })
    };

    for p in &pieces {
        let mut cuts: Vec<Rational> = p.lo.iter().chain(p.hi.iter()).cloned().collect();
        for v in &vertices {
            if let Some(t) = param_on(p, v) {
                cuts.push(t);
            }
        }
        for q in &pieces {
            let det = det2(p.dir, q.dir);
            let d = (&q.base.0 - &p.base.0, &q.base.1 - &p.base.1);
            if det != 0 {
                let t = (&d.0 * int(q.dir.y) - &d.1 * int(q.dir.x)) / int(det);
                let s = (&d.0 * int(p.dir.y) - &d.1 * int(p.dir.x)) / int(det);
                if in_range(p, &t) && in_range(q, &s) {
                    cuts.push(t);
                }
            } else {
                for s in q.lo.iter().chain(q.hi.iter()) {
                    let (x, y) = q.at(s);
                    if let Some(t) = param_on(p, &PointQ2::new(x, y)) {
                        cuts.push(t);
                    }
                }
            }
        }
        cuts.sort();
        cuts.dedup();
        if cuts.is_empty() {
            out.lines.push(Line { base: PointQ2::new(p.base.0.clone(), p.base.1.clone()), dir: p.dir, weight: p.weight });
            continue;
        }
        let ids: Vec<usize> = cuts
            .iter()
            .map(|t| {
                let (x, y) = p.at(t);
                vertex(PointQ2::new(x, y), &mut out)
            })
            .collect();
        for w in ids.windows(2) {
            out.edges.push(Edge { from: w[0], to: w[1], weight: p.weight });
        }
        if p.lo.is_none() {
            out.rays.push(Ray { base: ids[0], dir: -p.dir, weight: p.weight });
        }
        if p.hi.is_none() {
            out.rays.push(Ray { base: *ids.last().unwrap(), dir: p.dir, weight: p.weight });
        }
    }
    out.canonical()
}

fn in_range(p: &Piece<Rational>, t: &Rational) -> bool {
    p.lo.as_ref().is_none_or(|lo| t >= lo) && p.hi.as_ref().is_none_or(|hi| t <= hi)
}

/// Parameter of `v` on `p` when it lies there.
fn param_on(p: &Piece<Rational>, v: &PointQ2) -> Option<Rational> {
    let (dx, dy) = (&v.x - &p.base.0, &v.y - &p.base.1);
    if !(&dx * int(p.dir.y) - &dy * int(p.dir.x)).is_zero() {
        return None;
    }
    let t = (dx * int(p.dir.x) + dy * int(p.dir.y)) / int(p.dir.dot(p.dir));
    in_range(p, &t).then_some(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::corner_locus;
    use crate::exact::IntVec2;
    use crate::tropical::parse;

    fn locus(text: &str) -> PlaneTropicalCurve {
        corner_locus(&parse(text).unwrap()).0
    }

    #[test]
    fn two_lines_cross() {
        let u = union(&locus("x + y + 0"), &locus("-1*x + 1*y + 0"));
        assert!(u.check_balancing().balanced);
        assert_eq!(u.degree(), Some(2));
        assert_eq!(u.vertices.len(), 3);
        let crossing = u.vertices.iter().position(|v| *v == PointQ2::from_ints(0, -1)).unwrap();
        assert_eq!(u.valence(crossing), 4);
    }

    #[test]
    fn line_with_itself_doubles() {
        let l = locus("x + y + 0");
        let u = union(&l, &l);
        assert!(u.equivalent(&locus("x^2 + y^2 + 0")));
        assert!(u.rays.iter().all(|r| r.weight == 2));
    }

    #[test]
    fn product_locus_is_union() {
        let g1 = parse("x + 2*y + 0").unwrap();
        let g2 = parse("-1*x^2 + 1*x*y + -1*y^2 + 1*x + 1*y + 0").unwrap();
        let prod = corner_locus(&g1.trop_mul(&g2)).0;
        let u = union(&corner_locus(&g1).0, &corner_locus(&g2).0);
        assert!(prod.equivalent(&u));
    }

    #[test]
    fn standalone_lines() {
        let a = locus("x + 0");
        let b = locus("y + 0");
        let u = union(&a, &b);
        assert_eq!(u.vertices, vec![PointQ2::origin()]);
        assert_eq!(u.rays.len(), 4);
        let same = union(&a, &a);
        assert_eq!(same.lines.len(), 1);
        assert_eq!(same.lines[0].weight, 2);
        assert_eq!(same.lines[0].dir, IntVec2::new(0, 1));
    }
}
