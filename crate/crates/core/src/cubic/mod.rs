//! Group law on the cycle of a genus-one plane tropical cubic.
//!
//! Points of the cycle are [`LoopPoint`]s: an edge of the oriented cycle and
//! a parameter in `[0, 1)` along it. Points elsewhere on the curve are moved
//! to the cycle by [`CubicContext::retract`], and the sum of `P` and `Q` is
//! obtained from two chord constructions through the base point.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::curve::{PlaneTropicalCurve, Ray};
use crate::exact::{int, IntVec2, PointQ2, Rational};
use crate::intersection::{stable_intersection, IntersectionError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CubicError {
    #[error("curve has genus {0}, expected 1")]
    NotGenusOne(i64),
    #[error("curve is not connected")]
    Disconnected,
    #[error("point {0} is not on the curve")]
    NotOnCurve(Box<PointQ2>),
    #[error("non-generic configuration: {0}")]
    NonGeneric(String),
    #[error("non-generic configuration: points on a common end of every line through them")]
    LineFamily,
    #[error(transparent)]
    Intersection(#[from] IntersectionError),
}

/// Position on the cycle: `edge` indexes the oriented cycle, `t` in `[0, 1)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct LoopPoint {
    pub edge: usize,
    #[serde(with = "crate::exact::rational::serde_str")]
    pub t: Rational,
}

/// The cycle of a genus-one curve as a closed walk `vertices[k] -> vertices[k+1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cycle {
    pub vertices: Vec<usize>,
    /// Index into the curve's edge list for each step.
    pub edges: Vec<usize>,
}

/// The unique cycle of `c`, oriented counter-clockwise and starting at its
/// smallest vertex.
pub fn extract_loop(c: &PlaneTropicalCurve) -> Result<Cycle, CubicError> {
    let comps: BTreeSet<usize> = c.vertex_components().into_iter().collect();
    if comps.len() > 1 || !c.lines.is_empty() {
        return Err(CubicError::Disconnected);
    }
    let g = c.genus();
    if g != 1 {
        return Err(CubicError::NotGenusOne(g));
    }
    let n = c.vertices.len();
    let mut alive: Vec<bool> = vec![true; c.edges.len()];
    let mut degree = vec![0usize; n];
    for e in &c.edges {
        degree[e.from] += 1;
        degree[e.to] += 1;
    }
    let mut queue: VecDeque<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    while let Some(v) = queue.pop_front() {
        for (i, e) in c.edges.iter().enumerate() {
            if alive[i] && (e.from == v || e.to == v) {
                alive[i] = false;
                let w = if e.from == v { e.to } else { e.from };
                degree[v] -= 1;
                degree[w] -= 1;
                if degree[w] == 1 {
                    queue.push_back(w);
                }
            }
        }
    }
    let start = (0..n).find(|&v| degree[v] == 2).expect("genus one leaves a cycle");
    let mut vertices = vec![start];
    let mut edges = Vec::new();
    let mut prev_edge = usize::MAX;
    let mut v = start;
    loop {
        let (i, e) = c
            .edges
            .iter()
            .enumerate()
            .find(|(i, e)| alive[*i] && *i != prev_edge && (e.from == v || e.to == v))
            .unwrap();
        let w = if e.from == v { e.to } else { e.from };
        edges.push(i);
        prev_edge = i;
        if w == start {
            break;
        }
        vertices.push(w);
        v = w;
    }
    let area: Rational = (0..vertices.len())
        .map(|k| {
            let (p, q) = (&c.vertices[vertices[k]], &c.vertices[vertices[(k + 1) % vertices.len()]]);
            &p.x * &q.y - &p.y * &q.x
        })
        .sum();
    if area.is_negative() {
        vertices[1..].reverse();
        edges.reverse();
    }
    Ok(Cycle { vertices, edges })
}

/// A genus-one curve with its cycle and a base point.
#[derive(Clone, Debug)]
pub struct CubicContext {
    pub curve: PlaneTropicalCurve,
    pub cycle: Cycle,
    pub base: LoopPoint,
}

impl CubicContext {
    pub fn new(curve: &PlaneTropicalCurve, base: LoopPoint) -> Result<Self, CubicError> {
        let curve = curve.canonical();
        let cycle = extract_loop(&curve)?;
        let base = normalize(base, cycle.edges.len());
        Ok(CubicContext { curve, cycle, base })
    }

    pub fn len(&self) -> usize {
        self.cycle.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycle.edges.is_empty()
    }

    /// Vertex where cycle edge `k` starts; indices wrap.
    pub fn corner(&self, k: usize) -> &PointQ2 {
        &self.curve.vertices[self.cycle.vertices[k % self.len()]]
    }

    /// Loop point from a parameter `r`: edge `floor(r)`, fraction `r - floor(r)`.
    pub fn loop_point(&self, r: &Rational) -> LoopPoint {
        normalize(LoopPoint { edge: 0, t: r.clone() }, self.len())
    }

    /// Inverse of [`CubicContext::loop_point`].
    pub fn param(&self, p: &LoopPoint) -> Rational {
        int(p.edge as i64) + &p.t
    }

    pub fn position(&self, p: &LoopPoint) -> PointQ2 {
        let (a, b) = (self.corner(p.edge), self.corner(p.edge + 1));
        PointQ2::new(&a.x + &p.t * (&b.x - &a.x), &a.y + &p.t * (&b.y - &a.y))
    }

    /// Lattice length of cycle edge `k`.
    pub fn edge_length(&self, k: usize) -> Rational {
        self.curve.edge_direction(self.cycle.edges[k]).1
    }

    /// Total lattice length of the cycle.
    pub fn circumference(&self) -> Rational {
        (0..self.len()).map(|k| self.edge_length(k)).sum()
    }

    /// Lattice arc length from the start of the cycle to `p`.
    pub fn arc(&self, p: &LoopPoint) -> Rational {
        let before: Rational = (0..p.edge).map(|k| self.edge_length(k)).sum();
        before + &p.t * self.edge_length(p.edge)
    }

    /// Loop point at arc length `s` (taken modulo the circumference).
    pub fn at_arc(&self, s: &Rational) -> LoopPoint {
        let total = self.circumference();
        let mut s = s - (s / &total).floor() * &total;
        for k in 0..self.len() {
            let l = self.edge_length(k);
            if s < l {
                return LoopPoint { edge: k, t: s / l };
            }
            s -= l;
        }
        unreachable!("arc reduced modulo the circumference")
    }

    /// Loop point at `p` if `p` lies on the cycle.
    pub fn locate(&self, p: &PointQ2) -> Option<LoopPoint> {
        for k in 0..self.len() {
            let (a, b) = (self.corner(k), self.corner(k + 1));
            if crate::curve::graph::on_segment(a, b, p) {
                let (ex, ey) = b.sub(a);
                let (px, py) = p.sub(a);
                let t = if ex.is_zero() { py / ey } else { px / ex };
                return Some(normalize(LoopPoint { edge: k, t }, self.len()));
            }
        }
        None
    }

    /// Point of the cycle where the tree containing `p` is attached.
    pub fn retract(&self, p: &PointQ2) -> Result<LoopPoint, CubicError> {
        if let Some(lp) = self.locate(p) {
            return Ok(lp);
        }
        let c = &self.curve;
        let start = if let Some(v) = c.vertices.iter().position(|v| v == p) {
            v
        } else if let Some(e) = c
            .edges
            .iter()
            .find(|e| crate::curve::graph::on_segment(&c.vertices[e.from], &c.vertices[e.to], p))
        {
            e.from
        } else if let Some(r) = c.rays.iter().find(|r| crate::curve::graph::on_ray(&c.vertices[r.base], r.dir, p)) {
            r.base
        } else {
            return Err(CubicError::NotOnCurve(Box::new(p.clone())));
        };
        let on_cycle: BTreeSet<usize> = self.cycle.vertices.iter().copied().collect();
        let cycle_edges: BTreeSet<usize> = self.cycle.edges.iter().copied().collect();
        let mut seen = vec![false; c.vertices.len()];
        let mut queue = VecDeque::from([start]);
        seen[start] = true;
        while let Some(v) = queue.pop_front() {
            if on_cycle.contains(&v) {
                let k = self.cycle.vertices.iter().position(|&w| w == v).unwrap();
                return Ok(LoopPoint { edge: k, t: Rational::zero() });
            }
            for (i, e) in c.edges.iter().enumerate() {
                if cycle_edges.contains(&i) {
                    continue;
                }
                for (a, b) in [(e.from, e.to), (e.to, e.from)] {
                    if a == v && !seen[b] {
                        seen[b] = true;
                        queue.push_back(b);
                    }
                }
            }
        }
        unreachable!("connected curve reaches its cycle")
    }

    /// Third point of the curve on the tropical line through `p` and `q`.
    pub fn third_point(&self, p: &PointQ2, q: &PointQ2) -> Result<PointQ2, CubicError> {
        for x in [p, q] {
            if !self.curve.contains(x) {
                return Err(CubicError::NotOnCurve(Box::new(x.clone())));
            }
        }
        let line = line_through(p, q)?;
        self.residual(&line, p, q)
    }

    /// Third point of the curve on a given tropical line through `p` and `q`:
    /// the stable intersection as a divisor, minus `p` and `q`.
    pub fn residual(&self, line: &PlaneTropicalCurve, p: &PointQ2, q: &PointQ2) -> Result<PointQ2, CubicError> {
        let mut divisor: BTreeMap<PointQ2, u64> =
            stable_intersection(line, &self.curve)?.into_iter().map(|x| (x.location, x.multiplicity)).collect();
        for x in [p, q] {
            match divisor.get_mut(x) {
                Some(m) if *m > 1 => *m -= 1,
                Some(_) => {
                    divisor.remove(x);
                }
                None => return Err(CubicError::NonGeneric(format!("{x} is not an isolated intersection point"))),
            }
        }
        match divisor.into_iter().collect::<Vec<_>>().as_slice() {
            [(r, 1)] => Ok(r.clone()),
            rest => Err(CubicError::NonGeneric(format!("residual intersection {rest:?}"))),
        }
    }

    /// Retracted third point. When `p` and `q` lie on a common end of a whole
    /// family of lines, members of the family are tried in turn; all generic
    /// members give the same retraction.
    pub fn chord(&self, p: &PointQ2, q: &PointQ2) -> Result<LoopPoint, CubicError> {
        match self.third_point(p, q) {
            Err(CubicError::LineFamily) => {}
            other => return self.retract(&other?),
        }
        let mut last = CubicError::LineFamily;
        for s in 1..=8 {
            match self.residual(&family_line(p, q, s), p, q) {
                Ok(r) => return self.retract(&r),
                Err(e) => last = e,
            }
        }
        Err(last)
    }

    /// `P + Q`: the chord point of `P` and `Q`, then the chord point of that
    /// with the base point.
    pub fn add(&self, p: &LoopPoint, q: &LoopPoint) -> Result<LoopPoint, CubicError> {
        let r = self.chord(&self.position(p), &self.position(q))?;
        self.chord(&self.position(&self.base), &self.position(&r))
    }

    /// Candidate inverse from the arc coordinate: `2 O - P`.
    pub fn inverse(&self, p: &LoopPoint) -> LoopPoint {
        self.at_arc(&(int(2) * self.arc(&self.base) - self.arc(p)))
    }
}

fn normalize(p: LoopPoint, n: usize) -> LoopPoint {
    let whole = p.t.floor();
    let t = &p.t - &whole;
    let k = (p.edge as i64 + whole.to_integer().to_i64().expect("small loop parameter")).rem_euclid(n as i64) as usize;
    LoopPoint { edge: k, t }
}

/// The unique tropical line through `p` and `q` (with vertex position), or an
/// error when there is none or more than one.
pub fn line_through(p: &PointQ2, q: &PointQ2) -> Result<PlaneTropicalCurve, CubicError> {
    if p == q {
        return Err(CubicError::NonGeneric("equal points".into()));
    }
    // Directions from a point on each end of the line towards the vertex.
    let towards = [IntVec2::new(1, 0), IntVec2::new(0, 1), IntVec2::new(-1, -1)];
    let mut found: Vec<PointQ2> = Vec::new();
    for &u in &towards {
        for &w in &towards {
            let (dx, dy) = q.sub(p);
            if u == w {
                // p and q on the same end: infinitely many lines.
                if (int(u.x) * &dy - int(u.y) * &dx).is_zero() {
                    return Err(CubicError::LineFamily);
                }
                continue;
            }
            // p + a u = q + b w
            let det = int(crate::exact::det2(u, w));
            let a = (&dx * int(-w.y) + &dy * int(w.x)) / &det * int(-1);
            let b = (int(u.x) * &dy - int(u.y) * &dx) / &det * int(-1);
            if a.is_negative() || b.is_negative() {
                continue;
            }
            let v = p.offset(u, &a);
            if !found.contains(&v) {
                found.push(v);
            }
        }
    }
    if found.len() != 1 {
        return Err(CubicError::NonGeneric(format!("{} lines through the points", found.len())));
    }
    Ok(tropical_line(found.pop().unwrap()))
}

/// Member of the family of lines through `p` and `q` when both lie on a
/// common end: the vertex sits `s` lattice steps beyond the farther point.
pub fn family_line(p: &PointQ2, q: &PointQ2, s: i64) -> PlaneTropicalCurve {
    let (dx, dy) = q.sub(p);
    let w = if dy.is_zero() {
        IntVec2::new(1, 0)
    } else if dx.is_zero() {
        IntVec2::new(0, 1)
    } else {
        IntVec2::new(-1, -1)
    };
    let far = if p.pair(w) > q.pair(w) { p } else { q };
    tropical_line(far.offset(w, &int(s)))
}

/// Tropical line with the given vertex.
pub fn tropical_line(vertex: PointQ2) -> PlaneTropicalCurve {
    PlaneTropicalCurve {
        vertices: vec![vertex],
        edges: vec![],
        rays: [IntVec2::new(-1, 0), IntVec2::new(0, -1), IntVec2::new(1, 1)]
            .into_iter()
            .map(|dir| Ray { base: 0, dir, weight: 1 })
            .collect(),
        lines: vec![],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::corner_locus;
    use crate::exact::rat;
    use crate::fixtures;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn context() -> CubicContext {
        let (c, _) = corner_locus(&fixtures::smooth_cubic());
        CubicContext::new(&c, LoopPoint { edge: 0, t: rat(1, 3) }).unwrap()
    }

    fn sample(ctx: &CubicContext, rng: &mut ChaCha8Rng) -> LoopPoint {
        LoopPoint { edge: rng.gen_range(0..ctx.len()), t: rat(rng.gen_range(1..1000), 1009) }
    }

    fn same_arc(ctx: &CubicContext, a: &Rational, b: &Rational) -> bool {
        let d = (a - b) / ctx.circumference();
        d.is_integer()
    }

    #[test]
    fn loops() {
        let ctx = context();
        assert_eq!(ctx.len(), 9);
        let (c, _) = corner_locus(&fixtures::rational_cubic());
        assert_eq!(extract_loop(&c), Err(CubicError::NotGenusOne(0)));
        let (c, _) = corner_locus(&fixtures::parallelogram_cubic());
        assert!(extract_loop(&c.canonical()).is_ok());
    }

    #[test]
    fn loop_coordinates() {
        let ctx = context();
        let p = ctx.loop_point(&rat(29, 3));
        assert_eq!(p, LoopPoint { edge: 0, t: rat(2, 3) });
        assert_eq!(ctx.locate(&ctx.position(&p)), Some(p.clone()));
        assert_eq!(ctx.at_arc(&ctx.arc(&p)), p);
        assert_eq!(ctx.retract(&ctx.position(&p)).unwrap(), p);
    }

    #[test]
    fn line_through_points() {
        let l = line_through(&PointQ2::from_ints(0, 0), &PointQ2::from_ints(3, 1)).unwrap();
        assert_eq!(l.vertices, vec![PointQ2::from_ints(2, 0)]);
        assert!(line_through(&PointQ2::from_ints(0, 0), &PointQ2::from_ints(3, 0)).is_err());
        assert!(line_through(&PointQ2::from_ints(0, 0), &PointQ2::from_ints(0, 0)).is_err());
    }

    #[test]
    fn retract_from_a_ray() {
        let ctx = context();
        let r = &ctx.curve.rays[0];
        let far = ctx.curve.vertices[r.base].offset(r.dir, &int(100));
        let lp = ctx.retract(&far).unwrap();
        assert_eq!(lp.t, Rational::zero());
        assert!(ctx.retract(&PointQ2::from_ints(1000, -1000)).is_err());
    }

    #[test]
    fn group_law_matches_arc_length() {
        let ctx = context();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let o = ctx.base.clone();
        let mut checked = 0;
        while checked < 10 {
            let (p, q) = (sample(&ctx, &mut rng), sample(&ctx, &mut rng));
            let Ok(s) = ctx.add(&p, &q) else { continue };
            assert!(same_arc(&ctx, &ctx.arc(&s), &(ctx.arc(&p) + ctx.arc(&q) - ctx.arc(&o))));
            assert_eq!(ctx.add(&q, &p).unwrap(), s);
            checked += 1;
        }
    }

    #[test]
    fn identity_and_inverse() {
        let ctx = context();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let (mut identities, mut inverses) = (0, 0);
        for _ in 0..40 {
            let p = sample(&ctx, &mut rng);
            if let Ok(s) = ctx.add(&p, &ctx.base) {
                assert_eq!(s, p);
                identities += 1;
            }
            if let Ok(z) = ctx.add(&p, &ctx.inverse(&p)) {
                assert_eq!(z, ctx.base);
                inverses += 1;
            }
        }
        assert!(identities >= 30 && inverses >= 30, "{identities} {inverses}");
    }

    #[test]
    fn associativity() {
        let ctx = context();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut checked = 0;
        while checked < 5 {
            let (p, q, r) = (sample(&ctx, &mut rng), sample(&ctx, &mut rng), sample(&ctx, &mut rng));
            let left = ctx.add(&p, &q).and_then(|pq| ctx.add(&pq, &r));
            let right = ctx.add(&q, &r).and_then(|qr| ctx.add(&p, &qr));
            if let (Ok(a), Ok(b)) = (left, right) {
                assert_eq!(a, b);
                checked += 1;
            }
        }
    }

    #[test]
    fn third_points_of_a_line_family_retract_together() {
        // Two cycle points at the same height: every line with its vertex to
        // the right of both passes through them.
        let ctx = context();
        let mut distinct = 0;
        for k in 0..ctx.len() {
            let p1 = ctx.position(&LoopPoint { edge: k, t: rat(1, 2) });
            let Some(p2) = (0..ctx.len()).filter(|&j| j != k).find_map(|j| {
                let (a, b) = (ctx.corner(j), ctx.corner(j + 1));
                let (lo, hi) = if a.y < b.y { (a, b) } else { (b, a) };
                (lo.y < p1.y && p1.y < hi.y).then(|| {
                    let t = (&p1.y - &lo.y) / (&hi.y - &lo.y);
                    PointQ2::new(&lo.x + t * (&hi.x - &lo.x), p1.y.clone())
                })
            }) else {
                continue;
            };
            assert!(matches!(ctx.third_point(&p1, &p2), Err(CubicError::LineFamily)));
            let third: Vec<PointQ2> = [1, 5]
                .iter()
                .filter_map(|&s| ctx.residual(&family_line(&p1, &p2, s), &p1, &p2).ok())
                .collect();
            if third.len() == 2 && third[0] != third[1] {
                assert_eq!(ctx.retract(&third[0]).unwrap(), ctx.retract(&third[1]).unwrap());
                distinct += 1;
            }
        }
        assert!(distinct > 0);
    }

    #[test]
    fn equal_points_are_rejected() {
        let ctx = context();
        let p = LoopPoint { edge: 2, t: rat(1, 2) };
        assert!(matches!(ctx.add(&p, &p), Err(CubicError::NonGeneric(_))));
    }
}
