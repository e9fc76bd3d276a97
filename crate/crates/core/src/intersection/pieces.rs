//! Curves cut into straight pieces `base + t * dir` over an ordered field.

use serde::{Deserialize, Serialize};

use super::IntersectionError;
use crate::curve::PlaneTropicalCurve;
use crate::exact::{det2, IntVec2, OrderedField};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum PieceKind {
    Segment,
    Ray,
    Line,
}

/// Index of a piece within its curve.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum PieceId {
    Edge(usize),
    Ray(usize),
    Line(usize),
}

#[derive(Clone, Debug)]
pub(crate) struct Piece<F> {
    pub id: PieceId,
    pub base: (F, F),
    pub dir: IntVec2,
    pub weight: i64,
    /// Parameter range; `None` is unbounded on that side.
    pub lo: Option<F>,
    pub hi: Option<F>,
}

impl<F: OrderedField> Piece<F> {
    pub fn at(&self, t: &F) -> (F, F) {
        (
            self.base.0.plus(&t.times(&F::from_int(self.dir.x))),
            self.base.1.plus(&t.times(&F::from_int(self.dir.y))),
        )
    }

    fn contains_param(&self, t: &F) -> bool {
        self.lo.as_ref().is_none_or(|lo| t >= lo) && self.hi.as_ref().is_none_or(|hi| t <= hi)
    }

    fn is_end(&self, t: &F) -> bool {
        self.lo.as_ref() == Some(t) || self.hi.as_ref() == Some(t)
    }
}

/// The pieces of `c` translated by `shift`.
pub(crate) fn pieces_of<F: OrderedField>(c: &PlaneTropicalCurve, shift: &(F, F)) -> Vec<Piece<F>> {
    let point = |p: &crate::exact::PointQ2| (F::from_rational(&p.x).plus(&shift.0), F::from_rational(&p.y).plus(&shift.1));
    let mut out = Vec::new();
    for (i, e) in c.edges.iter().enumerate() {
        let (dir, len) = c.edge_direction(i);
        out.push(Piece {
            id: PieceId::Edge(i),
            base: point(&c.vertices[e.from]),
            dir,
            weight: e.weight,
            lo: Some(F::from_int(0)),
            hi: Some(F::from_rational(&len)),
        });
    }
    for (i, r) in c.rays.iter().enumerate() {
        out.push(Piece {
            id: PieceId::Ray(i),
            base: point(&c.vertices[r.base]),
            dir: r.dir,
            weight: r.weight,
            lo: Some(F::from_int(0)),
            hi: None,
        });
    }
    for (i, l) in c.lines.iter().enumerate() {
        out.push(Piece { id: PieceId::Line(i), base: point(&l.base), dir: l.dir, weight: l.weight, lo: None, hi: None });
    }
    out
}

pub(crate) struct Hit<F> {
    pub x: F,
    pub y: F,
    pub mult: u64,
    pub first: PieceId,
    pub second: PieceId,
}

/// `d x u` for a field vector `d` and lattice vector `u`.
fn cross<F: OrderedField>(d: &(F, F), u: IntVec2) -> F {
    d.0.times(&F::from_int(u.y)).minus(&d.1.times(&F::from_int(u.x)))
}

/// Where two parallel pieces overlap (closed intervals), report it.
fn collinear_overlap<F: OrderedField>(p: &Piece<F>, q: &Piece<F>) -> bool {
    let d = (q.base.0.minus(&p.base.0), q.base.1.minus(&p.base.1));
    if !cross(&d, p.dir).is_zero_value() {
        return false;
    }
    // q's parameter s maps to k + sigma * s on p.
    let k = d.0.times(&F::from_int(p.dir.x)).plus(&d.1.times(&F::from_int(p.dir.y))).over(&F::from_int(p.dir.dot(p.dir)));
    let sigma = if q.dir == p.dir { 1 } else { -1 };
    let map = |s: &F| k.plus(&s.times(&F::from_int(sigma)));
    let (lo, hi) = if sigma == 1 {
        (q.lo.as_ref().map(map), q.hi.as_ref().map(map))
    } else {
        (q.hi.as_ref().map(map), q.lo.as_ref().map(map))
    };
    let lower = match (&p.lo, &lo) {
        (Some(a), Some(b)) => Some(a.clone().max(b.clone())),
        (a, b) => a.clone().or(b.clone()),
    };
    let upper = match (&p.hi, &hi) {
        (Some(a), Some(b)) => Some(a.clone().min(b.clone())),
        (a, b) => a.clone().or(b.clone()),
    };
    match (lower, upper) {
        (Some(l), Some(u)) => l <= u,
        _ => true,
    }
}

/// Pairwise crossings of two piece sets, with transversality enforced.
pub(crate) fn intersect<F: OrderedField>(a: &[Piece<F>], b: &[Piece<F>]) -> Result<Vec<Hit<F>>, IntersectionError> {
    let mut hits = Vec::new();
    for p in a {
        for q in b {
            let det = det2(p.dir, q.dir);
            if det == 0 {
                if collinear_overlap(p, q) {
                    return Err(IntersectionError::NonTransverse(format!("{:?} and {:?} share a segment", p.id, q.id)));
                }
                continue;
            }
            let d = (q.base.0.minus(&p.base.0), q.base.1.minus(&p.base.1));
            let fdet = F::from_int(det);
            let t = cross(&d, q.dir).over(&fdet);
            let s = cross(&d, p.dir).over(&fdet);
            if !p.contains_param(&t) || !q.contains_param(&s) {
                continue;
            }
            if p.is_end(&t) || q.is_end(&s) {
                return Err(IntersectionError::NonTransverse(format!("{:?} and {:?} meet at a vertex", p.id, q.id)));
            }
            let (x, y) = p.at(&t);
            hits.push(Hit { x, y, mult: (p.weight * q.weight * det.abs()) as u64, first: p.id, second: q.id });
        }
    }
    Ok(hits)
}
