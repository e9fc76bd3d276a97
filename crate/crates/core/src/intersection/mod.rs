//! Intersections and unions of plane tropical curves.

mod pieces;
pub mod union;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::curve::PlaneTropicalCurve;
use crate::exact::{EpsScalar, IntVec2, OrderedField, PointQ2, Rational};

pub use pieces::{PieceId, PieceKind};
use pieces::{pieces_of, Hit};
pub use union::union;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IntersectionError {
    #[error("non-transverse intersection: {0}")]
    NonTransverse(String),
    #[error("curve has no degree")]
    NoDegree,
    #[error("no generic perturbation found in the schedule")]
    ScheduleExhausted,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Provenance {
    Transverse(PieceId, PieceId),
    StableLimit,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct IntersectionPoint {
    #[serde(rename = "pt")]
    pub location: PointQ2,
    #[serde(rename = "mult")]
    pub multiplicity: u64,
    #[serde(skip, default = "stable_tag")]
    pub provenance: Provenance,
}

fn stable_tag() -> Provenance {
    Provenance::StableLimit
}

/// Points where the two curves cross, each with multiplicity
/// `w1 * w2 * |det(u1, u2)|`. Fails when a vertex of one curve lies on the
/// other or when the curves share a segment.
pub fn transverse_intersections(
    c1: &PlaneTropicalCurve,
    c2: &PlaneTropicalCurve,
) -> Result<Vec<IntersectionPoint>, IntersectionError> {
    let zero = (Rational::from_int(0), Rational::from_int(0));
    let hits = pieces::intersect(&pieces_of::<Rational>(c1, &zero), &pieces_of::<Rational>(c2, &zero))?;
    let mut out: Vec<IntersectionPoint> = hits
        .into_iter()
        .map(|h| IntersectionPoint {
            location: PointQ2::new(h.x, h.y),
            multiplicity: h.mult,
            provenance: Provenance::Transverse(h.first, h.second),
        })
        .collect();
    out.sort();
    Ok(out)
}

/// Sum of transverse multiplicities; both curves must have a degree.
pub fn bezout_sum(c1: &PlaneTropicalCurve, c2: &PlaneTropicalCurve) -> Result<u64, IntersectionError> {
    c1.degree().ok_or(IntersectionError::NoDegree)?;
    c2.degree().ok_or(IntersectionError::NoDegree)?;
    Ok(transverse_intersections(c1, c2)?.iter().map(|p| p.multiplicity).sum())
}

/// Perturbation directions `(1, p)` for the primes `p` in order.
pub fn perturbation_schedule() -> impl Iterator<Item = IntVec2> {
    (2i64..).filter(|&n| (2..n).take_while(|k| k * k <= n).all(|k| n % k != 0)).map(|p| IntVec2::new(1, p))
}

const SCHEDULE_LENGTH: usize = 64;

/// Stable intersection: translate `c2` by an infinitesimal multiple of the
/// first generic direction of the schedule and take limits.
pub fn stable_intersection(
    c1: &PlaneTropicalCurve,
    c2: &PlaneTropicalCurve,
) -> Result<Vec<IntersectionPoint>, IntersectionError> {
    for v in perturbation_schedule().take(SCHEDULE_LENGTH) {
        match stable_intersection_along(c1, c2, v) {
            Err(IntersectionError::NonTransverse(_)) => continue,
            other => return other,
        }
    }
    Err(IntersectionError::ScheduleExhausted)
}

/// Stable intersection with the perturbation direction fixed to `v`.
pub fn stable_intersection_along(
    c1: &PlaneTropicalCurve,
    c2: &PlaneTropicalCurve,
    v: IntVec2,
) -> Result<Vec<IntersectionPoint>, IntersectionError> {
    let zero = (EpsScalar::from_int(0), EpsScalar::from_int(0));
    let shift = (EpsScalar::linear(Rational::from_int(0), Rational::from_int(v.x)), EpsScalar::linear(Rational::from_int(0), Rational::from_int(v.y)));
    let hits: Vec<Hit<EpsScalar>> = pieces::intersect(&pieces_of(c1, &zero), &pieces_of(c2, &shift))?;
    let mut merged: BTreeMap<PointQ2, u64> = BTreeMap::new();
    for h in hits {
        let x = h.x.limit().expect("bounded intersection point");
        let y = h.y.limit().expect("bounded intersection point");
        *merged.entry(PointQ2::new(x, y)).or_insert(0) += h.mult;
    }
    Ok(merged
        .into_iter()
        .map(|(location, multiplicity)| IntersectionPoint { location, multiplicity, provenance: Provenance::StableLimit })
        .collect())
}

/// The local model `{y = 0}` against `{y = n x}`, both through the origin.
pub fn local_model(n: i64) -> (PlaneTropicalCurve, PlaneTropicalCurve) {
    use crate::curve::Line;
    let line = |dir: IntVec2| PlaneTropicalCurve {
        lines: vec![Line { base: PointQ2::origin(), dir, weight: 1 }],
        ..Default::default()
    };
    (line(IntVec2::new(1, 0)), line(IntVec2::new(1, n)))
}
