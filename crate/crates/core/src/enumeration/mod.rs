//! Counting rational tropical curves of degree `d` through `3d - 1` points
//! with complex and Welschinger multiplicities.
//!
//! Curves are parametrised by 3-valent trees whose ends have weight one. The
//! points are contracted marked leaves, which amounts to placing each point
//! in the interior of an edge of the unmarked tree.

mod search;
mod solve;
mod tree;

use itertools::Itertools;
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::curve::PlaneTropicalCurve;
use crate::exact::{rat, PointQ2};

pub use solve::{bareiss_det, solve_type, system_matrix, SolveOutcome, TypeSolution};
pub use tree::{end_directions, tree_shapes, vertex_multiplicity, MarkedTreeType, TreeEdge, TreeEnd, TreeShape};

/// Highest degree the tree generator handles in reasonable time.
pub const MAX_DEGREE: u32 = 3;

/// Denominator of generated coordinates (prime).
pub const POINT_DENOMINATOR: i64 = 1_000_003;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EnumerationError {
    #[error("degree {0} is not supported (1..={MAX_DEGREE})")]
    UnsupportedDegree(u32),
    #[error("expected {expected} points, got {got}")]
    WrongPointCount { expected: usize, got: usize },
    #[error("points {0} and {1} coincide")]
    DuplicatePoint(usize, usize),
    #[error("points are not in general position ({0}); choose another seed")]
    NonGeneric(String),
}

fn check_degree(d: u32) -> Result<(), EnumerationError> {
    if d == 0 || d > MAX_DEGREE {
        return Err(EnumerationError::UnsupportedDegree(d));
    }
    Ok(())
}

/// Number of points a rational degree `d` curve is asked to pass through.
pub fn point_count(d: u32) -> usize {
    3 * d as usize - 1
}

/// `0` for even, `1` for `1 mod 4`, `-1` for `3 mod 4`.
pub fn welschinger_sign(m: u64) -> i8 {
    match m % 4 {
        1 => 1,
        3 => -1,
        _ => 0,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointConfiguration {
    pub points: Vec<PointQ2>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl PointConfiguration {
    pub fn new(points: Vec<PointQ2>) -> Result<Self, EnumerationError> {
        for [i, j] in (0..points.len()).array_combinations() {
            if points[i] == points[j] {
                return Err(EnumerationError::DuplicatePoint(i, j));
            }
        }
        Ok(PointConfiguration { points, seed: None })
    }

    /// `3d - 1` pseudo-random points in `[-10, 10]^2` with denominator
    /// [`POINT_DENOMINATOR`].
    pub fn random(d: u32, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let bound = 10 * POINT_DENOMINATOR;
        let mut points: Vec<PointQ2> = Vec::new();
        while points.len() < point_count(d) {
            let p = PointQ2::new(
                rat(rng.gen_range(-bound..=bound), POINT_DENOMINATOR),
                rat(rng.gen_range(-bound..=bound), POINT_DENOMINATOR),
            );
            if !points.contains(&p) {
                points.push(p);
            }
        }
        PointConfiguration { points, seed: Some(seed) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveRecord {
    pub curve: PlaneTropicalCurve,
    /// Edge slot of the tree shape carrying each point.
    pub marks: Vec<usize>,
    pub mult: u64,
    pub sign: i8,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagnostics {
    pub shapes: usize,
    pub cut_sets: u64,
    pub nodes: u64,
    pub pruned: u64,
    /// Solutions re-solved through the full linear system, with the
    /// determinant equal to the vertex multiplicity product.
    pub det_checks: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountResult {
    pub degree: u32,
    pub seed: Option<u64>,
    pub points: Vec<PointQ2>,
    pub curves: Vec<CurveRecord>,
    pub n_complex: u64,
    pub n_welschinger: i64,
    pub diagnostics: Diagnostics,
}

/// All marked types of degree `d` with `n = 3d - 1` marks whose evaluation
/// system is non-singular, each once up to relabelling parallel ends.
pub fn enumerate_types(d: u32, n: usize) -> Result<impl Iterator<Item = MarkedTreeType>, EnumerationError> {
    check_degree(d)?;
    if n != point_count(d) {
        return Err(EnumerationError::WrongPointCount { expected: point_count(d), got: n });
    }
    Ok(tree::cached_shapes(d).iter().flat_map(move |shape| {
        (0..shape.slot_count())
            .combinations(n)
            .filter(move |set| {
                let mut cut = vec![false; shape.slot_count()];
                for &s in set {
                    cut[s] = true;
                }
                shape.cut_ok(&cut, true)
            })
            .flat_map(move |set| {
                set.into_iter().permutations(n).map(move |marks| MarkedTreeType { shape: shape.clone(), marks })
            })
    }))
}

/// Number of marked types without materialising them.
pub fn count_types(d: u32) -> Result<u64, EnumerationError> {
    check_degree(d)?;
    let n = point_count(d);
    let labels: u64 = (1..=n as u64).product();
    let mut total = 0;
    for shape in tree::cached_shapes(d) {
        for set in (0..shape.slot_count()).combinations(n) {
            let mut cut = vec![false; shape.slot_count()];
            for &s in &set {
                cut[s] = true;
            }
            if shape.cut_ok(&cut, true) {
                total += labels;
            }
        }
    }
    Ok(total)
}

fn pool() -> rayon::ThreadPool {
    let threads = std::env::var("TROPIC_THREADS").ok().and_then(|s| s.parse::<usize>().ok()).unwrap_or(0);
    rayon::ThreadPoolBuilder::new().num_threads(threads).build().expect("thread pool")
}

/// Counts the curves of degree `d` through `pts`. The result does not
/// depend on the thread schedule.
pub fn count_curves(d: u32, pts: &PointConfiguration) -> Result<CountResult, EnumerationError> {
    check_degree(d)?;
    let n = point_count(d);
    if pts.points.len() != n {
        return Err(EnumerationError::WrongPointCount { expected: n, got: pts.points.len() });
    }
    PointConfiguration::new(pts.points.clone())?;
    let shapes = tree::cached_shapes(d);
    let per_shape: Vec<_> =
        pool().install(|| shapes.par_iter().map(|shape| search::search_shape(shape, &pts.points)).collect());

    let mut result = CountResult {
        degree: d,
        seed: pts.seed,
        points: pts.points.clone(),
        curves: Vec::new(),
        n_complex: 0,
        n_welschinger: 0,
        diagnostics: Diagnostics { shapes: shapes.len(), ..Default::default() },
    };
    for (shape, (found, stats)) in shapes.iter().zip(per_shape) {
        result.diagnostics.cut_sets += stats.cut_sets;
        result.diagnostics.nodes += stats.nodes;
        result.diagnostics.pruned += stats.pruned;
        for f in found {
            let t = MarkedTreeType { shape: shape.clone(), marks: f.marks };
            if f.touching {
                return Err(EnumerationError::NonGeneric("a point or vertex lies on a wall".into()));
            }
            if bareiss_det(&system_matrix(&t)) == BigInt::from(0) {
                continue;
            }
            let solved = match solve_type(&t, &pts.points) {
                SolveOutcome::Solved(s) => s,
                SolveOutcome::Wall => return Err(EnumerationError::NonGeneric("a length vanishes".into())),
                other => panic!("propagated placement does not solve: {other:?}"),
            };
            assert_eq!(solved.positions, f.positions, "propagation and linear solve disagree");
            result.diagnostics.det_checks += 1;
            let mult = solved.multiplicity;
            let sign = welschinger_sign(mult);
            result.n_complex += mult;
            result.n_welschinger += sign as i64;
            result.curves.push(CurveRecord { curve: solved.curve, marks: t.marks, mult, sign });
        }
    }
    Ok(result)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialOutcome {
    pub seed: u64,
    pub n_complex: u64,
    pub n_welschinger: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvarianceReport {
    pub degree: u32,
    pub trials: Vec<TrialOutcome>,
    /// Seeds whose points turned out not to be generic.
    pub excluded: Vec<u64>,
    pub consistent: bool,
}

/// Counts on `trials` seeded configurations (seeds `seed, seed+1, ...`,
/// skipping non-generic ones) and compares the totals.
pub fn invariance_harness(d: u32, trials: usize, seed: u64) -> Result<InvarianceReport, EnumerationError> {
    check_degree(d)?;
    let mut report = InvarianceReport { degree: d, trials: Vec::new(), excluded: Vec::new(), consistent: true };
    let mut s = seed;
    while report.trials.len() < trials {
        match count_curves(d, &PointConfiguration::random(d, s)) {
            Ok(r) => report.trials.push(TrialOutcome { seed: s, n_complex: r.n_complex, n_welschinger: r.n_welschinger }),
            Err(EnumerationError::NonGeneric(_)) => report.excluded.push(s),
            Err(e) => return Err(e),
        }
        s = s.wrapping_add(1);
    }
    if let Some(first) = report.trials.first() {
        report.consistent =
            report.trials.iter().all(|t| t.n_complex == first.n_complex && t.n_welschinger == first.n_welschinger);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn signs() {
        assert_eq!(welschinger_sign(4), 0);
        assert_eq!(welschinger_sign(1), 1);
        assert_eq!(welschinger_sign(3), -1);
        assert_eq!(welschinger_sign(2), 0);
        assert_eq!(welschinger_sign(5), 1);
    }

    #[test]
    fn line_types() {
        let types: Vec<_> = enumerate_types(1, 2).unwrap().collect();
        // two labelled points on two different ends
        assert_eq!(types.len(), 6);
        assert!(types.iter().all(|t| t.marks[0] != t.marks[1]));
        assert_eq!(count_types(1).unwrap(), 6);
        assert!(enumerate_types(1, 3).is_err());
    }

    #[test]
    fn line_through_two_points() {
        let pts = PointConfiguration::new(vec![PointQ2::from_ints(0, 0), PointQ2::from_ints(3, 1)]).unwrap();
        let r = count_curves(1, &pts).unwrap();
        assert_eq!((r.n_complex, r.n_welschinger), (1, 1));
        assert_eq!(r.curves[0].curve.vertices, vec![PointQ2::from_ints(2, 0)]);
    }

    #[test]
    fn equal_heights_are_flagged() {
        let pts = PointConfiguration::new(vec![PointQ2::from_ints(0, 0), PointQ2::from_ints(3, 0)]).unwrap();
        assert!(matches!(count_curves(1, &pts), Err(EnumerationError::NonGeneric(_))));
    }

    #[test]
    fn bad_input() {
        let p = PointQ2::from_ints(1, 1);
        assert_eq!(PointConfiguration::new(vec![p.clone(), p.clone()]), Err(EnumerationError::DuplicatePoint(0, 1)));
        let one = PointConfiguration::new(vec![p]).unwrap();
        assert!(matches!(count_curves(1, &one), Err(EnumerationError::WrongPointCount { .. })));
        assert_eq!(count_curves(0, &one), Err(EnumerationError::UnsupportedDegree(0)));
    }

    #[test]
    fn random_points_are_reproducible() {
        let a = PointConfiguration::random(2, 7);
        assert_eq!(a, PointConfiguration::random(2, 7));
        assert_ne!(a, PointConfiguration::random(2, 8));
        assert_eq!(a.points.len(), 5);
    }

    #[test]
    fn conic_count() {
        for seed in 0..3 {
            let r = count_curves(2, &PointConfiguration::random(2, seed)).unwrap();
            assert_eq!(r.n_complex, 1, "seed {seed}");
            for c in &r.curves {
                assert!(c.curve.check_balancing().balanced);
                assert_eq!(c.curve.degree(), Some(2));
                assert_eq!(c.curve.genus(), 0);
                assert!(r.points.iter().all(|p| c.curve.contains(p)));
            }
        }
    }
}
