use std::collections::BTreeSet;

use proptest::prelude::*;
use tropic::enumeration::{
    count_curves, enumerate_types, invariance_harness, solve_type, EnumerationError, PointConfiguration, SolveOutcome,
};
use tropic::exact::{rat, PointQ2};
use tropic::recursion::kontsevich;

/// Independent route: every marked type solved through its full linear
/// system, no propagation and no pruning.
fn brute_force(d: u32, pts: &PointConfiguration) -> (u64, BTreeSet<String>) {
    let mut total = 0;
    let mut curves = BTreeSet::new();
    for t in enumerate_types(d, pts.points.len()).unwrap() {
        if let SolveOutcome::Solved(s) = solve_type(&t, &pts.points) {
            total += s.multiplicity;
            curves.insert(serde_json::to_string(&s.curve).unwrap());
        }
    }
    (total, curves)
}

#[test]
fn search_agrees_with_brute_force() {
    for d in 1..=2 {
        for seed in 0..3 {
            let pts = PointConfiguration::random(d, 100 + seed);
            let r = count_curves(d, &pts).unwrap();
            let (total, curves) = brute_force(d, &pts);
            assert_eq!(r.n_complex, total, "d={d} seed={seed}");
            let found: BTreeSet<String> = r.curves.iter().map(|c| serde_json::to_string(&c.curve).unwrap()).collect();
            assert_eq!(found, curves);
        }
    }
}

#[test]
fn counts_match_the_recursion() {
    let table = kontsevich(3);
    for d in 1..=3 {
        let r = count_curves(d, &PointConfiguration::random(d, 11)).unwrap();
        assert_eq!(r.n_complex.to_string(), table[&d].to_string(), "degree {d}");
        assert_eq!(r.diagnostics.det_checks, r.curves.len());
    }
}

#[test]
fn output_curves_are_rational_of_the_right_degree() {
    for d in 1..=2 {
        let r = count_curves(d, &PointConfiguration::random(d, 5)).unwrap();
        for c in &r.curves {
            assert!(c.curve.check_balancing().balanced);
            assert_eq!(c.curve.degree(), Some(d));
            assert_eq!(c.curve.genus(), 0);
            assert!(r.points.iter().all(|p| c.curve.contains(p)));
            assert_eq!(r.n_welschinger, r.curves.iter().map(|c| c.sign as i64).sum::<i64>());
        }
    }
}

#[test]
fn invariance() {
    let r = invariance_harness(1, 10, 0).unwrap();
    assert!(r.consistent);
    assert!(r.trials.iter().all(|t| t.n_complex == 1 && t.n_welschinger == 1));
    let r = invariance_harness(2, 5, 0).unwrap();
    assert!(r.consistent);
    assert_eq!(r.trials.len(), 5);
}

#[test]
fn repeated_runs_are_identical() {
    let pts = PointConfiguration::random(2, 42);
    let a = serde_json::to_string(&count_curves(2, &pts).unwrap()).unwrap();
    let b = serde_json::to_string(&count_curves(2, &pts).unwrap()).unwrap();
    assert_eq!(a, b);
    assert!(a.contains("\"seed\":42"));
}

#[test]
fn point_on_a_vertex_is_flagged() {
    // Move one point onto a vertex of the unique conic: the same conic still
    // passes through all points, now with a point where three edges meet.
    let pts = PointConfiguration::random(2, 3);
    let r = count_curves(2, &pts).unwrap();
    let vertex = r.curves[0].curve.vertices[0].clone();
    let mut moved = pts.points.clone();
    moved[0] = vertex;
    let moved = PointConfiguration::new(moved).unwrap();
    assert!(matches!(count_curves(2, &moved), Err(EnumerationError::NonGeneric(_))));
}

fn small_point() -> impl Strategy<Value = PointQ2> {
    (-30i64..30, -30i64..30).prop_map(|(x, y)| PointQ2::new(rat(x, 7), rat(y, 11)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn one_line_or_a_wall(a in small_point(), b in small_point()) {
        prop_assume!(a != b);
        match count_curves(1, &PointConfiguration::new(vec![a, b]).unwrap()) {
            Ok(r) => prop_assert_eq!((r.n_complex, r.n_welschinger), (1, 1)),
            Err(e) => prop_assert!(matches!(e, EnumerationError::NonGeneric(_))),
        }
    }

    #[test]
    fn one_conic_or_a_wall(pts in proptest::collection::btree_set(small_point(), 5)) {
        let pts = PointConfiguration::new(pts.into_iter().collect()).unwrap();
        match count_curves(2, &pts) {
            Ok(r) => prop_assert_eq!(r.n_complex, 1),
            Err(e) => prop_assert!(matches!(e, EnumerationError::NonGeneric(_))),
        }
    }
}
