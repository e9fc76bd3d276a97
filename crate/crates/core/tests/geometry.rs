use proptest::prelude::*;
use tropic::curve::{check_orthogonality, corner_locus, degree_genus_report, is_smooth, newton_subdivision, tie_count};
use tropic::exact::{rat, PointQ2};
use tropic::intersection::{bezout_sum, stable_intersection, union, IntersectionError};
use tropic::tropical::TropicalPolynomial;

/// Polynomial of degree `d` with the three corner terms present and a
/// random subset of the other lattice points of the triangle.
fn polynomial(max_d: u32) -> impl Strategy<Value = TropicalPolynomial> {
    (1..=max_d).prop_flat_map(|d| {
        let points: Vec<(u32, u32)> = (0..=d).flat_map(|i| (0..=d - i).map(move |j| (i, j))).collect();
        let n = points.len();
        (proptest::collection::vec((-40i64..40, any::<bool>()), n), Just(points), Just(d)).prop_map(|(coeffs, points, d)| {
            let terms = points.iter().zip(coeffs).filter_map(|(&e, (c, keep))| {
                let corner = e == (0, 0) || e == (d, 0) || e == (0, d);
                (corner || keep).then(|| (e, rat(c, 3)))
            });
            TropicalPolynomial::from_terms(terms).unwrap()
        })
    })
}

/// Polynomial with full support in the triangle of degree `d`.
fn full_polynomial(d: u32) -> impl Strategy<Value = TropicalPolynomial> {
    let points: Vec<(u32, u32)> = (0..=d).flat_map(|i| (0..=d - i).map(move |j| (i, j))).collect();
    proptest::collection::vec(-60i64..60, points.len()).prop_map(move |coeffs| {
        TropicalPolynomial::from_terms(points.iter().zip(coeffs).map(|(&e, c)| (e, rat(c, 7)))).unwrap()
    })
}

fn point() -> impl Strategy<Value = PointQ2> {
    (-200i64..200, -200i64..200).prop_map(|(x, y)| PointQ2::new(rat(x, 13), rat(y, 17)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn balanced_and_dual(g in polynomial(4)) {
        let (c, cert) = corner_locus(&g);
        prop_assert!(c.check_balancing().balanced);
        prop_assert!(check_orthogonality(&c, &cert));
        let sub = newton_subdivision(&g);
        prop_assert_eq!(sub.dimension(), 2);
        prop_assert_eq!(c.vertices.len(), sub.cells.len());
        let interior = sub.edges().iter().filter(|e| e.right.is_some()).count();
        prop_assert_eq!(c.edges.len(), interior);
        let boundary: i64 = (0..sub.polygon.len())
            .map(|i| (sub.polygon[(i + 1) % sub.polygon.len()] - sub.polygon[i]).lattice_length())
            .sum();
        prop_assert_eq!(c.rays.iter().map(|r| r.weight).sum::<i64>(), boundary);
    }

    #[test]
    fn genus_bound(g in polynomial(4)) {
        let (c, cert) = corner_locus(&g);
        let r = degree_genus_report(&c, &cert).unwrap();
        prop_assert_eq!(r.d, g.degree());
        prop_assert!(r.g <= r.bound);
        if is_smooth(&c, &cert) {
            prop_assert_eq!(r.g, r.bound);
            prop_assert_eq!(r.deficiency, 0);
        }
    }

    #[test]
    fn locus_is_where_the_maximum_ties(g in polynomial(3), p in point()) {
        let (c, _) = corner_locus(&g);
        prop_assert_eq!(c.contains(&p), tie_count(&g, &p) >= 2);
        for v in &c.vertices {
            prop_assert!(tie_count(&g, v) >= 3);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 100, max_global_rejects: 4096, ..ProptestConfig::default() })]

    #[test]
    fn bezout(d1 in 1u32..=3, d2 in 1u32..=3, seed in any::<u64>()) {
        use proptest::strategy::ValueTree;
        use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};
        let mut runner = TestRunner::new_with_rng(Config::default(), TestRng::from_seed(RngAlgorithm::ChaCha, &seed_bytes(seed)));
        let g1 = full_polynomial(d1).new_tree(&mut runner).unwrap().current();
        let g2 = full_polynomial(d2).new_tree(&mut runner).unwrap().current();
        let (c1, _) = corner_locus(&g1);
        let (c2, _) = corner_locus(&g2);
        let stable: u64 = stable_intersection(&c1, &c2).unwrap().iter().map(|p| p.multiplicity).sum();
        prop_assert_eq!(stable, (d1 * d2) as u64);
        match bezout_sum(&c1, &c2) {
            Ok(total) => prop_assert_eq!(total, (d1 * d2) as u64),
            Err(IntersectionError::NonTransverse(_)) => prop_assume!(false),
            Err(e) => prop_assert!(false, "{}", e),
        }
    }

    #[test]
    fn union_is_the_product_locus(g1 in polynomial(2), g2 in polynomial(2)) {
        let prod = corner_locus(&g1.trop_mul(&g2)).0;
        let u = union(&corner_locus(&g1).0, &corner_locus(&g2).0);
        prop_assert!(prod.equivalent(&u));
    }
}

fn seed_bytes(seed: u64) -> [u8; 32] {
    let mut out = [0u8; 32];
    for (i, chunk) in out.chunks_mut(8).enumerate() {
        chunk.copy_from_slice(&(seed.wrapping_mul(0x9e37_79b9_7f4a_7c15).wrapping_add(i as u64)).to_le_bytes());
    }
    out
}
