//! Property tests on randomly generated permutation groups, class functions
//! and distributions.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

use commeq::characters::{decompose, hook_degree, mn_character, partitions, reconstruct};
use commeq::counts::{
    brute_f3_naive, brute_f_n, brute_f_n_naive, brute_t_n, ore_triple_symmetric, verify_triple,
};
use commeq::distributions::{q3, GroupDistribution};
use commeq::group::SymmetricOn;
use commeq::{build_table, make_group, Cyclo, GroupSpec, GroupTable, Perm, Provider, DEFAULT_BUDGET};

fn perm_strategy(n: usize) -> impl Strategy<Value = Perm> {
    Just((0..n as u8).collect::<Vec<u8>>())
        .prop_shuffle()
        .prop_map(|v| Perm::from_images(v).unwrap())
}

/// A subgroup of `S_5` generated by two random permutations.
fn perm_group() -> impl Strategy<Value = Arc<GroupTable>> {
    (perm_strategy(5), perm_strategy(5)).prop_map(|(a, b)| {
        Arc::new(GroupSpec::Perm(vec![a, b]).build().unwrap())
    })
}

fn small_spec() -> impl Strategy<Value = &'static str> {
    prop::sample::select(vec![
        "symmetric:3",
        "symmetric:4",
        "dihedral:5",
        "dihedral:6",
        "quaternion",
        "alternating:4",
        "cyclic:6",
        "product:cyclic:2,symmetric:3",
    ])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn optimized_oracle_matches_triple_loop(g in perm_group()) {
        let fast = brute_f_n(&g, 3, None, DEFAULT_BUDGET).unwrap();
        prop_assert_eq!(&fast, &brute_f3_naive(&g, DEFAULT_BUDGET).unwrap());
        prop_assert_eq!(
            brute_f_n(&g, 2, None, DEFAULT_BUDGET).unwrap(),
            brute_f_n_naive(&g, 2, None, DEFAULT_BUDGET).unwrap()
        );
    }

    #[test]
    fn counts_are_class_functions_and_inverse_symmetric(g in perm_group()) {
        for c in [
            brute_f_n(&g, 2, None, DEFAULT_BUDGET).unwrap(),
            brute_f_n(&g, 3, None, DEFAULT_BUDGET).unwrap(),
            brute_t_n(&g, 3, DEFAULT_BUDGET).unwrap(),
        ] {
            prop_assert!(c.class_values().is_ok());
            for x in 0..g.order() {
                prop_assert_eq!(c.at(g.inv(x)), c.at(x));
            }
        }
    }

    #[test]
    fn pair_counts_sum_to_order_squared(g in perm_group()) {
        let f2 = brute_f_n(&g, 2, None, DEFAULT_BUDGET).unwrap();
        let n = g.order() as u128;
        prop_assert_eq!(f2.values().iter().sum::<u128>(), n * n);
        // f_2(1) = |G| · k(G)
        prop_assert_eq!(f2.at(0), n * g.class_count() as u128);
    }

    #[test]
    fn star_counts_peak_at_identity(g in perm_group(), n in 2usize..5) {
        let t = brute_t_n(&g, n, DEFAULT_BUDGET).unwrap();
        prop_assert!(t.values().iter().all(|&v| v <= t.at(0)));
        if n == 2 {
            let f2 = brute_f_n(&g, 2, None, DEFAULT_BUDGET).unwrap();
            prop_assert_eq!(t.values(), f2.values());
        }
    }

    #[test]
    fn restriction_is_monotone(g in perm_group(), pick in any::<prop::sample::Index>()) {
        let x = pick.index(g.order());
        let h = g.subgroup_generated(&[x]).unwrap();
        let c = g.centralizer(x).unwrap();
        for n in 2..=3 {
            let small = brute_f_n(&g, n, Some(&h), DEFAULT_BUDGET).unwrap();
            let mid = brute_f_n(&g, n, Some(&c), DEFAULT_BUDGET).unwrap();
            let full = brute_f_n(&g, n, None, DEFAULT_BUDGET).unwrap();
            for y in 0..g.order() {
                prop_assert!(small.at(y) <= mid.at(y) && mid.at(y) <= full.at(y));
            }
            // ⟨x⟩ is abelian: every tuple commutes
            prop_assert_eq!(small.at(0), (h.order() as u128).pow(n as u32));
        }
    }

    #[test]
    fn decompose_inverts_reconstruct(spec in small_spec(), raw in prop::collection::vec(-50i64..50, 8)) {
        let g = make_group(spec).unwrap();
        let t = build_table(&g, &Provider::Auto).unwrap();
        let coeffs: Vec<Cyclo> = raw.iter().cycle().take(t.len()).map(|&v| Cyclo::from_integer(v)).collect();
        let f = reconstruct(&coeffs, &t).unwrap();
        prop_assert_eq!(decompose(&f, &t).unwrap(), coeffs);
    }

    #[test]
    fn q3_is_a_distribution(spec in small_spec()) {
        let g = make_group(spec).unwrap();
        let d = q3(&brute_f_n(&g, 3, None, DEFAULT_BUDGET).unwrap()).unwrap();
        let total: BigRational = d.masses().iter().cloned().sum();
        prop_assert_eq!(total, BigRational::one());
        prop_assert!(d.is_class_constant());
        let d2 = d.convolve(&d).unwrap();
        let total: BigRational = d2.masses().iter().cloned().sum();
        prop_assert_eq!(total, BigRational::one());
        prop_assert!(d2.is_class_constant());
        prop_assert!(d2.l1_to_uniform() <= d.l1_to_uniform());
        let u = GroupDistribution::uniform(g.clone());
        prop_assert_eq!(d.convolve(&u).unwrap(), u);
    }

    #[test]
    fn symmetric_triples_verify(g in perm_strategy(8)) {
        prop_assume!(g.is_even());
        let t = ore_triple_symmetric(8, &g).unwrap();
        prop_assert!(verify_triple(&SymmetricOn(8), &t.triple, &g));
    }
}

#[test]
fn hook_lengths_match_character_degrees() {
    for n in 1..=8 {
        let ones = vec![1; n];
        let mut total = BigInt::zero();
        for lambda in partitions(n) {
            let d = hook_degree(&lambda);
            assert_eq!(mn_character(&lambda, &ones), d as i64, "{lambda:?}");
            total += BigInt::from(d) * BigInt::from(d);
        }
        assert_eq!(total, (1..=n as u64).product::<u64>().into());
    }
}
