use std::collections::HashSet;

use num_rational::BigRational;
use proptest::prelude::*;

use weylsum::branching::Pair;
use weylsum::charkit::{direct_context, weyl_sum_direct, weyl_sum_permweights, ExponentMap};
use weylsum::field::DEFAULT_PRIME;
use weylsum::permweights::phi;
use weylsum::rootsys::{build_algebra, AlgebraKind, Weight};
use weylsum::schur::{schur_of_partition, schur_tableau_oracle, EvalContext};
use weylsum::weyl::{orbit_size, reflect};

fn labels(rank: usize, lo: i64, hi: i64) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(lo..=hi, rank)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn e7_phi_is_distinct_and_dominant(l in labels(7, 1, 5)) {
        let w = Weight::new(AlgebraKind::E7, l).unwrap();
        let p = phi(Pair::E7A7, &w).unwrap();
        let distinct: HashSet<_> = p.iter().map(|s| s.weight.labels.clone()).collect();
        prop_assert_eq!(distinct.len(), 72);
        prop_assert!(p.iter().all(|s| s.weight.is_strictly_dominant()));
    }

    #[test]
    fn e8_phi_is_distinct_and_dominant(l in labels(8, 1, 5)) {
        let w = Weight::new(AlgebraKind::E8, l).unwrap();
        let p = phi(Pair::E8A8, &w).unwrap();
        let distinct: HashSet<_> = p.iter().map(|s| s.weight.labels.clone()).collect();
        prop_assert_eq!(distinct.len(), 1920);
    }

    #[test]
    fn an_cascade_matches_the_direct_sum(n in 2usize..=5, l in labels(5, 1, 3), seed in any::<u64>()) {
        let kind = AlgebraKind::A(n as u8);
        let w = Weight::new(kind, l[..n].to_vec()).unwrap();
        let pair = Pair::An(n as u8);
        let ctx = EvalContext::random(n - 1, seed, DEFAULT_PRIME).unwrap();
        let map = ExponentMap::for_pair(pair).unwrap();
        let direct = weyl_sum_direct(&build_algebra(kind), &w, &map, &direct_context(pair, &ctx)).unwrap();
        prop_assert_eq!(direct, weyl_sum_permweights(pair, &w, &ctx).unwrap());
    }

    #[test]
    fn e7_reflection_is_an_involution(i in 1usize..=7, l in labels(7, 0, 3)) {
        let alg = build_algebra(AlgebraKind::E7);
        let w = Weight::new(AlgebraKind::E7, l).unwrap();
        let r = reflect(&alg, i, &w).unwrap();
        prop_assert_eq!(reflect(&alg, i, &r).unwrap(), w);
    }

    #[test]
    fn schur_matches_tableaux(
        n in 1usize..=3,
        mut p in prop::collection::vec(0i64..=3, 0..=3),
        seed in any::<u64>(),
    ) {
        p.sort_by(|a, b| b.cmp(a));
        p.truncate(n + 1);
        let ctx = EvalContext::<BigRational>::random_rational(n, seed).unwrap();
        let a = schur_of_partition(&p, &ctx).unwrap();
        prop_assert_eq!(a, schur_tableau_oracle(&p, &ctx).unwrap());
    }
}

#[test]
fn orbit_size_is_stable_under_dominant_scaling() {
    let alg = build_algebra(AlgebraKind::E8);
    let a = orbit_size(&alg, &Weight::rho(AlgebraKind::E8)).unwrap();
    let b = orbit_size(&alg, &Weight::new(AlgebraKind::E8, vec![2; 8]).unwrap()).unwrap();
    assert_eq!(a, b);
}
