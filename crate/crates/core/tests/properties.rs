use num_bigint::BigUint;
use proptest::prelude::*;

use multizero::bounds::{
    condition_a, condition_a_monotone_check, d_recursive, d_recursive_uncached, enumerate_a, sz_mult_bound,
    BoundParams, DEvaluator,
};
use multizero::ffpoly::{PrimeField, SparsePolynomial};
use multizero::oracle::{count_heavy_points, lower_bound_search, partitions};
use multizero::rational::from_biguint;

fn small_params() -> impl Strategy<Value = BoundParams> {
    (1usize..=3, 1u32..=3)
        .prop_flat_map(|(m, r)| (prop::collection::vec(1u64..=4, m), Just(r)))
        .prop_flat_map(|(sizes, r)| {
            let exps: Vec<_> = sizes.iter().map(|&s| 0..=u64::from(r) * s + 1).collect();
            (exps, Just(r), Just(sizes))
        })
        .prop_map(|(exps, r, sizes)| BoundParams::new(exps, r, sizes).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn memoized_d_matches_plain_recursion(p in small_params()) {
        prop_assert_eq!(d_recursive(&p), d_recursive_uncached(&p));
    }

    #[test]
    fn d_is_monotone_in_exponents(p in small_params(), t in 0usize..3) {
        let t = t % p.num_vars();
        let mut bigger = p.exponents().to_vec();
        bigger[t] += 1;
        let q = p.with_exponents(bigger).unwrap();
        let mut ev = DEvaluator::new();
        prop_assert!(ev.d(&p) <= ev.d(&q));
    }

    #[test]
    fn d_is_capped_by_grid_and_sz(p in small_params()) {
        let d = d_recursive(&p);
        prop_assert!(d <= p.grid_size());
        prop_assert!(from_biguint(&d) <= sz_mult_bound(&p));
    }

    #[test]
    fn composition_tuples_are_exactly_the_polytope(i in 0u64..12, r in 1u32..=4, s in 0u64..6) {
        let tuples = enumerate_a(i, r, s);
        for u in &tuples {
            prop_assert!(u.total() <= s && u.weighted_total() <= i);
        }
        // count by brute force over the box
        let mut count = 0;
        let r = r as usize;
        let mut cur = vec![0u64; r];
        loop {
            let total: u64 = cur.iter().sum();
            let weighted: u64 = cur.iter().enumerate().map(|(j, &v)| (j as u64 + 1) * v).sum();
            if total <= s && weighted <= i {
                count += 1;
            }
            let Some(pos) = cur.iter().rposition(|&v| v < s) else { break };
            cur[pos] += 1;
            cur[pos + 1..].iter_mut().for_each(|v| *v = 0);
        }
        prop_assert_eq!(tuples.len(), count);
    }

    #[test]
    fn lower_bound_never_exceeds_d(i1 in 0u64..=9, i2 in 0u64..=9, r in 1u32..=3) {
        let (count, witness) = lower_bound_search(&[i1, i2], u64::from(r), &[3, 3]);
        let d = d_recursive(&BoundParams::new(vec![i1, i2], r, vec![3, 3]).unwrap());
        prop_assert!(BigUint::from(count) <= d);
        prop_assert_eq!(witness.exponents(), vec![i1, i2]);
        prop_assert_eq!(count_heavy_points(&witness.profiles, u64::from(r)), count);
    }

    #[test]
    fn partitions_are_sorted_and_complete(n in 0u64..10, parts in 1usize..5) {
        let all = partitions(n, parts);
        for p in &all {
            prop_assert_eq!(p.len(), parts);
            prop_assert_eq!(p.iter().sum::<u64>(), n);
            prop_assert!(p.windows(2).all(|w| w[0] >= w[1]));
        }
        let mut sorted = all.clone();
        sorted.sort();
        sorted.dedup();
        prop_assert_eq!(sorted, all);
    }

    #[test]
    fn translation_and_hasse_multiplicities_agree(
        terms in prop::collection::vec((prop::collection::vec(0u32..5, 2), 0u64..7), 1..8),
        a in 0u64..7,
        b in 0u64..7,
    ) {
        let f = PrimeField::new(7).unwrap();
        let poly = SparsePolynomial::from_terms(f, 2, terms).unwrap();
        let point = [f.element(a), f.element(b)];
        prop_assert_eq!(poly.multiplicity(&point).unwrap(), poly.multiplicity_by_hasse(&point).unwrap());
    }
}

#[test]
fn condition_a_region_is_downward_closed() {
    for i1 in 0..=5u64 {
        for i2 in 0..=14u64 {
            let p = BoundParams::new(vec![i1, i2], 3, vec![5, 5]).unwrap();
            if condition_a(&p).unwrap().holds() {
                assert!(condition_a_monotone_check(&p).unwrap(), "{p}");
            }
        }
    }
    let p = BoundParams::new(vec![1, 1, 7], 2, vec![5, 5, 5]).unwrap();
    assert!(condition_a(&p).unwrap().holds());
    assert!(condition_a_monotone_check(&p).unwrap());
}
