use proptest::prelude::*;

use signotope_core::combinatorics::{distance_lower_bound, neighbors, series, source_subset};
use signotope_core::ferrers::{f_inverse, f_map, g_inverse, g_map, in_region};
use signotope_core::{CoSignotope, DSubset, GroundParams};

/// `(params, subset)` with `n <= 14`.
fn subset_strategy() -> impl Strategy<Value = (GroundParams, DSubset)> {
    (2usize..=14)
        .prop_flat_map(|n| (Just(n), 1..n))
        .prop_flat_map(|(n, d)| {
            (
                Just(n),
                Just(d),
                proptest::sample::subsequence((1..=n).collect::<Vec<_>>(), d),
            )
        })
        .prop_map(|(n, d, v)| {
            let params = GroundParams::new(n, d).unwrap();
            (params, DSubset::new(params, v).unwrap())
        })
}

proptest! {
    #[test]
    fn series_shares_all_but_one_element((params, b) in subset_strategy(), raw_i in 0usize..100) {
        let i = raw_i % params.d() + 1;
        let s = series(params, &b, i).unwrap();
        prop_assert_eq!(s.len(), params.n() - params.d() + 1);
        let mut base = b.elements().to_vec();
        base.remove(i - 1);
        for c in &s {
            prop_assert!(base.iter().all(|&x| c.contains(x)));
        }
        for w in s.windows(2) {
            prop_assert!(neighbors(params, &w[0]).unwrap().contains(&w[1]));
        }
    }

    #[test]
    fn coordinate_maps_round_trip((params, b) in subset_strategy(), raw_i in 0usize..100) {
        let i = raw_i % (params.d() + 1);
        let pt = g_map(params, i, &b).unwrap();
        prop_assert_eq!(&g_inverse(params, i, &pt).unwrap(), &b);
        for (j, (&x, &a)) in b.elements().iter().zip(pt.coords()).enumerate() {
            prop_assert_eq!(f_map(params, i, j + 1, x).unwrap(), a);
            prop_assert_eq!(f_inverse(params, i, j + 1, a).unwrap(), x);
        }
        prop_assert!(in_region(params.d(), i, &pt).unwrap());
    }

    #[test]
    fn sources_map_to_the_origin(n in 2usize..20, raw_d in 0usize..100, raw_i in 0usize..100) {
        let d = raw_d % (n - 1) + 1;
        let i = raw_i % (d + 1);
        let params = GroundParams::new(n, d).unwrap();
        let s = source_subset(params, i).unwrap();
        prop_assert!(g_map(params, i, &s).unwrap().coords().iter().all(|&a| a == 1));
        prop_assert_eq!(distance_lower_bound(params, &s, i).unwrap(), 0);
    }

    #[test]
    fn json_round_trip((params, b) in subset_strategy()) {
        let t = CoSignotope::new(params, [b]).unwrap();
        let back = CoSignotope::from_json(&t.to_json()).unwrap();
        prop_assert_eq!(&back, &t);
        prop_assert_eq!(t.is_valid(), t.is_valid_full());
    }
}
