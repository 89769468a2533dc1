use colordist::gadget::{build_gadget, direct_product, GadgetVariant};
use colordist::gen::random_instance;
use colordist::graph::{all_color_distances, brute_nearest};
use colordist::hst::{RecolorableOracle, Variant};
use colordist::path::{Mode, PathExactifier};
use colordist::static_oracle::{iteration_bound, StaticOracle};
use colordist::Color;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn static_estimates_dominate_and_respect_iteration_bound(
        seed in any::<u64>(),
        n in 2usize..60,
        sigma in 1u32..6,
        k in 1usize..6,
        extra in 0usize..80,
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (g, col) = random_instance(&mut rng, n, sigma, 15, extra);
        let oracle = StaticOracle::build(&g, &col, k, seed).unwrap();
        let table = all_color_distances(&g, &col);
        for v in 0..n {
            for c in 0..sigma {
                let Some(d) = table.distance(v, c) else {
                    prop_assert!(oracle.query(v, c).is_err());
                    continue;
                };
                let a = oracle.query(v, c).unwrap();
                prop_assert!(a.estimate >= d);
                if k == 1 {
                    prop_assert_eq!(a.estimate, d);
                }
                if k >= 3 {
                    prop_assert!(a.estimate <= (4 * k as u64 - 5) * d);
                }
                prop_assert!(a.iterations <= iteration_bound(k));
                let naive = oracle.query_naive(v, c).unwrap();
                prop_assert!(naive.estimate >= d && naive.iterations <= k);
            }
        }
    }

    #[test]
    fn recolorable_oracle_stays_within_distortion(
        seed in any::<u64>(),
        n in 2usize..40,
        k in 1usize..4,
        script in proptest::collection::vec((0usize..40, 0u32..4), 0..30),
        fast_query in any::<bool>(),
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (g, col) = random_instance(&mut rng, n, 4, 10, n);
        let variant = if fast_query { Variant::FastQuery } else { Variant::FastUpdate };
        let distortion = 128.0 * k as f64;
        let mut oracle = RecolorableOracle::build(&g, &col, k, distortion, variant, seed).unwrap();
        let mut current = col.clone();
        for (v, c) in script {
            let v = v % n;
            oracle.recolor(v, c).unwrap();
            current.recolor(v, c).unwrap();
        }
        for v in 0..n {
            for c in 0..4 {
                match brute_nearest(&g, &current, v, c).ok().and_then(|r| r.distance()) {
                    None => prop_assert!(oracle.query(v, c).is_err()),
                    Some(d) => {
                        let e = oracle.query(v, c).unwrap().estimate;
                        prop_assert!(e >= d && e as f64 <= distortion * d as f64);
                    }
                }
            }
        }
    }

    #[test]
    fn exact_mode_recovers_nearest_position(
        colors in proptest::collection::vec(0u32..5, 1..150),
        base in 2u64..6,
        slack in 0u64..=100,
    ) {
        let p = PathExactifier::build(&colors, base).unwrap();
        let inst = p.instance();
        for i in 1..=colors.len() {
            for c in 0..5 as Color {
                let best = (1..=colors.len())
                    .filter(|&j| colors[j - 1] == c)
                    .min_by_key(|&j| (inst.dist(i, j), j));
                let Some(j) = best else { continue };
                let d = inst.dist(i, j);
                // any estimate in [d, b·d]
                let est = d + (base - 1) * d * slack / 100;
                prop_assert_eq!(p.exact_query(i, c, est, Mode::Exact).unwrap(), j);
            }
        }
    }

    #[test]
    fn gadget_evaluates_product_and_rolls_back(
        m in proptest::collection::vec(proptest::collection::vec(any::<bool>(), 6), 1..8),
        u_bits in any::<u8>(),
        v_bits in any::<u8>(),
    ) {
        let u: Vec<bool> = (0..m.len()).map(|i| u_bits >> i & 1 == 1).collect();
        let v: Vec<bool> = (0..6).map(|j| v_bits >> j & 1 == 1).collect();
        let expected = direct_product(&m, &u, &v);
        for variant in [GadgetVariant::Tree, GadgetVariant::CompactDirected, GadgetVariant::CompactUndirected] {
            let mut g = build_gadget(&m, variant).unwrap();
            let before = g.clone();
            prop_assert_eq!(g.process_pair(&u, &v).unwrap(), expected);
            prop_assert_eq!(&g, &before);
            if variant == GadgetVariant::CompactUndirected {
                prop_assert_eq!(g.compact_distance_check(&u, &v).unwrap(), expected);
                prop_assert_eq!(&g, &before);
            }
        }
    }
}
