use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use srs_core::extend::build_by_extension;
use srs_core::graph::isomorphism_classes;
use srs_core::srs::{enumerate_quotients, restriction_case, srs_isomorphic, RestrictionCase};
use srs_core::{Graph, Srs, SpaceType};

fn graph(max: usize) -> impl Strategy<Value = Graph> {
    (1..=max).prop_flat_map(|n| {
        prop::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let pairs = (0..n).flat_map(|j| (0..j).map(move |i| (i, j)));
            let edges: Vec<_> = pairs.zip(bits).filter(|(_, b)| *b).map(|(e, _)| e).collect();
            Graph::with_edges(n, &edges).unwrap()
        })
    })
}

#[test]
fn minimal_is_unique_up_to_seven_nodes() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for n in 1..=7 {
        for g in isomorphism_classes(n) {
            let minimal = Srs::minimal(&g);
            let mut order: Vec<usize> = (0..n).collect();
            order.shuffle(&mut rng);
            let built = build_by_extension(&g, &order).unwrap();
            assert!(srs_isomorphic(&built, &minimal).unwrap().is_some(), "{g:?}");
        }
    }
}

#[test]
fn quotients_pairwise_non_isomorphic() {
    for n in 1..=6 {
        for g in isomorphism_classes(n) {
            let classes = enumerate_quotients(&g).unwrap();
            for (i, a) in classes.iter().enumerate() {
                for (j, b) in classes.iter().enumerate() {
                    let iso = srs_isomorphic(&a.srs, &b.srs).unwrap().is_some();
                    assert_eq!(iso, i == j, "{g:?} classes {i} {j}");
                }
            }
        }
    }
}

#[test]
fn restriction_trichotomy_up_to_six_nodes() {
    for n in 2..=6 {
        for g in isomorphism_classes(n) {
            let minimal = Srs::minimal(&g);
            for p in 0..n {
                let keep: Vec<usize> = (0..n).filter(|&q| q != p).collect();
                let r = minimal.restrict(&keep).unwrap();
                let case = restriction_case(minimal.space_type(), r.space_type());
                assert!(
                    matches!(case, Some(RestrictionCase::LostNullvector | RestrictionCase::LostPlane)),
                    "{g:?} minus {p}"
                );
                for c in enumerate_quotients(&g).unwrap() {
                    let r = c.srs.restrict(&keep).unwrap();
                    if restriction_case(c.srs.space_type(), r.space_type()) == Some(RestrictionCase::SameType) {
                        assert!(!c.srs.is_minimal());
                    }
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn disjoint_union_adds_types(a in graph(6), b in graph(6)) {
        let (ta, tb) = (Srs::minimal(&a).space_type(), Srs::minimal(&b).space_type());
        let t = Srs::minimal(&a.disjoint_union(&b)).space_type();
        prop_assert_eq!(t, SpaceType::new(ta.n + tb.n, ta.k + tb.k));
    }

    #[test]
    fn isomorphism_is_an_equivalence(g in graph(6)) {
        let classes = enumerate_quotients(&g).unwrap();
        for a in &classes {
            prop_assert!(srs_isomorphic(&a.srs, &a.srs).unwrap().is_some());
            for b in &classes {
                let ab = srs_isomorphic(&a.srs, &b.srs).unwrap().is_some();
                let ba = srs_isomorphic(&b.srs, &a.srs).unwrap().is_some();
                prop_assert_eq!(ab, ba);
            }
        }
    }

    #[test]
    fn json_round_trip(g in graph(7)) {
        for c in enumerate_quotients(&g).unwrap() {
            let text = c.srs.to_json_value().to_string();
            let back = Srs::from_json_value(&serde_json::from_str(&text).unwrap()).unwrap();
            prop_assert!(srs_isomorphic(&back, &c.srs).unwrap().is_some());
            prop_assert_eq!(back.to_json_value().to_string(), text);
        }
    }

    #[test]
    fn relabeling_preserves_type(g in graph(7), seed in any::<u64>()) {
        let mut order: Vec<usize> = (0..g.node_count()).collect();
        order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let s = Srs::minimal(&g).relabeled(&order).unwrap();
        let h = g.induced_subgraph(&order).unwrap();
        prop_assert_eq!(s.graph(), &h);
        prop_assert_eq!(s.space_type(), Srs::minimal(&h).space_type());
    }
}
