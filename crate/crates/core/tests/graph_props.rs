use proptest::prelude::*;
use srs_core::Graph;

fn graph(max: usize) -> impl Strategy<Value = Graph> {
    (1..=max).prop_flat_map(|n| {
        prop::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let pairs = (0..n).flat_map(|j| (0..j).map(move |i| (i, j)));
            let edges: Vec<_> = pairs.zip(bits).filter(|(_, b)| *b).map(|(e, _)| e).collect();
            Graph::with_edges(n, &edges).unwrap()
        })
    })
}

fn brute_coclique(g: &Graph) -> usize {
    let n = g.node_count();
    (0u32..1 << n)
        .filter(|s| (0..n).all(|i| (0..n).all(|j| s >> i & 1 == 0 || s >> j & 1 == 0 || !g.has_edge(i, j))))
        .map(u32::count_ones)
        .max()
        .unwrap() as usize
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn max_coclique_is_maximum(g in graph(16)) {
        let c = g.max_coclique().unwrap();
        prop_assert!(g.is_independent(&c));
        prop_assert_eq!(c.len(), brute_coclique(&g));
    }

    #[test]
    fn automorphisms_form_a_group(g in graph(7)) {
        let auts = g.automorphisms().unwrap();
        let n = g.node_count();
        prop_assert_eq!(&auts[0], &(0..n).collect::<Vec<_>>());
        for a in &auts {
            for (i, j) in g.edges() {
                prop_assert!(g.has_edge(a[i], a[j]));
            }
            let mut inv = vec![0; n];
            for (i, &ai) in a.iter().enumerate() {
                inv[ai] = i;
            }
            prop_assert!(auts.contains(&inv));
            for b in &auts {
                let comp: Vec<usize> = (0..n).map(|i| a[b[i]]).collect();
                prop_assert!(auts.contains(&comp));
            }
        }
    }

    #[test]
    fn edge_list_round_trip(g in graph(10)) {
        prop_assert_eq!(Graph::parse(&g.to_edge_list()).unwrap(), g.clone());
        prop_assert_eq!(Graph::from_json_value(&g.to_json_value()).unwrap(), g);
    }
}
