mod common;

use common::*;
use matchram::coloured::ColouredGraph;
use matchram::compression::{c_isolate, cd_saturate};
use matchram::connector::TVector;
use matchram::graph::{ge_decompose, max_matching};
use matchram::Graph;
use proptest::prelude::*;

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (0..=max_n).prop_flat_map(|n| {
        let pairs = n * n.saturating_sub(1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let mut g = Graph::new(n);
            let mut k = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[k] {
                        g.add_edge(u, v).unwrap();
                    }
                    k += 1;
                }
            }
            g
        })
    })
}

fn coloured(max_n: usize, max_q: usize) -> impl Strategy<Value = ColouredGraph> {
    (graph(max_n), 1..=max_q).prop_flat_map(|(g, q)| {
        let m = g.m();
        proptest::collection::vec(1..=q, m).prop_map(move |colours| {
            ColouredGraph::from_edge_colours(g.clone(), q, &colours).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn matching_is_maximum(g in graph(11)) {
        let m = max_matching(&g);
        prop_assert!(m.is_matching_of(&g));
        prop_assert_eq!(m.size(), brute_nu(&g));
    }

    #[test]
    fn deficiency_identity(g in graph(10)) {
        let ge = ge_decompose(&g);
        prop_assert_eq!(
            g.n() as i64 - 2 * ge.nu as i64,
            ge.d_components.len() as i64 - ge.a.len() as i64
        );
        for k in &ge.d_components {
            prop_assert!(brute_factor_critical(&g, k));
        }
    }

    #[test]
    fn edge_list_and_json_round_trip(g in graph(12)) {
        prop_assert_eq!(Graph::from_edge_list(&g.to_edge_list()).unwrap(), g.clone());
        prop_assert_eq!(Graph::from_json(&g.to_json()).unwrap(), g);
    }

    #[test]
    fn coloured_json_round_trip(cg in coloured(9, 3)) {
        let text = cg.to_json();
        let back = ColouredGraph::from_json(&text, Some(cg.host())).unwrap();
        prop_assert_eq!(back.to_json(), text);
        prop_assert_eq!(back, cg);
    }

    #[test]
    fn complement_is_an_involution(g in graph(10)) {
        let c = g.complement();
        prop_assert_eq!(c.m() + g.m(), g.n() * g.n().saturating_sub(1) / 2);
        prop_assert_eq!(c.complement(), g);
    }

    #[test]
    fn t_vector_text_round_trip(entries in proptest::collection::vec(1usize..20, 1..6)) {
        let t = TVector::new(entries.clone()).unwrap();
        let back: TVector = t.to_string().parse().unwrap();
        prop_assert_eq!(back.entries(), &entries[..]);
        prop_assert_eq!(t.lambda(), entries.iter().map(|x| x - 1).sum::<usize>());
    }

    #[test]
    fn saturation_keeps_matching_number(g in graph(10), extra in graph(10)) {
        let n = g.n();
        let mut host = g.clone();
        for (u, v) in extra.edges().filter(|&(u, v)| u < n && v < n) {
            host.add_edge(u, v).unwrap();
        }
        let sat = cd_saturate(&g, &host).unwrap();
        prop_assert!(g.is_subgraph_of(&sat) && sat.is_subgraph_of(&host));
        prop_assert_eq!(brute_nu(&sat), brute_nu(&g));
    }

    #[test]
    fn isolation_empties_c(g in graph(10)) {
        let out = c_isolate(&g).unwrap();
        let before = brute_ge(&g);
        let after = brute_ge(&out);
        prop_assert!(after.c.is_empty());
        prop_assert_eq!(after.a, before.a);
        prop_assert_eq!(after.nu + before.c.len() / 2, before.nu);
    }
}
