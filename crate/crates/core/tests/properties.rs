mod common;

use common::{arb_connected, arb_graph};
use pendant_core::generators;
use pendant_core::io::{decode_graph6, encode_graph6, parse_edge_list, write_edge_list};
use pendant_core::packing::{
    connectivity_upper_bounds, global_connectivity, global_connectivity_with, verify_packing, Mode, SolverOptions,
};
use pendant_core::Graph;
use proptest::prelude::*;

fn value(g: &Graph, k: usize, mode: Mode) -> usize {
    global_connectivity(g, k, mode).unwrap().value
}

/// Brute-force vertex connectivity: smallest removable set that disconnects.
fn kappa_oracle(g: &Graph) -> usize {
    let n = g.order();
    if g.is_complete() {
        return n - 1;
    }
    (0..n)
        .find(|&size| {
            common::subsets(n, size).iter().any(|cut| {
                let cut: pendant_core::VertexSet = cut.iter().collect();
                let rest = g.vertices().difference(cut);
                !g.is_connected_within(rest)
            })
        })
        .unwrap_or(n - 1)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn graph6_round_trip(g in arb_graph(1, 12)) {
        let text = encode_graph6(&g).unwrap();
        prop_assert!(text.bytes().all(|b| (63..=126).contains(&b)));
        prop_assert_eq!(decode_graph6(&text).unwrap(), g);
    }

    #[test]
    fn edge_list_round_trip(g in arb_graph(1, 12)) {
        prop_assert_eq!(parse_edge_list(&write_edge_list(&g)).unwrap(), g);
    }

    #[test]
    fn vertex_connectivity_matches_cuts(g in arb_graph(2, 8)) {
        prop_assert_eq!(g.vertex_connectivity(), kappa_oracle(&g));
    }

    #[test]
    fn join_connectivity_law(a in arb_connected(1, 4), b in arb_connected(1, 4)) {
        let j = generators::join(&a, &b).unwrap();
        let expect = (a.order() + b.vertex_connectivity()).min(b.order() + a.vertex_connectivity());
        prop_assert_eq!(j.edge_count(), a.edge_count() + b.edge_count() + a.order() * b.order());
        prop_assert_eq!(j.vertex_connectivity(), expect.min(j.order() - 1));
    }

    #[test]
    fn cartesian_connectivity_law(a in arb_connected(2, 4), b in arb_connected(2, 4)) {
        let c = generators::cartesian(&a, &b).unwrap();
        let expect = (a.vertex_connectivity() * b.order())
            .min(b.vertex_connectivity() * a.order())
            .min(a.min_degree() + b.min_degree());
        prop_assert_eq!(c.edge_count(), b.edge_count() * a.order() + a.edge_count() * b.order());
        prop_assert_eq!(c.vertex_connectivity(), expect);
    }

    #[test]
    fn two_terminals_give_connectivity(g in arb_connected(2, 8)) {
        prop_assert_eq!(value(&g, 2, Mode::InternalPendant), g.vertex_connectivity());
    }

    #[test]
    fn inequality_chain(g in arb_connected(4, 8), k in 3usize..=4) {
        prop_assume!(k <= g.order());
        let tau = value(&g, k, Mode::InternalPendant);
        let mu = value(&g, k, Mode::EdgePendant);
        let kappa_k = value(&g, k, Mode::InternalPlain);
        prop_assert!(tau <= mu && mu <= g.min_degree());
        prop_assert!(tau <= kappa_k);
        let (by_degree, by_kappa, by_order) = connectivity_upper_bounds(&g, k).unwrap();
        prop_assert!(tau <= by_degree && tau <= by_kappa && tau <= by_order);
        if tau >= 1 {
            prop_assert!(g.min_degree() >= k + tau - 1);
            prop_assert!(g.vertex_connectivity() + 2 >= k + tau);
        }
        if g.vertex_connectivity() == k {
            prop_assert!(tau >= 1);
        }
    }

    #[test]
    fn spanning_subgraph_monotone(g in arb_connected(4, 8), drop in proptest::collection::vec(any::<bool>(), 28), k in 3usize..=4) {
        prop_assume!(k <= g.order());
        let mut h = g.clone();
        for (i, (u, v)) in g.edges().into_iter().enumerate() {
            if drop[i % drop.len()] {
                h.remove_edge(u, v).unwrap();
            }
        }
        prop_assert!(value(&h, k, Mode::InternalPendant) <= value(&g, k, Mode::InternalPendant));
    }

    #[test]
    fn witnesses_are_valid(g in arb_graph(3, 9), k in 2usize..=4) {
        prop_assume!(k <= g.order());
        for mode in [Mode::InternalPendant, Mode::EdgePendant, Mode::InternalPlain] {
            let r = global_connectivity(&g, k, mode).unwrap();
            prop_assert_eq!(r.witness.len(), r.value);
            prop_assert_eq!(r.witness.terminals, r.terminals);
            prop_assert!(verify_packing(&g, &r.witness).is_ok());
        }
    }

    #[test]
    fn threads_and_fast_paths_do_not_change_results(g in arb_connected(4, 8), k in 3usize..=4) {
        prop_assume!(k <= g.order());
        let base = global_connectivity(&g, k, Mode::InternalPendant).unwrap();
        let opts = SolverOptions { threads: 4, ..SolverOptions::default() };
        let par = global_connectivity_with(&g, k, Mode::InternalPendant, &opts).unwrap();
        prop_assert_eq!(base.value, par.value);
        prop_assert_eq!(base.terminals, par.terminals);
        let plain = SolverOptions { force_generic: true, lemma_caps: false, ..SolverOptions::default() };
        prop_assert_eq!(global_connectivity_with(&g, k, Mode::InternalPendant, &plain).unwrap().value, base.value);
    }
}
