mod common;

use pendant_core::extremal::{
    binomial2, f_min_edges, lower_bound, tau_equals, verify_characterization, Characterization, SearchOptions,
    SearchStatus, Strategy, Verdict,
};
use pendant_core::generators;
use pendant_core::packing::{global_connectivity, local_connectivity, verify_packing, Mode};
use pendant_core::VertexSet;

fn exact(n: usize, k: usize, l: usize, strategy: Strategy, opts: &SearchOptions) -> usize {
    let r = f_min_edges(n, k, l, strategy, opts).unwrap();
    assert_eq!(r.status, SearchStatus::Found, "{r:?}");
    assert!(r.exhaustive);
    let w = r.witness_graph().unwrap();
    assert!(w.is_connected());
    assert_eq!(Some(w.edge_count()), r.f_value);
    assert_eq!(global_connectivity(&w, k, Mode::InternalPendant).unwrap().value, l);
    r.f_value.unwrap()
}

#[test]
fn strategies_agree_in_the_dense_regime() {
    let opts = SearchOptions { long_running: true, ..SearchOptions::default() };
    for n in 5usize..=8 {
        for k in 3..=n - 1 {
            for l in (n - k).saturating_sub(2)..=n - k {
                if l == 0 {
                    continue;
                }
                let sparse = exact(n, k, l, Strategy::SparseAsc, &opts);
                let dense = exact(n, k, l, Strategy::DenseDesc, &opts);
                assert_eq!(sparse, dense, "f({n},{k},{l})");
            }
        }
    }
}

#[test]
fn records_respect_the_degree_bound() {
    let opts = SearchOptions::default();
    for n in 4..=7 {
        for k in 3..=n {
            for l in 0..=n - k {
                let r = f_min_edges(n, k, l, Strategy::SparseAsc, &opts).unwrap();
                let Some(f) = r.f_value else {
                    assert_eq!(r.status, SearchStatus::Infeasible);
                    continue;
                };
                assert!(f >= n - 1);
                if l >= 1 {
                    assert!(2 * f >= (k + l - 1) * n, "f({n},{k},{l}) = {f}");
                }
                assert!(tau_equals(&r.witness_graph().unwrap(), k, l).unwrap());
            }
        }
    }
}

#[test]
fn pruning_and_isomorph_rejection_do_not_change_values() {
    let full = SearchOptions { reject_isomorphs: false, lemma_prunes: false, ..SearchOptions::default() };
    let fast = SearchOptions::default();
    for (n, k, l) in [(5, 3, 1), (6, 3, 1), (6, 3, 2), (6, 4, 1), (6, 3, 0)] {
        assert_eq!(
            exact(n, k, l, Strategy::SparseAsc, &full),
            exact(n, k, l, Strategy::SparseAsc, &fast),
            "f({n},{k},{l})"
        );
    }
}

#[test]
fn records_do_not_depend_on_threads() {
    for (n, k, l, s) in [(7, 3, 1, Strategy::SparseAsc), (9, 3, 4, Strategy::DenseDesc)] {
        let one = f_min_edges(n, k, l, s, &SearchOptions::default()).unwrap();
        for threads in [2, 3, 8] {
            let many = f_min_edges(n, k, l, s, &SearchOptions { threads, ..SearchOptions::default() }).unwrap();
            assert_eq!(one, many);
        }
    }
}

#[test]
fn construction_counts_match_formulas() {
    let opts = SearchOptions::default();
    for (n, k, l) in [(10, 3, 1), (10, 3, 2), (12, 4, 2), (9, 3, 5), (11, 3, 0)] {
        let r = f_min_edges(n, k, l, Strategy::ConstructionOnly, &opts).unwrap();
        let u = r.upper_bound.unwrap();
        let (a, b) = (k + l - 1, n - k - l + 1);
        let formula = match l {
            0 => n - 1,
            1 => (k * n).div_ceil(2),
            _ if a <= b => a * b,
            _ => a * b + binomial2(a),
        };
        assert_eq!(u, formula, "({n},{k},{l})");
        assert!(u >= lower_bound(n, k, l));
    }
}

/// The dense witness for `f(10,3,5)` misses 8 edges. Each terminal set
/// carries a verified packing of 5 trees, and 5 is the degree cap.
#[test]
fn near_complete_value_at_ten() {
    let r = f_min_edges(10, 3, 5, Strategy::DenseDesc, &SearchOptions::default()).unwrap();
    assert_eq!(r.f_value, Some(37));
    let g = r.witness_graph().unwrap();
    assert_eq!(g.min_degree(), 7);
    for s in common::subsets(10, 3) {
        let set: VertexSet = s.iter().collect();
        let p = local_connectivity(&g, set, Mode::InternalPendant).unwrap();
        assert!(p.len() >= 5);
        verify_packing(&g, &p).unwrap();
    }
    // The complement of the family pattern C4 + C4 + 2K1 is such a graph.
    let family = generators::near_complete_family(10).unwrap();
    let c4c4 = family.iter().find(|p| p.name == "C4+C4+2K1").unwrap();
    assert_eq!(c4c4.graph.edge_count(), 37);
    assert!(tau_equals(&c4c4.graph, 3, 5).unwrap());
}

/// Removing any nonempty matching from K_n leaves tau_{n-2} = 1.
#[test]
fn complete_minus_large_matching() {
    for n in [7, 8, 9] {
        for r in 1..=n / 2 {
            let g = generators::complete_minus_matching(n, r).unwrap();
            assert_eq!(global_connectivity(&g, n - 2, Mode::InternalPendant).unwrap().value, 1, "n = {n}, r = {r}");
        }
    }
}

#[test]
fn characterizations_at_small_orders() {
    for c in verify_characterization(Characterization::L3_1, 5, None).unwrap() {
        assert_eq!(c.verdict, Verdict::Confirmed);
    }
    for c in verify_characterization(Characterization::L2_6, 8, Some(4)).unwrap() {
        assert_eq!(c.verdict, Verdict::Confirmed);
    }
    let p31 = verify_characterization(Characterization::P3_1, 9, None).unwrap();
    let contextual = p31.iter().find(|c| c.reading.as_deref() == Some("contextual")).unwrap();
    assert_eq!(contextual.verdict, Verdict::Confirmed);
    assert_eq!(contextual.forward_violations + contextual.backward_violations, 0);
}
