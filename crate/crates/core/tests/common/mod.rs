//! Helpers shared by the integration tests.

#![allow(dead_code)]

use pendant_core::packing::Mode;
use pendant_core::Graph;
use rand::Rng;

/// Maximum packing size by brute force: list every edge subset that forms a
/// tree through `s`, then search all pairwise compatible families.
pub fn oracle(n: usize, edges: &[(usize, usize)], s: &[usize], mode: Mode) -> usize {
    let smask: u64 = s.iter().map(|&v| 1u64 << v).sum();
    let mut trees: Vec<(u64, u64)> = Vec::new();
    for sub in 1u64..(1 << edges.len()) {
        let chosen: Vec<(usize, usize)> =
            (0..edges.len()).filter(|&i| sub >> i & 1 == 1).map(|i| edges[i]).collect();
        let mut deg = vec![0usize; n];
        let mut vmask = 0u64;
        for &(u, v) in &chosen {
            deg[u] += 1;
            deg[v] += 1;
            vmask |= 1 << u | 1 << v;
        }
        if vmask & smask != smask || chosen.len() + 1 != vmask.count_ones() as usize {
            continue;
        }
        // Connected with |V| - 1 edges means a tree.
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut x = x;
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut acyclic = true;
        for &(u, v) in &chosen {
            let (a, b) = (find(&mut parent, u), find(&mut parent, v));
            if a == b {
                acyclic = false;
                break;
            }
            parent[a] = b;
        }
        if !acyclic {
            continue;
        }
        let pendant = !matches!(mode, Mode::InternalPlain);
        if pendant && s.iter().any(|&v| deg[v] != 1) {
            continue;
        }
        trees.push((vmask, sub));
    }
    let vertex_exclusive = !matches!(mode, Mode::EdgePendant);
    fn best(
        trees: &[(u64, u64)],
        start: usize,
        used_v: u64,
        used_e: u64,
        count: usize,
        smask: u64,
        vx: bool,
        top: &mut usize,
    ) {
        *top = (*top).max(count);
        for j in start..trees.len() {
            if count + (trees.len() - j) <= *top {
                break;
            }
            let (v, e) = trees[j];
            if e & used_e != 0 || (vx && v & used_v & !smask != 0) {
                continue;
            }
            best(trees, j + 1, used_v | v, used_e | e, count + 1, smask, vx, top);
        }
    }
    let mut top = 0;
    best(&trees, 0, 0, 0, 0, smask, vertex_exclusive, &mut top);
    top
}

/// Uniform random graph with edge probability `p`.
pub fn random_graph(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    let mut g = Graph::empty(n).unwrap();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    g
}

/// Random connected graph: a random spanning tree plus random extra edges.
pub fn random_connected(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    let mut g = random_graph(rng, n, p);
    for v in 1..n {
        let u = rng.gen_range(0..v);
        g.add_edge(u, v).unwrap();
    }
    g
}

/// All k-subsets of `0..n`.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    use itertools::Itertools;
    (0..n).combinations(k).collect()
}

/// Graphs of order in `lo..=hi`, edges drawn independently.
pub fn arb_graph(lo: usize, hi: usize) -> impl proptest::strategy::Strategy<Value = Graph> {
    use proptest::prelude::*;
    (lo..=hi)
        .prop_flat_map(|n| (Just(n), proptest::collection::vec(any::<bool>(), n * (n - 1) / 2)))
        .prop_map(|(n, bits)| {
            let mut g = Graph::empty(n).unwrap();
            let mut i = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[i] {
                        g.add_edge(u, v).unwrap();
                    }
                    i += 1;
                }
            }
            g
        })
}

/// Connected graphs: a path through a random permutation plus random edges.
pub fn arb_connected(lo: usize, hi: usize) -> impl proptest::strategy::Strategy<Value = Graph> {
    use proptest::prelude::*;
    (arb_graph(lo, hi), any::<u64>()).prop_map(|(mut g, seed)| {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut order: Vec<usize> = (0..g.order()).collect();
        order.shuffle(&mut rng);
        for w in order.windows(2) {
            g.add_edge(w[0], w[1]).unwrap();
        }
        g
    })
}
