//! Enumeration of the inclusion-minimal trees a packing can be built from.
//!
//! A tree is described by the resources it consumes: its internal vertices
//! (outside the terminal set) and the edges that are not implied by them.

use crate::graph::{edge_index, Graph, VertexSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub(crate) struct Candidate {
    /// Non-terminal vertices of the tree.
    pub internal: u64,
    /// Edges charged to this tree: terminal-terminal edges in the internal
    /// modes, every tree edge in the edge-disjoint mode.
    pub edges: u128,
}

impl Candidate {
    fn weight(&self) -> u32 {
        self.internal.count_ones() + self.edges.count_ones()
    }
}

fn dominates(g: &Graph, set: VertexSet, terminals: VertexSet) -> bool {
    terminals
        .iter()
        .all(|s| !g.neighbors(s).is_disjoint(set))
}

/// Visits every connected vertex set inside `free` exactly once (ESU order).
/// Extension stops below any set for which `visit` returns `false`.
fn connected_sets(g: &Graph, free: VertexSet, visit: &mut dyn FnMut(VertexSet) -> bool) {
    fn extend(
        g: &Graph,
        allowed: VertexSet,
        sub: VertexSet,
        near: VertexSet,
        mut ext: VertexSet,
        visit: &mut dyn FnMut(VertexSet) -> bool,
    ) {
        if !visit(sub) {
            return;
        }
        while let Some(w) = ext.first() {
            ext.remove(w);
            let exclusive = g
                .neighbors(w)
                .intersection(allowed)
                .difference(sub)
                .difference(near);
            extend(
                g,
                allowed,
                sub.union(VertexSet::singleton(w)),
                near.union(g.neighbors(w)),
                ext.union(exclusive),
                visit,
            );
        }
    }

    for root in free {
        // Only vertices above the root may join, so each set has one root.
        let above = VertexSet::from_bits(free.bits() & !VertexSet::full(root + 1).bits());
        let start = VertexSet::singleton(root);
        let near = g.neighbors(root).union(start);
        let ext = g.neighbors(root).intersection(above);
        extend(g, above, start, near, ext, visit);
    }
}

fn direct_edge(g: &Graph, terminals: VertexSet) -> Option<Candidate> {
    if terminals.len() != 2 {
        return None;
    }
    let v = terminals.to_vec();
    g.has_edge(v[0], v[1]).then(|| Candidate {
        internal: 0,
        edges: 1u128 << edge_index(v[0], v[1]),
    })
}

fn finish(mut cands: Vec<Candidate>) -> Vec<Candidate> {
    cands.sort_by_key(|c| (c.weight(), c.internal, c.edges));
    cands.dedup();
    cands
}

/// Minimal vertex sets `I` outside the terminals such that `G[I]` is
/// connected and every terminal has a neighbour in `I`; these are exactly the
/// internal sets of minimal pendant trees.
pub(crate) fn pendant_internal(g: &Graph, terminals: VertexSet) -> Vec<Candidate> {
    let free = g.vertices().difference(terminals);
    let mut valid = Vec::new();
    connected_sets(g, free, &mut |set| {
        if dominates(g, set, terminals) {
            valid.push(set);
            false
        } else {
            true
        }
    });
    // Single-vertex deletions suffice to detect non-minimality: a smaller
    // valid set inside I can always be reached by peeling a leaf of a spanning
    // tree of I with that set contracted.
    let mut cands: Vec<Candidate> = valid
        .into_iter()
        .filter(|&set| {
            set.iter().all(|v| {
                let mut smaller = set;
                smaller.remove(v);
                smaller.is_empty()
                    || !g.is_connected_within(smaller)
                    || !dominates(g, smaller, terminals)
            })
        })
        .map(|set| Candidate {
            internal: set.bits(),
            edges: 0,
        })
        .collect();
    cands.extend(direct_edge(g, terminals));
    finish(cands)
}

/// Edge sets of pendant trees with no leaf outside the terminals.
pub(crate) fn pendant_edge_sets(g: &Graph, terminals: VertexSet) -> Vec<Candidate> {
    let free = g.vertices().difference(terminals);
    let term = terminals.to_vec();
    let mut cands = Vec::new();
    let mut sets = Vec::new();
    connected_sets(g, free, &mut |set| {
        if dominates(g, set, terminals) {
            sets.push(set);
        }
        true
    });
    for set in sets {
        let inner: Vec<(usize, usize)> = set
            .iter()
            .flat_map(|u| {
                g.neighbors(u)
                    .intersection(set)
                    .iter()
                    .filter(move |&v| v > u)
                    .map(move |v| (u, v))
            })
            .collect();
        let choices: Vec<Vec<usize>> = term
            .iter()
            .map(|&s| g.neighbors(s).intersection(set).to_vec())
            .collect();
        spanning_trees(&inner, set, &mut |tree: &[(usize, usize)]| {
            let mut deg = [0u8; 64];
            let mut base = 0u128;
            for &(u, v) in tree {
                deg[u] += 1;
                deg[v] += 1;
                base |= 1u128 << edge_index(u, v);
            }
            attach(&term, &choices, 0, &mut deg, base, set, &mut cands);
        });
    }
    cands.extend(direct_edge(g, terminals));
    finish(cands)
}

fn attach(
    term: &[usize],
    choices: &[Vec<usize>],
    i: usize,
    deg: &mut [u8; 64],
    edges: u128,
    set: VertexSet,
    out: &mut Vec<Candidate>,
) {
    if i == term.len() {
        if set.iter().all(|v| deg[v] != 1) {
            out.push(Candidate {
                internal: set.bits(),
                edges,
            });
        }
        return;
    }
    for &w in &choices[i] {
        deg[w] += 1;
        attach(
            term,
            choices,
            i + 1,
            deg,
            edges | 1u128 << edge_index(term[i], w),
            set,
            out,
        );
        deg[w] -= 1;
    }
}

/// Calls `visit` with each spanning tree of the graph on `vertices` given by
/// `edges`.
fn spanning_trees(
    edges: &[(usize, usize)],
    vertices: VertexSet,
    visit: &mut dyn FnMut(&[(usize, usize)]),
) {
    fn find(parent: &[usize; 64], mut v: usize) -> usize {
        while parent[v] != v {
            v = parent[v];
        }
        v
    }

    fn rec(
        edges: &[(usize, usize)],
        i: usize,
        need: usize,
        parent: [usize; 64],
        chosen: &mut Vec<(usize, usize)>,
        visit: &mut dyn FnMut(&[(usize, usize)]),
    ) {
        if need == 0 {
            visit(chosen);
            return;
        }
        if edges.len() - i < need {
            return;
        }
        let (u, v) = edges[i];
        let (ru, rv) = (find(&parent, u), find(&parent, v));
        if ru != rv {
            let mut next = parent;
            next[ru] = rv;
            chosen.push((u, v));
            rec(edges, i + 1, need - 1, next, chosen, visit);
            chosen.pop();
        }
        rec(edges, i + 1, need, parent, chosen, visit);
    }

    let mut parent = [0usize; 64];
    for (i, p) in parent.iter_mut().enumerate() {
        *p = i;
    }
    let need = vertices.len().saturating_sub(1);
    rec(edges, 0, need, parent, &mut Vec::new(), visit);
}

/// Minimal `(I, F)` pairs for internally disjoint Steiner trees without the
/// pendant condition: `I` outside the terminals, `F` terminal-terminal edges,
/// such that the edges touching `I` plus `F` connect the terminals and `I`.
pub(crate) fn plain_internal(g: &Graph, terminals: VertexSet) -> Vec<Candidate> {
    let free = g.vertices().difference(terminals);
    let ss_edges: Vec<(usize, usize)> = terminals
        .iter()
        .flat_map(|u| {
            g.neighbors(u)
                .intersection(terminals)
                .iter()
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
        .collect();

    let mut raw = Vec::new();
    let free_bits = free.bits();
    let mut sub = 0u64;
    loop {
        let internal = VertexSet::from_bits(sub);
        collect_plain(g, terminals, internal, &ss_edges, &mut raw);
        if sub == free_bits {
            break;
        }
        sub = (sub.wrapping_sub(free_bits)) & free_bits;
    }
    let raw = finish(raw);
    let mut kept: Vec<Candidate> = Vec::new();
    for c in raw {
        let dominated = kept.iter().any(|k| {
            k.internal & !c.internal == 0 && k.edges & !c.edges == 0
        });
        if !dominated {
            kept.push(c);
        }
    }
    kept
}

fn collect_plain(
    g: &Graph,
    terminals: VertexSet,
    internal: VertexSet,
    ss_edges: &[(usize, usize)],
    out: &mut Vec<Candidate>,
) {
    let span = terminals.union(internal);
    // Every internal vertex must reach a terminal without using F.
    let mut comp = [usize::MAX; 64];
    let mut roots = Vec::new();
    let mut left = span;
    while let Some(v) = left.first() {
        // Components of the graph whose edges each touch `internal`.
        let mut seen = VertexSet::singleton(v);
        let mut frontier = seen;
        while !frontier.is_empty() {
            let mut next = VertexSet::EMPTY;
            for u in frontier {
                let nb = if internal.contains(u) {
                    g.neighbors(u).intersection(span)
                } else {
                    g.neighbors(u).intersection(internal)
                };
                next = next.union(nb);
            }
            next = next.difference(seen);
            seen = seen.union(next);
            frontier = next;
        }
        if seen.is_disjoint(terminals) {
            return;
        }
        for u in seen {
            comp[u] = roots.len();
        }
        roots.push(seen);
        left = left.difference(seen);
    }
    let bridges: Vec<(usize, usize)> = ss_edges
        .iter()
        .copied()
        .filter(|&(u, v)| comp[u] != comp[v])
        .map(|(u, v)| (comp[u], comp[v]))
        .collect();
    let originals: Vec<(usize, usize)> = ss_edges
        .iter()
        .copied()
        .filter(|&(u, v)| comp[u] != comp[v])
        .collect();
    if roots.len() == 1 {
        out.push(Candidate {
            internal: internal.bits(),
            edges: 0,
        });
        return;
    }
    enumerate_bridge_subsets(&bridges, &originals, roots.len(), internal, out);
}

/// Chooses `k - 1` bridges (by position) that connect all `k` components.
fn enumerate_bridge_subsets(
    bridges: &[(usize, usize)],
    originals: &[(usize, usize)],
    k: usize,
    internal: VertexSet,
    out: &mut Vec<Candidate>,
) {
    fn rec(
        bridges: &[(usize, usize)],
        originals: &[(usize, usize)],
        i: usize,
        need: usize,
        parent: [usize; 64],
        edges: u128,
        internal: VertexSet,
        out: &mut Vec<Candidate>,
    ) {
        if need == 0 {
            out.push(Candidate {
                internal: internal.bits(),
                edges,
            });
            return;
        }
        if bridges.len() - i < need {
            return;
        }
        let find = |p: &[usize; 64], mut v: usize| {
            while p[v] != v {
                v = p[v];
            }
            v
        };
        let (a, b) = bridges[i];
        let (ra, rb) = (find(&parent, a), find(&parent, b));
        if ra != rb {
            let mut next = parent;
            next[ra] = rb;
            let (u, v) = originals[i];
            rec(
                bridges,
                originals,
                i + 1,
                need - 1,
                next,
                edges | 1u128 << edge_index(u, v),
                internal,
                out,
            );
        }
        rec(bridges, originals, i + 1, need, parent, edges, internal, out);
    }
    let mut parent = [0usize; 64];
    for (i, p) in parent.iter_mut().enumerate() {
        *p = i;
    }
    rec(bridges, originals, 0, k - 1, parent, 0, internal, out);
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)))).unwrap()
    }

    #[test]
    fn connected_sets_counts_path() {
        // P4 has 4 + 3 + 2 + 1 connected vertex sets.
        let p4 = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let mut seen = Vec::new();
        connected_sets(&p4, p4.vertices(), &mut |s| {
            seen.push(s);
            true
        });
        assert_eq!(seen.len(), 10);
        seen.sort();
        seen.dedup();
        assert_eq!(seen.len(), 10);
    }

    #[test]
    fn connected_sets_counts_complete() {
        let k5 = complete(5);
        let mut count = 0;
        connected_sets(&k5, k5.vertices(), &mut |_| {
            count += 1;
            true
        });
        assert_eq!(count, 31);
    }

    #[test]
    fn pendant_candidates_in_complete_graph_are_singletons() {
        let k6 = complete(6);
        let s: VertexSet = [0, 1, 2].iter().collect();
        let c = pendant_internal(&k6, s);
        assert_eq!(c.len(), 3);
        assert!(c.iter().all(|c| c.internal.count_ones() == 1 && c.edges == 0));
    }

    #[test]
    fn pendant_edge_sets_in_k4() {
        // S = {0,1,2}: only the star at 3.
        let k4 = complete(4);
        let s: VertexSet = [0, 1, 2].iter().collect();
        let c = pendant_edge_sets(&k4, s);
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].edges.count_ones(), 3);
    }

    #[test]
    fn plain_candidates_include_terminal_trees() {
        // Triangle on S plus one outside vertex joined to all of S.
        let k4 = complete(4);
        let s: VertexSet = [0, 1, 2].iter().collect();
        let c = plain_internal(&k4, s);
        // Three spanning trees of the triangle, and the star at 3.
        assert_eq!(c.len(), 4);
        assert_eq!(c.iter().filter(|c| c.internal == 0).count(), 3);
    }
}
