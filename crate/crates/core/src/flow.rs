//! Unit-capacity max-flow for Menger-type questions between two vertices.

use std::collections::VecDeque;

use crate::graph::Graph;

struct Network {
    size: usize,
    cap: Vec<i8>,
    adj: Vec<Vec<usize>>,
}

impl Network {
    fn new(size: usize) -> Self {
        Network {
            size,
            cap: vec![0; size * size],
            adj: vec![Vec::new(); size],
        }
    }

    fn arc(&mut self, a: usize, b: usize, c: i8) {
        if self.cap[a * self.size + b] == 0 && self.cap[b * self.size + a] == 0 {
            self.adj[a].push(b);
            self.adj[b].push(a);
        }
        self.cap[a * self.size + b] += c;
    }

    /// Augments along shortest paths until `limit` units flow or no path is left.
    fn max_flow(&mut self, s: usize, t: usize, limit: usize) -> usize {
        let mut flow = 0;
        let mut parent = vec![usize::MAX; self.size];
        while flow < limit {
            parent.fill(usize::MAX);
            parent[s] = s;
            let mut queue = VecDeque::from([s]);
            while let Some(a) = queue.pop_front() {
                if a == t {
                    break;
                }
                for &b in &self.adj[a] {
                    if parent[b] == usize::MAX && self.cap[a * self.size + b] > 0 {
                        parent[b] = a;
                        queue.push_back(b);
                    }
                }
            }
            if parent[t] == usize::MAX {
                break;
            }
            let mut b = t;
            while b != s {
                let a = parent[b];
                self.cap[a * self.size + b] -= 1;
                self.cap[b * self.size + a] += 1;
                b = a;
            }
            flow += 1;
        }
        flow
    }
}

/// Vertex-split network: vertex `v` becomes `2v -> 2v+1` with capacity 1
/// (unbounded for the two endpoints).
fn split_network(g: &Graph, s: usize, t: usize) -> Network {
    let n = g.order();
    let mut net = Network::new(2 * n);
    for v in 0..n {
        let c = if v == s || v == t { n as i8 } else { 1 };
        net.arc(2 * v, 2 * v + 1, c);
    }
    for (u, v) in g.edges() {
        if (u == s && v == t) || (u == t && v == s) {
            continue;
        }
        net.arc(2 * u + 1, 2 * v, 1);
        net.arc(2 * v + 1, 2 * u, 1);
    }
    net
}

/// Maximum number of internally disjoint `s`-`t` paths, counting a direct
/// edge as one path, capped at `limit`.
pub fn local_vertex_connectivity(g: &Graph, s: usize, t: usize, limit: usize) -> usize {
    let direct = usize::from(g.has_edge(s, t));
    if limit <= direct {
        return limit;
    }
    let mut net = split_network(g, s, t);
    direct + net.max_flow(2 * s + 1, 2 * t, limit - direct)
}

/// Extracts unit-flow paths by repeated BFS over arcs that carry flow.
fn extract_paths(
    carried: &mut [Vec<usize>],
    source: usize,
    sink: usize,
    count: usize,
) -> Vec<Vec<usize>> {
    let mut paths = Vec::with_capacity(count);
    for _ in 0..count {
        let mut parent = vec![usize::MAX; carried.len()];
        parent[source] = source;
        let mut queue = VecDeque::from([source]);
        while let Some(a) = queue.pop_front() {
            if a == sink {
                break;
            }
            for &b in &carried[a] {
                if parent[b] == usize::MAX {
                    parent[b] = a;
                    queue.push_back(b);
                }
            }
        }
        assert!(parent[sink] != usize::MAX, "flow decomposition lost a path");
        let mut path = vec![sink];
        let mut b = sink;
        while b != source {
            let a = parent[b];
            let pos = carried[a].iter().position(|&x| x == b).unwrap();
            carried[a].swap_remove(pos);
            path.push(a);
            b = a;
        }
        path.reverse();
        paths.push(path);
    }
    paths
}

/// A maximum family of internally disjoint `s`-`t` paths, each listed from
/// `s` to `t`. The direct edge, if present, comes first.
pub fn vertex_disjoint_paths(g: &Graph, s: usize, t: usize) -> Vec<Vec<usize>> {
    let n = g.order();
    let mut out = Vec::new();
    if g.has_edge(s, t) {
        out.push(vec![s, t]);
    }
    let mut net = split_network(g, s, t);
    let before = net.cap.clone();
    let f = net.max_flow(2 * s + 1, 2 * t, n);
    // Arcs between distinct vertices that carry net flow.
    let mut carried = vec![Vec::new(); n];
    for (u, v) in g.edges() {
        for (a, b) in [(u, v), (v, u)] {
            let idx = (2 * a + 1) * net.size + 2 * b;
            if before[idx] > 0 && net.cap[idx] < before[idx] {
                carried[a].push(b);
            }
        }
    }
    for (a, list) in carried.iter_mut().enumerate() {
        // Flow can be cancelled in both directions; keep the net direction.
        list.retain(|&b| {
            let fwd = (2 * a + 1) * net.size + 2 * b;
            let bwd = (2 * b + 1) * net.size + 2 * a;
            let fwd_used = before[fwd] - net.cap[fwd];
            let bwd_used = before[bwd] - net.cap[bwd];
            fwd_used > bwd_used
        });
    }
    out.extend(extract_paths(&mut carried, s, t, f));
    out
}

/// Maximum number of edge-disjoint `s`-`t` paths, capped at `limit`.
pub fn local_edge_connectivity(g: &Graph, s: usize, t: usize, limit: usize) -> usize {
    edge_network(g).max_flow(s, t, limit)
}

fn edge_network(g: &Graph) -> Network {
    let mut net = Network::new(g.order());
    for (u, v) in g.edges() {
        net.arc(u, v, 1);
        net.arc(v, u, 1);
    }
    net
}

/// A maximum family of edge-disjoint `s`-`t` paths, each simple and listed
/// from `s` to `t`.
pub fn edge_disjoint_paths(g: &Graph, s: usize, t: usize) -> Vec<Vec<usize>> {
    let n = g.order();
    let mut net = edge_network(g);
    let f = net.max_flow(s, t, n * n);
    let mut carried = vec![Vec::new(); n];
    for (u, v) in g.edges() {
        // Both arcs start at capacity 1; the used one drops to 0 and the
        // other rises to 2, or both stay at 1.
        if net.cap[u * n + v] == 0 {
            carried[u].push(v);
        } else if net.cap[v * n + u] == 0 {
            carried[v].push(u);
        }
    }
    extract_paths(&mut carried, s, t, f)
}
