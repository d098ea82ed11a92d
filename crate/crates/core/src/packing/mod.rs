//! Packings of Steiner trees: internally disjoint pendant trees (`tau`),
//! edge-disjoint pendant trees (`mu`), and internally disjoint trees without
//! the pendant condition (`kappa`).

mod candidates;
mod engine;

use std::collections::VecDeque;
use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::flow;
use crate::graph::{edge_at, edge_index, Graph, VertexSet};

use candidates::Candidate;
use engine::Packer;

/// Largest order for modes that track individual edges.
pub const MAX_EDGE_MODE_ORDER: usize = 16;

/// How trees in a packing may overlap.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// Pendant trees sharing no edge and no vertex outside the terminals.
    InternalPendant,
    /// Pendant trees sharing no edge.
    EdgePendant,
    /// Trees sharing no edge and no vertex outside the terminals.
    InternalPlain,
}

impl Mode {
    pub fn symbol(self) -> &'static str {
        match self {
            Mode::InternalPendant => "tau",
            Mode::EdgePendant => "mu",
            Mode::InternalPlain => "kappa",
        }
    }

    pub fn is_pendant(self) -> bool {
        !matches!(self, Mode::InternalPlain)
    }

    fn vertex_exclusive(self) -> bool {
        !matches!(self, Mode::EdgePendant)
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SteinerTree {
    pub vertices: VertexSet,
    /// Edges as `(u, v)` with `u < v`, sorted.
    pub edges: Vec<(usize, usize)>,
}

impl SteinerTree {
    pub fn from_edges(mut edges: Vec<(usize, usize)>) -> Self {
        for e in edges.iter_mut() {
            if e.0 > e.1 {
                *e = (e.1, e.0);
            }
        }
        edges.sort_unstable();
        let vertices = edges.iter().flat_map(|&(u, v)| [u, v]).collect();
        SteinerTree { vertices, edges }
    }

    fn from_path(path: &[usize]) -> Self {
        SteinerTree::from_edges(path.windows(2).map(|w| (w[0], w[1])).collect())
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreePacking {
    pub mode: Mode,
    pub terminals: VertexSet,
    pub trees: Vec<SteinerTree>,
}

impl TreePacking {
    pub fn len(&self) -> usize {
        self.trees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.trees.is_empty()
    }
}

/// Why a packing fails to be valid.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "defect", rename_all = "snake_case")]
pub enum PackingDefect {
    TooFewTerminals,
    TerminalOutOfRange { vertex: usize },
    EdgeNotInGraph { tree: usize, u: usize, v: usize },
    NotATree { tree: usize },
    MissingTerminal { tree: usize, vertex: usize },
    TerminalNotLeaf { tree: usize, vertex: usize },
    SharedEdge { first: usize, second: usize, u: usize, v: usize },
    SharedVertex { first: usize, second: usize, vertex: usize },
}

impl fmt::Display for PackingDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            PackingDefect::TooFewTerminals => write!(f, "fewer than two terminals"),
            PackingDefect::TerminalOutOfRange { vertex } => {
                write!(f, "terminal {vertex} is not a vertex of the graph")
            }
            PackingDefect::EdgeNotInGraph { tree, u, v } => {
                write!(f, "tree {tree} uses {u}-{v}, which is not an edge")
            }
            PackingDefect::NotATree { tree } => write!(f, "tree {tree} is not a tree"),
            PackingDefect::MissingTerminal { tree, vertex } => {
                write!(f, "tree {tree} misses terminal {vertex}")
            }
            PackingDefect::TerminalNotLeaf { tree, vertex } => {
                write!(f, "terminal {vertex} is not a leaf of tree {tree}")
            }
            PackingDefect::SharedEdge { first, second, u, v } => {
                write!(f, "trees {first} and {second} share edge {u}-{v}")
            }
            PackingDefect::SharedVertex { first, second, vertex } => {
                write!(f, "trees {first} and {second} share non-terminal {vertex}")
            }
        }
    }
}

fn is_tree(t: &SteinerTree) -> bool {
    if t.edges.is_empty() || t.edges.windows(2).any(|w| w[0] == w[1]) {
        return false;
    }
    if t.vertices.len() != t.edges.len() + 1 {
        return false;
    }
    let start = t.vertices.first().unwrap();
    let mut seen = VertexSet::singleton(start);
    let mut queue = VecDeque::from([start]);
    while let Some(a) = queue.pop_front() {
        for &(u, v) in &t.edges {
            let b = if u == a {
                v
            } else if v == a {
                u
            } else {
                continue;
            };
            if !seen.contains(b) {
                seen.insert(b);
                queue.push_back(b);
            }
        }
    }
    seen == t.vertices
}

/// Checks every condition of the packing's mode.
pub fn verify_packing(g: &Graph, p: &TreePacking) -> std::result::Result<(), PackingDefect> {
    if p.terminals.len() < 2 {
        return Err(PackingDefect::TooFewTerminals);
    }
    if let Some(v) = p.terminals.iter().find(|&v| v >= g.order()) {
        return Err(PackingDefect::TerminalOutOfRange { vertex: v });
    }
    // Normalized copies: the `vertices` field is derived, not trusted.
    let trees: Vec<SteinerTree> = p.trees.iter().map(|t| SteinerTree::from_edges(t.edges.clone())).collect();
    for (i, t) in trees.iter().enumerate() {
        for &(u, v) in &t.edges {
            if u >= g.order() || v >= g.order() || !g.has_edge(u, v) {
                return Err(PackingDefect::EdgeNotInGraph { tree: i, u, v });
            }
        }
        if !is_tree(t) {
            return Err(PackingDefect::NotATree { tree: i });
        }
        for s in p.terminals {
            if !t.vertices.contains(s) {
                return Err(PackingDefect::MissingTerminal { tree: i, vertex: s });
            }
            if p.mode.is_pendant() && t.degree(s) != 1 {
                return Err(PackingDefect::TerminalNotLeaf { tree: i, vertex: s });
            }
        }
    }
    for (i, a) in trees.iter().enumerate() {
        for (j, b) in trees.iter().enumerate().skip(i + 1) {
            if let Some(&(u, v)) = a.edges.iter().find(|e| b.edges.binary_search(e).is_ok()) {
                return Err(PackingDefect::SharedEdge { first: i, second: j, u, v });
            }
            if p.mode.vertex_exclusive() {
                let common = a.vertices.intersection(b.vertices).difference(p.terminals);
                if let Some(vertex) = common.first() {
                    return Err(PackingDefect::SharedVertex { first: i, second: j, vertex });
                }
            }
        }
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolverOptions {
    /// Skip closed forms and the two-terminal flow route.
    pub force_generic: bool,
    /// Start the global minimum from the degree and connectivity caps.
    pub lemma_caps: bool,
    /// Worker threads for the scan over terminal sets.
    pub threads: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            force_generic: false,
            lemma_caps: true,
            threads: 1,
        }
    }
}

enum Kind {
    Paths(Vec<Vec<usize>>),
    Engine(Packer),
}

/// One terminal set, ready to answer packing queries.
struct Local<'g> {
    g: &'g Graph,
    mode: Mode,
    terminals: VertexSet,
    kind: Kind,
}

fn check_order(g: &Graph, mode: Mode, terminals: VertexSet, generic: bool) -> Result<()> {
    let edge_bits = !mode.vertex_exclusive()
        || mode == Mode::InternalPlain
        || (generic && terminals.len() == 2);
    if edge_bits && g.order() > MAX_EDGE_MODE_ORDER {
        return Err(Error::TooLarge {
            what: "this packing mode",
            max: MAX_EDGE_MODE_ORDER,
            order: g.order(),
        });
    }
    Ok(())
}

impl<'g> Local<'g> {
    fn new(g: &'g Graph, terminals: VertexSet, mode: Mode, opts: &SolverOptions) -> Self {
        if terminals.len() == 2 && !opts.force_generic {
            let v = terminals.to_vec();
            let paths = match mode {
                Mode::EdgePendant => flow::edge_disjoint_paths(g, v[0], v[1]),
                _ => flow::vertex_disjoint_paths(g, v[0], v[1]),
            };
            return Local { g, mode, terminals, kind: Kind::Paths(paths) };
        }
        let cands = match mode {
            Mode::InternalPendant => candidates::pendant_internal(g, terminals),
            Mode::EdgePendant => candidates::pendant_edge_sets(g, terminals),
            Mode::InternalPlain => candidates::plain_internal(g, terminals),
        };
        let direct = terminals.len() == 2;
        let touch = terminals
            .iter()
            .map(|s| {
                let outside = g.neighbors(s).difference(terminals);
                let mut te = 0u128;
                let inside = g.neighbors(s).intersection(terminals);
                if mode == Mode::InternalPlain || direct {
                    for t in inside {
                        te |= 1u128 << edge_index(s, t);
                    }
                }
                match mode {
                    Mode::EdgePendant => {
                        for t in outside {
                            te |= 1u128 << edge_index(s, t);
                        }
                        (0, te)
                    }
                    _ => (outside.bits(), te),
                }
            })
            .collect();
        let packer = Packer::new(mode.vertex_exclusive(), cands, touch);
        Local { g, mode, terminals, kind: Kind::Engine(packer) }
    }

    fn can_pack(&mut self, t: usize) -> bool {
        match &mut self.kind {
            Kind::Paths(p) => t <= p.len(),
            Kind::Engine(e) => e.pack(t).is_some(),
        }
    }

    fn packing(&mut self, t: usize) -> Option<TreePacking> {
        let trees = match &mut self.kind {
            Kind::Paths(p) => {
                if t > p.len() {
                    return None;
                }
                p[..t].iter().map(|p| SteinerTree::from_path(p)).collect()
            }
            Kind::Engine(e) => {
                let chosen = e.pack(t)?;
                chosen.iter().map(|c| self.tree_of(c)).collect()
            }
        };
        Some(self.wrap(trees))
    }

    fn maximum(&mut self, cap: usize) -> TreePacking {
        let trees = match &mut self.kind {
            Kind::Paths(p) => p.iter().take(cap).map(|p| SteinerTree::from_path(p)).collect(),
            Kind::Engine(e) => {
                let chosen = e.maximum(cap);
                chosen.iter().map(|c| self.tree_of(c)).collect()
            }
        };
        self.wrap(trees)
    }

    /// Exact value if it is below `bound`.
    fn value_below(&mut self, bound: usize) -> Option<TreePacking> {
        if bound != usize::MAX && self.can_pack(bound) {
            return None;
        }
        Some(self.maximum(bound.saturating_sub(1)))
    }

    fn wrap(&self, mut trees: Vec<SteinerTree>) -> TreePacking {
        trees.sort_by(|a, b| a.edges.cmp(&b.edges));
        TreePacking { mode: self.mode, terminals: self.terminals, trees }
    }

    fn tree_of(&self, c: &Candidate) -> SteinerTree {
        let g = self.g;
        let internal = VertexSet::from_bits(c.internal);
        let f_edges = || {
            let mut bits = c.edges;
            std::iter::from_fn(move || {
                (bits != 0).then(|| {
                    let i = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    edge_at(i)
                })
            })
        };
        match self.mode {
            Mode::EdgePendant => SteinerTree::from_edges(f_edges().collect()),
            Mode::InternalPendant => {
                if internal.is_empty() {
                    return SteinerTree::from_edges(f_edges().collect());
                }
                let mut edges = bfs_tree(g, internal, |_, _| true);
                for s in self.terminals {
                    let w = g.neighbors(s).intersection(internal).first().unwrap();
                    edges.push((s, w));
                }
                SteinerTree::from_edges(edges)
            }
            Mode::InternalPlain => {
                let span = internal.union(self.terminals);
                let f: Vec<(usize, usize)> = f_edges().collect();
                let edges = bfs_tree(g, span, |u, v| {
                    internal.contains(u)
                        || internal.contains(v)
                        || f.contains(&(u.min(v), u.max(v)))
                });
                SteinerTree::from_edges(edges)
            }
        }
    }
}

/// BFS spanning tree of the graph on `span` restricted to allowed edges.
fn bfs_tree(g: &Graph, span: VertexSet, allowed: impl Fn(usize, usize) -> bool) -> Vec<(usize, usize)> {
    let start = span.first().unwrap();
    let mut seen = VertexSet::singleton(start);
    let mut queue = VecDeque::from([start]);
    let mut edges = Vec::new();
    while let Some(a) = queue.pop_front() {
        for b in g.neighbors(a).intersection(span).difference(seen) {
            if allowed(a, b) {
                seen.insert(b);
                edges.push((a, b));
                queue.push_back(b);
            }
        }
    }
    debug_assert_eq!(seen, span);
    edges
}

fn validate_terminals(g: &Graph, terminals: VertexSet) -> Result<()> {
    g.check_set(terminals)?;
    if terminals.len() < 2 {
        return Err(Error::param(format!(
            "terminal set must have at least 2 vertices, got {}",
            terminals.len()
        )));
    }
    Ok(())
}

/// A maximum packing for one terminal set.
pub fn local_connectivity(g: &Graph, terminals: VertexSet, mode: Mode) -> Result<TreePacking> {
    local_connectivity_with(g, terminals, mode, &SolverOptions::default())
}

pub fn local_connectivity_with(
    g: &Graph,
    terminals: VertexSet,
    mode: Mode,
    opts: &SolverOptions,
) -> Result<TreePacking> {
    validate_terminals(g, terminals)?;
    check_order(g, mode, terminals, opts.force_generic)?;
    Ok(Local::new(g, terminals, mode, opts).maximum(usize::MAX))
}

/// How a global value was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Disconnected,
    AllVertices,
    CompleteGraph,
    CompleteBipartite,
    Exhaustive,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConnectivityResult {
    pub mode: Mode,
    pub k: usize,
    pub value: usize,
    /// Lexicographically first terminal set attaining the minimum.
    pub terminals: VertexSet,
    pub witness: TreePacking,
    pub method: Method,
}

/// Upper bounds on the internally disjoint pendant value for `k >= 3`:
/// `(min degree - k + 1, connectivity - k + 2, n - k)`, each floored at 0.
pub fn connectivity_upper_bounds(g: &Graph, k: usize) -> Result<(usize, usize, usize)> {
    let n = g.order();
    if k < 3 || k > n {
        return Err(Error::param(format!("bounds need 3 <= k <= n, got k = {k}, n = {n}")));
    }
    let floor = |a: usize, b: usize| a.saturating_sub(b);
    Ok((
        floor(g.min_degree() + 1, k),
        floor(g.vertex_connectivity() + 2, k),
        n - k,
    ))
}

fn check_k(g: &Graph, k: usize, mode: Mode, opts: &SolverOptions) -> Result<()> {
    let n = g.order();
    if k < 2 || k > n {
        return Err(Error::param(format!("k must satisfy 2 <= k <= n = {n}, got {k}")));
    }
    check_order(g, mode, VertexSet::full(k), opts.force_generic)
}

/// Sizes `(r, s)` with `r <= s` if `g` is complete bipartite.
fn complete_bipartite_sides(g: &Graph) -> Option<(usize, usize)> {
    if !g.is_connected() || g.order() < 2 {
        return None;
    }
    let mut side = VertexSet::singleton(0);
    let mut frontier = side;
    let mut seen = side;
    let mut parity = false;
    let mut other = VertexSet::EMPTY;
    while !frontier.is_empty() {
        let next = g.neighborhood(frontier).difference(seen);
        seen = seen.union(next);
        parity = !parity;
        if parity {
            other = other.union(next);
        } else {
            side = side.union(next);
        }
        frontier = next;
    }
    let (r, s) = (side.len(), other.len());
    let complete = side.iter().all(|v| g.neighbors(v) == other);
    (complete && other.iter().all(|v| g.neighbors(v) == side))
        .then(|| (r.min(s), r.max(s)))
}

fn closed_form(g: &Graph, k: usize, mode: Mode) -> Option<(usize, Method)> {
    if mode != Mode::InternalPendant || k < 3 {
        return None;
    }
    let n = g.order();
    if g.is_complete() {
        return Some((n - k, Method::CompleteGraph));
    }
    let (r, s) = complete_bipartite_sides(g)?;
    let v = (r + 1).saturating_sub(k).min((s + 1).saturating_sub(k));
    Some((v, Method::CompleteBipartite))
}

fn with_threads<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> T {
    if threads <= 1 {
        return f();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(pool) => pool.install(f),
        Err(_) => f(),
    }
}

fn terminal_sets(n: usize, k: usize) -> Vec<VertexSet> {
    (0..n).combinations(k).map(|c| c.into_iter().collect()).collect()
}

fn initial_bound(g: &Graph, k: usize, mode: Mode, opts: &SolverOptions) -> usize {
    if mode == Mode::InternalPendant && opts.lemma_caps && k >= 3 {
        let (a, b, c) = connectivity_upper_bounds(g, k).unwrap();
        a.min(b).min(c)
    } else {
        usize::MAX
    }
}

/// The minimum over all `k`-subsets of the maximum packing size, with the
/// lexicographically first minimizing set and a packing for it.
pub fn global_connectivity(g: &Graph, k: usize, mode: Mode) -> Result<ConnectivityResult> {
    global_connectivity_with(g, k, mode, &SolverOptions::default())
}

pub fn global_connectivity_with(
    g: &Graph,
    k: usize,
    mode: Mode,
    opts: &SolverOptions,
) -> Result<ConnectivityResult> {
    check_k(g, k, mode, opts)?;
    let n = g.order();
    let sets = terminal_sets(n, k);
    let empty = |terminals| TreePacking { mode, terminals, trees: Vec::new() };

    if !g.is_connected() {
        return Ok(ConnectivityResult {
            mode,
            k,
            value: 0,
            terminals: sets[0],
            witness: empty(sets[0]),
            method: Method::Disconnected,
        });
    }
    if k == n && k >= 3 && mode.is_pendant() {
        return Ok(ConnectivityResult {
            mode,
            k,
            value: 0,
            terminals: sets[0],
            witness: empty(sets[0]),
            method: Method::AllVertices,
        });
    }

    if !opts.force_generic {
        if let Some((value, method)) = closed_form(g, k, mode) {
            if let Some(r) = locate(g, &sets, value, mode, opts, method) {
                return Ok(r);
            }
            debug_assert!(false, "closed form {value} disagrees with the search");
        }
    }

    let cap = initial_bound(g, k, mode, opts);
    with_threads(opts.threads, || {
        if opts.threads <= 1 {
            let mut best = cap;
            let mut found = None;
            for &s in &sets {
                if let Some(p) = Local::new(g, s, mode, opts).value_below(best) {
                    best = p.len();
                    found = Some(p);
                    if best == 0 {
                        break;
                    }
                }
            }
            if let Some(witness) = found {
                return Ok(ConnectivityResult {
                    mode,
                    k,
                    value: best,
                    terminals: witness.terminals,
                    witness,
                    method: Method::Exhaustive,
                });
            }
            Ok(locate(g, &sets, best, mode, opts, Method::Exhaustive)
                .expect("upper bound below every local value"))
        } else {
            let best = AtomicUsize::new(cap);
            sets.par_iter().for_each(|&s| {
                let b = best.load(Ordering::Relaxed);
                if b == 0 {
                    return;
                }
                if let Some(p) = Local::new(g, s, mode, opts).value_below(b) {
                    best.fetch_min(p.len(), Ordering::Relaxed);
                }
            });
            let v = best.into_inner();
            Ok(locate(g, &sets, v, mode, opts, Method::Exhaustive)
                .expect("minimum not attained"))
        }
    })
}

/// Given that every set has value at least `value`, finds the first set with
/// exactly `value` and a witness packing for it.
fn locate(
    g: &Graph,
    sets: &[VertexSet],
    value: usize,
    mode: Mode,
    opts: &SolverOptions,
    method: Method,
) -> Option<ConnectivityResult> {
    let first = if opts.threads <= 1 {
        sets.iter()
            .position(|&s| !Local::new(g, s, mode, opts).can_pack(value + 1))
    } else {
        sets.par_iter()
            .position_first(|&s| !Local::new(g, s, mode, opts).can_pack(value + 1))
    }?;
    let s = sets[first];
    let witness = Local::new(g, s, mode, opts).packing(value)?;
    Some(ConnectivityResult { mode, k: s.len(), value, terminals: s, witness, method })
}

/// Whether every `k`-subset admits `t` trees.
pub fn global_at_least(g: &Graph, k: usize, mode: Mode, t: usize, opts: &SolverOptions) -> Result<bool> {
    check_k(g, k, mode, opts)?;
    if t == 0 {
        return Ok(true);
    }
    if !g.is_connected() || (k == g.order() && k >= 3 && mode.is_pendant()) {
        return Ok(false);
    }
    if t > initial_bound(g, k, mode, opts) {
        return Ok(false);
    }
    if !opts.force_generic {
        if let Some((value, _)) = closed_form(g, k, mode) {
            return Ok(value >= t);
        }
    }
    let sets = terminal_sets(g.order(), k);
    Ok(with_threads(opts.threads, || {
        if opts.threads <= 1 {
            sets.iter().all(|&s| Local::new(g, s, mode, opts).can_pack(t))
        } else {
            sets.par_iter().all(|&s| Local::new(g, s, mode, opts).can_pack(t))
        }
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)))).unwrap()
    }

    fn set(v: &[usize]) -> VertexSet {
        v.iter().collect()
    }

    fn star(leaves: usize) -> Graph {
        Graph::from_edges(leaves + 1, (1..=leaves).map(|v| (0, v))).unwrap()
    }

    #[test]
    fn complete_graph_local() {
        let p = local_connectivity(&complete(5), set(&[0, 1, 2]), Mode::InternalPendant).unwrap();
        assert_eq!(p.len(), 2);
        verify_packing(&complete(5), &p).unwrap();
    }

    #[test]
    fn star_leaves() {
        let g = star(3);
        let p = local_connectivity(&g, set(&[1, 2, 3]), Mode::InternalPendant).unwrap();
        assert_eq!(p.len(), 1);
        assert_eq!(p.trees[0].edges, vec![(0, 1), (0, 2), (0, 3)]);
        let p = local_connectivity(&g, set(&[0, 1, 2]), Mode::InternalPendant).unwrap();
        assert_eq!(p.len(), 0);
    }

    #[test]
    fn rejects_small_terminal_sets() {
        assert!(local_connectivity(&complete(4), set(&[1]), Mode::InternalPendant).is_err());
        assert!(local_connectivity(&complete(4), set(&[1, 7]), Mode::InternalPendant).is_err());
        assert!(global_connectivity(&complete(4), 5, Mode::InternalPendant).is_err());
        assert!(global_connectivity(&complete(4), 1, Mode::InternalPendant).is_err());
    }

    #[test]
    fn complete_global_matches_generic() {
        let g = complete(6);
        let fast = global_connectivity(&g, 3, Mode::InternalPendant).unwrap();
        assert_eq!(fast.value, 3);
        assert_eq!(fast.method, Method::CompleteGraph);
        assert_eq!(fast.terminals, set(&[0, 1, 2]));
        let opts = SolverOptions { force_generic: true, lemma_caps: false, threads: 1 };
        let slow = global_connectivity_with(&g, 3, Mode::InternalPendant, &opts).unwrap();
        assert_eq!(slow.value, 3);
        assert_eq!(slow.terminals, fast.terminals);
        verify_packing(&g, &slow.witness).unwrap();
    }

    #[test]
    fn complete_bipartite_global() {
        let g = Graph::from_edges(8, (0..4).flat_map(|i| (4..8).map(move |j| (i, j)))).unwrap();
        let r = global_connectivity(&g, 3, Mode::InternalPendant).unwrap();
        assert_eq!(r.value, 2);
        assert_eq!(r.method, Method::CompleteBipartite);
        let opts = SolverOptions { force_generic: true, lemma_caps: false, threads: 2 };
        assert_eq!(global_connectivity_with(&g, 3, Mode::InternalPendant, &opts).unwrap().value, 2);
    }

    #[test]
    fn two_terminals_flow_matches_engine() {
        let g = Graph::from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 3), (1, 4)]).unwrap();
        let generic = SolverOptions { force_generic: true, ..Default::default() };
        for mode in [Mode::InternalPendant, Mode::EdgePendant, Mode::InternalPlain] {
            for s in terminal_sets(6, 2) {
                let a = local_connectivity(&g, s, mode).unwrap();
                let b = local_connectivity_with(&g, s, mode, &generic).unwrap();
                assert_eq!(a.len(), b.len(), "{mode} {s}");
                verify_packing(&g, &a).unwrap();
                verify_packing(&g, &b).unwrap();
            }
        }
    }

    #[test]
    fn upper_bounds() {
        let g = complete(6);
        assert_eq!(connectivity_upper_bounds(&g, 3).unwrap(), (3, 4, 3));
        let c = Graph::from_edges(5, (0..5).map(|i| (i, (i + 1) % 5))).unwrap();
        assert_eq!(connectivity_upper_bounds(&c, 4).unwrap(), (0, 0, 1));
        assert!(connectivity_upper_bounds(&c, 2).is_err());
    }

    #[test]
    fn verify_reports_defects() {
        let g = complete(5);
        let s = set(&[0, 1, 2]);
        let star_at = |c: usize| SteinerTree::from_edges(vec![(0, c), (1, c), (2, c)]);
        let ok = TreePacking { mode: Mode::InternalPendant, terminals: s, trees: vec![star_at(3), star_at(4)] };
        assert_eq!(verify_packing(&g, &ok), Ok(()));
        let shared = TreePacking { trees: vec![star_at(3), star_at(3)], ..ok.clone() };
        assert!(matches!(verify_packing(&g, &shared), Err(PackingDefect::SharedEdge { .. })));
        let not_leaf = TreePacking {
            trees: vec![SteinerTree::from_edges(vec![(0, 1), (1, 3), (2, 3)])],
            ..ok.clone()
        };
        assert_eq!(
            verify_packing(&g, &not_leaf),
            Err(PackingDefect::TerminalNotLeaf { tree: 0, vertex: 1 })
        );
        let plain = TreePacking { mode: Mode::InternalPlain, ..not_leaf };
        assert_eq!(verify_packing(&g, &plain), Ok(()));
    }
}
