//! Simple undirected graphs on dense vertex labels `0..n` with `n <= 64`.
//!
//! Every vertex set is a 64-bit mask, so set algebra in the search code is a
//! handful of word operations.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::flow;

/// Largest supported graph order.
pub const MAX_ORDER: usize = 64;

/// A subset of `{0, .., 63}` stored as a bit mask.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    #[inline]
    pub const fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    #[inline]
    pub const fn bits(self) -> u64 {
        self.0
    }

    /// `{0, .., n-1}`.
    #[inline]
    pub fn full(n: usize) -> Self {
        if n >= 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    #[inline]
    pub fn singleton(v: usize) -> Self {
        VertexSet(1u64 << v)
    }

    #[inline]
    pub fn contains(self, v: usize) -> bool {
        v < 64 && self.0 >> v & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, v: usize) {
        self.0 |= 1u64 << v;
    }

    #[inline]
    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1u64 << v);
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    #[inline]
    pub fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    #[inline]
    pub fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    #[inline]
    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    /// Smallest member.
    #[inline]
    pub fn first(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }

    /// Largest member.
    #[inline]
    pub fn last(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(63 - self.0.leading_zeros() as usize)
        }
    }

    #[inline]
    pub fn iter(self) -> VertexIter {
        VertexIter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl<'a> FromIterator<&'a usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = &'a usize>>(iter: I) -> Self {
        iter.into_iter().copied().collect()
    }
}

impl IntoIterator for VertexSet {
    type Item = usize;
    type IntoIter = VertexIter;

    fn into_iter(self) -> VertexIter {
        self.iter()
    }
}

/// Ascending iterator over the members of a [`VertexSet`].
#[derive(Clone)]
pub struct VertexIter(u64);

impl Iterator for VertexIter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let c = self.0.count_ones() as usize;
        (c, Some(c))
    }
}

impl ExactSizeIterator for VertexIter {}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for VertexSet {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for VertexSet {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let members = Vec::<usize>::deserialize(deserializer)?;
        if let Some(&v) = members.iter().find(|&&v| v >= MAX_ORDER) {
            return Err(serde::de::Error::custom(format!("vertex {v} out of range")));
        }
        Ok(members.into_iter().collect())
    }
}

/// Position of the pair `u < v` in the column-major upper triangle
/// `(0,1), (0,2), (1,2), (0,3), ...` shared with graph6.
#[inline]
pub fn edge_index(u: usize, v: usize) -> usize {
    let (i, j) = if u < v { (u, v) } else { (v, u) };
    j * (j - 1) / 2 + i
}

/// Inverse of [`edge_index`].
pub fn edge_at(index: usize) -> (usize, usize) {
    let mut j = 1;
    while (j + 1) * j / 2 <= index {
        j += 1;
    }
    (index - j * (j - 1) / 2, j)
}

/// Simple undirected graph.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
    m: usize,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_ORDER {
            return Err(Error::OrderOutOfRange(n));
        }
        Ok(Graph {
            n,
            adj: vec![0; n],
            m: 0,
        })
    }

    /// Builds a graph from a list of vertex pairs; repeated pairs collapse.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(n)?;
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Builds a graph from per-vertex neighbor masks. Masks must be symmetric
    /// and loop-free.
    pub(crate) fn from_adjacency(adj: Vec<u64>) -> Self {
        let n = adj.len();
        debug_assert!(n >= 1 && n <= MAX_ORDER);
        let m = adj.iter().map(|a| a.count_ones() as usize).sum::<usize>() / 2;
        let g = Graph { n, adj, m };
        debug_assert!(g.check_symmetric());
        g
    }

    /// Graph on `n` vertices whose edges are the set bits of `code` under
    /// [`edge_index`].
    pub fn from_edge_code(n: usize, code: u128) -> Result<Self> {
        if n > 16 {
            return Err(Error::TooLarge {
                what: "edge-code construction",
                max: 16,
                order: n,
            });
        }
        let mut g = Graph::empty(n)?;
        let mut bits = code;
        while bits != 0 {
            let idx = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let (u, v) = edge_at(idx);
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    fn check_symmetric(&self) -> bool {
        (0..self.n).all(|u| {
            self.adj[u] >> u & 1 == 0
                && self.adj[u] & !VertexSet::full(self.n).bits() == 0
                && VertexSet(self.adj[u]).iter().all(|v| self.adj[v] >> u & 1 == 1)
        })
    }

    /// Adds `uv`; returns whether the edge was new.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<bool> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        if self.adj[u] >> v & 1 == 1 {
            return Ok(false);
        }
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
        self.m += 1;
        Ok(true)
    }

    /// Removes `uv`; returns whether the edge was present.
    pub fn remove_edge(&mut self, u: usize, v: usize) -> Result<bool> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v || self.adj[u] >> v & 1 == 0 {
            return Ok(false);
        }
        self.adj[u] &= !(1 << v);
        self.adj[v] &= !(1 << u);
        self.m -= 1;
        Ok(true)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            Err(Error::VertexOutOfRange {
                vertex: v,
                order: self.n,
            })
        } else {
            Ok(())
        }
    }

    pub fn check_set(&self, s: VertexSet) -> Result<()> {
        match s.difference(self.vertices()).first() {
            Some(v) => Err(Error::VertexOutOfRange {
                vertex: v,
                order: self.n,
            }),
            None => Ok(()),
        }
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u] >> v & 1 == 1
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet(self.adj[v])
    }

    /// Vertices adjacent to at least one member of `set`.
    pub fn neighborhood(&self, set: VertexSet) -> VertexSet {
        set.iter().fold(VertexSet::EMPTY, |acc, v| acc.union(self.neighbors(v)))
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(|a| a.count_ones() as usize).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(|a| a.count_ones() as usize).max().unwrap_or(0)
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    /// Edges as `(u, v)` with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.m);
        for u in 0..self.n {
            let higher = self.adj[u] & !VertexSet::full(u + 1).bits();
            out.extend(VertexSet(higher).iter().map(|v| (u, v)));
        }
        out
    }

    /// Edge set as a bit mask under [`edge_index`]; only for `n <= 16`.
    pub fn edge_code(&self) -> u128 {
        assert!(self.n <= 16, "edge codes need n <= 16");
        self.edges()
            .into_iter()
            .fold(0u128, |acc, (u, v)| acc | 1u128 << edge_index(u, v))
    }

    pub fn complement(&self) -> Graph {
        let full = VertexSet::full(self.n).bits();
        let adj = (0..self.n).map(|v| full & !self.adj[v] & !(1u64 << v)).collect();
        Graph::from_adjacency(adj)
    }

    pub fn is_complete(&self) -> bool {
        self.m == self.n * (self.n - 1) / 2
    }

    /// Vertices reachable from `start` inside `within`.
    pub fn reach_within(&self, start: usize, within: VertexSet) -> VertexSet {
        let mut seen = VertexSet::singleton(start);
        let mut frontier = seen;
        while !frontier.is_empty() {
            let next = self
                .neighborhood(frontier)
                .intersection(within)
                .difference(seen);
            seen = seen.union(next);
            frontier = next;
        }
        seen
    }

    /// Whether `G[set]` is connected; the empty set is not.
    pub fn is_connected_within(&self, set: VertexSet) -> bool {
        match set.first() {
            None => false,
            Some(v) => self.reach_within(v, set) == set,
        }
    }

    pub fn is_connected(&self) -> bool {
        self.is_connected_within(self.vertices())
    }

    /// Connected components in order of their smallest vertex.
    pub fn components(&self) -> Vec<VertexSet> {
        let mut left = self.vertices();
        let mut out = Vec::new();
        while let Some(v) = left.first() {
            let c = self.reach_within(v, left);
            left = left.difference(c);
            out.push(c);
        }
        out
    }

    /// Classical vertex connectivity. Complete graphs give `n - 1`, the
    /// single vertex and disconnected graphs give 0.
    pub fn vertex_connectivity(&self) -> usize {
        if self.n <= 1 || !self.is_connected() {
            return 0;
        }
        if self.is_complete() {
            return self.n - 1;
        }
        // Even's scheme: some vertex among the first kappa + 1 lies outside a
        // minimum cut, and a vertex on the far side has a larger index.
        let mut best = self.min_degree();
        let mut i = 0;
        while i <= best && i < self.n {
            for j in i + 1..self.n {
                if !self.has_edge(i, j) {
                    let local = flow::local_vertex_connectivity(self, i, j, best);
                    best = best.min(local);
                }
            }
            i += 1;
        }
        best
    }

    /// Whether the vertex connectivity is at least `t`, stopping early.
    pub fn connectivity_at_least(&self, t: usize) -> bool {
        if t == 0 {
            return true;
        }
        if self.n <= 1 || self.min_degree() < t || !self.is_connected() {
            return false;
        }
        if self.is_complete() {
            return self.n - 1 >= t;
        }
        for i in 0..t.min(self.n) {
            for j in i + 1..self.n {
                if !self.has_edge(i, j) && flow::local_vertex_connectivity(self, i, j, t) < t {
                    return false;
                }
            }
        }
        true
    }

    /// Edges with one end in `x` and the other in `y`.
    pub fn edge_boundary(&self, x: VertexSet, y: VertexSet) -> Result<Vec<(usize, usize)>> {
        self.check_set(x)?;
        self.check_set(y)?;
        let common = x.intersection(y);
        if !common.is_empty() {
            return Err(Error::OverlappingSets(common.to_vec()));
        }
        let mut out: Vec<(usize, usize)> = x
            .iter()
            .flat_map(|u| {
                self.neighbors(u)
                    .intersection(y)
                    .iter()
                    .map(move |v| (u.min(v), u.max(v)))
            })
            .collect();
        out.sort_unstable();
        Ok(out)
    }

    /// `G[x]` relabelled to `0..|x|`, with the map from new to old labels.
    pub fn induced_subgraph(&self, x: VertexSet) -> Result<(Graph, Vec<usize>)> {
        self.check_set(x)?;
        if x.is_empty() {
            return Err(Error::EmptySet);
        }
        let map = x.to_vec();
        let mut pos = [usize::MAX; MAX_ORDER];
        for (i, &v) in map.iter().enumerate() {
            pos[v] = i;
        }
        let adj = map
            .iter()
            .map(|&v| {
                self.neighbors(v)
                    .intersection(x)
                    .iter()
                    .fold(0u64, |acc, w| acc | 1 << pos[w])
            })
            .collect();
        Ok((Graph::from_adjacency(adj), map))
    }

    /// Relabels vertex `v` to `perm[v]`.
    pub fn permute(&self, perm: &[usize]) -> Result<Graph> {
        if perm.len() != self.n {
            return Err(Error::param("permutation length differs from graph order"));
        }
        let mut seen = VertexSet::EMPTY;
        for &p in perm {
            self.check_vertex(p)?;
            seen.insert(p);
        }
        if seen.len() != self.n {
            return Err(Error::param("not a permutation"));
        }
        let mut adj = vec![0u64; self.n];
        for (u, v) in self.edges() {
            adj[perm[u]] |= 1 << perm[v];
            adj[perm[v]] |= 1 << perm[u];
        }
        Ok(Graph::from_adjacency(adj))
    }

    /// Disjoint union; `other`'s vertices are shifted by `self.order()`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph> {
        let n = self.n + other.n;
        if n > MAX_ORDER {
            return Err(Error::OrderOutOfRange(n));
        }
        let mut adj = self.adj.clone();
        adj.extend(other.adj.iter().map(|a| a << self.n));
        Ok(Graph::from_adjacency(adj))
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}
