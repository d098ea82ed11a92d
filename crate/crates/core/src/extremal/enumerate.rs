//! Labeled graph enumeration with degree pruning and cheap isomorph rejection.
//!
//! Edges are decided row by row, `(0,1), (0,2), .., (0,n-1), (1,2), ..`, so a
//! vertex's degree is final once its row is done. With rejection enabled only
//! labelings with nonincreasing degrees that cannot be made smaller by
//! swapping two vertices of equal degree survive. Every isomorphism class
//! keeps its least degree-sorted labeling, so no class is lost.

use std::ops::ControlFlow;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest order the enumerator supports.
pub const MAX_ENUM_ORDER: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumerationSpec {
    pub n: usize,
    pub m: usize,
    pub min_degree: usize,
    pub max_degree: usize,
    pub min_connectivity: usize,
    pub require_connected: bool,
    pub reject_isomorphs: bool,
}

impl EnumerationSpec {
    /// All labeled graphs with `n` vertices and `m` edges.
    pub fn new(n: usize, m: usize) -> Self {
        EnumerationSpec {
            n,
            m,
            min_degree: 0,
            max_degree: n.saturating_sub(1),
            min_connectivity: 0,
            require_connected: false,
            reject_isomorphs: false,
        }
    }
}

#[derive(Clone, Copy)]
pub(crate) struct State {
    idx: usize,
    chosen: usize,
    adj: [u16; MAX_ENUM_ORDER],
    deg: [u8; MAX_ENUM_ORDER],
}

pub(crate) struct Enumerator {
    spec: EnumerationSpec,
    pairs: Vec<(usize, usize)>,
    /// `row_of[idx]`: the row the pair at `idx` belongs to.
    row_of: Vec<usize>,
    /// `rem[idx][v]`: pairs at position `idx` or later that touch `v`.
    rem: Vec<[u8; MAX_ENUM_ORDER]>,
}

/// Swaps bits `a` and `b` of a row.
#[inline]
fn swap_bits(x: u16, a: usize, b: usize) -> u16 {
    if ((x >> a) ^ (x >> b)) & 1 == 1 {
        x ^ (1 << a | 1 << b)
    } else {
        x
    }
}

/// Whether exchanging any two equal-degree vertices would give a
/// lexicographically smaller upper triangle, read row by row.
pub(crate) fn transposition_minimal(adj: &[u16], deg: &[u8]) -> bool {
    let n = adj.len();
    for a in 0..n {
        for b in a + 1..n {
            if deg[a] != deg[b] {
                continue;
            }
            let sigma = |u: usize| if u == a { b } else if u == b { a } else { u };
            for u in 0..n {
                let above = !((1u32 << (u + 1)) - 1) as u16;
                let x = adj[u] & above;
                let y = swap_bits(adj[sigma(u)], a, b) & above;
                let d = x ^ y;
                if d != 0 {
                    let low = d & d.wrapping_neg();
                    if y & low == 0 {
                        return false;
                    }
                    break;
                }
            }
        }
    }
    true
}

impl Enumerator {
    pub fn new(spec: EnumerationSpec) -> Result<Self> {
        let n = spec.n;
        if n == 0 || n > MAX_ENUM_ORDER {
            return Err(Error::TooLarge { what: "graph enumeration", max: MAX_ENUM_ORDER, order: n });
        }
        let total = n * (n - 1) / 2;
        if spec.m > total {
            return Err(Error::param(format!("{} edges do not fit in {n} vertices", spec.m)));
        }
        let mut pairs = Vec::with_capacity(total);
        let mut row_of = Vec::with_capacity(total);
        for u in 0..n {
            for v in u + 1..n {
                pairs.push((u, v));
                row_of.push(u);
            }
        }
        let mut rem = vec![[0u8; MAX_ENUM_ORDER]; total + 1];
        for idx in (0..total).rev() {
            rem[idx] = rem[idx + 1];
            let (u, v) = pairs[idx];
            rem[idx][u] += 1;
            rem[idx][v] += 1;
        }
        Ok(Enumerator { spec, pairs, row_of, rem })
    }

    pub(crate) fn root(&self) -> State {
        State { idx: 0, chosen: 0, adj: [0; MAX_ENUM_ORDER], deg: [0; MAX_ENUM_ORDER] }
    }

    /// Checks made when row `u` is complete.
    fn row_ok(&self, st: &State, u: usize) -> bool {
        let n = self.spec.n;
        let d = st.deg[u] as usize;
        if d < self.spec.min_degree {
            return false;
        }
        if self.spec.reject_isomorphs {
            if u > 0 && st.deg[u] > st.deg[u - 1] {
                return false;
            }
            if (u + 1..n).any(|w| st.deg[w] > st.deg[u]) {
                return false;
            }
            let fixed: usize = st.deg[..=u].iter().map(|&x| x as usize).sum();
            if 2 * self.spec.m > fixed + (n - 1 - u) * d {
                return false;
            }
        }
        true
    }

    fn leaf_ok(&self, st: &State) -> bool {
        let n = self.spec.n;
        let degs = &st.deg[..n];
        if degs
            .iter()
            .any(|&d| (d as usize) < self.spec.min_degree || d as usize > self.spec.max_degree)
        {
            return false;
        }
        if self.spec.reject_isomorphs {
            if degs.windows(2).any(|w| w[0] < w[1]) {
                return false;
            }
            if !transposition_minimal(&st.adj[..n], degs) {
                return false;
            }
        }
        true
    }

    fn graph_of(&self, st: &State) -> Graph {
        Graph::from_adjacency(st.adj[..self.spec.n].iter().map(|&r| r as u64).collect())
    }

    fn structural_ok(&self, g: &Graph) -> bool {
        if (self.spec.require_connected || self.spec.min_connectivity > 0) && !g.is_connected() {
            return false;
        }
        self.spec.min_connectivity <= 1 || g.connectivity_at_least(self.spec.min_connectivity)
    }

    /// Runs from `st`; `visit` sees every surviving graph. `tick` is called
    /// at every node and may abort the walk.
    pub(crate) fn walk(
        &self,
        st: State,
        visit: &mut dyn FnMut(&Graph) -> ControlFlow<()>,
        tick: &mut dyn FnMut() -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        self.dfs(st, visit, tick)
    }

    fn dfs(
        &self,
        mut st: State,
        visit: &mut dyn FnMut(&Graph) -> ControlFlow<()>,
        tick: &mut dyn FnMut() -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        tick()?;
        let total = self.pairs.len();
        let m = self.spec.m;
        // Entering a new row finalizes the previous one.
        if st.idx > 0 && st.idx < total && self.row_of[st.idx] != self.row_of[st.idx - 1] {
            let done = self.row_of[st.idx - 1];
            if !self.row_ok(&st, done) {
                return ControlFlow::Continue(());
            }
        }
        if st.chosen == m {
            if self.leaf_ok(&st) {
                let g = self.graph_of(&st);
                if self.structural_ok(&g) {
                    return visit(&g);
                }
            }
            return ControlFlow::Continue(());
        }
        if st.idx == total || total - st.idx < m - st.chosen {
            return ControlFlow::Continue(());
        }
        let (u, v) = self.pairs[st.idx];
        let rem = &self.rem[st.idx + 1];
        let min = self.spec.min_degree;

        // Leave the pair out.
        if st.deg[u] as usize + rem[u] as usize >= min
            && st.deg[v] as usize + rem[v] as usize >= min
            && total - st.idx - 1 >= m - st.chosen
        {
            let mut next = st;
            next.idx += 1;
            self.dfs(next, visit, tick)?;
        }

        // Put it in.
        let max = self.spec.max_degree;
        let sorted_ok = !self.spec.reject_isomorphs || u == 0 || st.deg[u] < st.deg[u - 1];
        if (st.deg[u] as usize) < max && (st.deg[v] as usize) < max && sorted_ok {
            st.adj[u] |= 1 << v;
            st.adj[v] |= 1 << u;
            st.deg[u] += 1;
            st.deg[v] += 1;
            st.chosen += 1;
            st.idx += 1;
            self.dfs(st, visit, tick)?;
        }
        ControlFlow::Continue(())
    }

    /// Surviving partial states after the first `depth` decisions, in walk
    /// order. States that already complete a graph are included as-is.
    pub(crate) fn prefixes(&self, depth: usize) -> Vec<State> {
        let depth = depth.min(self.pairs.len());
        let mut out = Vec::new();
        let mut collect = |st: State| {
            out.push(st);
            ControlFlow::Continue(())
        };
        let _ = self.prefix_dfs(self.root(), depth, &mut collect);
        out
    }

    fn prefix_dfs(
        &self,
        st: State,
        depth: usize,
        out: &mut dyn FnMut(State) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        let total = self.pairs.len();
        let m = self.spec.m;
        if st.idx > 0 && st.idx < total && self.row_of[st.idx] != self.row_of[st.idx - 1] {
            if !self.row_ok(&st, self.row_of[st.idx - 1]) {
                return ControlFlow::Continue(());
            }
        }
        if st.idx == depth || st.chosen == m || st.idx == total {
            return out(st);
        }
        if total - st.idx < m - st.chosen {
            return ControlFlow::Continue(());
        }
        let (u, v) = self.pairs[st.idx];
        let rem = &self.rem[st.idx + 1];
        let min = self.spec.min_degree;
        if st.deg[u] as usize + rem[u] as usize >= min
            && st.deg[v] as usize + rem[v] as usize >= min
            && total - st.idx - 1 >= m - st.chosen
        {
            let mut next = st;
            next.idx += 1;
            self.prefix_dfs(next, depth, out)?;
        }
        let max = self.spec.max_degree;
        let sorted_ok = !self.spec.reject_isomorphs || u == 0 || st.deg[u] < st.deg[u - 1];
        if (st.deg[u] as usize) < max && (st.deg[v] as usize) < max && sorted_ok {
            let mut next = st;
            next.adj[u] |= 1 << v;
            next.adj[v] |= 1 << u;
            next.deg[u] += 1;
            next.deg[v] += 1;
            next.chosen += 1;
            next.idx += 1;
            self.prefix_dfs(next, depth, out)?;
        }
        ControlFlow::Continue(())
    }

    /// Splits the walk into roughly `target` independent pieces.
    pub(crate) fn split(&self, target: usize) -> Vec<State> {
        let mut depth = 0;
        loop {
            let p = self.prefixes(depth);
            if p.len() >= target || depth >= self.pairs.len() {
                return p;
            }
            depth += 2;
        }
    }
}

/// Calls `visit` on every graph meeting `spec`, stopping early if it breaks.
/// Returns the number of graphs visited.
pub fn enumerate_graphs(
    spec: &EnumerationSpec,
    mut visit: impl FnMut(&Graph) -> ControlFlow<()>,
) -> Result<u64> {
    let en = Enumerator::new(spec.clone())?;
    let mut count = 0u64;
    let _ = en.walk(
        en.root(),
        &mut |g| {
            count += 1;
            visit(g)
        },
        &mut || ControlFlow::Continue(()),
    );
    Ok(count)
}

/// Collects every graph meeting `spec`.
pub fn all_graphs(spec: &EnumerationSpec) -> Result<Vec<Graph>> {
    let mut out = Vec::new();
    enumerate_graphs(spec, |g| {
        out.push(g.clone());
        ControlFlow::Continue(())
    })?;
    Ok(out)
}
