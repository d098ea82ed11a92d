//! Exact maximum packing of candidate trees.
//!
//! Branching picks the terminal with the fewest usable attachments and one of
//! those attachments `x`: either some tree using `x` is taken, or `x` is
//! discarded. Failed states are memoized.

use rustc_hash::FxHashSet;

use super::candidates::Candidate;

#[derive(Clone, Copy)]
enum Element {
    Vertex(usize),
    Edge(usize),
}

pub(crate) struct Packer {
    vertex_exclusive: bool,
    cands: Vec<Candidate>,
    by_vertex: Vec<Vec<u32>>,
    by_edge: Vec<Vec<u32>>,
    /// Per terminal: the vertices and edges through which a tree reaches it.
    touch: Vec<(u64, u128)>,
    failed: FxHashSet<(u64, u128, u32)>,
    start: (u64, u128),
}

impl Packer {
    pub fn new(vertex_exclusive: bool, cands: Vec<Candidate>, touch: Vec<(u64, u128)>) -> Self {
        let mut by_vertex = vec![Vec::new(); 64];
        let mut by_edge = vec![Vec::new(); 128];
        let mut start = (0u64, 0u128);
        for (i, c) in cands.iter().enumerate() {
            if vertex_exclusive {
                let mut bits = c.internal;
                while bits != 0 {
                    by_vertex[bits.trailing_zeros() as usize].push(i as u32);
                    bits &= bits - 1;
                }
                start.0 |= c.internal;
            }
            let mut bits = c.edges;
            while bits != 0 {
                by_edge[bits.trailing_zeros() as usize].push(i as u32);
                bits &= bits - 1;
            }
            start.1 |= c.edges;
        }
        Packer {
            vertex_exclusive,
            cands,
            by_vertex,
            by_edge,
            touch,
            failed: FxHashSet::default(),
            start,
        }
    }

    fn usable(&self, c: &Candidate, av: u64, ae: u128) -> bool {
        (!self.vertex_exclusive || c.internal & !av == 0) && c.edges & !ae == 0
    }

    /// Smallest number of usable attachments over all terminals.
    fn tightest(&self, av: u64, ae: u128) -> (u32, usize) {
        let mut best = (u32::MAX, 0);
        for (i, &(tv, te)) in self.touch.iter().enumerate() {
            let c = (tv & av).count_ones() + (te & ae).count_ones();
            if c < best.0 {
                best = (c, i);
            }
        }
        best
    }

    /// Upper bound from terminal attachments alone.
    pub fn upper_bound(&self) -> usize {
        if self.cands.is_empty() {
            return 0;
        }
        self.tightest(self.start.0, self.start.1).0 as usize
    }

    fn search(&mut self, av: u64, ae: u128, need: u32, out: &mut Vec<u32>) -> bool {
        if need == 0 {
            return true;
        }
        if self.failed.contains(&(av, ae, need)) {
            return false;
        }
        let (count, ti) = self.tightest(av, ae);
        if count < need {
            self.failed.insert((av, ae, need));
            return false;
        }
        let (tv, te) = self.touch[ti];
        let elem = if tv & av != 0 {
            Element::Vertex((tv & av).trailing_zeros() as usize)
        } else {
            Element::Edge((te & ae).trailing_zeros() as usize)
        };
        let list = match elem {
            Element::Vertex(v) => std::mem::take(&mut self.by_vertex[v]),
            Element::Edge(e) => std::mem::take(&mut self.by_edge[e]),
        };
        let mut found = false;
        for &ci in &list {
            let c = self.cands[ci as usize];
            if !self.usable(&c, av, ae) {
                continue;
            }
            let nv = if self.vertex_exclusive { av & !c.internal } else { av };
            out.push(ci);
            if self.search(nv, ae & !c.edges, need - 1, out) {
                found = true;
                break;
            }
            out.pop();
        }
        match elem {
            Element::Vertex(v) => self.by_vertex[v] = list,
            Element::Edge(e) => self.by_edge[e] = list,
        }
        if found {
            return true;
        }
        let (nv, ne) = match elem {
            Element::Vertex(v) => (av & !(1u64 << v), ae),
            Element::Edge(e) => (av, ae & !(1u128 << e)),
        };
        if self.search(nv, ne, need, out) {
            return true;
        }
        self.failed.insert((av, ae, need));
        false
    }

    /// A packing of `target` candidates, if one exists.
    pub fn pack(&mut self, target: usize) -> Option<Vec<Candidate>> {
        if target == 0 {
            return Some(Vec::new());
        }
        if target > self.upper_bound() {
            return None;
        }
        let mut out = Vec::with_capacity(target);
        let (av, ae) = self.start;
        if self.search(av, ae, target as u32, &mut out) {
            Some(out.iter().map(|&i| self.cands[i as usize]).collect())
        } else {
            None
        }
    }

    /// Greedy packing in candidate order; a quick lower bound.
    pub fn greedy(&self) -> Vec<Candidate> {
        let (mut av, mut ae) = self.start;
        let mut out = Vec::new();
        for c in &self.cands {
            if self.usable(c, av, ae) {
                if self.vertex_exclusive {
                    av &= !c.internal;
                }
                ae &= !c.edges;
                out.push(*c);
            }
        }
        out
    }

    /// Maximum packing with at most `cap` trees.
    pub fn maximum(&mut self, cap: usize) -> Vec<Candidate> {
        let mut best = self.greedy();
        best.truncate(cap);
        let top = self.upper_bound().min(cap);
        for t in best.len() + 1..=top {
            match self.pack(t) {
                Some(p) => best = p,
                None => break,
            }
        }
        best
    }
}
