//! Minimum edge counts of connected graphs with a prescribed pendant-tree
//! connectivity, and checks of the known exact values and bounds.
//!
//! `f(n, k, l)` is the least number of edges of a connected graph of order
//! `n` whose `tau_k` equals `l`.

mod characterize;
mod enumerate;
mod theorems;

use std::ops::ControlFlow;
use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generators;
use crate::graph::Graph;
use crate::io::{encode_graph6, SummaryRow};
use crate::packing::{global_at_least, Mode, SolverOptions};

pub use characterize::{verify_characterization, Characterization, CharacterizationCheck};
pub use enumerate::{all_graphs, enumerate_graphs, EnumerationSpec, MAX_ENUM_ORDER};
pub use theorems::{verify_theorems, Band, Claim, TheoremCheck, TheoremSelection, Verdict};

use enumerate::Enumerator;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Strategy {
    /// Edge counts upward from the lower bound.
    SparseAsc,
    /// Complement edge counts downward from the degree cap.
    DenseDesc,
    /// A known construction only; exact when it meets the lower bound.
    ConstructionOnly,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SearchStatus {
    Found,
    Infeasible,
    BudgetExhausted,
    /// A construction gives an upper bound, nothing more.
    UpperBoundOnly,
    /// The construction does not have the required value.
    NoConstruction,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Budget {
    pub max_graphs: Option<u64>,
    pub max_time: Option<Duration>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget::default()
    }

    pub fn is_unlimited(&self) -> bool {
        self.max_graphs.is_none() && self.max_time.is_none()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    pub budget: Budget,
    pub threads: usize,
    pub reject_isomorphs: bool,
    /// Use the degree and connectivity consequences of `tau_k >= l` to prune.
    pub lemma_prunes: bool,
    /// Lift the desk-scale caps (sparse search beyond order 7, dense search
    /// with complement degree above 2 or order above 12).
    pub long_running: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            budget: Budget::unlimited(),
            threads: 1,
            reject_isomorphs: true,
            lemma_prunes: true,
            long_running: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtremalRecord {
    pub n: usize,
    pub k: usize,
    pub l: usize,
    pub strategy: Strategy,
    pub status: SearchStatus,
    pub f_value: Option<usize>,
    /// No connected graph with fewer edges attains the value.
    pub exhaustive: bool,
    /// graph6 of the witness.
    pub witness: Option<String>,
    pub lower_bound: usize,
    pub upper_bound: Option<usize>,
    pub graphs_examined: u64,
}

impl ExtremalRecord {
    pub fn witness_graph(&self) -> Option<Graph> {
        self.witness.as_deref().and_then(|w| crate::io::decode_graph6(w).ok())
    }

    pub fn summary(&self) -> SummaryRow {
        SummaryRow {
            n: self.n,
            k: self.k,
            l: self.l,
            f: self.f_value,
            lower_bound: self.lower_bound,
            upper_bound: self.upper_bound,
            exhaustive: self.exhaustive,
        }
    }
}

pub fn binomial2(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// `max(n - 1, ceil((k + l - 1) n / 2))`, the second term only for `l >= 1`.
pub fn lower_bound(n: usize, k: usize, l: usize) -> usize {
    let degree = if l >= 1 { ((k + l - 1) * n).div_ceil(2) } else { 0 };
    degree.max(n.saturating_sub(1))
}

/// Whether `tau_k(g)` is exactly `l`.
pub fn tau_equals(g: &Graph, k: usize, l: usize) -> Result<bool> {
    let opts = SolverOptions::default();
    Ok(global_at_least(g, k, Mode::InternalPendant, l, &opts)?
        && !global_at_least(g, k, Mode::InternalPendant, l + 1, &opts)?)
}

fn check_params(n: usize, k: usize, l: usize) -> Result<()> {
    if k < 2 || k > n {
        return Err(Error::param(format!("k must satisfy 2 <= k <= n = {n}, got {k}")));
    }
    if l > n - k {
        return Err(Error::param(format!("l must satisfy 0 <= l <= n - k = {}, got {l}", n - k)));
    }
    Ok(())
}

struct Shared {
    start: Instant,
    budget: Budget,
    examined: AtomicU64,
    exhausted: AtomicBool,
}

impl Shared {
    fn out_of_time(&self) -> bool {
        matches!(self.budget.max_time, Some(t) if self.start.elapsed() > t)
    }

    /// Counts one examined graph; false once the budget is spent.
    fn charge(&self) -> bool {
        let seen = self.examined.fetch_add(1, Ordering::Relaxed) + 1;
        if matches!(self.budget.max_graphs, Some(max) if seen > max) || self.out_of_time() {
            self.exhausted.store(true, Ordering::Relaxed);
            return false;
        }
        true
    }
}

struct Level {
    found: Option<Graph>,
    examined: u64,
}

/// Searches one edge count for the first graph in walk order that satisfies
/// `accept`. The result does not depend on the thread count.
fn search_level(
    en: &Enumerator,
    threads: usize,
    shared: &Shared,
    accept: &(dyn Fn(&Graph) -> bool + Sync),
) -> Level {
    let run = |piece, abort: &dyn Fn() -> bool| {
        let mut examined = 0u64;
        let mut found = None;
        let mut ticks = 0u32;
        let _ = en.walk(
            piece,
            &mut |g| {
                if !shared.charge() {
                    return ControlFlow::Break(());
                }
                examined += 1;
                if accept(g) {
                    found = Some(g.clone());
                    return ControlFlow::Break(());
                }
                ControlFlow::Continue(())
            },
            &mut || {
                ticks = ticks.wrapping_add(1);
                if ticks % 4096 == 0 && (shared.out_of_time() || abort()) {
                    shared.exhausted.fetch_or(shared.out_of_time(), Ordering::Relaxed);
                    return ControlFlow::Break(());
                }
                if shared.exhausted.load(Ordering::Relaxed) {
                    return ControlFlow::Break(());
                }
                ControlFlow::Continue(())
            },
        );
        (examined, found)
    };

    if threads <= 1 {
        let (examined, found) = run(en.root(), &|| false);
        return Level { found, examined };
    }
    let pieces = en.split(threads * 16);
    let best = AtomicUsize::new(usize::MAX);
    let results: Vec<Mutex<(u64, Option<Graph>)>> =
        (0..pieces.len()).map(|_| Mutex::new((0, None))).collect();
    let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build();
    let work = || {
        pieces.par_iter().enumerate().for_each(|(i, &piece)| {
            if i > best.load(Ordering::Relaxed) {
                return;
            }
            let (examined, found) = run(piece, &|| i > best.load(Ordering::Relaxed));
            if found.is_some() {
                best.fetch_min(i, Ordering::Relaxed);
            }
            *results[i].lock().unwrap() = (examined, found);
        });
    };
    match pool {
        Ok(p) => p.install(work),
        Err(_) => work(),
    }
    let winner = best.into_inner();
    let mut examined = 0;
    let mut found = None;
    for (i, r) in results.into_iter().enumerate() {
        if i > winner {
            break;
        }
        let (e, f) = r.into_inner().unwrap();
        examined += e;
        if i == winner {
            found = f;
        }
    }
    Level { found, examined }
}

/// Exact or bounded `f(n, k, l)` with the given strategy.
pub fn f_min_edges(
    n: usize,
    k: usize,
    l: usize,
    strategy: Strategy,
    opts: &SearchOptions,
) -> Result<ExtremalRecord> {
    check_params(n, k, l)?;
    match strategy {
        Strategy::SparseAsc => sparse(n, k, l, opts),
        Strategy::DenseDesc => dense(n, k, l, opts),
        Strategy::ConstructionOnly => from_construction(n, k, l),
    }
}

fn record(n: usize, k: usize, l: usize, strategy: Strategy) -> ExtremalRecord {
    ExtremalRecord {
        n,
        k,
        l,
        strategy,
        status: SearchStatus::Infeasible,
        f_value: None,
        exhaustive: false,
        witness: None,
        lower_bound: lower_bound(n, k, l),
        upper_bound: None,
        graphs_examined: 0,
    }
}

fn shared(opts: &SearchOptions) -> Shared {
    Shared {
        start: Instant::now(),
        budget: opts.budget,
        examined: AtomicU64::new(0),
        exhausted: AtomicBool::new(false),
    }
}

fn sparse(n: usize, k: usize, l: usize, opts: &SearchOptions) -> Result<ExtremalRecord> {
    if n > MAX_ENUM_ORDER || (n > 7 && !opts.long_running) {
        return Err(Error::param(format!(
            "sparse search at order {n} needs the long-running flag (exact by default only for n <= 7)"
        )));
    }
    let mut rec = record(n, k, l, Strategy::SparseAsc);
    let (start, min_degree, min_conn) = if opts.lemma_prunes && l >= 1 {
        (rec.lower_bound, k + l - 1, (k + l).saturating_sub(2).max(1))
    } else {
        (n - 1, 1.min(n - 1), 1)
    };
    let sh = shared(opts);
    let accept = |g: &Graph| tau_equals(g, k, l).unwrap_or(false);
    for m in start..=binomial2(n) {
        let spec = EnumerationSpec {
            n,
            m,
            min_degree,
            max_degree: n - 1,
            min_connectivity: min_conn,
            require_connected: true,
            reject_isomorphs: opts.reject_isomorphs,
        };
        let en = Enumerator::new(spec)?;
        let level = search_level(&en, opts.threads, &sh, &accept);
        rec.graphs_examined += level.examined;
        if let Some(g) = level.found {
            rec.status = SearchStatus::Found;
            rec.f_value = Some(m);
            rec.upper_bound = Some(m);
            rec.exhaustive = true;
            rec.witness = Some(encode_graph6(&g)?);
            return Ok(rec);
        }
        if sh.exhausted.load(Ordering::Relaxed) {
            rec.status = SearchStatus::BudgetExhausted;
            return Ok(rec);
        }
    }
    rec.exhaustive = true;
    Ok(rec)
}

/// Largest complement degree allowed for `tau_k >= l` in a connected graph.
pub fn complement_degree_cap(n: usize, k: usize, l: usize) -> usize {
    if l >= 1 {
        n - k - l
    } else {
        n - 2
    }
}

fn dense(n: usize, k: usize, l: usize, opts: &SearchOptions) -> Result<ExtremalRecord> {
    if l + 3 < n - k {
        return Err(Error::param(format!(
            "dense search needs l >= n - k - 3, got n = {n}, k = {k}, l = {l}"
        )));
    }
    let cap = complement_degree_cap(n, k, l);
    if n > MAX_ENUM_ORDER || ((cap > 2 || n > 12) && !opts.long_running) {
        return Err(Error::param(format!(
            "dense search with complement degree {cap} at order {n} needs the long-running flag"
        )));
    }
    let mut rec = record(n, k, l, Strategy::DenseDesc);
    let total = binomial2(n);
    let top = (n * cap / 2).min(total - (n - 1));
    let sh = shared(opts);
    let min_conn = if opts.lemma_prunes && l >= 1 { k + l - 2 } else { 1 };
    let accept = |h: &Graph| {
        let g = h.complement();
        g.is_connected() && g.connectivity_at_least(min_conn) && tau_equals(&g, k, l).unwrap_or(false)
    };
    for c in (0..=top).rev() {
        let spec = EnumerationSpec {
            n,
            m: c,
            min_degree: 0,
            max_degree: if opts.lemma_prunes { cap } else { n - 1 },
            min_connectivity: 0,
            require_connected: false,
            reject_isomorphs: opts.reject_isomorphs,
        };
        let en = Enumerator::new(spec)?;
        let level = search_level(&en, opts.threads, &sh, &accept);
        rec.graphs_examined += level.examined;
        if let Some(h) = level.found {
            rec.status = SearchStatus::Found;
            rec.f_value = Some(total - c);
            rec.upper_bound = rec.f_value;
            rec.exhaustive = true;
            rec.witness = Some(encode_graph6(&h.complement())?);
            return Ok(rec);
        }
        if sh.exhausted.load(Ordering::Relaxed) {
            rec.status = SearchStatus::BudgetExhausted;
            return Ok(rec);
        }
    }
    rec.exhaustive = true;
    Ok(rec)
}

/// A graph of order `n` with `tau_k = l` from the standard families, before
/// verification.
pub fn construction(n: usize, k: usize, l: usize) -> Result<Option<Graph>> {
    check_params(n, k, l)?;
    let g = if l == n - k {
        generators::complete(n)?
    } else if k == 2 {
        match l {
            0 => return Ok(None),
            1 => generators::path(n)?,
            _ => generators::harary(n, l)?,
        }
    } else if l == 0 {
        generators::path(n)?
    } else if l == 1 && k < n {
        generators::harary(n, k)?
    } else if 2 * (k + l) <= n + 2 {
        generators::complete_bipartite(k + l - 1, n - k - l + 1)?
    } else {
        generators::join(&generators::complete(k + l - 1)?, &generators::empty(n - k - l + 1)?)?
    };
    Ok(Some(g))
}

fn from_construction(n: usize, k: usize, l: usize) -> Result<ExtremalRecord> {
    let mut rec = record(n, k, l, Strategy::ConstructionOnly);
    rec.status = SearchStatus::NoConstruction;
    let Some(g) = construction(n, k, l)? else {
        return Ok(rec);
    };
    rec.graphs_examined = 1;
    if !g.is_connected() || !tau_equals(&g, k, l)? {
        return Ok(rec);
    }
    let e = g.edge_count();
    rec.upper_bound = Some(e);
    rec.witness = Some(encode_graph6(&g)?);
    if e == rec.lower_bound {
        rec.status = SearchStatus::Found;
        rec.f_value = Some(e);
        rec.exhaustive = true;
    } else {
        rec.status = SearchStatus::UpperBoundOnly;
    }
    Ok(rec)
}
