use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{
    binomial2, complement_degree_cap, construction, f_min_edges, lower_bound, tau_equals,
    SearchOptions, SearchStatus, Strategy, MAX_ENUM_ORDER,
};
use crate::error::{Error, Result};
use crate::generators;
use crate::graph::Graph;
use crate::io::encode_graph6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Confirmed,
    WithinBounds,
    /// Contradicted inside the claim's hypothesis.
    Violated,
    /// Contradicted below the claim's order threshold.
    Deviation,
    /// Not decided at this scale or budget.
    Inconclusive,
    SkippedOutOfRange,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Band {
    InHypothesis,
    Exploratory,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Claim {
    Exact(usize),
    Bounds(usize, usize),
}

/// A named construction checked against the claim.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionCheck {
    pub name: String,
    pub edges: usize,
    pub attains: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremCheck {
    pub id: String,
    pub n: usize,
    pub k: usize,
    pub l: Option<usize>,
    pub band: Band,
    pub claim: Option<Claim>,
    /// Exact `f(n, k, l)` when settled.
    pub computed: Option<usize>,
    pub lower_bound: usize,
    pub upper_bound: Option<usize>,
    pub exhaustive: bool,
    pub strategy: Option<Strategy>,
    pub witness: Option<String>,
    pub construction: Option<ConstructionCheck>,
    pub verdict: Verdict,
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoremSelection {
    /// Any of `T1.1`, `T1.2`, `T1.3`.
    pub theorems: Vec<String>,
    pub n_min: usize,
    pub n_max: usize,
    /// Values of `k` for the general-`k` theorem.
    pub ks: Vec<usize>,
    pub options: SearchOptions,
}

impl Default for TheoremSelection {
    fn default() -> Self {
        TheoremSelection {
            theorems: vec!["T1.1".into(), "T1.2".into(), "T1.3".into()],
            n_min: 7,
            n_max: 10,
            ks: vec![3],
            options: SearchOptions::default(),
        }
    }
}

struct Item {
    id: &'static str,
    n: usize,
    k: usize,
    l: Option<usize>,
    threshold: usize,
    claim: Option<Claim>,
    graph: Option<(String, Graph)>,
    note: Option<String>,
}

impl Item {
    fn new(id: &'static str, n: usize, k: usize, l: usize, threshold: usize, claim: Claim) -> Self {
        Item { id, n, k, l: Some(l), threshold, claim: Some(claim), graph: None, note: None }
    }

    fn skipped(id: &'static str, n: usize, k: usize, threshold: usize, why: &str) -> Self {
        Item { id, n, k, l: None, threshold, claim: None, graph: None, note: Some(why.into()) }
    }

    fn with(mut self, name: impl Into<String>, g: Result<Graph>) -> Self {
        if let Ok(g) = g {
            self.graph = Some((name.into(), g));
        }
        self
    }

    fn note(mut self, s: impl Into<String>) -> Self {
        self.note = Some(s.into());
        self
    }
}

fn complement_of_cycle(n: usize) -> Result<Graph> {
    Ok(generators::cycle(n)?.complement())
}

fn general_k(n: usize, k: usize, out: &mut Vec<Item>) {
    const T: usize = 15;
    let c = binomial2(n);
    let lb = |l| lower_bound(n, k, l);
    out.push(Item::new("T1.1-1", n, k, n - k, T, Claim::Exact(c)).with("K_n", generators::complete(n)));
    if n - k >= 2 {
        out.push(
            Item::new("T1.1-2", n, k, n - k - 1, T, Claim::Exact(c - 2))
                .with("K_n minus 2K2", generators::complete_minus_matching(n, 2)),
        );
    } else {
        out.push(Item::skipped("T1.1-2", n, k, T, "n - k - 1 < 1"));
    }
    out.push(Item::new("T1.1-3", n, k, 0, T, Claim::Exact(n - 1)).with("P_n", generators::path(n)));
    if k < n {
        out.push(
            Item::new("T1.1-4", n, k, 1, T, Claim::Exact((k * n).div_ceil(2)))
                .with(format!("H({n},{k})"), generators::harary(n, k)),
        );
    }
    let mut any5 = false;
    for l in (1..=n - k).filter(|&l| 2 * (l + k) <= n + 2) {
        any5 = true;
        let (a, b) = (k + l - 1, n - k - l + 1);
        out.push(
            Item::new("T1.1-5", n, k, l, T, Claim::Bounds(lb(l), a * b))
                .with(format!("K_{{{a},{b}}}"), generators::complete_bipartite(a, b)),
        );
    }
    if !any5 {
        out.push(Item::skipped("T1.1-5", n, k, T, "no l with 1 <= l <= n/2 - k + 1"));
    }
    let mut any6 = false;
    for l in (1..=n - k).filter(|&l| 2 * (l + k) >= n + 4 && l + k + 2 <= n) {
        any6 = true;
        let (a, b) = (k + l - 1, n - k - l + 1);
        out.push(
            Item::new("T1.1-6", n, k, l, T, Claim::Bounds(lb(l), a * b + binomial2(a)))
                .with(format!("K_{a} join {b}K1"), generators::clique_join(n, k, l)),
        );
    }
    if !any6 {
        out.push(Item::skipped("T1.1-6", n, k, T, "no l with n/2 - k + 2 <= l <= n - k - 2"));
    }
}

fn small_defect(n: usize, out: &mut Vec<Item>) {
    const T: usize = 15;
    let c = binomial2(n);
    out.push(Item::new("T1.2-1", n, n, 0, T, Claim::Exact(n - 1)).with("P_n", generators::path(n)));
    out.push(Item::new("T1.2-2", n, n - 1, 1, T, Claim::Exact(c)).with("K_n", generators::complete(n)));
    out.push(Item::new("T1.2-2", n, n - 1, 0, T, Claim::Exact(n - 1)).with("P_n", generators::path(n)));
    out.push(Item::new("T1.2-3", n, n - 2, 2, T, Claim::Exact(c)).with("K_n", generators::complete(n)));
    out.push(
        Item::new("T1.2-3", n, n - 2, 1, T, Claim::Exact(c - 2))
            .with("K_n minus 2K2", generators::complete_minus_matching(n, 2)),
    );
    out.push(Item::new("T1.2-3", n, n - 2, 0, T, Claim::Exact(n - 1)).with("P_n", generators::path(n)));
    out.push(Item::new("T1.2-4", n, n - 3, 3, T, Claim::Exact(c)).with("K_n", generators::complete(n)));
    out.push(
        Item::new("T1.2-4", n, n - 3, 2, T, Claim::Exact(c - 2))
            .with("K_n minus 2K2", generators::complete_minus_matching(n, 2)),
    );
    out.push(
        Item::new("T1.2-4", n, n - 3, 1, T, Claim::Exact(c - n))
            .with("complement of C_n", complement_of_cycle(n)),
    );
    out.push(Item::new("T1.2-4", n, n - 3, 0, T, Claim::Exact(n - 1)).with("P_n", generators::path(n)));
}

/// Smallest factorization `n = pq` with `3 <= p <= q`.
fn two_factors(n: usize) -> Option<(usize, usize)> {
    (3..=n).take_while(|p| p * p <= n).find(|p| n % p == 0).map(|p| (p, n / p))
}

fn is_prime(n: usize) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

fn three(n: usize, out: &mut Vec<Item>) {
    const T: usize = 10;
    let c = binomial2(n);
    let lb = |l| lower_bound(n, 3, l);
    out.push(Item::new("T1.3-1", n, 3, 0, T, Claim::Exact(n - 1)).with("P_n", generators::path(n)));
    out.push(
        Item::new("T1.3-2", n, 3, 1, T, Claim::Exact((3 * n).div_ceil(2)))
            .with(format!("H({n},3)"), generators::harary(n, 3)),
    );

    let mut any3 = false;
    if let Some((p, q)) = two_factors(n) {
        any3 = true;
        let g = generators::cycle(p).and_then(|a| generators::cartesian(&a, &generators::cycle(q)?));
        out.push(
            Item::new("T1.3-3", n, 3, 2, T, Claim::Exact(2 * n))
                .with(format!("C{p} x C{q}"), g)
                .note("n = pq"),
        );
    }
    if n % 2 == 0 && n >= 8 {
        any3 = true;
        let p = n / 2;
        let g = generators::wheel(p).and_then(|w| generators::cartesian(&w, &generators::path(2)?));
        out.push(
            Item::new("T1.3-3", n, 3, 2, T, Claim::Bounds(2 * n, (5 * n - 8) / 2))
                .with(format!("W{p} x P2"), g)
                .note("n = 2p; upper bound (5n-8)/2 from the construction, the theorem prints 5n/2"),
        );
    }
    if is_prime(n) && n >= 8 {
        any3 = true;
        out.push(
            Item::new("T1.3-3", n, 3, 2, T, Claim::Bounds(2 * n, 4 * n - 16))
                .with(format!("K_{{4,{}}}", n - 4), generators::complete_bipartite(4, n - 4))
                .note("n prime"),
        );
    }
    if !any3 {
        out.push(Item::skipped("T1.3-3", n, 3, T, "n is not pq, 2p or prime"));
    }

    let mut any4 = false;
    for l in (3..n).filter(|&l| 3 * l + 4 <= n) {
        any4 = true;
        out.push(
            Item::new("T1.3-4", n, 3, l, T, Claim::Bounds(lb(l), (l + 1) * (n - l) + 1))
                .with(format!("cycle_join({n},{l})"), generators::cycle_join(n, l)),
        );
    }
    if !any4 {
        out.push(Item::skipped("T1.3-4", n, 3, T, "no l with 3 <= l <= (n-4)/3"));
    }

    let mut any5 = false;
    for l in (1..n).filter(|&l| 3 * l + 1 >= n && 2 * l + 4 <= n) {
        for (reading, modulus) in [("mod l+1", l + 1), ("mod l", l)] {
            any5 = true;
            let r = n % modulus;
            let item = if r >= 2 && 2 * l + r + 2 <= n {
                let upper = (n / (l + 1)) * (l + 1) * (l + 1) + (r + 1) * (l + 1) + r - 1;
                Item::new("T1.3-5", n, 3, l, T, Claim::Bounds(lb(l), upper))
                    .with(format!("layered({n},{l})"), generators::layered_path_construction(n, l))
            } else {
                let (a, b) = (l + 2, n - l - 2);
                Item::new("T1.3-5", n, 3, l, T, Claim::Bounds(lb(l), a * b))
                    .with(format!("K_{{{a},{b}}}"), generators::complete_bipartite(a, b))
            };
            out.push(item.note(format!("r = n {reading} = {r}")));
        }
    }
    if !any5 {
        out.push(Item::skipped("T1.3-5", n, 3, T, "no l with (n-1)/3 <= l <= (n-4)/2"));
    }

    let mut any6 = false;
    for l in (1..n).filter(|&l| 2 * l + 2 >= n && l + 6 <= n) {
        any6 = true;
        let a = l + 2;
        out.push(
            Item::new("T1.3-6", n, 3, l, T, Claim::Bounds(lb(l), a * (n - a) + binomial2(a)))
                .with(format!("K_{a} join {}K1", n - a), generators::clique_join(n, 3, l)),
        );
    }
    if !any6 {
        out.push(Item::skipped("T1.3-6", n, 3, T, "no l with (n-2)/2 <= l <= n-6"));
    }

    if n >= 5 {
        out.push(Item::new("T1.3-7", n, 3, n - 5, T, Claim::Exact(c - (n - 4) / 2)));
    }
    out.push(
        Item::new("T1.3-8", n, 3, n - 4, T, Claim::Exact(c - 2))
            .with("K_n minus 2K2", generators::complete_minus_matching(n, 2)),
    );
    out.push(Item::new("T1.3-9", n, 3, n - 3, T, Claim::Exact(c)).with("K_n", generators::complete(n)));
}

#[derive(Clone, Debug)]
struct Evaluation {
    f: Option<usize>,
    upper: Option<(usize, String)>,
    exhaustive: bool,
    infeasible: bool,
    strategy: Option<Strategy>,
    note: Option<String>,
}

fn dense_ok(n: usize, k: usize, l: usize, opts: &SearchOptions) -> bool {
    l + 3 >= n - k
        && n <= MAX_ENUM_ORDER
        && ((complement_degree_cap(n, k, l) <= 2 && n <= 12) || opts.long_running)
}

fn sparse_ok(n: usize, opts: &SearchOptions) -> bool {
    n <= 7 || (n <= 8 && opts.long_running)
}

fn evaluate(n: usize, k: usize, l: usize, opts: &SearchOptions) -> Result<Evaluation> {
    let mut ev = Evaluation {
        f: None,
        upper: None,
        exhaustive: false,
        infeasible: false,
        strategy: None,
        note: None,
    };
    let search = if dense_ok(n, k, l, opts) {
        Some(Strategy::DenseDesc)
    } else if sparse_ok(n, opts) {
        Some(Strategy::SparseAsc)
    } else {
        None
    };
    if let Some(s) = search {
        let r = f_min_edges(n, k, l, s, opts)?;
        ev.strategy = Some(s);
        match r.status {
            SearchStatus::Found => {
                ev.f = r.f_value;
                ev.exhaustive = true;
                ev.upper = r.f_value.zip(r.witness);
                return Ok(ev);
            }
            SearchStatus::Infeasible => {
                ev.infeasible = true;
                ev.exhaustive = true;
                return Ok(ev);
            }
            _ => ev.note = Some("search budget exhausted".into()),
        }
    }
    if let Some(g) = construction(n, k, l)? {
        if g.is_connected() && tau_equals(&g, k, l)? {
            ev.upper = Some((g.edge_count(), encode_graph6(&g)?));
            if ev.strategy.is_none() {
                ev.strategy = Some(Strategy::ConstructionOnly);
            }
        }
    }
    settle(&mut ev, lower_bound(n, k, l));
    Ok(ev)
}

/// An upper bound that meets the degree lower bound is exact.
fn settle(ev: &mut Evaluation, lower: usize) {
    if ev.f.is_none() {
        if let Some((u, _)) = &ev.upper {
            if *u == lower {
                ev.f = Some(*u);
                ev.exhaustive = true;
            }
        }
    }
}

fn judge(claim: Claim, ev: &Evaluation, lower: usize, band: Band) -> Verdict {
    let bad = match band {
        Band::InHypothesis => Verdict::Violated,
        Band::Exploratory => Verdict::Deviation,
    };
    if ev.infeasible {
        return bad;
    }
    let upper = ev.upper.as_ref().map(|u| u.0);
    match (claim, ev.f) {
        (Claim::Exact(c), Some(f)) => {
            if f == c {
                Verdict::Confirmed
            } else {
                bad
            }
        }
        (Claim::Bounds(lo, hi), Some(f)) => {
            if lo <= f && f <= hi {
                Verdict::WithinBounds
            } else {
                bad
            }
        }
        (Claim::Exact(c), None) => match upper {
            Some(u) if u < c => bad,
            _ => Verdict::Inconclusive,
        },
        (Claim::Bounds(lo, hi), None) => match upper {
            Some(u) if u < lo => bad,
            Some(u) if u <= hi && lo <= lower => Verdict::WithinBounds,
            _ => Verdict::Inconclusive,
        },
    }
}

fn items(sel: &TheoremSelection, n: usize) -> Result<Vec<Item>> {
    let mut out = Vec::new();
    for t in &sel.theorems {
        match t.as_str() {
            "T1.1" => {
                for &k in &sel.ks {
                    if (3..=n).contains(&k) {
                        general_k(n, k, &mut out);
                    }
                }
            }
            "T1.2" if n >= 6 => small_defect(n, &mut out),
            "T1.3" if n >= 6 => three(n, &mut out),
            "T1.2" | "T1.3" => {}
            other => return Err(Error::param(format!("unknown theorem {other:?}; expected T1.1, T1.2 or T1.3"))),
        }
    }
    Ok(out)
}

/// Checks every claim of the selected theorems for each order in range.
/// Orders below a claim's threshold are reported in the exploratory band.
pub fn verify_theorems(sel: &TheoremSelection) -> Result<Vec<TheoremCheck>> {
    if sel.n_min > sel.n_max || sel.n_max > 64 {
        return Err(Error::param(format!("bad order range {}..={}", sel.n_min, sel.n_max)));
    }
    let mut cache: HashMap<(usize, usize, usize), Evaluation> = HashMap::new();
    let mut out = Vec::new();
    for n in sel.n_min..=sel.n_max {
        for item in items(sel, n)? {
            out.push(check(item, &sel.options, &mut cache)?);
        }
    }
    Ok(out)
}

fn check(
    item: Item,
    opts: &SearchOptions,
    cache: &mut HashMap<(usize, usize, usize), Evaluation>,
) -> Result<TheoremCheck> {
    let band = if item.n >= item.threshold { Band::InHypothesis } else { Band::Exploratory };
    let (n, k) = (item.n, item.k);
    let (Some(l), Some(claim)) = (item.l, item.claim) else {
        return Ok(TheoremCheck {
            id: item.id.into(),
            n,
            k,
            l: None,
            band,
            claim: None,
            computed: None,
            lower_bound: 0,
            upper_bound: None,
            exhaustive: false,
            strategy: None,
            witness: None,
            construction: None,
            verdict: Verdict::SkippedOutOfRange,
            note: item.note,
        });
    };
    let lower = lower_bound(n, k, l);
    let mut ev = match cache.get(&(n, k, l)) {
        Some(ev) => ev.clone(),
        None => {
            let ev = evaluate(n, k, l, opts)?;
            cache.insert((n, k, l), ev.clone());
            ev
        }
    };
    let mut built = None;
    if let Some((name, g)) = &item.graph {
        let attains = g.is_connected() && tau_equals(g, k, l)?;
        if attains && ev.upper.as_ref().is_none_or(|u| g.edge_count() < u.0) {
            ev.upper = Some((g.edge_count(), encode_graph6(g)?));
            if ev.strategy.is_none() {
                ev.strategy = Some(Strategy::ConstructionOnly);
            }
        }
        built = Some(ConstructionCheck { name: name.clone(), edges: g.edge_count(), attains });
    }
    settle(&mut ev, lower);
    let verdict = judge(claim, &ev, lower, band);
    let mut notes: Vec<String> = item.note.into_iter().collect();
    notes.extend(ev.note.clone());
    if ev.infeasible {
        notes.push("no connected graph attains this value".into());
    }
    Ok(TheoremCheck {
        id: item.id.into(),
        n,
        k,
        l: Some(l),
        band,
        claim: Some(claim),
        computed: ev.f,
        lower_bound: lower,
        upper_bound: ev.upper.as_ref().map(|u| u.0),
        exhaustive: ev.exhaustive,
        strategy: ev.strategy,
        witness: ev.upper.map(|u| u.1),
        construction: built,
        verdict,
        note: if notes.is_empty() { None } else { Some(notes.join("; ")) },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(theorem: &str, n: usize) -> Vec<TheoremCheck> {
        let sel = TheoremSelection {
            theorems: vec![theorem.into()],
            n_min: n,
            n_max: n,
            ..Default::default()
        };
        verify_theorems(&sel).unwrap()
    }

    #[test]
    fn complete_value_at_seven() {
        let checks = run("T1.2", 7);
        let c = checks.iter().find(|c| c.id == "T1.2-2" && c.l == Some(1)).unwrap();
        assert_eq!(c.computed, Some(21));
        assert_eq!(c.verdict, Verdict::Confirmed);
        assert_eq!(c.band, Band::Exploratory);
    }

    #[test]
    fn exact_by_construction_in_hypothesis() {
        let checks = run("T1.3", 10);
        let c = checks.iter().find(|c| c.id == "T1.3-2").unwrap();
        assert_eq!(c.band, Band::InHypothesis);
        assert_eq!(c.computed, Some(15));
        assert_eq!(c.verdict, Verdict::Confirmed);
        let c = checks.iter().find(|c| c.id == "T1.3-8").unwrap();
        assert_eq!(c.computed, Some(43));
        assert_eq!(c.verdict, Verdict::Confirmed);
    }

    #[test]
    fn unknown_theorem_is_an_error() {
        let sel = TheoremSelection { theorems: vec!["T9".into()], ..Default::default() };
        assert!(verify_theorems(&sel).is_err());
    }
}
