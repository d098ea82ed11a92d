//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Two criteria fail on statements that do not hold (see README). Those
//! failures are printed as FAIL and matched against their exact recorded
//! signature; anything else that fails, or a recorded failure that changes
//! or disappears, makes the run exit nonzero. Set `ACCEPTANCE_STRICT=1` to
//! exit nonzero on every FAIL.

mod common;

use std::ops::ControlFlow;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use pendant_core::extremal::{
    enumerate_graphs, f_min_edges, verify_characterization, verify_theorems, Band, Characterization,
    EnumerationSpec, SearchOptions, SearchStatus, Strategy, TheoremSelection, Verdict,
};
use pendant_core::generators::{self, GeneratorSpec};
use pendant_core::io::{decode_graph6, encode_graph6};
use pendant_core::packing::{
    global_connectivity, global_connectivity_with, local_connectivity, Mode, SolverOptions,
};
use pendant_core::{Graph, VertexSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Failures recorded in the ledger: criterion and the exact failure text.
const KNOWN: &[(u32, &str)] = &[
    (5, "f(10,3,5) = 37, expected 42"),
    (
        9,
        "L3.3 n=7 value=1: 0 forward, 1 backward; L3.3 n=8 value=1: 0 forward, 2 backward",
    ),
];

struct Outcome {
    failures: Vec<String>,
    summary: String,
}

impl Outcome {
    fn new() -> Self {
        Outcome { failures: Vec::new(), summary: String::new() }
    }

    fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(msg());
        }
    }
}

fn generic() -> SolverOptions {
    SolverOptions { force_generic: true, lemma_caps: false, threads: 1 }
}

fn tau(g: &Graph, k: usize) -> usize {
    global_connectivity(g, k, Mode::InternalPendant).unwrap().value
}

fn c1() -> Outcome {
    let mut o = Outcome::new();
    let mut cases = 0;
    for n in 4..=9 {
        for k in 3..n {
            let g = generators::complete(n).unwrap();
            let v = global_connectivity_with(&g, k, Mode::InternalPendant, &generic()).unwrap().value;
            o.check(v == n - k, || format!("tau_{k}(K_{n}) = {v}, expected {}", n - k));
            cases += 1;
        }
    }
    o.summary = format!("tau_k(K_n) = n - k on {cases} cases, generic search");
    o
}

fn c2() -> Outcome {
    let mut o = Outcome::new();
    let mut cases = 0;
    for r in 2..=5 {
        for s in r..=5 {
            for k in 3..=4 {
                let g = generators::complete_bipartite(r, s).unwrap();
                let v = global_connectivity_with(&g, k, Mode::InternalPendant, &generic()).unwrap().value;
                let want = (r + 1).saturating_sub(k).min((s + 1).saturating_sub(k));
                o.check(v == want, || format!("tau_{k}(K_{{{r},{s}}}) = {v}, expected {want}"));
                cases += 1;
            }
        }
    }
    o.summary = format!("tau_k(K_{{r,s}}) formula on {cases} cases, generic search");
    o
}

fn c3() -> Outcome {
    let mut o = Outcome::new();
    let mut cases = 0;
    for d in 2..=5 {
        for n in 6..=12 {
            if n <= d {
                continue;
            }
            let g = generators::harary(n, d).unwrap();
            let (kappa, m) = (g.vertex_connectivity(), g.edge_count());
            o.check(kappa == d, || format!("kappa(H({n},{d})) = {kappa}"));
            o.check(m == (d * n).div_ceil(2), || format!("e(H({n},{d})) = {m}"));
            cases += 1;
        }
    }
    for (n, d) in [(8, 3), (9, 3), (10, 4)] {
        let v = tau(&generators::harary(n, d).unwrap(), d);
        o.check(v == 1, || format!("tau_{d}(H({n},{d})) = {v}"));
    }
    o.summary = format!("{cases} Harary graphs, plus tau_d = 1 on 3 of them");
    o
}

fn exact_record(
    o: &mut Outcome,
    n: usize,
    k: usize,
    l: usize,
    strategy: Strategy,
    want: usize,
) {
    let r = f_min_edges(n, k, l, strategy, &SearchOptions::default()).unwrap();
    match (r.status, r.f_value) {
        (SearchStatus::Found, Some(f)) if r.exhaustive => {
            o.check(f == want, || format!("f({n},{k},{l}) = {f}, expected {want}"));
            if let Some(w) = r.witness_graph() {
                o.check(tau(&w, k) == l && w.edge_count() == f, || format!("bad witness for f({n},{k},{l})"));
            }
        }
        _ => o.failures.push(format!("f({n},{k},{l}) not settled: {:?}", r.status)),
    }
}

fn c4() -> Outcome {
    let mut o = Outcome::new();
    for n in 5..=7 {
        exact_record(&mut o, n, 3, 0, Strategy::SparseAsc, n - 1);
        exact_record(&mut o, n, 3, 1, Strategy::SparseAsc, (3 * n).div_ceil(2));
    }
    o.summary = "f(n,3,0) and f(n,3,1) for 5 <= n <= 7, exhaustive".into();
    o
}

fn c5() -> Outcome {
    let mut o = Outcome::new();
    for n in 7..=10 {
        let c = n * (n - 1) / 2;
        exact_record(&mut o, n, 3, n - 3, Strategy::DenseDesc, c);
        exact_record(&mut o, n, 3, n - 4, Strategy::DenseDesc, c - 2);
    }
    exact_record(&mut o, 10, 3, 5, Strategy::DenseDesc, 45 - 3);
    o.summary = "f(n,3,n-3), f(n,3,n-4) for 7 <= n <= 10 and f(10,3,5)".into();
    o
}

fn c6() -> Outcome {
    let mut o = Outcome::new();
    let cases: Vec<(&str, Graph, usize, usize)> = vec![
        (
            "C3 x C4",
            generators::cartesian(&generators::cycle(3).unwrap(), &generators::cycle(4).unwrap()).unwrap(),
            2,
            24,
        ),
        (
            "W6 x P2",
            generators::cartesian(&generators::wheel(6).unwrap(), &generators::path(2).unwrap()).unwrap(),
            2,
            26,
        ),
        ("cycle_join(15,3)", generators::cycle_join(15, 3).unwrap(), 3, 49),
        ("clique_join(8,3,4)", generators::clique_join(8, 3, 4).unwrap(), 4, 27),
    ];
    for (name, g, want, edges) in cases {
        let v = tau(&g, 3);
        o.check(v == want, || format!("tau_3({name}) = {v}, expected {want}"));
        o.check(g.edge_count() == edges, || format!("{name} has {} edges, expected {edges}", g.edge_count()));
    }
    o.summary = "tau_3 of four constructions and their edge counts".into();
    o
}

fn c7() -> Outcome {
    let mut o = Outcome::new();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut checks = 0;
    for _ in 0..500 {
        let n = rng.gen_range(4..=8);
        let p = rng.gen_range(0.1..0.9);
        let g = common::random_connected(&mut rng, n, p);
        let (delta, kappa) = (g.min_degree(), g.vertex_connectivity());
        let t2 = tau(&g, 2);
        o.check(t2 == kappa, || format!("tau_2 = {t2} but kappa = {kappa} in {}", encode_graph6(&g).unwrap()));
        for k in 3..=4.min(n) {
            let t = tau(&g, k);
            let mu = global_connectivity(&g, k, Mode::EdgePendant).unwrap().value;
            let kk = global_connectivity(&g, k, Mode::InternalPlain).unwrap().value;
            let g6 = || encode_graph6(&g).unwrap();
            o.check(t <= mu && mu <= delta, || format!("tau {t}, mu {mu}, delta {delta}, k {k} in {}", g6()));
            o.check(t <= kk, || format!("tau {t} > kappa_k {kk}, k {k} in {}", g6()));
            o.check(t + k <= delta + 1 || t == 0, || format!("tau {t} > delta - k + 1, k {k} in {}", g6()));
            o.check(t + k <= kappa + 2 || t == 0, || format!("tau {t} > kappa - k + 2, k {k} in {}", g6()));
            if t >= 1 {
                o.check(delta + 1 >= k + t && kappa + 2 >= k + t, || format!("degree or kappa below bound in {}", g6()));
            }
            if kappa == k {
                o.check(t >= 1, || format!("kappa = k but tau = 0 in {}", g6()));
            }
            checks += 1;
        }
    }
    for _ in 0..200 {
        let n = rng.gen_range(4..=8);
        let p = rng.gen_range(0.2..0.9);
        let g = common::random_connected(&mut rng, n, p);
        let mut h = g.clone();
        for (u, v) in g.edges() {
            if rng.gen_bool(0.3) {
                h.remove_edge(u, v).unwrap();
            }
        }
        for k in 2..=4.min(n) {
            let (a, b) = (tau(&h, k), tau(&g, k));
            o.check(a <= b, || format!("tau_{k}(H) = {a} > tau_{k}(G) = {b} for {}", encode_graph6(&g).unwrap()));
        }
    }
    o.summary = format!("500 random connected graphs ({checks} graph-k pairs), 200 subgraph pairs");
    o
}

fn c8() -> Outcome {
    let mut o = Outcome::new();
    let mut graphs = 0u64;
    let mut comparisons = 0u64;
    for n in 2..=5usize {
        for m in n - 1..=n * (n - 1) / 2 {
            let spec = EnumerationSpec { require_connected: true, ..EnumerationSpec::new(n, m) };
            enumerate_graphs(&spec, |g| {
                graphs += 1;
                let edges = g.edges();
                for size in 2..=3.min(n) {
                    for s in common::subsets(n, size) {
                        let set: VertexSet = s.iter().collect();
                        for mode in [Mode::InternalPendant, Mode::EdgePendant, Mode::InternalPlain] {
                            let got = local_connectivity(g, set, mode).unwrap().len();
                            let want = common::oracle(n, &edges, &s, mode);
                            comparisons += 1;
                            o.check(got == want, || format!("{mode}({set}) = {got}, oracle {want}, edges {edges:?}"));
                        }
                    }
                }
                ControlFlow::Continue(())
            })
            .unwrap();
        }
    }
    o.summary = format!("{graphs} labeled connected graphs, {comparisons} comparisons");
    o
}

fn c9() -> Outcome {
    let mut o = Outcome::new();
    let runs = [
        (Characterization::L3_1, 3..=6),
        (Characterization::L3_2, 6..=7),
        (Characterization::L3_3, 7..=8),
        (Characterization::P3_1, 9..=9),
    ];
    let mut scanned = 0;
    let mut side = Vec::new();
    for (which, orders) in runs {
        for n in orders {
            for c in verify_characterization(which, n, None).unwrap() {
                scanned += c.graphs_checked;
                let counted = match c.reading.as_deref() {
                    None => true,
                    Some("literal") => which != Characterization::P3_1,
                    Some("contextual") => true,
                    Some(_) => false,
                };
                let bad = c.forward_violations + c.backward_violations;
                if !counted {
                    side.push(format!("{} n={} [{}]: {bad} violations", c.id, c.n, c.reading.unwrap_or_default()));
                    continue;
                }
                o.check(bad == 0, || {
                    format!(
                        "{} n={} value={}: {} forward, {} backward",
                        c.id, c.n, c.value, c.forward_violations, c.backward_violations
                    )
                });
            }
        }
    }
    o.summary = format!("{scanned} graph scans; not counted: {}", side.join(", "));
    o
}

fn c10() -> Outcome {
    let mut o = Outcome::new();
    o.check(encode_graph6(&generators::complete(3).unwrap()).unwrap() == "Bw", || "K3 does not encode to Bw".into());
    o.check(encode_graph6(&Graph::empty(2).unwrap()).unwrap() == "A?", || "2K1 does not encode to A?".into());
    o.check(decode_graph6("Bw").unwrap().is_complete(), || "Bw does not decode to K3".into());
    let mut specs: Vec<String> = Vec::new();
    for n in 1..=12 {
        specs.extend([format!("empty:{n}"), format!("complete:{n}"), format!("path:{n}")]);
        if n >= 3 {
            specs.push(format!("cycle:{n}"));
        }
        if n >= 4 {
            specs.push(format!("wheel:{n}"));
        }
        for d in 2..n {
            specs.push(format!("harary:{n},{d}"));
        }
        for r in 0..=n / 2 {
            specs.push(format!("complete_minus_matching:{n},{r}"));
        }
        for l in 1..n {
            specs.push(format!("layered:{n},{l}"));
            for k in 3..=n {
                specs.push(format!("clique_join:{n},{k},{l}"));
            }
        }
        if n >= 10 {
            specs.extend((0..9).map(|i| format!("near_complete:{n},{i}")));
        }
    }
    for r in 1..=6 {
        for s in r..=12 - r {
            specs.push(format!("complete_bipartite:{r},{s}"));
        }
    }
    for (a, b) in [("cycle:3", "cycle:4"), ("wheel:6", "path:2"), ("path:3", "empty:2"), ("complete:2", "cycle:5")] {
        for op in ["join", "cartesian", "lex"] {
            specs.push(format!("{op}:({a}),({b})"));
        }
    }
    let mut built = 0;
    for text in &specs {
        let Ok(spec) = text.parse::<GeneratorSpec>() else {
            o.failures.push(format!("spec {text} does not parse"));
            continue;
        };
        // Parameter combinations outside a generator's range are skipped.
        let g = match spec.build() {
            Ok(g) => g,
            Err(_) => match text.strip_prefix("layered:") {
                Some(rest) => {
                    let (n, l) = rest.split_once(',').unwrap();
                    match generators::layered_path_construction(n.parse().unwrap(), l.parse().unwrap()) {
                        Ok(g) => g,
                        Err(_) => continue,
                    }
                }
                None => continue,
            },
        };
        if g.order() > 12 {
            continue;
        }
        built += 1;
        let text6 = encode_graph6(&g).unwrap();
        o.check(decode_graph6(&text6).as_ref() == Ok(&g), || format!("{text} does not round-trip"));
    }
    o.summary = format!("{built} generator outputs round-trip, two byte-exact vectors");
    o
}

/// Bound sandwiches for the claims checked below their order thresholds.
fn exploratory() -> Outcome {
    let mut o = Outcome::new();
    let sel = TheoremSelection { n_min: 7, n_max: 10, ..TheoremSelection::default() };
    let checks = verify_theorems(&sel).unwrap();
    let mut sandwiches = 0;
    let mut deviations = Vec::new();
    let mut violations = Vec::new();
    for c in &checks {
        let Some(l) = c.l else { continue };
        let tag = format!("{} f({},{},{l})", c.id, c.n, c.k);
        if c.verdict == Verdict::Deviation {
            deviations.push(tag.clone());
        }
        if c.verdict == Verdict::Violated && c.band == Band::InHypothesis {
            violations.push(tag.clone());
        }
        if c.band != Band::Exploratory {
            continue;
        }
        let Some(best) = c.computed.or(c.upper_bound) else { continue };
        sandwiches += 1;
        o.check(c.lower_bound <= best, || format!("{tag}: {best} below lower bound {}", c.lower_bound));
        if let Some(con) = c.construction.as_ref().filter(|con| con.attains) {
            o.check(best <= con.edges, || format!("{tag}: {best} above construction {}", con.edges));
        }
    }
    o.summary = format!(
        "{sandwiches} exploratory sandwiches hold; deviations: {}; in-hypothesis violations: {}",
        if deviations.is_empty() { "none".into() } else { deviations.join(", ") },
        if violations.is_empty() { "none".into() } else { violations.join(", ") }
    );
    o
}

fn main() -> ExitCode {
    let strict = std::env::var("ACCEPTANCE_STRICT").is_ok_and(|v| v == "1");
    let criteria: [(u32, &str, u64, fn() -> Outcome); 11] = [
        (1, "complete graphs", 60, c1),
        (2, "complete bipartite graphs", 120, c2),
        (3, "Harary suite", 120, c3),
        (4, "sparse exact values", 600, c4),
        (5, "dense exact values", 600, c5),
        (6, "construction certification", 900, c6),
        (7, "inequality battery", 1200, c7),
        (8, "oracle equivalence", 600, c8),
        (9, "characterization double inclusion", 1200, c9),
        (10, "format fidelity", 60, c10),
        (0, "exploratory bound sandwiches", 1200, exploratory),
    ];
    let mut unexpected = 0;
    let mut failed = 0;
    for (id, name, limit, run) in criteria {
        let start = Instant::now();
        let mut out = run();
        let took = start.elapsed();
        if took > Duration::from_secs(limit) {
            out.failures.push(format!("took {:.1} s, limit {limit} s", took.as_secs_f64()));
        }
        let label = if id == 0 { "E".to_string() } else { id.to_string() };
        let detail = out.failures.join("; ");
        if out.failures.is_empty() {
            println!("PASS {label:>2} {name}: {} ({:.2} s)", out.summary, took.as_secs_f64());
        } else {
            failed += 1;
            let known = KNOWN.iter().any(|&(k, sig)| k == id && sig == detail);
            if !known {
                unexpected += 1;
            }
            let tag = if known { " [recorded]" } else { "" };
            println!("FAIL {label:>2} {name}{tag}: {detail} ({:.2} s)", took.as_secs_f64());
            println!("     {}", out.summary);
        }
        if out.failures.is_empty() && KNOWN.iter().any(|&(k, _)| k == id) {
            println!("     criterion {id} passed but a failure is recorded for it; update the record");
            unexpected += 1;
        }
    }
    println!("{failed} of 11 lines failed, {unexpected} unexpected");
    if unexpected > 0 || (strict && failed > 0) {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
