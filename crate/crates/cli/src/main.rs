mod input;

use std::fs::File;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use pendant_core::extremal::{
    self, verify_characterization, verify_theorems, Budget, Characterization, SearchOptions, SearchStatus,
    Strategy, TheoremSelection, Verdict,
};
use pendant_core::generators::GeneratorSpec;
use pendant_core::io::{encode_graph6, write_edge_list, write_summary_csv, ReportRecord};
use pendant_core::packing::{self, Mode, SolverOptions, TreePacking};
use pendant_core::{Error, Graph, VertexSet};

use input::Format;

const EXIT_INPUT: u8 = 1;
const EXIT_BUDGET: u8 = 2;
const EXIT_VIOLATED: u8 = 3;

#[derive(Parser)]
#[command(name = "pendant", version, about = "Pendant Steiner tree packing, extremal edge counts and result checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Validate the inputs and stop before computing.
    #[arg(long, global = true)]
    dry_run: bool,

    /// Emit one JSON record per line.
    #[arg(long, global = true)]
    json: bool,

    /// Include wall-clock time in the output.
    #[arg(long, global = true)]
    timing: bool,

    /// Worker threads.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,

    /// Write to this file instead of standard output. Relative paths are
    /// taken from $PENDANT_OUT_DIR when it is set.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Internally disjoint pendant trees (tau).
    Tau(Conn),
    /// Edge-disjoint pendant trees (mu).
    Mu(Conn),
    /// Internally disjoint trees without the pendant condition.
    #[command(name = "kappa-k")]
    KappaK(Conn),
    /// Vertex connectivity.
    Kappa(Source),
    /// Build a graph from a generator spec and print it as graph6.
    Gen {
        /// For example `harary:9,3` or `join:(complete:1),(cycle:6)`.
        spec: String,
    },
    /// Minimum edge count of a connected graph with tau_k = l.
    Extremal(ExtremalArgs),
    /// Check the exact values, bounds and characterizations.
    Verify(VerifyArgs),
    /// Transcode between graph6 and edge lists.
    Convert(ConvertArgs),
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Source {
    /// Generator spec or path to a graph6 / edge-list file.
    #[arg(short = 'g', long = "graph")]
    graph: Option<String>,

    /// Inline graph6 text.
    #[arg(long)]
    graph6: Option<String>,
}

impl Source {
    fn load(&self) -> pendant_core::Result<Graph> {
        match (&self.graph, &self.graph6) {
            (Some(g), _) => input::load(g),
            (_, Some(t)) => pendant_core::io::decode_graph6(t),
            _ => unreachable!("clap enforces one source"),
        }
    }

    fn describe(&self) -> String {
        self.graph.clone().or_else(|| self.graph6.clone()).unwrap_or_default()
    }
}

#[derive(Args)]
struct Conn {
    #[command(flatten)]
    source: Source,

    /// Number of terminals.
    #[arg(short, long, required_unless_present = "terminals")]
    k: Option<usize>,

    /// A single terminal set, e.g. `0,1,2`, instead of the minimum over all.
    #[arg(long)]
    terminals: Option<String>,

    /// Print the trees of a maximum packing.
    #[arg(long)]
    witness: bool,

    /// Always run the generic tree search.
    #[arg(long)]
    generic: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    SparseAsc,
    DenseDesc,
    ConstructionOnly,
}

impl From<StrategyArg> for Strategy {
    fn from(s: StrategyArg) -> Self {
        match s {
            StrategyArg::SparseAsc => Strategy::SparseAsc,
            StrategyArg::DenseDesc => Strategy::DenseDesc,
            StrategyArg::ConstructionOnly => Strategy::ConstructionOnly,
        }
    }
}

#[derive(Args)]
struct BudgetArgs {
    /// Stop after examining this many graphs.
    #[arg(long)]
    max_graphs: Option<u64>,

    /// Stop after this many seconds.
    #[arg(long)]
    max_seconds: Option<f64>,

    /// Allow searches beyond the default size caps.
    #[arg(long)]
    long_running: bool,
}

impl BudgetArgs {
    fn budget(&self) -> Budget {
        Budget {
            max_graphs: self.max_graphs,
            max_time: self.max_seconds.map(Duration::from_secs_f64),
        }
    }
}

#[derive(Args)]
struct ExtremalArgs {
    #[arg(short)]
    n: usize,
    #[arg(short)]
    k: usize,
    #[arg(short)]
    l: usize,
    #[arg(long, value_enum, default_value = "sparse-asc")]
    strategy: StrategyArg,
    #[command(flatten)]
    budget: BudgetArgs,
    /// Keep every labeled graph instead of discarding cheap isomorphs.
    #[arg(long)]
    no_isomorph_rejection: bool,
    /// Also write the CSV summary row to this file.
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Args)]
#[group(id = "what", required = true, multiple = false, args = ["theorem", "characterization"])]
struct VerifyArgs {
    /// Theorems to check: T1.1, T1.2, T1.3 (comma-separated).
    #[arg(long, value_delimiter = ',')]
    theorem: Vec<String>,
    /// One of L3.1, L3.2, L3.3, L2.5, L2.6, P3.1, L3.6.
    #[arg(long)]
    characterization: Option<String>,
    /// Order for a characterization.
    #[arg(short)]
    n: Option<usize>,
    #[arg(long)]
    n_min: Option<usize>,
    #[arg(long)]
    n_max: Option<usize>,
    /// Values of k (comma-separated) for the general-k lemmas and theorem.
    #[arg(short, long, value_delimiter = ',')]
    k: Vec<usize>,
    #[command(flatten)]
    budget: BudgetArgs,
}

#[derive(Args)]
struct ConvertArgs {
    /// Input file; standard input when absent.
    #[arg(short, long)]
    input: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "auto")]
    from: Format,
    #[arg(long, value_enum)]
    to: Format,
}

/// Where reports go.
struct Sink {
    out: Box<dyn Write>,
}

impl Sink {
    fn open(path: Option<&PathBuf>) -> io::Result<Self> {
        let out: Box<dyn Write> = match path {
            None => Box::new(io::stdout().lock()),
            Some(p) => {
                let p = match std::env::var_os("PENDANT_OUT_DIR") {
                    Some(dir) if p.is_relative() => PathBuf::from(dir).join(p),
                    _ => p.clone(),
                };
                Box::new(File::create(p)?)
            }
        };
        Ok(Sink { out })
    }

    fn line(&mut self, s: impl AsRef<str>) -> io::Result<()> {
        writeln!(self.out, "{}", s.as_ref())
    }
}

enum Failure {
    Input(String),
    Budget,
    Violated,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_INPUT)
        }
        Err(Failure::Budget) => ExitCode::from(EXIT_BUDGET),
        Err(Failure::Violated) => ExitCode::from(EXIT_VIOLATED),
    }
}

fn run(cli: &Cli) -> Outcome {
    if cli.threads == 0 {
        return Err(Failure::Input("--threads must be at least 1".into()));
    }
    let start = Instant::now();
    let elapsed = || cli.timing.then(|| start.elapsed().as_millis() as u64);
    match &cli.command {
        Command::Tau(c) => connectivity(cli, c, Mode::InternalPendant, &elapsed),
        Command::Mu(c) => connectivity(cli, c, Mode::EdgePendant, &elapsed),
        Command::KappaK(c) => connectivity(cli, c, Mode::InternalPlain, &elapsed),
        Command::Kappa(s) => kappa(cli, s, &elapsed),
        Command::Gen { spec } => gen(cli, spec, &elapsed),
        Command::Extremal(a) => run_extremal(cli, a, &elapsed),
        Command::Verify(a) => verify(cli, a),
        Command::Convert(a) => convert(cli, a),
    }
}

fn dry_run_ok(cli: &Cli, what: &str) -> Outcome {
    Sink::open(cli.output.as_ref())?.line(format!("ok: {what}"))?;
    Ok(())
}

fn render_packing(p: &TreePacking) -> Vec<String> {
    p.trees
        .iter()
        .enumerate()
        .map(|(i, t)| {
            let edges: Vec<String> = t.edges.iter().map(|(u, v)| format!("{u}-{v}")).collect();
            format!("tree {}: {}", i + 1, edges.join(" "))
        })
        .collect()
}

fn connectivity(cli: &Cli, c: &Conn, mode: Mode, elapsed: &dyn Fn() -> Option<u64>) -> Outcome {
    let g = c.source.load()?;
    let n = g.order();
    let terminals = c.terminals.as_deref().map(input::parse_terminals).transpose()?;
    let k = match (&terminals, c.k) {
        (Some(t), Some(k)) if t.len() != k => {
            return Err(Failure::Input(format!("-k {k} disagrees with {} terminals", t.len())))
        }
        (Some(t), _) => t.len(),
        (None, Some(k)) => k,
        (None, None) => unreachable!("clap requires -k or --terminals"),
    };
    if k < 2 || k > n {
        return Err(Failure::Input(format!("k must satisfy 2 <= k <= n = {n}, got {k}")));
    }
    let set = match &terminals {
        Some(t) => {
            if let Some(&v) = t.iter().find(|&&v| v >= n) {
                return Err(Failure::Input(format!("terminal {v} is out of range for order {n}")));
            }
            let set: VertexSet = t.iter().collect();
            if set.len() != t.len() {
                return Err(Failure::Input("terminal list repeats a vertex".into()));
            }
            Some(set)
        }
        None => None,
    };
    if cli.dry_run {
        return dry_run_ok(cli, &format!("{} on a graph of order {n} with k = {k}", mode.symbol()));
    }
    let opts = SolverOptions { force_generic: c.generic, threads: cli.threads, ..SolverOptions::default() };
    let (value, packing, method) = match set {
        Some(s) => {
            let p = packing::local_connectivity_with(&g, s, mode, &opts)?;
            (p.len(), p, None)
        }
        None => {
            let r = packing::global_connectivity_with(&g, k, mode, &opts)?;
            (r.value, r.witness, Some(r.method))
        }
    };
    let mut sink = Sink::open(cli.output.as_ref())?;
    let sym = mode.symbol();
    if cli.json {
        let mut outputs = json!({ "value": value, "terminals": packing.terminals.to_vec() });
        if let Some(m) = method {
            outputs["method"] = serde_json::to_value(m).unwrap_or(Value::Null);
        }
        if c.witness {
            outputs["packing"] = serde_json::to_value(&packing).unwrap_or(Value::Null);
        }
        let rec = ReportRecord {
            operation: sym.into(),
            inputs: json!({
                "graph": encode_graph6(&g)?,
                "source": c.source.describe(),
                "k": k,
                "terminals": terminals,
            }),
            outputs,
            witnesses: Vec::new(),
            exhaustive: Some(true),
            elapsed_ms: elapsed(),
        };
        sink.line(rec.to_json_line())?;
        return Ok(());
    }
    if set.is_some() {
        sink.line(format!("{sym}(S) = {value} for S = {}", packing.terminals))?;
    } else {
        sink.line(format!("{sym}_{k} = {value}"))?;
        sink.line(format!("S = {}", packing.terminals))?;
    }
    if c.witness {
        for l in render_packing(&packing) {
            sink.line(l)?;
        }
    }
    if let Some(ms) = elapsed() {
        sink.line(format!("elapsed_ms = {ms}"))?;
    }
    Ok(())
}

fn kappa(cli: &Cli, s: &Source, elapsed: &dyn Fn() -> Option<u64>) -> Outcome {
    let g = s.load()?;
    if cli.dry_run {
        return dry_run_ok(cli, &format!("kappa on a graph of order {}", g.order()));
    }
    let value = g.vertex_connectivity();
    let mut sink = Sink::open(cli.output.as_ref())?;
    if cli.json {
        let rec = ReportRecord {
            operation: "kappa".into(),
            inputs: json!({ "graph": encode_graph6(&g)?, "source": s.describe() }),
            outputs: json!({ "value": value }),
            witnesses: Vec::new(),
            exhaustive: Some(true),
            elapsed_ms: elapsed(),
        };
        sink.line(rec.to_json_line())?;
    } else {
        sink.line(format!("kappa = {value}"))?;
        if let Some(ms) = elapsed() {
            sink.line(format!("elapsed_ms = {ms}"))?;
        }
    }
    Ok(())
}

fn gen(cli: &Cli, spec: &str, elapsed: &dyn Fn() -> Option<u64>) -> Outcome {
    let parsed: GeneratorSpec = spec.parse()?;
    let g = parsed.build()?;
    if cli.dry_run {
        return dry_run_ok(cli, &format!("{parsed} has order {}", g.order()));
    }
    let g6 = encode_graph6(&g)?;
    let mut sink = Sink::open(cli.output.as_ref())?;
    if cli.json {
        let rec = ReportRecord {
            operation: "gen".into(),
            inputs: json!({ "spec": parsed.to_string() }),
            outputs: json!({ "n": g.order(), "m": g.edge_count(), "graph6": g6 }),
            witnesses: Vec::new(),
            exhaustive: None,
            elapsed_ms: elapsed(),
        };
        sink.line(rec.to_json_line())?;
    } else {
        sink.line(g6)?;
    }
    Ok(())
}

fn search_options(cli: &Cli, b: &BudgetArgs) -> SearchOptions {
    SearchOptions {
        budget: b.budget(),
        threads: cli.threads,
        long_running: b.long_running,
        ..SearchOptions::default()
    }
}

fn run_extremal(cli: &Cli, a: &ExtremalArgs, elapsed: &dyn Fn() -> Option<u64>) -> Outcome {
    let (n, k, l) = (a.n, a.k, a.l);
    if k < 2 || k > n || l > n - k {
        return Err(Failure::Input(format!("need 2 <= k <= n and 0 <= l <= n - k, got n = {n}, k = {k}, l = {l}")));
    }
    let strategy: Strategy = a.strategy.into();
    if n >= 8 && strategy != Strategy::ConstructionOnly && a.budget.budget().is_unlimited() {
        return Err(Failure::Input(format!(
            "a budget (--max-graphs or --max-seconds) is required for searches with n >= 8, got n = {n}"
        )));
    }
    if a.budget.max_seconds.is_some_and(|s| !(s.is_finite() && s >= 0.0)) {
        return Err(Failure::Input("--max-seconds must be a nonnegative number".into()));
    }
    if cli.dry_run {
        return dry_run_ok(cli, &format!("f({n},{k},{l}) with {strategy:?}"));
    }
    let opts = SearchOptions { reject_isomorphs: !a.no_isomorph_rejection, ..search_options(cli, &a.budget) };
    let rec = extremal::f_min_edges(n, k, l, strategy, &opts)?;
    let mut sink = Sink::open(cli.output.as_ref())?;
    if cli.json {
        let mut v = serde_json::to_value(&rec).map_err(|e| Failure::Input(e.to_string()))?;
        if let Some(ms) = elapsed() {
            v["elapsed_ms"] = json!(ms);
        }
        sink.line(v.to_string())?;
    } else {
        let head = format!("f({n},{k},{l})");
        match rec.status {
            SearchStatus::Found => sink.line(format!(
                "{head} = {} (exhaustive = {}, graphs examined = {})",
                rec.f_value.unwrap_or_default(),
                rec.exhaustive,
                rec.graphs_examined
            ))?,
            SearchStatus::Infeasible => {
                sink.line(format!("{head}: no connected graph of order {n} has tau_{k} = {l}"))?
            }
            SearchStatus::BudgetExhausted => sink.line(format!(
                "{head}: budget exhausted after {} graphs; lower bound {}",
                rec.graphs_examined, rec.lower_bound
            ))?,
            SearchStatus::UpperBoundOnly => sink.line(format!(
                "{head} <= {} by construction; lower bound {}",
                rec.upper_bound.unwrap_or_default(),
                rec.lower_bound
            ))?,
            SearchStatus::NoConstruction => sink.line(format!("{head}: no construction attains the value"))?,
        }
        if let Some(w) = &rec.witness {
            sink.line(format!("witness: {w}"))?;
        }
        if let Some(ms) = elapsed() {
            sink.line(format!("elapsed_ms = {ms}"))?;
        }
    }
    if let Some(path) = &a.csv {
        let path = match std::env::var_os("PENDANT_OUT_DIR") {
            Some(dir) if path.is_relative() => PathBuf::from(dir).join(path),
            _ => path.clone(),
        };
        write_summary_csv(File::create(path)?, &[rec.summary()])?;
    }
    if rec.status == SearchStatus::BudgetExhausted {
        return Err(Failure::Budget);
    }
    Ok(())
}

fn verdict_text(v: Verdict) -> String {
    serde_json::to_value(v).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default()
}

fn verify(cli: &Cli, a: &VerifyArgs) -> Outcome {
    let opts = search_options(cli, &a.budget);
    let mut sink;
    let mut violated = false;
    if let Some(id) = &a.characterization {
        let which: Characterization = id.parse()?;
        let n = a.n.ok_or_else(|| Failure::Input("-n is required with --characterization".into()))?;
        let ks: Vec<Option<usize>> = if a.k.is_empty() { vec![None] } else { a.k.iter().map(|&k| Some(k)).collect() };
        if cli.dry_run {
            return dry_run_ok(cli, &format!("{} at n = {n}", which.id()));
        }
        sink = Sink::open(cli.output.as_ref())?;
        for k in ks {
            for c in verify_characterization(which, n, k)? {
                violated |= c.verdict == Verdict::Violated;
                if cli.json {
                    sink.line(serde_json::to_string(&c).map_err(|e| Failure::Input(e.to_string()))?)?;
                } else {
                    let reading = c.reading.as_deref().map(|r| format!(" [{r}]")).unwrap_or_default();
                    sink.line(format!(
                        "{} n={} k={} value={}{reading}: {} graphs, class {}, forward {}, backward {} -> {}{}",
                        c.id,
                        c.n,
                        c.k,
                        c.value,
                        c.graphs_checked,
                        c.class_size,
                        c.forward_violations,
                        c.backward_violations,
                        verdict_text(c.verdict),
                        c.counterexample.map(|g| format!(" (e.g. {g})")).unwrap_or_default()
                    ))?;
                }
            }
        }
    } else {
        let n_max = a.n_max.or(a.n).ok_or_else(|| Failure::Input("--n-max is required with --theorem".into()))?;
        let n_min = a.n_min.or(a.n).unwrap_or(n_max.min(7));
        let sel = TheoremSelection {
            theorems: a.theorem.clone(),
            n_min,
            n_max,
            ks: if a.k.is_empty() { vec![3] } else { a.k.clone() },
            options: opts,
        };
        if cli.dry_run {
            return dry_run_ok(cli, &format!("{} for {n_min} <= n <= {n_max}", a.theorem.join(",")));
        }
        let checks = verify_theorems(&sel)?;
        sink = Sink::open(cli.output.as_ref())?;
        for c in checks {
            violated |= c.verdict == Verdict::Violated;
            if cli.json {
                sink.line(serde_json::to_string(&c).map_err(|e| Failure::Input(e.to_string()))?)?;
                continue;
            }
            let claim = match c.claim {
                Some(extremal::Claim::Exact(v)) => format!("claim {v}"),
                Some(extremal::Claim::Bounds(lo, hi)) => format!("claim [{lo}, {hi}]"),
                None => "no claim".into(),
            };
            let got = match (c.computed, c.upper_bound) {
                (Some(f), _) => format!("f = {f}"),
                (None, Some(u)) => format!("{} <= f <= {u}", c.lower_bound),
                (None, None) => "f unknown".into(),
            };
            let band = match c.band {
                extremal::Band::InHypothesis => "in-hypothesis",
                extremal::Band::Exploratory => "exploratory",
            };
            let l = c.l.map(|l| l.to_string()).unwrap_or_else(|| "-".into());
            sink.line(format!(
                "{} n={} k={} l={l} [{band}] {claim}, {got} -> {}{}",
                c.id,
                c.n,
                c.k,
                verdict_text(c.verdict),
                c.note.map(|s| format!(" ({s})")).unwrap_or_default()
            ))?;
        }
    }
    if violated {
        return Err(Failure::Violated);
    }
    Ok(())
}

fn convert(cli: &Cli, a: &ConvertArgs) -> Outcome {
    if a.to == Format::Auto {
        return Err(Failure::Input("--to must be graph6 or edgelist".into()));
    }
    let mut text = String::new();
    match &a.input {
        Some(p) => text = std::fs::read_to_string(p)?,
        None => {
            io::stdin().read_to_string(&mut text)?;
        }
    }
    let graphs = input::parse_graphs(&text, a.from)?;
    if cli.dry_run {
        return dry_run_ok(cli, &format!("{} graph(s) read", graphs.len()));
    }
    let mut sink = Sink::open(cli.output.as_ref())?;
    for (i, g) in graphs.iter().enumerate() {
        match a.to {
            Format::Graph6 => sink.line(encode_graph6(g)?)?,
            _ => {
                if i > 0 {
                    sink.line("")?;
                }
                sink.out.write_all(write_edge_list(g).as_bytes())?;
            }
        }
    }
    Ok(())
}
