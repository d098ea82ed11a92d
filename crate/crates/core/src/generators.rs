//! Named graphs and graph operations.
//!
//! Products number the pair `(u, v)` as `u * |V(H)| + v`. Joins and disjoint
//! unions place the left operand first.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::{Graph, MAX_ORDER};

fn at_least(what: &str, value: usize, min: usize) -> Result<()> {
    if value < min {
        return Err(Error::param(format!("{what} must be at least {min}, got {value}")));
    }
    Ok(())
}

pub fn empty(n: usize) -> Result<Graph> {
    Graph::empty(n)
}

pub fn complete(n: usize) -> Result<Graph> {
    at_least("order", n, 1)?;
    Graph::from_edges(n, (0..n).flat_map(|j| (0..j).map(move |i| (i, j))))
}

pub fn complete_bipartite(r: usize, s: usize) -> Result<Graph> {
    at_least("part size", r.min(s), 1)?;
    Graph::from_edges(r + s, (0..r).flat_map(|i| (r..r + s).map(move |j| (i, j))))
}

pub fn path(n: usize) -> Result<Graph> {
    at_least("path order", n, 1)?;
    Graph::from_edges(n, (1..n).map(|i| (i - 1, i)))
}

pub fn cycle(n: usize) -> Result<Graph> {
    at_least("cycle order", n, 3)?;
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
}

/// Hub `0` joined to the cycle `1, 2, ..., n-1`.
pub fn wheel(n: usize) -> Result<Graph> {
    at_least("wheel order", n, 4)?;
    join(&complete(1)?, &cycle(n - 1)?)
}

/// The `d`-connected circulant-type graph on `n` vertices with `ceil(dn/2)`
/// edges.
pub fn harary(n: usize, d: usize) -> Result<Graph> {
    if d < 2 || d >= n {
        return Err(Error::param(format!("harary needs 2 <= d < n, got n = {n}, d = {d}")));
    }
    let mut g = Graph::empty(n)?;
    let r = d / 2;
    for i in 0..n {
        for off in 1..=r {
            g.add_edge(i, (i + off) % n)?;
        }
    }
    if d % 2 == 1 {
        if n % 2 == 0 {
            for i in 0..n / 2 {
                g.add_edge(i, i + n / 2)?;
            }
        } else {
            g.add_edge(0, (n - 1) / 2)?;
            g.add_edge(0, (n + 1) / 2)?;
            for i in 1..=(n - 1) / 2 {
                g.add_edge(i, (i + (n + 1) / 2) % n)?;
            }
        }
    }
    Ok(g)
}

pub fn join(g: &Graph, h: &Graph) -> Result<Graph> {
    let mut out = g.disjoint_union(h)?;
    let a = g.order();
    for u in 0..a {
        for v in 0..h.order() {
            out.add_edge(u, a + v)?;
        }
    }
    Ok(out)
}

fn product_order(g: &Graph, h: &Graph) -> Result<usize> {
    let n = g.order() * h.order();
    if n > MAX_ORDER {
        return Err(Error::OrderOutOfRange(n));
    }
    Ok(n)
}

pub fn cartesian(g: &Graph, h: &Graph) -> Result<Graph> {
    let n = product_order(g, h)?;
    let b = h.order();
    let mut out = Graph::empty(n)?;
    for u in 0..g.order() {
        for (v, w) in h.edges() {
            out.add_edge(u * b + v, u * b + w)?;
        }
    }
    for (u, x) in g.edges() {
        for v in 0..b {
            out.add_edge(u * b + v, x * b + v)?;
        }
    }
    Ok(out)
}

pub fn lexicographic(g: &Graph, h: &Graph) -> Result<Graph> {
    let n = product_order(g, h)?;
    let b = h.order();
    let mut out = Graph::empty(n)?;
    for u in 0..g.order() {
        for (v, w) in h.edges() {
            out.add_edge(u * b + v, u * b + w)?;
        }
    }
    for (u, x) in g.edges() {
        for v in 0..b {
            for w in 0..b {
                out.add_edge(u * b + v, x * b + w)?;
            }
        }
    }
    Ok(out)
}

/// `K_n` without the matching `{0,1}, {2,3}, ...` of size `r`.
pub fn complete_minus_matching(n: usize, r: usize) -> Result<Graph> {
    if 2 * r > n {
        return Err(Error::param(format!("matching of size {r} does not fit in {n} vertices")));
    }
    let mut g = complete(n)?;
    for i in 0..r {
        g.remove_edge(2 * i, 2 * i + 1)?;
    }
    Ok(g)
}

/// `K_{k+l-1}` joined to `n-k-l+1` independent vertices; the clique comes
/// first. Its `tau_k` is `l` for `n/2 - k + 2 <= l <= n - k`.
pub fn clique_join(n: usize, k: usize, l: usize) -> Result<Graph> {
    if k < 3 || k > n {
        return Err(Error::param(format!("clique_join needs 3 <= k <= n, got k = {k}, n = {n}")));
    }
    if 2 * (l + k) < n + 4 || l > n - k {
        return Err(Error::param(format!(
            "clique_join needs n/2 - k + 2 <= l <= n - k, got n = {n}, k = {k}, l = {l}"
        )));
    }
    clique_join_unchecked(n, k + l - 1)
}

fn clique_join_unchecked(n: usize, clique: usize) -> Result<Graph> {
    if clique == 0 || clique >= n {
        return complete(n);
    }
    join(&complete(clique)?, &empty(n - clique)?)
}

/// `l` independent vertices `0..l` joined to a cycle on `l..n`, plus one
/// chord from the first cycle vertex to cycle vertex `floor((n-l)/2)`
/// (counting from 1).
pub fn cycle_join(n: usize, l: usize) -> Result<Graph> {
    if l < 3 || 3 * l + 4 > n {
        return Err(Error::param(format!(
            "cycle_join needs 3 <= l <= (n - 4)/3, got n = {n}, l = {l}"
        )));
    }
    let c = n - l;
    let mut g = join(&empty(l)?, &cycle(c)?)?;
    g.add_edge(l, l + c / 2 - 1)?;
    Ok(g)
}

/// Parameters `(s, r)` of the layered construction: `n = s(l+1) + r`.
pub fn layered_shape(n: usize, l: usize) -> (usize, usize) {
    (n / (l + 1), n % (l + 1))
}

/// Closed-form edge count quoted for the layered construction.
pub fn layered_formula(n: usize, l: usize) -> usize {
    let (s, r) = layered_shape(n, l);
    s * (l + 1) * (l + 1) + (r + 1) * (l + 1) + r - 1
}

/// Whether `(n, l)` lies in the range where the layered construction is
/// claimed to have `tau_3 = l`: `(n-4)/3 <= l <= (n-r-2)/2` and `r >= 2`.
pub fn layered_in_range(n: usize, l: usize) -> bool {
    let (_, r) = layered_shape(n, l);
    r >= 2 && 3 * l + 4 >= n && 2 * l + r + 2 <= n
}

/// Layers `H_1..H_s` of `l+1` independent vertices with consecutive layers
/// completely joined, an extra layer of `r` vertices joined to all of `H_s`,
/// a path through the extra layer and a path through `H_1`.
///
/// Layer `i` (from 0) holds vertices `i(l+1) .. (i+1)(l+1)`.
pub fn layered_path_construction(n: usize, l: usize) -> Result<Graph> {
    at_least("l", l, 1)?;
    let (s, r) = layered_shape(n, l);
    if s < 2 || r < 2 {
        return Err(Error::param(format!(
            "layered construction needs n = s(l+1) + r with s >= 2 and r >= 2, got n = {n}, l = {l}"
        )));
    }
    let w = l + 1;
    let mut g = lexicographic(&path(s)?, &empty(w)?)?.disjoint_union(&empty(r)?)?;
    let extra = s * w;
    for i in 0..w {
        for j in 0..r {
            g.add_edge((s - 1) * w + i, extra + j)?;
        }
    }
    for j in 1..r {
        g.add_edge(extra + j - 1, extra + j)?;
    }
    for j in 1..w {
        g.add_edge(j - 1, j)?;
    }
    Ok(g)
}

/// The layered construction, rejected unless `(n, l)` is in range and its
/// edge count agrees with [`layered_formula`].
pub fn layered_path(n: usize, l: usize) -> Result<Graph> {
    if !layered_in_range(n, l) {
        return Err(Error::param(format!(
            "layered construction needs (n-4)/3 <= l <= (n-r-2)/2 with r = n mod (l+1) >= 2, got n = {n}, l = {l}"
        )));
    }
    let g = layered_path_construction(n, l)?;
    let formula = layered_formula(n, l);
    if g.edge_count() != formula {
        return Err(Error::FormulaMismatch {
            constructed: g.edge_count(),
            formula,
        });
    }
    Ok(g)
}

/// A maximal complement pattern for dense graphs with `tau_3 = n - 5`.
#[derive(Clone, Debug)]
pub struct ComplementPattern {
    pub name: String,
    pub complement: Graph,
    pub graph: Graph,
}

/// Disjoint cycles, then an optional path, then `k2` disjoint edges; the
/// remaining vertices stay isolated.
fn pattern(n: usize, cycles: &[usize], path_len: Option<usize>, k2: usize) -> Result<Graph> {
    let mut g = Graph::empty(n)?;
    let mut next = 0;
    for &c in cycles {
        for i in 0..c {
            g.add_edge(next + i, next + (i + 1) % c)?;
        }
        next += c;
    }
    if let Some(p) = path_len {
        for i in 1..p {
            g.add_edge(next + i - 1, next + i)?;
        }
        next += p;
    }
    for _ in 0..k2 {
        g.add_edge(next, next + 1)?;
        next += 2;
    }
    debug_assert!(next <= n);
    Ok(g)
}

/// The nine complement patterns on `n >= 10` vertices:
/// `C_i + C_j + isolated` for `i, j` in `{3, 4}`, `C_i` plus a maximum
/// matching on the rest for `i` in `{3, 4}`, `P_5` plus a maximum matching,
/// and `C_i + isolated` for `i` in `{5, 6, 7}`.
pub fn near_complete_family(n: usize) -> Result<Vec<ComplementPattern>> {
    at_least("order", n, 10)?;
    let mut out = Vec::new();
    let mut push = |name: String, complement: Graph| {
        let graph = complement.complement();
        out.push(ComplementPattern { name, complement, graph });
    };
    for (i, j) in [(3, 3), (3, 4), (4, 4)] {
        push(format!("C{i}+C{j}+{}K1", n - i - j), pattern(n, &[i, j], None, 0)?);
    }
    for i in [3, 4] {
        let m = (n - i) / 2;
        push(format!("C{i}+{m}K2"), pattern(n, &[i], None, m)?);
    }
    let m = (n - 5) / 2;
    push(format!("P5+{m}K2"), pattern(n, &[], Some(5), m)?);
    for i in [5, 6, 7] {
        push(format!("C{i}+{}K1", n - i), pattern(n, &[i], None, 0)?);
    }
    Ok(out)
}

/// Textual description of a generated graph, e.g. `harary:9,3` or
/// `join:(complete:1),(cycle:6)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GeneratorSpec {
    Empty(usize),
    Complete(usize),
    CompleteBipartite(usize, usize),
    Path(usize),
    Cycle(usize),
    Wheel(usize),
    Harary(usize, usize),
    Join(Box<GeneratorSpec>, Box<GeneratorSpec>),
    Cartesian(Box<GeneratorSpec>, Box<GeneratorSpec>),
    Lexicographic(Box<GeneratorSpec>, Box<GeneratorSpec>),
    CompleteMinusMatching(usize, usize),
    CliqueJoin(usize, usize, usize),
    CycleJoin(usize, usize),
    LayeredPath(usize, usize),
    /// Graph whose complement is member `index` of the near-complete family.
    NearComplete(usize, usize),
}

impl GeneratorSpec {
    pub fn build(&self) -> Result<Graph> {
        use GeneratorSpec::*;
        match self {
            Empty(n) => empty(*n),
            Complete(n) => complete(*n),
            CompleteBipartite(r, s) => complete_bipartite(*r, *s),
            Path(n) => path(*n),
            Cycle(n) => cycle(*n),
            Wheel(n) => wheel(*n),
            Harary(n, d) => harary(*n, *d),
            Join(a, b) => join(&a.build()?, &b.build()?),
            Cartesian(a, b) => cartesian(&a.build()?, &b.build()?),
            Lexicographic(a, b) => lexicographic(&a.build()?, &b.build()?),
            CompleteMinusMatching(n, r) => complete_minus_matching(*n, *r),
            CliqueJoin(n, k, l) => clique_join(*n, *k, *l),
            CycleJoin(n, l) => cycle_join(*n, *l),
            LayeredPath(n, l) => layered_path(*n, *l),
            NearComplete(n, i) => {
                let family = near_complete_family(*n)?;
                family
                    .into_iter()
                    .nth(*i)
                    .map(|p| p.graph)
                    .ok_or_else(|| Error::param(format!("family member {i} does not exist")))
            }
        }
    }

    fn name(&self) -> &'static str {
        use GeneratorSpec::*;
        match self {
            Empty(_) => "empty",
            Complete(_) => "complete",
            CompleteBipartite(..) => "complete_bipartite",
            Path(_) => "path",
            Cycle(_) => "cycle",
            Wheel(_) => "wheel",
            Harary(..) => "harary",
            Join(..) => "join",
            Cartesian(..) => "cartesian",
            Lexicographic(..) => "lex",
            CompleteMinusMatching(..) => "complete_minus_matching",
            CliqueJoin(..) => "clique_join",
            CycleJoin(..) => "cycle_join",
            LayeredPath(..) => "layered",
            NearComplete(..) => "near_complete",
        }
    }
}

impl fmt::Display for GeneratorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use GeneratorSpec::*;
        write!(f, "{}:", self.name())?;
        match self {
            Empty(a) | Complete(a) | Path(a) | Cycle(a) | Wheel(a) => write!(f, "{a}"),
            CompleteBipartite(a, b)
            | Harary(a, b)
            | CompleteMinusMatching(a, b)
            | CycleJoin(a, b)
            | LayeredPath(a, b)
            | NearComplete(a, b) => write!(f, "{a},{b}"),
            CliqueJoin(a, b, c) => write!(f, "{a},{b},{c}"),
            Join(a, b) | Cartesian(a, b) | Lexicographic(a, b) => write!(f, "({a}),({b})"),
        }
    }
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn error(&self, message: impl Into<String>) -> Error {
        Error::parse(format!("offset {}", self.pos), message)
    }

    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected '{c}'")))
        }
    }

    fn word(&mut self) -> &'a str {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == '_' || c == '-') {
            self.pos += 1;
        }
        &self.text[start..self.pos]
    }

    fn number(&mut self) -> Result<usize> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        self.text[start..self.pos]
            .parse()
            .map_err(|_| Error::parse(format!("offset {start}"), "expected a non-negative integer"))
    }

    fn numbers(&mut self, count: usize) -> Result<Vec<usize>> {
        let mut out = vec![self.number()?];
        while out.len() < count {
            self.eat(',')?;
            out.push(self.number()?);
        }
        Ok(out)
    }

    fn operand(&mut self) -> Result<Box<GeneratorSpec>> {
        self.eat('(')?;
        let inner = self.spec()?;
        self.eat(')')?;
        Ok(Box::new(inner))
    }

    fn operands(&mut self) -> Result<(Box<GeneratorSpec>, Box<GeneratorSpec>)> {
        let a = self.operand()?;
        self.eat(',')?;
        Ok((a, self.operand()?))
    }

    fn spec(&mut self) -> Result<GeneratorSpec> {
        use GeneratorSpec::*;
        let at = self.pos;
        let name = self.word().to_ascii_lowercase().replace('-', "_");
        self.eat(':')?;
        let spec = match name.as_str() {
            "empty" => Empty(self.number()?),
            "complete" => Complete(self.number()?),
            "path" => Path(self.number()?),
            "cycle" => Cycle(self.number()?),
            "wheel" => Wheel(self.number()?),
            "complete_bipartite" | "bipartite" => {
                let v = self.numbers(2)?;
                CompleteBipartite(v[0], v[1])
            }
            "harary" => {
                let v = self.numbers(2)?;
                Harary(v[0], v[1])
            }
            "complete_minus_matching" => {
                let v = self.numbers(2)?;
                CompleteMinusMatching(v[0], v[1])
            }
            "clique_join" => {
                let v = self.numbers(3)?;
                CliqueJoin(v[0], v[1], v[2])
            }
            "cycle_join" => {
                let v = self.numbers(2)?;
                CycleJoin(v[0], v[1])
            }
            "layered" => {
                let v = self.numbers(2)?;
                LayeredPath(v[0], v[1])
            }
            "near_complete" => {
                let v = self.numbers(2)?;
                NearComplete(v[0], v[1])
            }
            "join" => {
                let (a, b) = self.operands()?;
                Join(a, b)
            }
            "cartesian" => {
                let (a, b) = self.operands()?;
                Cartesian(a, b)
            }
            "lex" | "lexicographic" => {
                let (a, b) = self.operands()?;
                Lexicographic(a, b)
            }
            other => {
                return Err(Error::parse(format!("offset {at}"), format!("unknown generator '{other}'")))
            }
        };
        Ok(spec)
    }
}

impl FromStr for GeneratorSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let text = s.trim();
        let mut p = Parser { text, pos: 0 };
        let spec = p.spec()?;
        if p.pos != text.len() {
            return Err(p.error("trailing characters"));
        }
        Ok(spec)
    }
}
