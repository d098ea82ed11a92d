use std::ops::ControlFlow;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::theorems::{Band, Verdict};
use super::{all_graphs, EnumerationSpec};
use crate::error::{Error, Result};
use crate::generators;
use crate::graph::Graph;
use crate::io::encode_graph6;
use crate::packing::{global_connectivity, Mode};

/// Characterizations of graphs by the value of `tau_k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Characterization {
    /// `tau_n = 0` for every graph.
    #[serde(rename = "L3.1")]
    L3_1,
    /// `tau_{n-1} = 1` iff complete.
    #[serde(rename = "L3.2")]
    L3_2,
    /// `tau_{n-2} = 2` iff complete; `= 1` iff a matching of one or two
    /// edges is missing.
    #[serde(rename = "L3.3")]
    L3_3,
    /// `tau_k = n-k` iff complete.
    #[serde(rename = "L2.5")]
    L2_5,
    /// `tau_k = n-k-1` iff the complement is one or two disjoint edges.
    #[serde(rename = "L2.6")]
    L2_6,
    /// `tau_{n-3}` in `{3, 2, 1}` by the complement's shape.
    #[serde(rename = "P3.1")]
    P3_1,
    /// `tau_3 = n-5` iff the complement embeds in a near-complete pattern.
    #[serde(rename = "L3.6")]
    L3_6,
}

impl Characterization {
    pub const ALL: [Characterization; 7] = [
        Characterization::L3_1,
        Characterization::L3_2,
        Characterization::L3_3,
        Characterization::L2_5,
        Characterization::L2_6,
        Characterization::P3_1,
        Characterization::L3_6,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Characterization::L3_1 => "L3.1",
            Characterization::L3_2 => "L3.2",
            Characterization::L3_3 => "L3.3",
            Characterization::L2_5 => "L2.5",
            Characterization::L2_6 => "L2.6",
            Characterization::P3_1 => "P3.1",
            Characterization::L3_6 => "L3.6",
        }
    }

    /// Smallest order the statement is made for.
    pub fn threshold(self) -> usize {
        match self {
            Characterization::L3_1 | Characterization::L3_2 => 1,
            Characterization::L2_5 => 4,
            Characterization::L3_3 | Characterization::L2_6 => 7,
            Characterization::P3_1 => 9,
            Characterization::L3_6 => 10,
        }
    }
}

impl FromStr for Characterization {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Characterization::ALL
            .into_iter()
            .find(|c| c.id().eq_ignore_ascii_case(s))
            .ok_or_else(|| {
                Error::param(format!("unknown characterization {s:?}; expected one of L3.1, L3.2, L3.3, L2.5, L2.6, P3.1, L3.6"))
            })
    }
}

/// Double-inclusion check of one characterized value under one reading.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterizationCheck {
    pub id: String,
    pub n: usize,
    pub k: usize,
    pub value: usize,
    pub class: String,
    pub reading: Option<String>,
    pub band: Band,
    pub domain: String,
    pub graphs_checked: u64,
    pub class_size: u64,
    /// Class members whose value differs.
    pub forward_violations: u64,
    /// Graphs with the value that are outside the class.
    pub backward_violations: u64,
    pub counterexample: Option<String>,
    pub verdict: Verdict,
}

type ClassFn = Box<dyn Fn(&Graph) -> bool>;

struct Statement {
    value: usize,
    class: String,
    reading: Option<&'static str>,
    member: ClassFn,
}

fn statement(value: usize, class: &str, reading: Option<&'static str>, member: ClassFn) -> Statement {
    Statement { value, class: class.into(), reading, member }
}

fn is_matching(h: &Graph, lo: usize, hi: usize) -> bool {
    h.max_degree() <= 1 && (lo..=hi).contains(&h.edge_count())
}

/// Whether `small` is isomorphic to a subgraph of `big` (same order).
pub(crate) fn embeds(small: &Graph, big: &Graph) -> bool {
    let n = small.order();
    if n != big.order() || small.edge_count() > big.edge_count() {
        return false;
    }
    let mut order: Vec<usize> = (0..n).filter(|&v| small.degree(v) > 0).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(small.degree(v)));
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn extend(
        i: usize,
        order: &[usize],
        small: &Graph,
        big: &Graph,
        image: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        let Some(&v) = order.get(i) else { return true };
        for w in 0..big.order() {
            if used[w] || big.degree(w) < small.degree(v) {
                continue;
            }
            let fits = order[..i]
                .iter()
                .all(|&u| !small.has_edge(u, v) || big.has_edge(image[u], w));
            if fits {
                image[v] = w;
                used[w] = true;
                if extend(i + 1, order, small, big, image, used) {
                    return true;
                }
                used[w] = false;
            }
        }
        false
    }
    extend(0, &order, small, big, &mut image, &mut used)
}

/// `k`, the graphs to scan, a description of that domain, and the statements.
fn setup(
    which: Characterization,
    n: usize,
    k: Option<usize>,
) -> Result<(usize, Domain, Vec<Statement>)> {
    use Characterization::*;
    let need_k = |lo: usize| -> Result<usize> {
        let k = k.ok_or_else(|| Error::param(format!("{} needs k", which.id())))?;
        if k < lo || k > n {
            return Err(Error::param(format!("{} needs {lo} <= k <= n, got k = {k}", which.id())));
        }
        Ok(k)
    };
    let complete: ClassFn = Box::new(|g: &Graph| g.is_complete());
    Ok(match which {
        L3_1 => (n, Domain::All, vec![statement(0, "every graph", None, Box::new(|_| true))]),
        L3_2 => (n - 1, Domain::Connected, vec![statement(1, "K_n", None, complete)]),
        L3_3 => (
            n - 2,
            Domain::ComplementDegree(2),
            vec![
                statement(2, "K_n", None, complete),
                statement(
                    1,
                    "K_n minus a matching of 1 or 2 edges",
                    Some("literal"),
                    Box::new(|g| is_matching(&g.complement(), 1, 2)),
                ),
                statement(
                    1,
                    "K_n minus a nonempty matching of any size",
                    Some("any matching"),
                    Box::new(move |g| is_matching(&g.complement(), 1, n / 2)),
                ),
            ],
        ),
        L2_5 => (need_k(3)?, Domain::ComplementDegree(1), vec![statement(n - need_k(3)?, "K_n", None, complete)]),
        L2_6 => {
            let k = need_k(3)?;
            (
                k,
                Domain::ComplementDegree(2),
                vec![statement(
                    n - k - 1,
                    "complement rK2 + (n-2r)K1, r in {1, 2}",
                    None,
                    Box::new(|g| is_matching(&g.complement(), 1, 2)),
                )],
            )
        }
        P3_1 => (
            n - 3,
            Domain::ComplementDegree(3),
            vec![
                statement(3, "K_n", None, complete),
                statement(2, "K_n minus a matching of 1 or 2 edges", None, Box::new(|g| is_matching(&g.complement(), 1, 2))),
                statement(
                    1,
                    "1 <= max complement degree <= 2, every matching of the complement has >= 3 edges",
                    Some("literal"),
                    Box::new(|g| {
                        let h = g.complement();
                        // A single edge is a matching, so any edge breaks the clause.
                        (1..=2).contains(&h.max_degree()) && h.edge_count() == 0
                    }),
                ),
                statement(
                    1,
                    "1 <= max complement degree <= 2, complement not a matching of 1 or 2 edges",
                    Some("contextual"),
                    Box::new(|g| {
                        let h = g.complement();
                        (1..=2).contains(&h.max_degree()) && !is_matching(&h, 1, 2)
                    }),
                ),
            ],
        ),
        L3_6 => {
            let family: Vec<Graph> = generators::near_complete_family(n)?.into_iter().map(|p| p.complement).collect();
            let f2 = family.clone();
            (
                3,
                Domain::ComplementDegree(2),
                vec![
                    statement(
                        n - 5,
                        "complement embeds in a near-complete pattern",
                        Some("literal"),
                        Box::new(move |g| {
                            let h = g.complement();
                            family.iter().any(|p| embeds(&h, p))
                        }),
                    ),
                    statement(
                        n - 5,
                        "complement embeds in a near-complete pattern and is not a matching of at most 2 edges",
                        Some("contextual"),
                        Box::new(move |g| {
                            let h = g.complement();
                            !is_matching(&h, 0, 2) && f2.iter().any(|p| embeds(&h, p))
                        }),
                    ),
                ],
            )
        }
    })
}

enum Domain {
    All,
    Connected,
    /// Connected graphs whose complement has at most this maximum degree.
    ComplementDegree(usize),
}

impl Domain {
    fn describe(&self) -> String {
        match self {
            Domain::All => "all graphs".into(),
            Domain::Connected => "all connected graphs".into(),
            Domain::ComplementDegree(d) => format!(
                "connected graphs with max complement degree <= {d}; outside it every value checked is excluded by the minimum degree bound"
            ),
        }
    }

    fn graphs(&self, n: usize) -> Result<Vec<Graph>> {
        let total = n * (n - 1) / 2;
        let mut out = Vec::new();
        for m in 0..=total {
            let spec = match self {
                Domain::All => EnumerationSpec { reject_isomorphs: true, ..EnumerationSpec::new(n, m) },
                Domain::Connected => EnumerationSpec {
                    require_connected: true,
                    reject_isomorphs: true,
                    ..EnumerationSpec::new(n, m)
                },
                Domain::ComplementDegree(d) => {
                    if m > n * d / 2 {
                        break;
                    }
                    EnumerationSpec {
                        max_degree: *d,
                        reject_isomorphs: true,
                        ..EnumerationSpec::new(n, m)
                    }
                }
            };
            for g in all_graphs(&spec)? {
                let g = if matches!(self, Domain::ComplementDegree(_)) { g.complement() } else { g };
                if !matches!(self, Domain::All) && !g.is_connected() {
                    continue;
                }
                out.push(g);
            }
        }
        Ok(out)
    }
}

/// Largest order for scans over all (connected) graphs.
const MAX_FULL_SCAN_ORDER: usize = 7;
/// Largest order for scans over bounded-degree complements.
const MAX_SCAN_ORDER: usize = 12;

/// Checks both directions of a characterization at order `n`: every class
/// member has the value, and every scanned graph with the value is a member.
/// `k` is needed only for the general-`k` lemmas.
pub fn verify_characterization(
    which: Characterization,
    n: usize,
    k: Option<usize>,
) -> Result<Vec<CharacterizationCheck>> {
    let max = match which {
        Characterization::L3_1 | Characterization::L3_2 => MAX_FULL_SCAN_ORDER,
        _ => MAX_SCAN_ORDER,
    };
    if n > max {
        return Err(Error::TooLarge { what: "characterization scan", max, order: n });
    }
    let min = match which {
        Characterization::L3_6 => 10,
        Characterization::L3_1 => 3,
        _ => 4,
    };
    if n < min {
        return Err(Error::param(format!("{} needs n >= {min}, got {n}", which.id())));
    }
    let (k, domain, statements) = setup(which, n, k)?;
    let graphs = domain.graphs(n)?;
    let values: Vec<usize> = graphs
        .iter()
        .map(|g| global_connectivity(g, k, Mode::InternalPendant).map(|r| r.value))
        .collect::<Result<_>>()?;
    let band = if n >= which.threshold() { Band::InHypothesis } else { Band::Exploratory };
    let mut out = Vec::new();
    for st in statements {
        let mut class_size = 0;
        let mut forward = 0;
        let mut backward = 0;
        let mut counter = None;
        let _ = graphs.iter().zip(&values).try_for_each(|(g, &v)| {
            let member = (st.member)(g);
            class_size += member as u64;
            let bad = if member && v != st.value {
                forward += 1;
                true
            } else if !member && v == st.value {
                backward += 1;
                true
            } else {
                false
            };
            if bad && counter.is_none() {
                counter = encode_graph6(g).ok();
            }
            ControlFlow::<()>::Continue(())
        });
        let verdict = match (forward + backward, band) {
            (0, _) => Verdict::Confirmed,
            (_, Band::InHypothesis) => Verdict::Violated,
            (_, Band::Exploratory) => Verdict::Deviation,
        };
        out.push(CharacterizationCheck {
            id: which.id().into(),
            n,
            k,
            value: st.value,
            class: st.class,
            reading: st.reading.map(String::from),
            band,
            domain: domain.describe(),
            graphs_checked: graphs.len() as u64,
            class_size,
            forward_violations: forward,
            backward_violations: backward,
            counterexample: counter,
            verdict,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedding() {
        let c4 = generators::cycle(4).unwrap().disjoint_union(&Graph::empty(2).unwrap()).unwrap();
        let p4 = generators::path(4).unwrap().disjoint_union(&Graph::empty(2).unwrap()).unwrap();
        let k3 = generators::cycle(3).unwrap().disjoint_union(&Graph::empty(3).unwrap()).unwrap();
        assert!(embeds(&p4, &c4));
        assert!(!embeds(&c4, &p4));
        assert!(!embeds(&k3, &c4));
    }

    #[test]
    fn complete_graph_lemmas() {
        for c in verify_characterization(Characterization::L3_2, 6, None).unwrap() {
            assert_eq!(c.verdict, Verdict::Confirmed, "{c:?}");
        }
        for c in verify_characterization(Characterization::L2_5, 7, Some(3)).unwrap() {
            assert_eq!(c.verdict, Verdict::Confirmed, "{c:?}");
        }
    }

    #[test]
    fn parse_ids() {
        assert_eq!("p3.1".parse::<Characterization>().unwrap(), Characterization::P3_1);
        assert!("L9.9".parse::<Characterization>().is_err());
    }
}
