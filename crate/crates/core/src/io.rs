//! graph6 and edge-list formats, graph6 streams, and line-oriented reports.

use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::graph::{edge_index, Graph};

/// Largest order the short graph6 header can express.
pub const GRAPH6_MAX_ORDER: usize = 62;

pub fn encode_graph6(g: &Graph) -> Result<String> {
    let n = g.order();
    if n > GRAPH6_MAX_ORDER {
        return Err(Error::TooLarge { what: "graph6", max: GRAPH6_MAX_ORDER, order: n });
    }
    let bits = n * (n - 1) / 2;
    let mut out = String::with_capacity(1 + bits.div_ceil(6));
    out.push((n as u8 + 63) as char);
    let mut chunk = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            chunk = chunk << 1 | u8::from(g.has_edge(i, j));
            filled += 1;
            if filled == 6 {
                out.push((chunk + 63) as char);
                chunk = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(((chunk << (6 - filled)) + 63) as char);
    }
    Ok(out)
}

fn g6_error(offset: usize, message: impl Into<String>) -> Error {
    Error::parse(format!("byte {offset}"), message)
}

pub fn decode_graph6(text: &str) -> Result<Graph> {
    let text = text.strip_suffix('\n').unwrap_or(text);
    let text = text.strip_suffix('\r').unwrap_or(text);
    let bytes = text.as_bytes();
    let Some(&head) = bytes.first() else {
        return Err(g6_error(0, "empty graph6 string"));
    };
    if head == b'~' {
        return Err(g6_error(0, "long-form graph6 headers (n > 62) are not supported"));
    }
    if !(63..=125).contains(&head) {
        return Err(g6_error(0, format!("invalid order byte {head}")));
    }
    let n = (head - 63) as usize;
    if n == 0 {
        return Err(g6_error(0, "graphs of order 0 are not supported"));
    }
    let bits = n * (n - 1) / 2;
    let expected = 1 + bits.div_ceil(6);
    if bytes.len() != expected {
        return Err(g6_error(
            bytes.len().min(expected),
            format!("expected {expected} bytes for order {n}, found {}", bytes.len()),
        ));
    }
    let mut g = Graph::empty(n)?;
    for (pos, &b) in bytes.iter().enumerate().skip(1) {
        if !(63..=126).contains(&b) {
            return Err(g6_error(pos, format!("byte {b} is outside the printable range 63..=126")));
        }
        let value = b - 63;
        for bit in 0..6 {
            let idx = (pos - 1) * 6 + bit;
            let set = value >> (5 - bit) & 1 == 1;
            if idx >= bits {
                if set {
                    return Err(g6_error(pos, "nonzero padding bits"));
                }
                continue;
            }
            if set {
                let (u, v) = crate::graph::edge_at(idx);
                debug_assert_eq!(edge_index(u, v), idx);
                g.add_edge(u, v)?;
            }
        }
    }
    Ok(g)
}

fn line_error(line: usize, message: impl Into<String>) -> Error {
    Error::parse(format!("line {line}"), message)
}

/// Parses `n` followed by whitespace-separated vertex pairs. Text after `#`
/// on a line is ignored.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut tokens = text.lines().enumerate().flat_map(|(i, line)| {
        let body = line.split('#').next().unwrap_or("");
        body.split_whitespace().map(move |t| (i + 1, t))
    });
    let number = |(line, tok): (usize, &str)| -> Result<usize> {
        tok.parse()
            .map_err(|_| line_error(line, format!("'{tok}' is not a non-negative integer")))
    };
    let first = tokens.next().ok_or_else(|| line_error(1, "missing vertex count"))?;
    let n = number(first)?;
    let mut g = Graph::empty(n).map_err(|e| line_error(first.0, e.to_string()))?;
    while let Some(a) = tokens.next() {
        let u = number(a)?;
        let b = tokens
            .next()
            .ok_or_else(|| line_error(a.0, format!("vertex {u} has no partner")))?;
        let v = number(b)?;
        g.add_edge(u, v).map_err(|e| line_error(b.0, e.to_string()))?;
    }
    Ok(g)
}

pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("{}\n", g.order());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

/// What to do with a malformed line in a graph6 stream.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OnError {
    /// Record a warning and continue.
    Skip,
    /// Yield the error and stop.
    Fail,
}

/// Iterator over the graphs of a graph6 file, one per line.
pub struct Graph6Stream<R, F> {
    reader: R,
    filter: F,
    on_error: OnError,
    line: usize,
    done: bool,
    warnings: Vec<(usize, Error)>,
}

impl<R, F> Graph6Stream<R, F> {
    /// Malformed lines skipped so far, with their 1-based line numbers.
    pub fn warnings(&self) -> &[(usize, Error)] {
        &self.warnings
    }
}

pub fn ingest_graph6_stream<R: BufRead, F: FnMut(&Graph) -> bool>(
    reader: R,
    filter: F,
    on_error: OnError,
) -> Graph6Stream<R, F> {
    Graph6Stream { reader, filter, on_error, line: 0, done: false, warnings: Vec::new() }
}

impl<R: BufRead, F: FnMut(&Graph) -> bool> Iterator for Graph6Stream<R, F> {
    type Item = Result<Graph>;

    fn next(&mut self) -> Option<Result<Graph>> {
        let mut buf = String::new();
        while !self.done {
            buf.clear();
            match self.reader.read_line(&mut buf) {
                Ok(0) => self.done = true,
                Ok(_) => {
                    self.line += 1;
                    let text = buf.trim_end_matches(['\n', '\r']);
                    let text = text.strip_prefix(">>graph6<<").unwrap_or(text);
                    if text.trim().is_empty() {
                        continue;
                    }
                    match decode_graph6(text) {
                        Ok(g) if (self.filter)(&g) => return Some(Ok(g)),
                        Ok(_) => {}
                        Err(e) => {
                            let e = Error::parse(format!("line {}", self.line), e.to_string());
                            match self.on_error {
                                OnError::Skip => self.warnings.push((self.line, e)),
                                OnError::Fail => {
                                    self.done = true;
                                    return Some(Err(e));
                                }
                            }
                        }
                    }
                }
                Err(e) => {
                    self.done = true;
                    return Some(Err(e.into()));
                }
            }
        }
        None
    }
}

/// One line of a run report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportRecord {
    pub operation: String,
    pub inputs: Value,
    pub outputs: Value,
    /// Witness graphs or packings referenced by the outputs, in graph6 where
    /// applicable.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exhaustive: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl ReportRecord {
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report records always serialize")
    }

    pub fn from_json_line(line: &str) -> Result<Self> {
        serde_json::from_str(line).map_err(|e| Error::parse(format!("column {}", e.column()), e.to_string()))
    }
}

/// Writes any serializable records as JSON lines.
pub fn write_json_lines<W: Write, T: Serialize>(mut out: W, records: &[T]) -> Result<()> {
    for r in records {
        serde_json::to_writer(&mut out, r).map_err(|e| Error::Io(e.to_string()))?;
        out.write_all(b"\n")?;
    }
    Ok(())
}

/// One row of the extremal summary table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub n: usize,
    pub k: usize,
    pub l: usize,
    pub f: Option<usize>,
    pub lower_bound: usize,
    pub upper_bound: Option<usize>,
    pub exhaustive: bool,
}

pub fn write_summary_csv<W: Write>(out: W, rows: &[SummaryRow]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row).map_err(|e| Error::Io(e.to_string()))?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_summary_csv<R: std::io::Read>(input: R) -> Result<Vec<SummaryRow>> {
    let mut r = csv::Reader::from_reader(input);
    r.deserialize()
        .enumerate()
        .map(|(i, row)| row.map_err(|e| Error::parse(format!("row {}", i + 1), e.to_string())))
        .collect()
}
