use std::fs;
use std::path::Path;

use pendant_core::generators::GeneratorSpec;
use pendant_core::io::{decode_graph6, parse_edge_list};
use pendant_core::{Error, Graph, Result};

/// Text formats a graph can be read from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Auto,
    Graph6,
    Edgelist,
}

/// A lone integer on the first meaningful line means an edge list.
fn looks_like_edge_list(text: &str) -> bool {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty())
        .is_some_and(|l| l.parse::<usize>().is_ok())
}

/// All graphs in `text`: one edge list, or one graph6 string per line.
pub fn parse_graphs(text: &str, format: Format) -> Result<Vec<Graph>> {
    let edge_list = match format {
        Format::Auto => looks_like_edge_list(text),
        Format::Graph6 => false,
        Format::Edgelist => true,
    };
    if edge_list {
        return Ok(vec![parse_edge_list(text)?]);
    }
    text.lines()
        .enumerate()
        .map(|(i, l)| (i, l.trim()))
        .filter(|(_, l)| !l.is_empty())
        .map(|(i, l)| {
            let l = l.strip_prefix(">>graph6<<").unwrap_or(l);
            decode_graph6(l).map_err(|e| Error::Parse { location: format!("line {}", i + 1), message: e.to_string() })
        })
        .collect()
}

/// A graph from a generator spec or a file holding exactly one graph.
pub fn load(source: &str) -> Result<Graph> {
    let path = Path::new(source);
    if path.is_file() {
        let text = fs::read_to_string(path)?;
        let mut graphs = parse_graphs(&text, Format::Auto)?;
        return match graphs.len() {
            1 => Ok(graphs.remove(0)),
            0 => Err(Error::InvalidParameter(format!("{source} holds no graph"))),
            n => Err(Error::InvalidParameter(format!("{source} holds {n} graphs, expected one"))),
        };
    }
    match source.parse::<GeneratorSpec>() {
        Ok(spec) => spec.build(),
        Err(e) => Err(Error::InvalidParameter(format!(
            "{source:?} is neither a readable file nor a generator spec ({e})"
        ))),
    }
}

/// Comma-separated vertex list such as `0,1,2`.
pub fn parse_terminals(text: &str) -> Result<Vec<usize>> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| Error::InvalidParameter(format!("bad vertex {t:?} in terminal list")))
        })
        .collect()
}
