//! Plain-text edge-list format.
//!
//! ```text
//! # optional comments
//! n 4
//! colors RBRB
//! 0 1
//! 1 2
//! ```
//!
//! The `colors` line is optional and must directly follow the header. Writing
//! emits edges as `u v` with `u < v` in lexicographic order, so a written file
//! parses back to the same graph and re-writes to the same bytes.

use crate::coloring::{ColoredGraph, Coloring, ParseColoringError};
use crate::graph::{Graph, GraphError};
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("missing \"n <count>\" header")]
    MissingHeader,
    #[error("line {line}: malformed header {text:?}; expected \"n <count>\"")]
    BadHeader { line: usize, text: String },
    #[error("line {line}: {source}")]
    BadColors {
        line: usize,
        source: ParseColoringError,
    },
    #[error("line {line}: colors line has {got} entries for {expected} nodes")]
    ColorCount {
        line: usize,
        expected: usize,
        got: usize,
    },
    #[error("line {line}: malformed edge {text:?}; expected \"u v\"")]
    BadEdge { line: usize, text: String },
    #[error("line {line}: {source}")]
    Graph { line: usize, source: GraphError },
    #[error("graph has no coloring")]
    Uncolored,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphFile {
    pub graph: Graph,
    pub coloring: Option<Coloring>,
}

impl GraphFile {
    pub fn into_colored(self) -> Result<ColoredGraph, FormatError> {
        let coloring = self.coloring.ok_or(FormatError::Uncolored)?;
        Ok(ColoredGraph::new(self.graph, coloring).expect("parser checks the color count"))
    }
}

pub fn parse_graph(text: &str) -> Result<GraphFile, FormatError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
        .peekable();

    let (line, header) = lines.next().ok_or(FormatError::MissingHeader)?;
    let bad_header = || FormatError::BadHeader {
        line,
        text: header.to_string(),
    };
    let n: usize = match header.split_whitespace().collect::<Vec<_>>()[..] {
        ["n", count] => count.parse().map_err(|_| bad_header())?,
        _ => return Err(bad_header()),
    };

    let mut coloring = None;
    if let Some(&(line, l)) = lines.peek() {
        if let Some(rest) = l.strip_prefix("colors") {
            lines.next();
            let c: Coloring = rest
                .trim()
                .parse()
                .map_err(|source| FormatError::BadColors { line, source })?;
            if c.len() != n {
                return Err(FormatError::ColorCount {
                    line,
                    expected: n,
                    got: c.len(),
                });
            }
            coloring = Some(c);
        }
    }

    let mut edges = Vec::new();
    for (line, l) in lines {
        let bad = || FormatError::BadEdge {
            line,
            text: l.to_string(),
        };
        let (u, v) = match l.split_whitespace().collect::<Vec<_>>()[..] {
            [u, v] => (u.parse().map_err(|_| bad())?, v.parse().map_err(|_| bad())?),
            _ => return Err(bad()),
        };
        // Validate per line so errors point at the offending pair.
        if u >= n || v >= n {
            return Err(FormatError::Graph {
                line,
                source: GraphError::EdgeOutOfRange { u, v, n },
            });
        }
        if u == v {
            return Err(FormatError::Graph {
                line,
                source: GraphError::SelfLoop { u },
            });
        }
        edges.push((u, v));
    }
    let graph = Graph::new(n, &edges).map_err(|source| FormatError::Graph { line, source })?;
    Ok(GraphFile { graph, coloring })
}

pub fn write_graph(g: &Graph, coloring: Option<&Coloring>) -> String {
    let mut out = String::new();
    writeln!(out, "n {}", g.node_count()).unwrap();
    if let Some(c) = coloring {
        writeln!(out, "colors {c}").unwrap();
    }
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

pub fn write_colored(cg: &ColoredGraph) -> String {
    write_graph(cg.graph(), Some(cg.coloring()))
}
