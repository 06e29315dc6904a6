use super::ast::Formula;
use crate::coloring::{Color, ColoredGraph};
use crate::graph::{Graph, GraphError, NodeId};
use crate::oracle::DEFAULT_CAP;
use rayon::prelude::*;
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("valuation has {got} entries for {expected} nodes")]
    Length { expected: usize, got: usize },
    #[error("line {line}: malformed valuation entry {text:?}; expected \"<node> <atom>...\"")]
    BadLine { line: usize, text: String },
    #[error("line {line}: node {node} out of range for {n} nodes")]
    NodeOutOfRange { line: usize, node: usize, n: usize },
    #[error("line {line}: invalid atom name {atom:?}")]
    BadAtom { line: usize, atom: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GmjlError {
    #[error("{n} nodes exceeds the enumeration cap of {cap}")]
    OverCap { n: usize, cap: usize },
    #[error("possibility needs a single atom {expected:?}; formula also uses {extra:?}")]
    MultiAtom {
        expected: String,
        extra: Vec<String>,
    },
}

/// A graph with the set of atoms true at each node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Model {
    graph: Graph,
    valuation: Vec<BTreeSet<String>>,
}

impl Model {
    pub fn new(graph: Graph, valuation: Vec<BTreeSet<String>>) -> Result<Self, ModelError> {
        if valuation.len() != graph.node_count() {
            return Err(ModelError::Length {
                expected: graph.node_count(),
                got: valuation.len(),
            });
        }
        Ok(Model { graph, valuation })
    }

    /// `atom` holds exactly at the red nodes.
    pub fn from_colored(cg: &ColoredGraph, atom: &str) -> Self {
        let valuation = cg
            .coloring()
            .colors()
            .iter()
            .map(|&c| {
                let mut s = BTreeSet::new();
                if c == Color::Red {
                    s.insert(atom.to_string());
                }
                s
            })
            .collect();
        Model {
            graph: cg.graph().clone(),
            valuation,
        }
    }

    /// Lines of `<node> <atom>...`; `#` starts a comment. Nodes not listed
    /// satisfy no atom; repeated nodes accumulate.
    pub fn parse_valuation(graph: Graph, text: &str) -> Result<Self, ModelError> {
        let n = graph.node_count();
        let mut valuation = vec![BTreeSet::new(); n];
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let l = raw.split('#').next().unwrap_or("").trim();
            if l.is_empty() {
                continue;
            }
            let mut words = l.split_whitespace();
            let node: usize =
                words
                    .next()
                    .and_then(|w| w.parse().ok())
                    .ok_or_else(|| ModelError::BadLine {
                        line,
                        text: l.to_string(),
                    })?;
            if node >= n {
                return Err(ModelError::NodeOutOfRange { line, node, n });
            }
            for atom in words {
                if !super::ast::is_valid_atom(atom) {
                    return Err(ModelError::BadAtom {
                        line,
                        atom: atom.to_string(),
                    });
                }
                valuation[node].insert(atom.to_string());
            }
        }
        Ok(Model { graph, valuation })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn valuation(&self) -> &[BTreeSet<String>] {
        &self.valuation
    }

    /// Atoms of `f` that hold nowhere in the model. They evaluate to false,
    /// which is usually a typo worth reporting.
    pub fn unknown_atoms(&self, f: &Formula) -> Vec<String> {
        f.atoms()
            .into_iter()
            .filter(|a| !self.valuation.iter().any(|s| s.contains(a)))
            .collect()
    }

    /// Truth value of `f` at every node.
    pub fn extension(&self, f: &Formula) -> Vec<bool> {
        extension(&self.graph, &f.expand(), &|p, i| {
            self.valuation[i].contains(p)
        })
    }

    pub fn check(&self, i: NodeId, f: &Formula) -> Result<bool, GraphError> {
        self.graph.check_node(i)?;
        Ok(self.extension(f)[i])
    }

    /// True iff `f` holds at every node.
    pub fn holds_everywhere(&self, f: &Formula) -> bool {
        self.extension(f).into_iter().all(|b| b)
    }
}

pub fn model_check(model: &Model, i: NodeId, f: &Formula) -> Result<bool, GraphError> {
    model.check(i, f)
}

fn count_true(v: &[bool]) -> usize {
    v.iter().filter(|&&b| b).count()
}

/// Bottom-up evaluation of a core formula.
fn extension(g: &Graph, f: &Formula, atom: &dyn Fn(&str, NodeId) -> bool) -> Vec<bool> {
    let n = g.node_count();
    let local = |a: &Formula, keep: &dyn Fn(usize, usize) -> bool| {
        let inner = extension(g, a, atom);
        g.nodes()
            .map(|i| {
                let hits = g.neighbors(i).iter().filter(|&&j| inner[j]).count();
                keep(hits, g.degree(i))
            })
            .collect()
    };
    match f {
        Formula::Atom(p) => g.nodes().map(|i| atom(p, i)).collect(),
        Formula::Not(a) => extension(g, a, atom).into_iter().map(|b| !b).collect(),
        Formula::Or(a, b) => {
            let (a, b) = (extension(g, a, atom), extension(g, b, atom));
            a.into_iter().zip(b).map(|(x, y)| x || y).collect()
        }
        Formula::Diamond(k, a) => local(a, &|hits, _| hits as u64 > *k),
        Formula::W(a) => local(a, &|hits, d| 2 * hits >= d),
        Formula::E(k, a) => {
            let holds = count_true(&extension(g, a, atom)) as u64 > *k;
            vec![holds; n]
        }
        Formula::GW(a) => {
            let holds = 2 * count_true(&extension(g, a, atom)) >= n;
            vec![holds; n]
        }
        sugar => extension(g, &sugar.expand(), atom),
    }
}

/// Whether some valuation of `atom` makes `f` true at some node, i.e. the
/// graph does not validate `~f`. Exhaustive over `2^n` valuations.
pub fn formula_possible(g: &Graph, f: &Formula, atom: &str) -> Result<bool, GmjlError> {
    formula_possible_capped(g, f, atom, DEFAULT_CAP)
}

pub fn formula_possible_capped(
    g: &Graph,
    f: &Formula,
    atom: &str,
    cap: usize,
) -> Result<bool, GmjlError> {
    let n = g.node_count();
    if n > cap.min(63) {
        return Err(GmjlError::OverCap { n, cap });
    }
    let extra: Vec<String> = f.atoms().into_iter().filter(|a| a != atom).collect();
    if !extra.is_empty() {
        return Err(GmjlError::MultiAtom {
            expected: atom.to_string(),
            extra,
        });
    }
    let core = f.expand();
    Ok((0u64..1 << n).into_par_iter().any(|mask| {
        extension(g, &core, &|_, i| mask >> i & 1 == 1)
            .into_iter()
            .any(|b| b)
    }))
}
