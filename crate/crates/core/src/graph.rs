//! Simple undirected graphs over dense node ids `0..n`.

use serde::Serialize;
use std::collections::BTreeSet;
use thiserror::Error;

pub type NodeId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("a graph needs at least one node")]
    Empty,
    #[error("edge ({u}, {v}) references a node outside 0..{n}")]
    EdgeOutOfRange { u: NodeId, v: NodeId, n: usize },
    #[error("edge ({u}, {u}) is a self-loop")]
    SelfLoop { u: NodeId },
    #[error("node {node} is outside 0..{n}")]
    NodeOutOfRange { node: NodeId, n: usize },
    #[error("{generator}: {message}")]
    InvalidParameter {
        generator: &'static str,
        message: String,
    },
}

/// Irreflexive, symmetric, duplicate-free adjacency lists. Neighbor lists are
/// kept sorted so that iteration order (and therefore every algorithm built on
/// top) is deterministic.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Graph {
    adjacency: Vec<Vec<NodeId>>,
}

impl Graph {
    /// Builds a graph from an edge list. Duplicate pairs (in either
    /// orientation) collapse to a single edge.
    pub fn new(n: usize, edges: &[(NodeId, NodeId)]) -> Result<Self, GraphError> {
        Self::from_edges(n, edges.iter().copied())
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (NodeId, NodeId)>,
    {
        if n == 0 {
            return Err(GraphError::Empty);
        }
        let mut sets = vec![BTreeSet::new(); n];
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(GraphError::EdgeOutOfRange { u, v, n });
            }
            if u == v {
                return Err(GraphError::SelfLoop { u });
            }
            sets[u].insert(v);
            sets[v].insert(u);
        }
        Ok(Graph {
            adjacency: sets.into_iter().map(|s| s.into_iter().collect()).collect(),
        })
    }

    pub fn empty(n: usize) -> Result<Self, GraphError> {
        Self::from_edges(n, std::iter::empty())
    }

    pub fn node_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn nodes(&self) -> std::ops::Range<NodeId> {
        0..self.adjacency.len()
    }

    /// Neighbors of `i` in ascending order. Panics if `i` is out of range.
    pub fn neighbors(&self, i: NodeId) -> &[NodeId] {
        &self.adjacency[i]
    }

    /// Degree of `i`. Panics if `i` is out of range.
    pub fn degree(&self, i: NodeId) -> usize {
        self.adjacency[i].len()
    }

    pub fn checked_neighbors(&self, i: NodeId) -> Result<&[NodeId], GraphError> {
        self.check_node(i)?;
        Ok(&self.adjacency[i])
    }

    pub fn checked_degree(&self, i: NodeId) -> Result<usize, GraphError> {
        self.check_node(i)?;
        Ok(self.adjacency[i].len())
    }

    pub fn check_node(&self, i: NodeId) -> Result<(), GraphError> {
        if i < self.node_count() {
            Ok(())
        } else {
            Err(GraphError::NodeOutOfRange {
                node: i,
                n: self.node_count(),
            })
        }
    }

    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        u < self.node_count() && self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Every edge once, as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adjacency.iter().map(Vec::len).collect()
    }

    /// `Some(k)` if every node has degree `k`.
    pub fn regular_degree(&self) -> Option<usize> {
        let k = self.degree(0);
        self.adjacency.iter().all(|ns| ns.len() == k).then_some(k)
    }

    pub fn is_complete(&self) -> bool {
        self.regular_degree() == Some(self.node_count() - 1)
    }

    pub fn all_degrees_odd(&self) -> bool {
        self.adjacency.iter().all(|ns| ns.len() % 2 == 1)
    }

    pub fn isolated_nodes(&self) -> Vec<NodeId> {
        self.nodes().filter(|&i| self.degree(i) == 0).collect()
    }

    pub fn is_connected(&self) -> bool {
        let n = self.node_count();
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &v in &self.adjacency[u] {
                if !seen[v] {
                    seen[v] = true;
                    count += 1;
                    stack.push(v);
                }
            }
        }
        count == n
    }
}

pub fn cycle_graph(n: usize) -> Result<Graph, GraphError> {
    if n < 3 {
        return Err(GraphError::InvalidParameter {
            generator: "cycle",
            message: format!("needs at least 3 nodes, got {n}"),
        });
    }
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
}

pub fn complete_graph(n: usize) -> Result<Graph, GraphError> {
    Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
}

pub fn path_graph(n: usize) -> Result<Graph, GraphError> {
    Graph::from_edges(n, (1..n).map(|i| (i - 1, i)))
}

/// Complete bipartite graph with parts `0..a` and `a..a+b`.
pub fn complete_bipartite_graph(a: usize, b: usize) -> Result<Graph, GraphError> {
    Graph::from_edges(a + b, (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v))))
}

/// Connects every `i` to `i ± d (mod n)` for each offset `d`. The offset
/// `n/2` (for even `n`) contributes a single antipodal edge per node.
pub fn circulant_graph(n: usize, offsets: &[usize]) -> Result<Graph, GraphError> {
    if offsets.is_empty() {
        return Err(GraphError::InvalidParameter {
            generator: "circulant",
            message: "offset set is empty".into(),
        });
    }
    if let Some(&d) = offsets.iter().find(|&&d| d == 0 || d > n / 2) {
        return Err(GraphError::InvalidParameter {
            generator: "circulant",
            message: format!("offset {d} outside [1, {}]", n / 2),
        });
    }
    Graph::from_edges(
        n,
        (0..n).flat_map(|i| offsets.iter().map(move |&d| (i, (i + d) % n))),
    )
}
