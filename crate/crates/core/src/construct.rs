//! Explicit k-regular graphs on n nodes carrying a majority-majority
//! illusion.
//!
//! The red class (ids `0..n_red`) is the global majority. Every red node is
//! first wired to more than `k/2` blue nodes round robin, the blue nodes are
//! topped up among themselves, and the remaining degree of each class is
//! filled with circulant subgraphs. A few repair loops then close the
//! leftover open ends, and the result is validated before it is returned.

use crate::analysis::classify_network;
use crate::coloring::{Color, ColoredGraph, Coloring};
use crate::feasibility::{regular_exists, regular_parity_obstruction, FeasibilityError, Reason};
use crate::graph::{Graph, NodeId};
use serde::Serialize;
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructError {
    #[error(transparent)]
    Arguments(#[from] FeasibilityError),
    #[error("no {k}-regular graph on {n} nodes admits a majority-majority illusion ({})",
        reasons.iter().map(|r| r.code()).collect::<Vec<_>>().join(", "))]
    Infeasible {
        n: usize,
        k: usize,
        reasons: Vec<Reason>,
    },
    #[error("no witness for n = {n}, k = {k}: all {b} blue nodes would need a regular subgraph of odd degree {d} among themselves", b = n / 2 - 1, d = n / 2 - 5)]
    ParityObstruction { n: usize, k: usize },
    #[error("fast construction needs n ≡ 2 (mod 4), n ≤ 2k − 2 and k even; got n = {n}, k = {k}")]
    FastNotApplicable { n: usize, k: usize },
    #[error("regular subgraph of degree {k_sub} on {nodes} nodes: {problem}")]
    SubgraphArguments {
        nodes: usize,
        k_sub: usize,
        problem: &'static str,
    },
    #[error("internal invariant violated in {stage}: edge ({u}, {v}) already present")]
    Collision { stage: Stage, u: NodeId, v: NodeId },
    #[error("internal invariant violated in {stage}: {message}")]
    Internal { stage: Stage, message: String },
}

impl ConstructError {
    /// Whether the error signals a defect rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            ConstructError::Collision { .. } | ConstructError::Internal { .. }
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Stage {
    InitialEdges,
    ExtraBlueEdges,
    RedSubgraph,
    BlueSubgraph,
    Bridge,
    Pairing,
    CompleteBipartite,
    Validation,
}

impl std::fmt::Display for Stage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Stage::InitialEdges => "initial red-blue edges",
            Stage::ExtraBlueEdges => "extra blue edges",
            Stage::RedSubgraph => "red subgraph",
            Stage::BlueSubgraph => "blue subgraph",
            Stage::Bridge => "odd open-end bridge",
            Stage::Pairing => "open-end pairing",
            Stage::CompleteBipartite => "complete bipartite core",
            Stage::Validation => "validation",
        })
    }
}

/// Class sizes and the intra-class degrees each class still needs after the
/// red-blue edges are in place.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ConstructionPlan {
    pub n: usize,
    pub k: usize,
    pub n_red: usize,
    pub n_blue: usize,
    pub k_red: usize,
    pub k_blue: usize,
}

impl ConstructionPlan {
    pub fn new(n: usize, k: usize) -> Self {
        let n_red = n / 2 + 1;
        let (ni, ki) = (n as i64, k as i64);
        let (k_blue, k_red) = if ni % 2 == 0 {
            if ki % 2 == 0 {
                (ki / 2 - 3, ki / 2 - 1)
            } else {
                ((ki - 5).div_euclid(2), (ki - 1) / 2)
            }
        } else {
            (ki / 2 - 2, (ki - 2) / 2)
        };
        ConstructionPlan {
            n,
            k,
            n_red,
            n_blue: n - n_red,
            k_red: k_red.max(0) as usize,
            k_blue: k_blue.max(0) as usize,
        }
    }

    pub fn red(&self) -> Vec<NodeId> {
        (0..self.n_red).collect()
    }

    pub fn blue(&self) -> Vec<NodeId> {
        (self.n_red..self.n).collect()
    }

    /// Blue neighbours each red node receives from the round robin.
    pub fn blue_per_red(&self) -> usize {
        if self.k.is_multiple_of(2) {
            (self.k + 2) / 2
        } else {
            self.k.div_ceil(2)
        }
    }
}

/// Mutable edge set used while building.
#[derive(Debug, Clone)]
pub struct PartialGraph {
    adj: Vec<BTreeSet<NodeId>>,
}

impl PartialGraph {
    pub fn new(n: usize) -> Self {
        PartialGraph {
            adj: vec![BTreeSet::new(); n],
        }
    }

    pub fn node_count(&self) -> usize {
        self.adj.len()
    }

    pub fn degree(&self, v: NodeId) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        self.adj[u].contains(&v)
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(BTreeSet::len).sum::<usize>() / 2
    }

    pub fn add_edge(&mut self, u: NodeId, v: NodeId, stage: Stage) -> Result<(), ConstructError> {
        if u == v || self.adj[u].contains(&v) {
            return Err(ConstructError::Collision { stage, u, v });
        }
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        Ok(())
    }

    pub fn to_graph(&self) -> Graph {
        Graph::from_edges(
            self.node_count(),
            self.adj
                .iter()
                .enumerate()
                .flat_map(|(u, ns)| ns.iter().filter(move |&&v| v > u).map(move |&v| (u, v))),
        )
        .expect("partial graphs are simple and non-empty")
    }

    fn open_ends(&self, nodes: &[NodeId], k: usize) -> usize {
        nodes
            .iter()
            .map(|&v| k.saturating_sub(self.degree(v)))
            .sum()
    }
}

/// Round robin of red nodes against blue nodes: the `i`-th edge joins
/// `red[i mod |R|]` to `blue[(x + i) mod |B|]`. On the first collision the
/// shift `x` is set to 1. Should the shifted pair collide as well, the scan
/// moves on to the next non-adjacent blue node and the detour is returned as a
/// deviation note.
pub fn add_initial_edges(
    g: &mut PartialGraph,
    blue: &[NodeId],
    red: &[NodeId],
    k: usize,
) -> Result<Vec<String>, ConstructError> {
    let mut deviations = Vec::new();
    if red.is_empty() || blue.is_empty() {
        return Ok(deviations);
    }
    let n_edges = if k.is_multiple_of(2) {
        red.len() * (k + 2) / 2
    } else {
        red.len() * (k + 1) / 2
    };
    let nb = blue.len();
    let mut x = 0;
    for i in 0..n_edges {
        let r = red[i % red.len()];
        let mut b = blue[(x + i) % nb];
        if g.has_edge(r, b) {
            x = 1;
            b = blue[(x + i) % nb];
            if g.has_edge(r, b) {
                let j = (0..nb)
                    .find(|j| !g.has_edge(r, blue[(x + i + j) % nb]))
                    .ok_or_else(|| ConstructError::Internal {
                        stage: Stage::InitialEdges,
                        message: format!("red node {r} is already adjacent to every blue node"),
                    })?;
                b = blue[(x + i + j) % nb];
                deviations.push(format!(
                    "round robin edge {i}: shifted pair collided, red {r} joined to next free blue {b}"
                ));
            }
        }
        g.add_edge(r, b, Stage::InitialEdges)?;
    }
    Ok(deviations)
}

/// Sorts `blue` by current degree (most missing edges first, stable), then
/// joins each node to its successor in that cyclic order when both still have
/// fewer than `k − k_blue` edges. The sorted order is left in `blue`.
pub fn add_extra_blue_edges(
    g: &mut PartialGraph,
    blue: &mut [NodeId],
    k: usize,
    k_blue: usize,
) -> Result<usize, ConstructError> {
    blue.sort_by_key(|&v| g.degree(v));
    let target = k.saturating_sub(k_blue);
    let mut added = 0;
    for idx in 0..blue.len() {
        let node = blue[idx];
        let next = blue[(idx + 1) % blue.len()];
        if next != node
            && !g.has_edge(node, next)
            && g.degree(node) < target
            && g.degree(next) < target
        {
            g.add_edge(node, next, Stage::ExtraBlueEdges)?;
            added += 1;
        }
    }
    Ok(added)
}

/// Circulant `k_sub`-regular graph on `nodes`, in list order. For an even
/// number of nodes and odd `k_sub` every node is first joined to the node
/// opposite; the remaining offsets count down from the middle of the cycle.
/// All edges are computed first and the graph is untouched on error.
pub fn add_regular_subgraph(
    g: &mut PartialGraph,
    nodes: &[NodeId],
    k_sub: usize,
    stage: Stage,
) -> Result<usize, ConstructError> {
    let m = nodes.len();
    if k_sub == 0 {
        return Ok(0);
    }
    let bad = |problem| ConstructError::SubgraphArguments {
        nodes: m,
        k_sub,
        problem,
    };
    if k_sub >= m {
        return Err(bad("degree must be below the node count"));
    }
    if m % 2 == 1 && k_sub % 2 == 1 {
        return Err(bad("odd degree on an odd number of nodes"));
    }
    let mut offsets = Vec::new();
    if m.is_multiple_of(2) {
        if k_sub % 2 == 1 {
            offsets.push(m / 2);
        }
        offsets.extend((1..=k_sub / 2).map(|i| m / 2 - i));
    } else {
        // index_start = idx + m/2 is a half integer; ceil(start − i) and
        // floor(start + i) land on the same offset (m + 1)/2 − i both ways
        offsets.extend((1..=k_sub / 2).map(|i| m.div_ceil(2) - i));
    }
    let mut edges = BTreeSet::new();
    for idx in 0..m {
        for &d in &offsets {
            let (a, b) = (nodes[idx], nodes[(idx + d) % m]);
            edges.insert((a.min(b), a.max(b)));
        }
    }
    if let Some(&(u, v)) = edges.iter().find(|&&(u, v)| g.has_edge(u, v)) {
        return Err(ConstructError::Collision { stage, u, v });
    }
    for &(u, v) in &edges {
        g.add_edge(u, v, stage)?;
    }
    Ok(edges.len())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StageReport {
    pub stage: Stage,
    pub edges_added: usize,
    pub total_edges: usize,
    pub red_open_ends: usize,
    pub blue_open_ends: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Validation {
    pub simple: bool,
    pub regular: bool,
    pub red_count: usize,
    /// Fewest blue neighbours over red nodes.
    pub min_blue_neighbours_of_red: usize,
    pub red_is_global_winner: bool,
    /// Every red node has more than `k/2` blue neighbours.
    pub reds_illusioned: bool,
    pub majority_majority: bool,
}

impl Validation {
    pub fn passed(&self) -> bool {
        self.simple
            && self.regular
            && self.red_is_global_winner
            && self.reds_illusioned
            && self.majority_majority
    }
}

/// Checks a candidate witness: k-regular, red the global majority, every red
/// node with more than `k/2` blue neighbours, and the network classified as a
/// majority-majority illusion. Simplicity is a property of [`Graph`] itself.
pub fn validate_witness(cg: &ColoredGraph, k: usize) -> Validation {
    let g = cg.graph();
    let red: Vec<NodeId> = g.nodes().filter(|&v| cg.color(v) == Color::Red).collect();
    let min_blue = red.iter().map(|&r| cg.local_counts(r).1).min().unwrap_or(0);
    Validation {
        simple: g.nodes().all(|v| !g.has_edge(v, v)),
        regular: g.regular_degree() == Some(k),
        red_count: red.len(),
        min_blue_neighbours_of_red: min_blue,
        red_is_global_winner: 2 * red.len() > g.node_count(),
        reds_illusioned: !red.is_empty() && 2 * min_blue > k,
        majority_majority: classify_network(cg).majority_majority,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConstructionReport {
    pub plan: ConstructionPlan,
    pub fast: bool,
    pub stages: Vec<StageReport>,
    pub deviations: Vec<String>,
    pub validation: Validation,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Construction {
    pub colored: ColoredGraph,
    pub report: ConstructionReport,
}

struct Recorder<'a> {
    plan: &'a ConstructionPlan,
    stages: Vec<StageReport>,
    last_edges: usize,
}

impl Recorder<'_> {
    fn record(&mut self, g: &PartialGraph, stage: Stage, red: &[NodeId], blue: &[NodeId]) {
        let total = g.edge_count();
        self.stages.push(StageReport {
            stage,
            edges_added: total - self.last_edges,
            total_edges: total,
            red_open_ends: g.open_ends(red, self.plan.k),
            blue_open_ends: g.open_ends(blue, self.plan.k),
        });
        self.last_edges = total;
    }
}

fn check_feasible(n: usize, k: usize) -> Result<(), ConstructError> {
    let verdict = regular_exists(n, k)?;
    if !verdict.possible {
        return Err(ConstructError::Infeasible {
            n,
            k,
            reasons: verdict.reasons,
        });
    }
    if regular_parity_obstruction(n, k) {
        return Err(ConstructError::ParityObstruction { n, k });
    }
    Ok(())
}

fn finish(
    g: &PartialGraph,
    plan: ConstructionPlan,
    fast: bool,
    stages: Vec<StageReport>,
    deviations: Vec<String>,
) -> Result<Construction, ConstructError> {
    let coloring = Coloring::new(
        (0..plan.n)
            .map(|v| {
                if v < plan.n_red {
                    Color::Red
                } else {
                    Color::Blue
                }
            })
            .collect(),
    );
    let colored = ColoredGraph::new(g.to_graph(), coloring).expect("one color per node");
    let validation = validate_witness(&colored, plan.k);
    if !validation.passed() {
        return Err(ConstructError::Internal {
            stage: Stage::Validation,
            message: format!(
                "witness for n = {}, k = {} failed: {validation:?}",
                plan.n, plan.k
            ),
        });
    }
    Ok(Construction {
        colored,
        report: ConstructionReport {
            plan,
            fast,
            stages,
            deviations,
            validation,
        },
    })
}

/// A k-regular graph on n nodes with a coloring under majority-majority
/// illusion.
///
/// Beyond the four building stages, two repairs close open ends: when the
/// red class has an odd number of open ends, the blue node with the fewest
/// edges is joined to the first red node that can take one more edge; then
/// every node still short of `k` is paired with the first node of its own
/// color that is non-adjacent and also short.
pub fn construct_regular_illusion(n: usize, k: usize) -> Result<Construction, ConstructError> {
    check_feasible(n, k)?;
    let plan = ConstructionPlan::new(n, k);
    let red = plan.red();
    let mut blue = plan.blue();
    let mut g = PartialGraph::new(n);
    let mut rec = Recorder {
        plan: &plan,
        stages: Vec::new(),
        last_edges: 0,
    };

    let deviations = add_initial_edges(&mut g, &blue, &red, k)?;
    rec.record(&g, Stage::InitialEdges, &red, &blue);

    add_extra_blue_edges(&mut g, &mut blue, k, plan.k_blue)?;
    rec.record(&g, Stage::ExtraBlueEdges, &red, &blue);

    // A class whose size and residual degree are both odd gets one degree
    // less; its open ends are closed by the repairs below.
    for (nodes, k_c, stage) in [
        (&red, plan.k_red, Stage::RedSubgraph),
        (&blue, plan.k_blue, Stage::BlueSubgraph),
    ] {
        let k_sub = if k_c % 2 == 1 && nodes.len() % 2 == 1 {
            k_c - 1
        } else {
            k_c
        };
        add_regular_subgraph(&mut g, nodes, k_sub, stage)?;
        rec.record(&g, stage, &red, &blue);
    }

    if g.open_ends(&red, k) % 2 == 1 {
        let b1 = *blue
            .iter()
            .min_by_key(|&&v| g.degree(v))
            .expect("blue class is non-empty");
        let partner = red
            .iter()
            .copied()
            .find(|&r| !g.has_edge(b1, r) && g.degree(r) < k)
            .filter(|_| g.degree(b1) < k)
            .ok_or_else(|| ConstructError::Internal {
                stage: Stage::Bridge,
                message: format!("no red node can absorb an open end of blue node {b1}"),
            })?;
        g.add_edge(b1, partner, Stage::Bridge)?;
        rec.record(&g, Stage::Bridge, &red, &blue);
    }

    for class in [&blue, &red] {
        for &node in class.iter() {
            if g.degree(node) < k {
                let partner = class
                    .iter()
                    .copied()
                    .find(|&v| v != node && !g.has_edge(node, v) && g.degree(v) < k);
                if let Some(v) = partner {
                    g.add_edge(node, v, Stage::Pairing)?;
                }
            }
        }
    }
    rec.record(&g, Stage::Pairing, &red, &blue);

    let stages = rec.stages;
    finish(&g, plan, false, stages, deviations)
}

/// Shortcut for `n ≡ 2 (mod 4)`, `n ≤ 2k − 2`, `k` even: every red node is
/// joined to every blue node, then each class is completed with a circulant
/// subgraph of degree `k − n/2 + 1` (red) and `k − n/2 − 1` (blue).
pub fn fast_construct(n: usize, k: usize) -> Result<Construction, ConstructError> {
    if n % 4 != 2 || n + 2 > 2 * k || k % 2 == 1 {
        return Err(ConstructError::FastNotApplicable { n, k });
    }
    check_feasible(n, k)?;
    let plan = ConstructionPlan::new(n, k);
    let (red, blue) = (plan.red(), plan.blue());
    let mut g = PartialGraph::new(n);
    let mut rec = Recorder {
        plan: &plan,
        stages: Vec::new(),
        last_edges: 0,
    };
    for &r in &red {
        for &b in &blue {
            g.add_edge(r, b, Stage::CompleteBipartite)?;
        }
    }
    rec.record(&g, Stage::CompleteBipartite, &red, &blue);
    add_regular_subgraph(&mut g, &red, k + 1 - n / 2, Stage::RedSubgraph)?;
    rec.record(&g, Stage::RedSubgraph, &red, &blue);
    add_regular_subgraph(&mut g, &blue, k - 1 - n / 2, Stage::BlueSubgraph)?;
    rec.record(&g, Stage::BlueSubgraph, &red, &blue);
    let stages = rec.stages;
    finish(&g, plan, true, stages, Vec::new())
}
