//! Two-colorings, majority winners and the constructive coloring procedures:
//! monochromatic-edge descent, the majority-weak-majority illusion coloring,
//! proper 2-coloring and the single-node swap upgrades.

use crate::analysis::{classify_network, IllusionLevel};
use crate::graph::{Graph, NodeId};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Red,
    Blue,
}

impl Color {
    pub fn swap(self) -> Color {
        match self {
            Color::Red => Color::Blue,
            Color::Blue => Color::Red,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Color::Red => 'R',
            Color::Blue => 'B',
        }
    }

    pub fn from_char(c: char) -> Option<Color> {
        match c {
            'R' => Some(Color::Red),
            'B' => Some(Color::Blue),
            _ => None,
        }
    }
}

impl std::ops::Not for Color {
    type Output = Color;
    fn not(self) -> Color {
        self.swap()
    }
}

/// Majority winner of a set of colored nodes: a color held by strictly more
/// than half of the set, or `Tie`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Winner {
    Red,
    Blue,
    Tie,
}

impl Winner {
    /// Exact integer comparison `2 * count > size`; the empty set is a tie.
    pub fn from_counts(red: usize, blue: usize) -> Winner {
        let size = red + blue;
        if 2 * red > size {
            Winner::Red
        } else if 2 * blue > size {
            Winner::Blue
        } else {
            Winner::Tie
        }
    }

    pub fn color(self) -> Option<Color> {
        match self {
            Winner::Red => Some(Color::Red),
            Winner::Blue => Some(Color::Blue),
            Winner::Tie => None,
        }
    }

    pub fn swap(self) -> Winner {
        match self {
            Winner::Red => Winner::Blue,
            Winner::Blue => Winner::Red,
            Winner::Tie => Winner::Tie,
        }
    }

    pub fn is_tie(self) -> bool {
        self == Winner::Tie
    }
}

impl From<Color> for Winner {
    fn from(c: Color) -> Winner {
        match c {
            Color::Red => Winner::Red,
            Color::Blue => Winner::Blue,
        }
    }
}

impl fmt::Display for Winner {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Winner::Red => "red",
            Winner::Blue => "blue",
            Winner::Tie => "tie",
        })
    }
}

pub fn majority_winner<I: IntoIterator<Item = Color>>(colors: I) -> Winner {
    let (mut red, mut blue) = (0, 0);
    for c in colors {
        match c {
            Color::Red => red += 1,
            Color::Blue => blue += 1,
        }
    }
    Winner::from_counts(red, blue)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Coloring(Vec<Color>);

impl Coloring {
    pub fn new(colors: Vec<Color>) -> Self {
        Coloring(colors)
    }

    pub fn uniform(n: usize, color: Color) -> Self {
        Coloring(vec![color; n])
    }

    /// Independent fair coin per node, reproducible from `seed`.
    pub fn random(n: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Coloring(
            (0..n)
                .map(|_| {
                    if rng.gen_bool(0.5) {
                        Color::Red
                    } else {
                        Color::Blue
                    }
                })
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: NodeId) -> Color {
        self.0[i]
    }

    pub fn set(&mut self, i: NodeId, c: Color) {
        self.0[i] = c;
    }

    pub fn flip(&mut self, i: NodeId) {
        self.0[i] = self.0[i].swap();
    }

    pub fn colors(&self) -> &[Color] {
        &self.0
    }

    pub fn count(&self, c: Color) -> usize {
        self.0.iter().filter(|&&x| x == c).count()
    }

    /// Every node's color swapped.
    pub fn inverted(&self) -> Coloring {
        Coloring(self.0.iter().map(|c| c.swap()).collect())
    }
}

impl fmt::Display for Coloring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.0 {
            write!(f, "{}", c.as_char())?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid color {found:?} at position {position}; expected 'R' or 'B'")]
pub struct ParseColoringError {
    pub position: usize,
    pub found: char,
}

impl FromStr for Coloring {
    type Err = ParseColoringError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars()
            .enumerate()
            .map(|(position, found)| {
                Color::from_char(found).ok_or(ParseColoringError { position, found })
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Coloring)
    }
}

impl Serialize for Coloring {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColoringError {
    #[error("coloring has {got} entries but the graph has {expected} nodes")]
    LengthMismatch { expected: usize, got: usize },
    #[error("precondition failed: node {node} has even degree {degree}")]
    EvenDegree { node: NodeId, degree: usize },
    #[error("precondition failed: node {node} has more monochromatic than dichromatic edges")]
    NotWeakMajority { node: NodeId },
    #[error("precondition failed: global winner is {0}, not a tie")]
    GlobalNotTie(Winner),
    #[error("internal invariant violated: {0}")]
    InternalInvariant(String),
}

/// A graph together with a total 2-coloring of its nodes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoredGraph {
    graph: Graph,
    coloring: Coloring,
}

impl ColoredGraph {
    pub fn new(graph: Graph, coloring: Coloring) -> Result<Self, ColoringError> {
        if coloring.len() != graph.node_count() {
            return Err(ColoringError::LengthMismatch {
                expected: graph.node_count(),
                got: coloring.len(),
            });
        }
        Ok(ColoredGraph { graph, coloring })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn coloring(&self) -> &Coloring {
        &self.coloring
    }

    pub fn into_parts(self) -> (Graph, Coloring) {
        (self.graph, self.coloring)
    }

    pub fn node_count(&self) -> usize {
        self.graph.node_count()
    }

    pub fn color(&self, i: NodeId) -> Color {
        self.coloring.get(i)
    }

    pub fn flip(&mut self, i: NodeId) {
        self.coloring.flip(i);
    }

    pub fn inverted(&self) -> ColoredGraph {
        ColoredGraph {
            graph: self.graph.clone(),
            coloring: self.coloring.inverted(),
        }
    }

    /// `(red, blue)` counts among the neighbors of `i`.
    pub fn local_counts(&self, i: NodeId) -> (usize, usize) {
        let red = self
            .graph
            .neighbors(i)
            .iter()
            .filter(|&&j| self.coloring.get(j) == Color::Red)
            .count();
        (red, self.graph.degree(i) - red)
    }

    pub fn global_counts(&self) -> (usize, usize) {
        let red = self.coloring.count(Color::Red);
        (red, self.node_count() - red)
    }

    pub fn local_winner(&self, i: NodeId) -> Winner {
        let (r, b) = self.local_counts(i);
        Winner::from_counts(r, b)
    }

    pub fn global_winner(&self) -> Winner {
        let (r, b) = self.global_counts();
        Winner::from_counts(r, b)
    }

    /// Neighbors of `i` sharing its color.
    pub fn monochromatic_degree(&self, i: NodeId) -> usize {
        let own = self.coloring.get(i);
        self.graph
            .neighbors(i)
            .iter()
            .filter(|&&j| self.coloring.get(j) == own)
            .count()
    }

    /// `(monochromatic, dichromatic)` edge counts.
    pub fn monochromatic_count(&self) -> (usize, usize) {
        let mono = self
            .graph
            .edges()
            .filter(|&(u, v)| self.coloring.get(u) == self.coloring.get(v))
            .count();
        (mono, self.graph.edge_count() - mono)
    }

    /// First node (by id) with strictly more monochromatic than dichromatic
    /// edges, if any.
    pub fn weak_majority_violation(&self) -> Option<NodeId> {
        self.graph
            .nodes()
            .find(|&i| 2 * self.monochromatic_degree(i) > self.graph.degree(i))
    }

    pub fn is_weak_majority_coloring(&self) -> bool {
        self.weak_majority_violation().is_none()
    }
}

pub fn monochromatic_count(cg: &ColoredGraph) -> (usize, usize) {
    cg.monochromatic_count()
}

/// Result of the monochromatic-edge descent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeakMajorityRun {
    pub colored: ColoredGraph,
    pub swaps: usize,
    /// Total monochromatic edges before the first swap and after every swap.
    pub monochromatic_trace: Vec<usize>,
}

/// Repeatedly flips the lowest-id node having more monochromatic than
/// dichromatic edges until none is left. Each flip lowers the total number of
/// monochromatic edges, so at most `|E|` flips happen.
pub fn weak_majority_2_coloring(initial: ColoredGraph) -> WeakMajorityRun {
    let (graph, mut coloring) = initial.into_parts();
    let n = graph.node_count();
    let mut mono: Vec<usize> = (0..n)
        .map(|i| {
            graph
                .neighbors(i)
                .iter()
                .filter(|&&j| coloring.get(j) == coloring.get(i))
                .count()
        })
        .collect();
    let mut violating: BTreeSet<NodeId> =
        (0..n).filter(|&i| 2 * mono[i] > graph.degree(i)).collect();
    let mut total = mono.iter().sum::<usize>() / 2;
    let mut trace = vec![total];
    let mut swaps = 0;

    while let Some(i) = violating.pop_first() {
        let old_color = coloring.get(i);
        coloring.flip(i);
        let d = graph.degree(i);
        total = total - mono[i] + (d - mono[i]);
        mono[i] = d - mono[i];
        for &j in graph.neighbors(i) {
            if coloring.get(j) == old_color {
                mono[j] -= 1;
            } else {
                mono[j] += 1;
            }
            if 2 * mono[j] > graph.degree(j) {
                violating.insert(j);
            } else {
                violating.remove(&j);
            }
        }
        swaps += 1;
        trace.push(total);
    }

    WeakMajorityRun {
        colored: ColoredGraph { graph, coloring },
        swaps,
        monochromatic_trace: trace,
    }
}

/// A coloring witnessing a majority-weak-majority illusion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IllusionColoring {
    pub colored: ColoredGraph,
    pub swaps: usize,
    /// Tie-resolving single-node flips, in order.
    pub tie_flips: Vec<NodeId>,
}

/// Weak majority 2-coloring from the all-red start, then the tie case
/// analysis: when the global vote ties and at most half the agents see a
/// local majority, flip the lowest-id node whose neighborhood ties.
///
/// The descent only reaches a local minimum of monochromatic edges, so after
/// such a flip a neighbor of the flipped node may end up with more
/// monochromatic than dichromatic edges. In that case the descent resumes;
/// the flip itself keeps the monochromatic total unchanged and the descent
/// strictly lowers it, so the loop terminates.
pub fn illusion_coloring(g: &Graph) -> Result<IllusionColoring, ColoringError> {
    let n = g.node_count();
    let mut current = ColoredGraph {
        graph: g.clone(),
        coloring: Coloring::uniform(n, Color::Red),
    };
    let mut swaps = 0;
    let mut tie_flips = Vec::new();
    loop {
        let run = weak_majority_2_coloring(current);
        swaps += run.swaps;
        current = run.colored;
        if !current.global_winner().is_tie() {
            break;
        }
        let local_majorities = g
            .nodes()
            .filter(|&i| !current.local_winner(i).is_tie())
            .count();
        if 2 * local_majorities > n {
            break;
        }
        let j = g
            .nodes()
            .find(|&i| current.local_winner(i).is_tie())
            .ok_or_else(|| {
                ColoringError::InternalInvariant(
                    "global tie but no node with a tied neighborhood".into(),
                )
            })?;
        current.flip(j);
        tie_flips.push(j);
        if current.is_weak_majority_coloring() {
            break;
        }
    }

    let report = classify_network(&current);
    if !report.majority_weak_majority {
        return Err(ColoringError::InternalInvariant(format!(
            "coloring {} is not a majority-weak-majority illusion",
            current.coloring
        )));
    }
    Ok(IllusionColoring {
        colored: current,
        swaps,
        tie_flips,
    })
}

/// Breadth-first 2-coloring from the lowest-id node of each component, roots
/// colored red. `None` if the graph has an odd cycle.
pub fn proper_2_coloring(g: &Graph) -> Option<Coloring> {
    let n = g.node_count();
    let mut colors: Vec<Option<Color>> = vec![None; n];
    let mut queue = VecDeque::new();
    for root in 0..n {
        if colors[root].is_some() {
            continue;
        }
        colors[root] = Some(Color::Red);
        queue.push_back(root);
        while let Some(u) = queue.pop_front() {
            let cu = colors[u].expect("queued nodes are colored");
            for &v in g.neighbors(u) {
                match colors[v] {
                    None => {
                        colors[v] = Some(cu.swap());
                        queue.push_back(v);
                    }
                    Some(cv) if cv == cu => return None,
                    Some(_) => {}
                }
            }
        }
    }
    Some(Coloring(colors.into_iter().map(Option::unwrap).collect()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum StrictIllusionUnavailable {
    #[error("graph is not properly 2-colorable")]
    NotBipartite,
    #[error("node {0} is isolated; every agent must see a strict local majority")]
    IsolatedNode(NodeId),
    #[error("global tie and no node whose neighbors all have degree > 2")]
    NoQualifyingNode,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrictIllusion {
    pub colored: ColoredGraph,
    /// Node whose color was flipped to break a global tie.
    pub flipped: Option<NodeId>,
}

/// Strict illusion from a proper 2-coloring: a majority-majority illusion if
/// the proper coloring has a global winner, otherwise a weak-majority-majority
/// illusion obtained by flipping one node whose neighbors all have degree > 2.
pub fn strict_illusion_from_proper(g: &Graph) -> Result<StrictIllusion, StrictIllusionUnavailable> {
    let coloring = proper_2_coloring(g).ok_or(StrictIllusionUnavailable::NotBipartite)?;
    if let Some(&i) = g.isolated_nodes().first() {
        return Err(StrictIllusionUnavailable::IsolatedNode(i));
    }
    let mut colored = ColoredGraph {
        graph: g.clone(),
        coloring,
    };
    if !colored.global_winner().is_tie() {
        return Ok(StrictIllusion {
            colored,
            flipped: None,
        });
    }
    let i = g
        .nodes()
        .find(|&i| g.neighbors(i).iter().all(|&j| g.degree(j) > 2))
        .ok_or(StrictIllusionUnavailable::NoQualifyingNode)?;
    colored.flip(i);
    Ok(StrictIllusion {
        colored,
        flipped: Some(i),
    })
}

/// A node is swappable when each of its neighbors sees a margin of at least
/// two between the colors in its own neighborhood.
pub fn is_swappable(cg: &ColoredGraph, j: NodeId) -> bool {
    cg.graph().neighbors(j).iter().all(|&m| {
        let (r, b) = cg.local_counts(m);
        r.abs_diff(b) >= 2
    })
}

/// On a graph whose degrees are all odd, upgrades a tied weak majority
/// 2-coloring to a weak-majority-majority illusion by flipping the lowest-id
/// swappable node. `Ok(None)` when no node is swappable.
pub fn corollary_swap_upgrade(cg: &ColoredGraph) -> Result<Option<StrictIllusion>, ColoringError> {
    let g = cg.graph();
    if let Some(node) = g.nodes().find(|&i| g.degree(i).is_multiple_of(2)) {
        return Err(ColoringError::EvenDegree {
            node,
            degree: g.degree(node),
        });
    }
    if let Some(node) = cg.weak_majority_violation() {
        return Err(ColoringError::NotWeakMajority { node });
    }
    let global = cg.global_winner();
    if !global.is_tie() {
        return Err(ColoringError::GlobalNotTie(global));
    }
    let Some(j) = g.nodes().find(|&j| is_swappable(cg, j)) else {
        return Ok(None);
    };
    let mut colored = cg.clone();
    colored.flip(j);
    let strict = g
        .nodes()
        .filter(|&i| crate::analysis::agent_status(&colored, i).illusion == IllusionLevel::Strict)
        .count();
    if 2 * strict < g.node_count() {
        return Err(ColoringError::InternalInvariant(format!(
            "flipping swappable node {j} left only {strict} agents under strict illusion"
        )));
    }
    Ok(Some(StrictIllusion {
        colored,
        flipped: Some(j),
    }))
}
