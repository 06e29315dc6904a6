//! Per-agent and network-level illusion classification, plus the threshold
//! generalisations (q-illusions and p-q illusions).

use crate::coloring::{Color, ColoredGraph, Winner};
use crate::graph::{GraphError, NodeId};
use crate::threshold::Threshold;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OppositionLevel {
    None,
    Weak,
    Strict,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum IllusionLevel {
    None,
    Weak,
    Strict,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Chromaticity {
    Monochromatic,
    Polychromatic,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AgentStatus {
    pub node: NodeId,
    pub color: Color,
    pub local_red: usize,
    pub local_blue: usize,
    pub local_winner: Winner,
    pub global_winner: Winner,
    pub opposition: OppositionLevel,
    pub illusion: IllusionLevel,
    /// Locally over-represented color when under (weak) illusion.
    pub illusion_color: Option<Color>,
}

impl AgentStatus {
    /// Status from raw counts; `own` is the agent's color.
    pub fn from_counts(
        node: NodeId,
        own: Color,
        (local_red, local_blue): (usize, usize),
        (global_red, global_blue): (usize, usize),
    ) -> AgentStatus {
        let local_winner = Winner::from_counts(local_red, local_blue);
        let global_winner = Winner::from_counts(global_red, global_blue);
        let opposition = match local_winner.color() {
            None => OppositionLevel::Weak,
            Some(c) if c != own => OppositionLevel::Strict,
            Some(_) => OppositionLevel::None,
        };
        let illusion = if local_winner == global_winner {
            IllusionLevel::None
        } else if local_winner.is_tie() || global_winner.is_tie() {
            IllusionLevel::Weak
        } else {
            IllusionLevel::Strict
        };
        let d = local_red + local_blue;
        let n = global_red + global_blue;
        let illusion_color = (illusion != IllusionLevel::None)
            .then(|| {
                weak_q_witnesses(
                    Threshold::HALF,
                    (local_red, local_blue, d),
                    (global_red, global_blue, n),
                )
                .into_iter()
                .next()
            })
            .flatten();
        AgentStatus {
            node,
            color: own,
            local_red,
            local_blue,
            local_winner,
            global_winner,
            opposition,
            illusion,
            illusion_color,
        }
    }

    pub fn degree(&self) -> usize {
        self.local_red + self.local_blue
    }
}

pub fn agent_status(cg: &ColoredGraph, i: NodeId) -> AgentStatus {
    AgentStatus::from_counts(i, cg.color(i), cg.local_counts(i), cg.global_counts())
}

pub fn checked_agent_status(cg: &ColoredGraph, i: NodeId) -> Result<AgentStatus, GraphError> {
    cg.graph().check_node(i)?;
    Ok(agent_status(cg, i))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NetworkIllusionReport {
    pub n: usize,
    pub global_winner: Winner,
    pub strict: usize,
    pub weak_only: usize,
    pub none: usize,
    pub majority_majority: bool,
    pub weak_majority_majority: bool,
    pub majority_weak_majority: bool,
    pub weak_majority_weak_majority: bool,
    pub unanimity_majority: bool,
    pub unanimity_weak_majority: bool,
    pub chromaticity: Chromaticity,
    /// Nodes with an empty neighbourhood; their local winner is a tie.
    pub isolated: Vec<NodeId>,
    pub agents: Vec<AgentStatus>,
}

impl NetworkIllusionReport {
    /// Agents under strict or weak illusion.
    pub fn weak(&self) -> usize {
        self.strict + self.weak_only
    }
}

pub fn classify_network(cg: &ColoredGraph) -> NetworkIllusionReport {
    let n = cg.node_count();
    let agents: Vec<AgentStatus> = cg.graph().nodes().map(|i| agent_status(cg, i)).collect();
    let count = |level| agents.iter().filter(|a| a.illusion == level).count();
    let strict = count(IllusionLevel::Strict);
    let weak_only = count(IllusionLevel::Weak);
    let weak = strict + weak_only;
    let witnessed: Vec<Vec<Color>> = agents
        .iter()
        .filter_map(|a| a.illusion_color.map(|c| vec![c]))
        .collect();
    NetworkIllusionReport {
        n,
        global_winner: cg.global_winner(),
        strict,
        weak_only,
        none: n - weak,
        majority_majority: 2 * strict > n,
        weak_majority_majority: 2 * strict >= n,
        majority_weak_majority: 2 * weak > n,
        weak_majority_weak_majority: 2 * weak >= n,
        unanimity_majority: strict == n,
        unanimity_weak_majority: weak == n,
        chromaticity: chromaticity(&witnessed),
        isolated: cg.graph().isolated_nodes(),
        agents,
    }
}

/// Monochromatic iff some color is witnessed by every agent under illusion.
fn chromaticity(witnesses: &[Vec<Color>]) -> Chromaticity {
    let common = [Color::Red, Color::Blue]
        .into_iter()
        .any(|c| witnesses.iter().all(|w| w.contains(&c)));
    if common {
        Chromaticity::Monochromatic
    } else {
        Chromaticity::Polychromatic
    }
}

fn color_count(c: Color, red: usize, blue: usize) -> usize {
    match c {
        Color::Red => red,
        Color::Blue => blue,
    }
}

fn strict_q_witnesses(
    q: Threshold,
    (lr, lb, d): (usize, usize, usize),
    (gr, gb, n): (usize, usize, usize),
) -> Vec<Color> {
    [Color::Red, Color::Blue]
        .into_iter()
        .filter(|&x| q.count_gt(color_count(x, lr, lb), d) && q.count_lt(color_count(x, gr, gb), n))
        .collect()
}

fn weak_q_witnesses(
    q: Threshold,
    (lr, lb, d): (usize, usize, usize),
    (gr, gb, n): (usize, usize, usize),
) -> Vec<Color> {
    [Color::Red, Color::Blue]
        .into_iter()
        .filter(|&x| {
            let local = color_count(x, lr, lb);
            let global = color_count(x, gr, gb);
            q.count_ge(local, d)
                && q.count_le(global, n)
                && !(q.count_eq(local, d) && q.count_eq(global, n))
        })
        .collect()
}

fn counts(cg: &ColoredGraph, i: NodeId) -> ((usize, usize, usize), (usize, usize, usize)) {
    let (lr, lb) = cg.local_counts(i);
    let (gr, gb) = cg.global_counts();
    ((lr, lb, lr + lb), (gr, gb, gr + gb))
}

/// Every color `x` with a local share of `x` strictly above `q` and a global
/// share strictly below `q`.
pub fn q_illusion_colors(cg: &ColoredGraph, i: NodeId, q: Threshold) -> Vec<Color> {
    let (l, g) = counts(cg, i);
    strict_q_witnesses(q, l, g)
}

/// As [`q_illusion_colors`] with non-strict comparisons, excluding the case
/// where both shares equal `q` exactly. Only an isolated node with `q > 1/2`
/// can witness both colors.
pub fn weak_q_illusion_colors(cg: &ColoredGraph, i: NodeId, q: Threshold) -> Vec<Color> {
    let (l, g) = counts(cg, i);
    weak_q_witnesses(q, l, g)
}

/// The witnessing color of a q-illusion at `i`, if any.
pub fn q_illusion(cg: &ColoredGraph, i: NodeId, q: Threshold) -> Result<Option<Color>, GraphError> {
    cg.graph().check_node(i)?;
    Ok(q_illusion_colors(cg, i, q).first().copied())
}

/// The witnessing color of a weak q-illusion at `i`, Red first when both
/// colors witness.
pub fn weak_q_illusion(
    cg: &ColoredGraph,
    i: NodeId,
    q: Threshold,
) -> Result<Option<Color>, GraphError> {
    cg.graph().check_node(i)?;
    Ok(weak_q_illusion_colors(cg, i, q).first().copied())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PqReport {
    pub p: Threshold,
    pub q: Threshold,
    pub n: usize,
    /// Agents under q-illusion.
    pub q_count: usize,
    /// Agents under weak q-illusion.
    pub weak_q_count: usize,
    pub p_q: bool,
    pub weak_p_q: bool,
    pub p_weak_q: bool,
    pub weak_p_weak_q: bool,
    pub q_chromaticity: Chromaticity,
    pub weak_q_chromaticity: Chromaticity,
    /// True when the thresholds alone force a single witness color: `q ≤ 1/2`
    /// for q-illusions, `q < 1/2` for weak q-illusions.
    pub q_forced_monochromatic: bool,
    pub weak_q_forced_monochromatic: bool,
}

pub fn pq_report(cg: &ColoredGraph, p: Threshold, q: Threshold) -> PqReport {
    let n = cg.node_count();
    let strict: Vec<Vec<Color>> = cg
        .graph()
        .nodes()
        .map(|i| q_illusion_colors(cg, i, q))
        .filter(|w| !w.is_empty())
        .collect();
    let weak: Vec<Vec<Color>> = cg
        .graph()
        .nodes()
        .map(|i| weak_q_illusion_colors(cg, i, q))
        .filter(|w| !w.is_empty())
        .collect();
    let q_chromaticity = chromaticity(&strict);
    let weak_q_chromaticity = chromaticity(&weak);
    let q_forced_monochromatic = q.cmp_half().is_le();
    let weak_q_forced_monochromatic = q.cmp_half().is_lt();
    assert!(
        !q_forced_monochromatic || q_chromaticity == Chromaticity::Monochromatic,
        "q-illusion below one half witnessed by both colors"
    );
    assert!(
        !weak_q_forced_monochromatic || weak_q_chromaticity == Chromaticity::Monochromatic,
        "weak q-illusion below one half witnessed by both colors"
    );
    PqReport {
        p,
        q,
        n,
        q_count: strict.len(),
        weak_q_count: weak.len(),
        p_q: p.count_gt(strict.len(), n),
        weak_p_q: p.count_ge(strict.len(), n),
        p_weak_q: p.count_gt(weak.len(), n),
        weak_p_weak_q: p.count_ge(weak.len(), n),
        q_chromaticity,
        weak_q_chromaticity,
        q_forced_monochromatic,
        weak_q_forced_monochromatic,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_graph, cycle_graph, path_graph, Graph};

    fn colored(g: Graph, s: &str) -> ColoredGraph {
        ColoredGraph::new(g, s.parse().unwrap()).unwrap()
    }

    fn q(a: u64, b: u64) -> Threshold {
        Threshold::new(a, b).unwrap()
    }

    #[test]
    fn k4_split_red_node_is_weakly_illusioned() {
        let cg = colored(complete_graph(4).unwrap(), "RRBB");
        let s = agent_status(&cg, 0);
        assert_eq!(s.local_winner, Winner::Blue);
        assert_eq!(s.global_winner, Winner::Tie);
        assert_eq!(s.illusion, IllusionLevel::Weak);
        assert_eq!(s.opposition, OppositionLevel::Strict);
        assert_eq!(s.illusion_color, Some(Color::Blue));
    }

    #[test]
    fn uniform_triangle_has_nothing() {
        let cg = colored(complete_graph(3).unwrap(), "RRR");
        let s = agent_status(&cg, 0);
        assert_eq!(s.illusion, IllusionLevel::None);
        assert_eq!(s.opposition, OppositionLevel::None);
        let r = classify_network(&cg);
        assert!(!r.weak_majority_weak_majority && !r.majority_weak_majority);
        assert!(!r.unanimity_majority && !r.unanimity_weak_majority);
    }

    #[test]
    fn path_middle_node_opposed_not_illusioned() {
        let cg = colored(path_graph(3).unwrap(), "RBR");
        let s = agent_status(&cg, 1);
        assert_eq!(s.local_winner, Winner::Red);
        assert_eq!(s.global_winner, Winner::Red);
        assert_eq!(s.illusion, IllusionLevel::None);
        assert_eq!(s.opposition, OppositionLevel::Strict);
    }

    #[test]
    fn out_of_range_agent() {
        let cg = colored(path_graph(3).unwrap(), "RBR");
        assert!(checked_agent_status(&cg, 3).is_err());
        assert!(q_illusion(&cg, 5, Threshold::HALF).is_err());
    }

    #[test]
    fn network_reports() {
        let r = classify_network(&colored(complete_graph(4).unwrap(), "RRBB"));
        assert!(r.unanimity_weak_majority && !r.majority_majority);
        assert_eq!((r.strict, r.weak_only), (0, 4));
        assert_eq!(r.chromaticity, Chromaticity::Polychromatic);

        let r = classify_network(&colored(cycle_graph(4).unwrap(), "RBRB"));
        assert_eq!(r.global_winner, Winner::Tie);
        assert!(r.unanimity_weak_majority);
    }

    #[test]
    fn isolated_nodes_are_listed() {
        let cg = colored(Graph::new(3, &[(0, 1)]).unwrap(), "RBR");
        let r = classify_network(&cg);
        assert_eq!(r.isolated, vec![2]);
        assert_eq!(r.agents[2].local_winner, Winner::Tie);
    }

    #[test]
    fn q_zero_never_holds() {
        let cg = colored(cycle_graph(5).unwrap(), "RBRBB");
        for i in 0..5 {
            assert_eq!(q_illusion(&cg, i, Threshold::ZERO).unwrap(), None);
        }
    }

    #[test]
    fn q_two_fifths_on_k5() {
        let cg = colored(complete_graph(5).unwrap(), "RRRBB");
        // local 2 > 1.6 but global 2 < 2 fails
        assert_eq!(q_illusion(&cg, 0, q(2, 5)).unwrap(), None);
    }

    #[test]
    fn weak_q_half_on_k4() {
        let cg = colored(complete_graph(4).unwrap(), "RRBB");
        assert_eq!(
            weak_q_illusion(&cg, 0, Threshold::HALF).unwrap(),
            Some(Color::Blue)
        );
    }

    #[test]
    fn weak_q_exact_equality_excluded() {
        // node 0 of C4 colored RRBB sees one of each; global 2 of 4
        let cg = colored(cycle_graph(4).unwrap(), "RRBB");
        assert_eq!(weak_q_illusion(&cg, 0, Threshold::HALF).unwrap(), None);
    }

    #[test]
    fn isolated_node_with_high_q_witnesses_both() {
        let cg = colored(Graph::new(3, &[(0, 1)]).unwrap(), "RBR");
        assert_eq!(
            weak_q_illusion_colors(&cg, 2, Threshold::ONE),
            vec![Color::Red, Color::Blue]
        );
    }

    #[test]
    fn pq_half_half_matches_network_flags() {
        for s in ["RRBB", "RRRB", "RBBB"] {
            let cg = colored(complete_graph(4).unwrap(), s);
            let r = classify_network(&cg);
            let pq = pq_report(&cg, Threshold::HALF, Threshold::HALF);
            assert_eq!(pq.p_q, r.majority_majority);
            assert_eq!(pq.weak_p_q, r.weak_majority_majority);
            assert_eq!(pq.p_weak_q, r.majority_weak_majority);
            assert_eq!(pq.weak_p_weak_q, r.weak_majority_weak_majority);
        }
    }

    #[test]
    fn pq_zero_and_one() {
        let cg = colored(complete_graph(4).unwrap(), "RRBB");
        let pq = pq_report(&cg, Threshold::ONE, Threshold::HALF);
        assert!(pq.weak_p_weak_q);
        assert!(!pq.p_weak_q);
        let pq = pq_report(&cg, Threshold::ZERO, Threshold::HALF);
        assert!(!pq.p_q);
        assert!(pq.p_weak_q);
        assert!(pq.weak_p_q);
    }
}
