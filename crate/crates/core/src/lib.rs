//! Majority illusions on 2-colored graphs: classification, constructive
//! colorings, feasibility predicates for regular and complete graphs, explicit
//! k-regular witnesses, brute-force oracles and a model checker for Global
//! Majority Logic.

pub mod analysis;
pub mod coloring;
pub mod construct;
pub mod feasibility;
pub mod format;
pub mod gmjl;
pub mod graph;
pub mod oracle;
pub mod threshold;

pub use analysis::{
    agent_status, classify_network, pq_report, q_illusion, weak_q_illusion, AgentStatus,
    Chromaticity, IllusionLevel, NetworkIllusionReport, OppositionLevel, PqReport,
};
pub use coloring::{
    illusion_coloring, majority_winner, proper_2_coloring, weak_majority_2_coloring, Color,
    ColoredGraph, Coloring, ColoringError, Winner,
};
pub use graph::{Graph, GraphError, NodeId};
pub use threshold::Threshold;
