//! The illusion and opposition statements as formulas over one atom, which
//! is read as "red".

use super::ast::Formula;
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IllusionKind {
    AgentMajorityOpposition,
    AgentWeakMajorityOpposition,
    AgentMajorityIllusion,
    AgentWeakMajorityIllusion,
    MajorityMajority,
    WeakMajorityMajority,
    MajorityWeakMajority,
    WeakMajorityWeakMajority,
}

impl IllusionKind {
    pub const ALL: [IllusionKind; 8] = [
        IllusionKind::AgentMajorityOpposition,
        IllusionKind::AgentWeakMajorityOpposition,
        IllusionKind::AgentMajorityIllusion,
        IllusionKind::AgentWeakMajorityIllusion,
        IllusionKind::MajorityMajority,
        IllusionKind::WeakMajorityMajority,
        IllusionKind::MajorityWeakMajority,
        IllusionKind::WeakMajorityWeakMajority,
    ];

    pub fn name(self) -> &'static str {
        match self {
            IllusionKind::AgentMajorityOpposition => "agent-majority-opposition",
            IllusionKind::AgentWeakMajorityOpposition => "agent-weak-majority-opposition",
            IllusionKind::AgentMajorityIllusion => "agent-majority-illusion",
            IllusionKind::AgentWeakMajorityIllusion => "agent-weak-majority-illusion",
            IllusionKind::MajorityMajority => "majority-majority",
            IllusionKind::WeakMajorityMajority => "weak-majority-majority",
            IllusionKind::MajorityWeakMajority => "majority-weak-majority",
            IllusionKind::WeakMajorityWeakMajority => "weak-majority-weak-majority",
        }
    }

    /// Network-level kinds hold at every node or at none.
    pub fn is_network_level(self) -> bool {
        matches!(
            self,
            IllusionKind::MajorityMajority
                | IllusionKind::WeakMajorityMajority
                | IllusionKind::MajorityWeakMajority
                | IllusionKind::WeakMajorityWeakMajority
        )
    }
}

impl fmt::Display for IllusionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown formula kind {0:?}")]
pub struct UnknownKind(pub String);

impl FromStr for IllusionKind {
    type Err = UnknownKind;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        IllusionKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| UnknownKind(s.to_string()))
    }
}

pub fn illusion_formula(kind: IllusionKind, atom: &str) -> Formula {
    let p = || Formula::atom(atom);
    let np = || Formula::negate(p());
    let strict = || {
        Formula::or(
            Formula::and(Formula::gm(p()), Formula::m(np())),
            Formula::and(Formula::gm(np()), Formula::m(p())),
        )
    };
    // local winner differs from the global one, ties included
    let weak = || {
        Formula::or(
            Formula::or(
                Formula::and(Formula::gw(p()), Formula::m(np())),
                Formula::and(Formula::gw(np()), Formula::m(p())),
            ),
            Formula::and(
                Formula::and(Formula::w(p()), Formula::w(np())),
                Formula::or(Formula::gm(p()), Formula::gm(np())),
            ),
        )
    };
    match kind {
        IllusionKind::AgentMajorityOpposition => Formula::or(
            Formula::and(p(), Formula::m(np())),
            Formula::and(np(), Formula::m(p())),
        ),
        IllusionKind::AgentWeakMajorityOpposition => Formula::or(
            Formula::and(p(), Formula::w(np())),
            Formula::and(np(), Formula::w(p())),
        ),
        IllusionKind::AgentMajorityIllusion => strict(),
        IllusionKind::AgentWeakMajorityIllusion => weak(),
        IllusionKind::MajorityMajority => Formula::gm(strict()),
        IllusionKind::WeakMajorityMajority => Formula::gw(strict()),
        IllusionKind::MajorityWeakMajority => Formula::gm(weak()),
        IllusionKind::WeakMajorityWeakMajority => Formula::gw(weak()),
    }
}
