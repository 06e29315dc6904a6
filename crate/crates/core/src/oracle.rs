//! Exhaustive search over colorings and labeled regular graphs.
//!
//! Colorings are bitmasks with bit `i` set when node `i` is red. Every count
//! here is recomputed from neighbour masks with `popcount`; nothing is shared
//! with the analysis module, so the two can check each other.

use crate::coloring::{Color, Coloring};
use crate::graph::{Graph, NodeId};
use crate::threshold::Threshold;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

pub const DEFAULT_CAP: usize = 22;
/// Largest n accepted by [`enumerate_regular`].
pub const REGULAR_CAP: usize = 10;
/// Hard ceiling: masks are `u32`.
const MAX_CAP: usize = 30;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{n} nodes exceed the oracle cap of {cap}")]
    OverCap { n: usize, cap: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Objective {
    MaxStrictIllusion,
    MaxWeakIllusion,
    MinMonochromatic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum NetworkKind {
    MajorityMajority,
    WeakMajorityMajority,
    MajorityWeakMajority,
    WeakMajorityWeakMajority,
    UnanimityMajority,
    UnanimityWeakMajority,
}

impl NetworkKind {
    pub const ALL: [NetworkKind; 6] = [
        NetworkKind::MajorityMajority,
        NetworkKind::WeakMajorityMajority,
        NetworkKind::MajorityWeakMajority,
        NetworkKind::WeakMajorityWeakMajority,
        NetworkKind::UnanimityMajority,
        NetworkKind::UnanimityWeakMajority,
    ];

    fn holds(self, strict: usize, weak: usize, n: usize) -> bool {
        match self {
            NetworkKind::MajorityMajority => 2 * strict > n,
            NetworkKind::WeakMajorityMajority => 2 * strict >= n,
            NetworkKind::MajorityWeakMajority => 2 * weak > n,
            NetworkKind::WeakMajorityWeakMajority => 2 * weak >= n,
            NetworkKind::UnanimityMajority => strict == n,
            NetworkKind::UnanimityWeakMajority => weak == n,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Optimum {
    pub coloring: Coloring,
    pub score: usize,
}

/// Exhaustive searcher with a node-count cap.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Oracle {
    cap: usize,
    parallel: bool,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle::new(DEFAULT_CAP)
    }
}

/// Neighbour bitmasks plus the node count.
struct Masks {
    n: usize,
    nb: Vec<u32>,
    edges: Vec<(u32, u32)>,
}

impl Masks {
    fn new(g: &Graph) -> Self {
        let nb = g
            .nodes()
            .map(|i| g.neighbors(i).iter().fold(0u32, |m, &j| m | 1 << j))
            .collect();
        let edges = g.edges().map(|(u, v)| (1u32 << u, 1u32 << v)).collect();
        Masks {
            n: g.node_count(),
            nb,
            edges,
        }
    }

    /// (strict, weak) illusion counts; weak includes strict.
    fn illusion_counts(&self, m: u32) -> (usize, usize) {
        let g = side(m.count_ones() as usize, self.n);
        let (mut strict, mut weak) = (0, 0);
        for &nb in &self.nb {
            let l = side((nb & m).count_ones() as usize, nb.count_ones() as usize);
            if l != g {
                weak += 1;
                if l != 0 && g != 0 {
                    strict += 1;
                }
            }
        }
        (strict, weak)
    }

    fn monochromatic(&self, m: u32) -> usize {
        self.edges
            .iter()
            .filter(|&&(a, b)| (m & a == 0) == (m & b == 0))
            .count()
    }
}

/// +1 when red holds a strict majority of `size`, −1 for blue, 0 on a tie.
fn side(red: usize, size: usize) -> i8 {
    let blue = size - red;
    match (2 * red > size, 2 * blue > size) {
        (true, _) => 1,
        (_, true) => -1,
        _ => 0,
    }
}

/// Key ordering masks like their R/B strings ('B' < 'R', node 0 first).
fn lex_key(m: u32, n: usize) -> u32 {
    if n == 0 {
        0
    } else {
        m.reverse_bits() >> (32 - n)
    }
}

fn mask_to_coloring(m: u32, n: usize) -> Coloring {
    Coloring::new(
        (0..n)
            .map(|i| {
                if m >> i & 1 == 1 {
                    Color::Red
                } else {
                    Color::Blue
                }
            })
            .collect(),
    )
}

pub fn coloring_to_mask(c: &Coloring) -> u32 {
    c.colors().iter().enumerate().fold(
        0,
        |m, (i, &col)| if col == Color::Red { m | 1 << i } else { m },
    )
}

impl Oracle {
    pub fn new(cap: usize) -> Self {
        Oracle {
            cap: cap.min(MAX_CAP),
            parallel: true,
        }
    }

    /// Single-threaded search; results are identical to the parallel one.
    pub fn sequential(self) -> Self {
        Oracle {
            parallel: false,
            ..self
        }
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    fn check(&self, g: &Graph) -> Result<Masks, OracleError> {
        if g.node_count() > self.cap {
            return Err(OracleError::OverCap {
                n: g.node_count(),
                cap: self.cap,
            });
        }
        Ok(Masks::new(g))
    }

    /// Exact optimum over all `2^n` colorings, ties broken towards the
    /// lexicographically smallest R/B string.
    pub fn best_coloring(&self, g: &Graph, objective: Objective) -> Result<Optimum, OracleError> {
        let masks = self.check(g)?;
        let n = masks.n;
        let score = |m: u32| -> (usize, i64) {
            match objective {
                Objective::MaxStrictIllusion => {
                    let s = masks.illusion_counts(m).0;
                    (s, s as i64)
                }
                Objective::MaxWeakIllusion => {
                    let w = masks.illusion_counts(m).1;
                    (w, w as i64)
                }
                Objective::MinMonochromatic => {
                    let mono = masks.monochromatic(m);
                    (mono, -(mono as i64))
                }
            }
        };
        let eval = |m: u64| {
            let m = m as u32;
            let (reported, goodness) = score(m);
            (goodness, std::cmp::Reverse(lex_key(m, n)), reported, m)
        };
        // keys are unique, so the maximum is independent of how rayon splits
        let best = if self.parallel {
            (0..1u64 << n)
                .into_par_iter()
                .map(eval)
                .max_by_key(|&(goodness, key, _, _)| (goodness, key))
        } else {
            (0..1u64 << n)
                .map(eval)
                .max_by_key(|&(goodness, key, _, _)| (goodness, key))
        }
        .expect("at least one coloring");
        Ok(Optimum {
            coloring: mask_to_coloring(best.3, n),
            score: best.2,
        })
    }

    /// The lexicographically smallest coloring realising `kind`, if any.
    pub fn illusion_witness(
        &self,
        g: &Graph,
        kind: NetworkKind,
    ) -> Result<Option<Coloring>, OracleError> {
        let masks = self.check(g)?;
        let n = masks.n;
        let found = (0..1u64 << n).into_par_iter().find_first(|&key| {
            let m = lex_key(key as u32, n);
            let (s, w) = masks.illusion_counts(m);
            kind.holds(s, w, n)
        });
        Ok(found.map(|key| mask_to_coloring(lex_key(key as u32, n), n)))
    }

    pub fn illusion_possible(&self, g: &Graph, kind: NetworkKind) -> Result<bool, OracleError> {
        let masks = self.check(g)?;
        let n = masks.n;
        Ok((0..1u64 << n).into_par_iter().any(|m| {
            let (s, w) = masks.illusion_counts(m as u32);
            kind.holds(s, w, n)
        }))
    }

    /// Which p-q variants some coloring of `g` realises.
    pub fn pq_possible(
        &self,
        g: &Graph,
        p: Threshold,
        q: Threshold,
    ) -> Result<PqPossible, OracleError> {
        let masks = self.check(g)?;
        let n = masks.n;
        let (pn, pd) = (p.numerator() as u128, p.denominator() as u128);
        let (qn, qd) = (q.numerator() as u128, q.denominator() as u128);
        let per_mask = |m: u32| {
            let red = m.count_ones() as u128;
            let total = n as u128;
            let (mut strict, mut weak) = (0u128, 0u128);
            for &nb in &masks.nb {
                let d = nb.count_ones() as u128;
                let lr = (nb & m).count_ones() as u128;
                let (mut s, mut w) = (false, false);
                for (local, global) in [(lr, red), (d - lr, total - red)] {
                    // local/d vs q and global/total vs q, cross-multiplied
                    let (l, lq) = (local * qd, qn * d);
                    let (gl, gq) = (global * qd, qn * total);
                    s |= l > lq && gl < gq;
                    w |= l >= lq && gl <= gq && !(l == lq && gl == gq);
                }
                strict += s as u128;
                weak += w as u128;
            }
            let n = total;
            PqPossible {
                p_q: strict * pd > pn * n,
                weak_p_q: strict * pd >= pn * n,
                p_weak_q: weak * pd > pn * n,
                weak_p_weak_q: weak * pd >= pn * n,
            }
        };
        Ok((0..1u64 << n)
            .into_par_iter()
            .map(|m| per_mask(m as u32))
            .reduce(PqPossible::default, |a, b| PqPossible {
                p_q: a.p_q || b.p_q,
                weak_p_q: a.weak_p_q || b.weak_p_q,
                p_weak_q: a.p_weak_q || b.p_weak_q,
                weak_p_weak_q: a.weak_p_weak_q || b.weak_p_weak_q,
            }))
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct PqPossible {
    pub p_q: bool,
    pub weak_p_q: bool,
    pub p_weak_q: bool,
    pub weak_p_weak_q: bool,
}

pub fn best_coloring(g: &Graph, objective: Objective) -> Result<Optimum, OracleError> {
    Oracle::default().best_coloring(g, objective)
}

pub fn illusion_possible(g: &Graph, kind: NetworkKind) -> Result<bool, OracleError> {
    Oracle::default().illusion_possible(g, kind)
}

pub fn illusion_witness(g: &Graph, kind: NetworkKind) -> Result<Option<Coloring>, OracleError> {
    Oracle::default().illusion_witness(g, kind)
}

/// Every k-regular simple graph on the labeled nodes `0..n`, each exactly
/// once. Empty when `k ≥ n` or `k·n` is odd.
pub fn enumerate_regular(n: usize, k: usize) -> Result<RegularGraphs, OracleError> {
    if n > REGULAR_CAP {
        return Err(OracleError::OverCap {
            n,
            cap: REGULAR_CAP,
        });
    }
    let pairs: Vec<(NodeId, NodeId)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let exhausted = n == 0 || k >= n || (k * n) % 2 == 1;
    Ok(RegularGraphs {
        n,
        k,
        pairs,
        deg: vec![0; n],
        stack: Vec::new(),
        started: false,
        exhausted,
    })
}

/// Streaming backtracker over the node pairs in lexicographic order; each
/// pair is either an edge or not, with degree-budget pruning so every leaf
/// reached is k-regular.
#[derive(Debug, Clone)]
pub struct RegularGraphs {
    n: usize,
    k: usize,
    pairs: Vec<(NodeId, NodeId)>,
    deg: Vec<usize>,
    /// Choice per decided pair: `true` = edge.
    stack: Vec<bool>,
    started: bool,
    exhausted: bool,
}

impl RegularGraphs {
    /// Whether choosing `edge` for the next pair keeps every node able to
    /// reach degree k.
    fn allowed(&self, edge: bool) -> bool {
        let (u, v) = self.pairs[self.stack.len()];
        let add = edge as usize;
        let (du, dv) = (self.deg[u] + add, self.deg[v] + add);
        du <= self.k
            && dv <= self.k
            && du + (self.n - 1 - v) >= self.k
            && dv + (self.n - u - 2) >= self.k
    }

    fn push(&mut self, edge: bool) {
        let (u, v) = self.pairs[self.stack.len()];
        if edge {
            self.deg[u] += 1;
            self.deg[v] += 1;
        }
        self.stack.push(edge);
    }

    fn pop(&mut self) -> Option<bool> {
        let edge = self.stack.pop()?;
        if edge {
            let (u, v) = self.pairs[self.stack.len()];
            self.deg[u] -= 1;
            self.deg[v] -= 1;
        }
        Some(edge)
    }

    /// Extends the current prefix greedily (edge first). Returns false at a
    /// dead end.
    fn descend(&mut self) -> bool {
        while self.stack.len() < self.pairs.len() {
            if self.allowed(true) {
                self.push(true);
            } else if self.allowed(false) {
                self.push(false);
            } else {
                return false;
            }
        }
        true
    }

    /// Moves to the next prefix in search order. Returns false when the
    /// search space is exhausted.
    fn backtrack(&mut self) -> bool {
        while let Some(edge) = self.pop() {
            if edge && self.allowed(false) {
                self.push(false);
                return true;
            }
        }
        false
    }

    fn current(&self) -> Graph {
        let edges = self
            .pairs
            .iter()
            .zip(&self.stack)
            .filter(|(_, &e)| e)
            .map(|(&p, _)| p);
        Graph::from_edges(self.n, edges).expect("pairs are in range and loop-free")
    }
}

impl Iterator for RegularGraphs {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        if self.exhausted {
            return None;
        }
        let mut ready = if self.started {
            self.backtrack()
        } else {
            self.started = true;
            true
        };
        loop {
            if !ready {
                self.exhausted = true;
                return None;
            }
            if self.descend() {
                return Some(self.current());
            }
            ready = self.backtrack();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_graph, cycle_graph};

    #[test]
    fn triangle_min_monochromatic() {
        let opt = best_coloring(&complete_graph(3).unwrap(), Objective::MinMonochromatic).unwrap();
        assert_eq!(opt.score, 1);
        assert_eq!(opt.coloring.to_string(), "BBR");
    }

    #[test]
    fn k4_max_weak() {
        let opt = best_coloring(&complete_graph(4).unwrap(), Objective::MaxWeakIllusion).unwrap();
        assert_eq!(opt.score, 4);
        assert_eq!(opt.coloring.to_string(), "BBRR");
    }

    #[test]
    fn edgeless_max_strict() {
        let opt = best_coloring(&Graph::empty(2).unwrap(), Objective::MaxStrictIllusion).unwrap();
        assert_eq!(opt.score, 0);
        assert_eq!(opt.coloring.to_string(), "BB");
    }

    #[test]
    fn possibility_examples() {
        assert!(
            !illusion_possible(&cycle_graph(5).unwrap(), NetworkKind::WeakMajorityMajority)
                .unwrap()
        );
        assert!(
            !illusion_possible(&complete_graph(4).unwrap(), NetworkKind::MajorityMajority).unwrap()
        );
        assert!(
            illusion_possible(&cycle_graph(5).unwrap(), NetworkKind::MajorityWeakMajority).unwrap()
        );
        let w = illusion_witness(&cycle_graph(4).unwrap(), NetworkKind::UnanimityWeakMajority)
            .unwrap()
            .unwrap();
        assert_eq!(w.to_string(), "BRBR");
    }

    #[test]
    fn cap_enforced() {
        let g = Graph::empty(23).unwrap();
        assert_eq!(
            illusion_possible(&g, NetworkKind::MajorityMajority),
            Err(OracleError::OverCap { n: 23, cap: 22 })
        );
        assert!(Oracle::new(4)
            .best_coloring(&cycle_graph(5).unwrap(), Objective::MinMonochromatic)
            .is_err());
        assert!(enumerate_regular(11, 2).is_err());
    }

    #[test]
    fn mask_round_trip() {
        let c: Coloring = "RBBRB".parse().unwrap();
        assert_eq!(mask_to_coloring(coloring_to_mask(&c), 5), c);
        // "BR" < "RB"
        assert!(lex_key(0b10, 2) < lex_key(0b01, 2));
    }

    #[test]
    fn regular_counts() {
        let count = |n, k| enumerate_regular(n, k).unwrap().count();
        assert_eq!(count(6, 4), 15);
        assert_eq!(count(4, 1), 3);
        assert_eq!(count(5, 3), 0);
        assert_eq!(count(5, 2), 12);
        assert_eq!(count(6, 2), 70);
        assert_eq!(count(6, 3), 70);
        assert_eq!(count(1, 0), 1);
        assert_eq!(count(4, 4), 0);
    }

    #[test]
    fn regular_stream_matches_subset_scan() {
        for n in 1..=6usize {
            let pairs: Vec<_> = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .collect();
            for k in 0..n {
                let mut brute = Vec::new();
                for s in 0u32..1 << pairs.len() {
                    let edges: Vec<_> = (0..pairs.len())
                        .filter(|i| s >> i & 1 == 1)
                        .map(|i| pairs[i])
                        .collect();
                    let g = Graph::new(n, &edges).unwrap();
                    if g.regular_degree() == Some(k) {
                        brute.push(g);
                    }
                }
                let mut streamed: Vec<_> = enumerate_regular(n, k).unwrap().collect();
                let key = |g: &Graph| g.edges().collect::<Vec<_>>();
                brute.sort_by_key(key);
                streamed.sort_by_key(key);
                assert_eq!(streamed, brute, "n = {n}, k = {k}");
            }
        }
    }
}
