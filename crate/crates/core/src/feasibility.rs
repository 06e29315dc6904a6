//! Closed-form possibility and impossibility predicates for cycles, complete
//! graphs, regular graphs and graphs with odd degrees. Every bound is checked
//! in integer arithmetic with denominators cleared.

use crate::coloring::ColoredGraph;
use crate::threshold::Threshold;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FeasibilityError {
    #[error("need at least {min} nodes, got {n}")]
    TooFewNodes { n: usize, min: usize },
    #[error("degree {k} must be below the node count {n}")]
    DegreeTooLarge { n: usize, k: usize },
    #[error("no {k}-regular graph on {n} nodes exists: k·n is odd")]
    HandshakeParity { n: usize, k: usize },
    #[error("degree bound {0} must be odd")]
    EvenDegree(usize),
    #[error("graph is not complete")]
    NotComplete,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Reason {
    /// n and k even but k > n − 4.
    DegreeBoundEvenEven,
    /// Mixed parity but k > n − 3.
    DegreeBoundMixedParity,
    /// n and k even but n(k − 2) < 2(3k + 2).
    EdgeBudgetEvenEven,
    /// n even, k odd but n(k − 1) < 2(3k + 1).
    EdgeBudgetEvenOdd,
    /// n odd, k even but n(k − 2) < 3k + 2.
    EdgeBudgetOddEven,
    /// k ≤ 2: no strict illusion can reach a majority of agents.
    DegreeTooSmall,
}

impl Reason {
    pub fn code(self) -> &'static str {
        match self {
            Reason::DegreeBoundEvenEven => "degree_bound_even_even",
            Reason::DegreeBoundMixedParity => "degree_bound_mixed_parity",
            Reason::EdgeBudgetEvenEven => "edge_budget_even_even",
            Reason::EdgeBudgetEvenOdd => "edge_budget_even_odd",
            Reason::EdgeBudgetOddEven => "edge_budget_odd_even",
            Reason::DegreeTooSmall => "degree_too_small",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            Reason::DegreeBoundEvenEven => {
                "n and k even: an illusioned agent needs (k+2)/2 minority neighbours, so k <= n-4"
            }
            Reason::DegreeBoundMixedParity => {
                "n and k of different parity: an illusioned agent needs more minority neighbours than exist unless k <= n-3"
            }
            Reason::EdgeBudgetEvenEven => {
                "n and k even: the minority cannot supply enough edges unless n(k-2) >= 2(3k+2)"
            }
            Reason::EdgeBudgetEvenOdd => {
                "n even, k odd: the minority cannot supply enough edges unless n(k-1) >= 2(3k+1)"
            }
            Reason::EdgeBudgetOddEven => {
                "n odd, k even: the minority cannot supply enough edges unless n(k-2) >= 3k+2"
            }
            Reason::DegreeTooSmall => {
                "k <= 2: a majority-majority illusion needs k >= 3 (cycles and matchings never admit one)"
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub possible: bool,
    /// Every violated condition; empty when `possible`.
    pub reasons: Vec<Reason>,
}

impl Verdict {
    fn from_reasons(reasons: Vec<Reason>) -> Self {
        Verdict {
            possible: reasons.is_empty(),
            reasons,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Strictness {
    /// At least half of the agents under strict illusion.
    Weak,
    /// More than half of the agents under strict illusion.
    Strict,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CycleVerdict {
    pub majority_majority: bool,
    pub weak_majority_majority: bool,
    pub majority_weak_majority: bool,
}

/// On a cycle an agent sees two neighbours, so a strict illusion needs both of
/// them in the global minority; that caps strict illusions below half.
pub fn cycle_feasible(n: usize) -> Result<CycleVerdict, FeasibilityError> {
    if n < 3 {
        return Err(FeasibilityError::TooFewNodes { n, min: 3 });
    }
    Ok(CycleVerdict {
        majority_majority: false,
        weak_majority_majority: false,
        majority_weak_majority: true,
    })
}

/// For each variant, the size of a color class that realises it, if any.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CompletePqVerdict {
    pub p_q: Option<usize>,
    pub weak_p_q: Option<usize>,
    pub p_weak_q: Option<usize>,
    pub weak_p_weak_q: Option<usize>,
}

/// p-q illusion possibility on the complete graph `K_n`.
///
/// On `K_n` a coloring is determined up to isomorphism by the number `x` of
/// red nodes: every red node sees `x − 1` red and `n − x` blue neighbours,
/// every blue node sees `x` red and `n − x − 1` blue ones. The illusioned
/// agents are therefore counted exactly per class and compared against
/// `p · n`, for each `x` in `0..=n`.
pub fn complete_pq_feasible(
    n: usize,
    p: Threshold,
    q: Threshold,
) -> Result<CompletePqVerdict, FeasibilityError> {
    if n == 0 {
        return Err(FeasibilityError::TooFewNodes { n, min: 1 });
    }
    let d = n - 1;
    let strict_q = |local: usize, global: usize| q.count_gt(local, d) && q.count_lt(global, n);
    let weak_q = |local: usize, global: usize| {
        q.count_ge(local, d)
            && q.count_le(global, n)
            && !(q.count_eq(local, d) && q.count_eq(global, n))
    };
    let mut verdict = CompletePqVerdict {
        p_q: None,
        weak_p_q: None,
        p_weak_q: None,
        weak_p_weak_q: None,
    };
    for x in 0..=n {
        let y = n - x;
        let mut strict_count = 0;
        let mut weak_count = 0;
        // (class size, red neighbours, blue neighbours)
        let classes = [(x, x.saturating_sub(1), y), (y, x, y.saturating_sub(1))];
        for (size, lr, lb) in classes {
            if size == 0 {
                continue;
            }
            if strict_q(lr, x) || strict_q(lb, y) {
                strict_count += size;
            }
            if weak_q(lr, x) || weak_q(lb, y) {
                weak_count += size;
            }
        }
        let first = |slot: &mut Option<usize>, ok: bool| {
            if ok && slot.is_none() {
                *slot = Some(x);
            }
        };
        first(&mut verdict.p_q, p.count_gt(strict_count, n));
        first(&mut verdict.weak_p_q, p.count_ge(strict_count, n));
        first(&mut verdict.p_weak_q, p.count_gt(weak_count, n));
        first(&mut verdict.weak_p_weak_q, p.count_ge(weak_count, n));
    }
    Ok(verdict)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CompleteClassification {
    /// Equal color classes: every agent sees a majority of the other color.
    UnanimityWeakMajority,
    /// Classes differ by one: the majority class sees a tie.
    MajorityWeakMajority,
    None,
}

pub fn complete_majority_weak_classification(
    cg: &ColoredGraph,
) -> Result<CompleteClassification, FeasibilityError> {
    if !cg.graph().is_complete() {
        return Err(FeasibilityError::NotComplete);
    }
    let (r, b) = cg.global_counts();
    Ok(match r.abs_diff(b) {
        0 => CompleteClassification::UnanimityWeakMajority,
        1 => CompleteClassification::MajorityWeakMajority,
        _ => CompleteClassification::None,
    })
}

fn check_regular_args(n: usize, k: usize) -> Result<(), FeasibilityError> {
    if n == 0 {
        return Err(FeasibilityError::TooFewNodes { n, min: 1 });
    }
    if k >= n {
        return Err(FeasibilityError::DegreeTooLarge { n, k });
    }
    if (k * n) % 2 == 1 {
        return Err(FeasibilityError::HandshakeParity { n, k });
    }
    Ok(())
}

/// Necessary conditions on `(n, k)` for a k-regular graph on n nodes to admit
/// a majority-majority illusion (`Strict`) or a weak-majority-majority
/// illusion (`Weak`).
pub fn regular_necessary(
    n: usize,
    k: usize,
    strictness: Strictness,
) -> Result<Verdict, FeasibilityError> {
    check_regular_args(n, k)?;
    let mut reasons = Vec::new();
    let (n_even, k_even) = (n.is_multiple_of(2), k.is_multiple_of(2));
    if n_even && k_even {
        if k + 4 > n {
            reasons.push(Reason::DegreeBoundEvenEven);
        }
    } else if k + 3 > n {
        reasons.push(Reason::DegreeBoundMixedParity);
    }
    if strictness == Strictness::Strict {
        if k <= 2 {
            reasons.push(Reason::DegreeTooSmall);
        } else {
            match (n_even, k_even) {
                (true, true) if n * (k - 2) < 2 * (3 * k + 2) => {
                    reasons.push(Reason::EdgeBudgetEvenEven)
                }
                (true, false) if n * (k - 1) < 2 * (3 * k + 1) => {
                    reasons.push(Reason::EdgeBudgetEvenOdd)
                }
                (false, true) if n * (k - 2) < 3 * k + 2 => reasons.push(Reason::EdgeBudgetOddEven),
                _ => {}
            }
        }
    }
    Ok(Verdict::from_reasons(reasons))
}

/// `k > 2` together with the strict necessary conditions.
pub fn regular_exists(n: usize, k: usize) -> Result<Verdict, FeasibilityError> {
    regular_necessary(n, k, Strictness::Strict)
}

/// Pairs that pass [`regular_exists`] but admit no witness: `n ≡ 0 (mod 4)`,
/// `k = n − 4`, `n ≥ 12`.
///
/// With `k = n − 4` an illusioned agent needs `k/2 + 1 = n/2 − 1` blue
/// neighbours, which forces exactly `n/2 − 1` blue nodes, all of them adjacent
/// to all `n/2 + 1` red nodes. The blue nodes then need an
/// `(n/2 − 5)`-regular graph among themselves on `n/2 − 1` nodes; when
/// `n ≡ 0 (mod 4)` both numbers are odd, so it cannot exist.
pub fn regular_parity_obstruction(n: usize, k: usize) -> bool {
    n >= 12 && n.is_multiple_of(4) && k + 4 == n
}

/// [`regular_exists`] minus [`regular_parity_obstruction`].
pub fn regular_witness_exists(n: usize, k: usize) -> Result<bool, FeasibilityError> {
    Ok(regular_exists(n, k)?.possible && !regular_parity_obstruction(n, k))
}

/// Necessary condition for a monochromatic p-q illusion on a k-regular graph
/// with `n > 1`, `k > 1`, `q > 0`: `p < kn / ((n + 1)(k + 1))`.
pub fn regular_monochromatic_pq_necessary(n: usize, k: usize, p: Threshold) -> bool {
    let lhs = p.numerator() as u128 * ((n + 1) * (k + 1)) as u128;
    let rhs = p.denominator() as u128 * (k * n) as u128;
    lhs < rhs
}

/// On a graph whose degrees are all odd and at most `k_max`, a weak
/// majority-q illusion exists for `q = (k_max + 1) / (2 k_max)`.
pub fn odd_degree_q_bound(k_max: usize) -> Result<Threshold, FeasibilityError> {
    if k_max.is_multiple_of(2) {
        return Err(FeasibilityError::EvenDegree(k_max));
    }
    Ok(Threshold::new(k_max as u64 + 1, 2 * k_max as u64).expect("(k+1)/2k lies in (0, 1]"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::complete_graph;

    #[test]
    fn cycles() {
        let v = cycle_feasible(5).unwrap();
        assert!(!v.weak_majority_majority && !v.majority_majority);
        assert!(cycle_feasible(4).unwrap().majority_weak_majority);
        assert!(cycle_feasible(2).is_err());
    }

    #[test]
    fn regular_examples() {
        let v = regular_necessary(6, 4, Strictness::Weak).unwrap();
        assert_eq!(v.reasons, vec![Reason::DegreeBoundEvenEven]);
        let v = regular_necessary(6, 3, Strictness::Strict).unwrap();
        assert_eq!(v.reasons, vec![Reason::EdgeBudgetEvenOdd]);
        assert!(regular_necessary(6, 3, Strictness::Weak).unwrap().possible);
        assert!(
            regular_necessary(12, 6, Strictness::Strict)
                .unwrap()
                .possible
        );
        assert!(regular_exists(12, 6).unwrap().possible);
        assert!(!regular_exists(6, 4).unwrap().possible);
        assert!(regular_exists(14, 4).unwrap().possible);
        assert!(!regular_exists(12, 4).unwrap().possible);
    }

    #[test]
    fn regular_argument_errors() {
        assert_eq!(
            regular_necessary(5, 3, Strictness::Weak),
            Err(FeasibilityError::HandshakeParity { n: 5, k: 3 })
        );
        assert_eq!(
            regular_exists(4, 4),
            Err(FeasibilityError::DegreeTooLarge { n: 4, k: 4 })
        );
    }

    #[test]
    fn small_degrees_are_never_strict() {
        for n in 1..40 {
            for k in 0..=2.min(n - 1) {
                if let Ok(v) = regular_exists(n, k) {
                    assert!(v.reasons.contains(&Reason::DegreeTooSmall), "({n},{k})");
                }
            }
        }
    }

    #[test]
    fn obstruction_family() {
        assert!(regular_exists(12, 8).unwrap().possible);
        assert!(regular_parity_obstruction(12, 8));
        assert!(!regular_witness_exists(12, 8).unwrap());
        assert!(regular_witness_exists(14, 10).unwrap());
        assert!(!regular_parity_obstruction(8, 4));
    }

    #[test]
    fn complete_half_half() {
        let h = Threshold::HALF;
        for n in 1..12 {
            let v = complete_pq_feasible(n, h, h).unwrap();
            assert_eq!(v.p_q, None);
            assert_eq!(v.weak_p_q, None);
            assert!(v.p_weak_q.is_some());
        }
        let v = complete_pq_feasible(4, h, h).unwrap();
        assert_eq!(v.weak_p_weak_q, Some(2));
        assert_eq!(
            complete_pq_feasible(4, Threshold::ONE, h)
                .unwrap()
                .weak_p_weak_q,
            Some(2)
        );
    }

    #[test]
    fn complete_two_fifths_on_five() {
        let q = Threshold::new(2, 5).unwrap();
        assert_eq!(
            complete_pq_feasible(5, Threshold::HALF, q).unwrap().p_q,
            None
        );
    }

    #[test]
    fn complete_polychromatic_case() {
        // with two red and two blue nodes every agent sees a 2/3 majority of
        // the other color, which globally holds only 1/2
        let v = complete_pq_feasible(4, Threshold::HALF, Threshold::new(3, 5).unwrap()).unwrap();
        assert_eq!(v.p_q, Some(2));
    }

    #[test]
    fn complete_classification() {
        let k5 = complete_graph(5).unwrap();
        let cg = |s: &str| ColoredGraph::new(k5.clone(), s.parse().unwrap()).unwrap();
        assert_eq!(
            complete_majority_weak_classification(&cg("RRRBB")).unwrap(),
            CompleteClassification::MajorityWeakMajority
        );
        assert_eq!(
            complete_majority_weak_classification(&cg("RRRRB")).unwrap(),
            CompleteClassification::None
        );
        let k4 = ColoredGraph::new(complete_graph(4).unwrap(), "RRBB".parse().unwrap()).unwrap();
        assert_eq!(
            complete_majority_weak_classification(&k4).unwrap(),
            CompleteClassification::UnanimityWeakMajority
        );
        let c4 = ColoredGraph::new(
            crate::graph::cycle_graph(4).unwrap(),
            "RRBB".parse().unwrap(),
        )
        .unwrap();
        assert_eq!(
            complete_majority_weak_classification(&c4),
            Err(FeasibilityError::NotComplete)
        );
    }

    #[test]
    fn odd_degree_bound() {
        assert_eq!(
            odd_degree_q_bound(3).unwrap(),
            Threshold::new(2, 3).unwrap()
        );
        assert_eq!(odd_degree_q_bound(1).unwrap(), Threshold::ONE);
        assert_eq!(
            odd_degree_q_bound(5).unwrap(),
            Threshold::new(3, 5).unwrap()
        );
        assert_eq!(odd_degree_q_bound(4), Err(FeasibilityError::EvenDegree(4)));
    }

    #[test]
    fn monochromatic_pq_bound() {
        // kn / ((n+1)(k+1)) = 24 / 35 for n = 6, k = 4
        assert!(regular_monochromatic_pq_necessary(
            6,
            4,
            Threshold::new(2, 3).unwrap()
        ));
        assert!(!regular_monochromatic_pq_necessary(
            6,
            4,
            Threshold::new(5, 7).unwrap()
        ));
    }
}
