//! Graph corpora shared by the acceptance and property suites.
#![allow(dead_code)]

use itertools::Itertools;
use majority_illusion::{Color, ColoredGraph, Coloring, Graph};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// G(n, p) with `p` itself drawn from the seed.
pub fn random_graph(r: &mut impl Rng, n: usize) -> Graph {
    let p: f64 = r.gen_range(0.05..0.9);
    let edges: Vec<(usize, usize)> = (0..n)
        .tuple_combinations()
        .filter(|_| r.gen_bool(p))
        .collect();
    Graph::new(n, &edges).unwrap()
}

pub fn seeded_graph(seed: u64, max_n: usize) -> Graph {
    let mut r = rng(seed);
    let n = r.gen_range(1..=max_n);
    random_graph(&mut r, n)
}

pub fn seeded_colored(seed: u64, max_n: usize) -> ColoredGraph {
    let g = seeded_graph(seed, max_n);
    let c = Coloring::random(g.node_count(), seed ^ 0x9e37_79b9);
    ColoredGraph::new(g, c).unwrap()
}

/// Union of `m` edge-disjoint random perfect matchings on an even number of
/// nodes, `m` odd, so every degree is `m`.
pub fn odd_degree_graph(seed: u64) -> Graph {
    let mut r = rng(seed);
    loop {
        let n = 2 * r.gen_range(2..=20);
        let m = *[1, 3, 5].choose(&mut r).unwrap();
        if m >= n {
            continue;
        }
        let mut edges = BTreeSet::new();
        let mut ok = true;
        for _ in 0..m {
            let mut placed = false;
            for _attempt in 0..200 {
                let mut perm: Vec<usize> = (0..n).collect();
                perm.shuffle(&mut r);
                let matching: Vec<(usize, usize)> = perm
                    .chunks(2)
                    .map(|c| (c[0].min(c[1]), c[0].max(c[1])))
                    .collect();
                if matching.iter().all(|e| !edges.contains(e)) {
                    edges.extend(matching);
                    placed = true;
                    break;
                }
            }
            if !placed {
                ok = false;
                break;
            }
        }
        if ok {
            let edges: Vec<_> = edges.into_iter().collect();
            return Graph::new(n, &edges).unwrap();
        }
    }
}

pub fn coloring_from_mask(n: usize, mask: u32) -> Coloring {
    Coloring::new(
        (0..n)
            .map(|i| {
                if mask >> i & 1 == 1 {
                    Color::Red
                } else {
                    Color::Blue
                }
            })
            .collect(),
    )
}

pub fn all_colorings(g: &Graph) -> impl Iterator<Item = ColoredGraph> + '_ {
    let n = g.node_count();
    (0u32..1 << n).map(move |m| ColoredGraph::new(g.clone(), coloring_from_mask(n, m)).unwrap())
}

/// One representative per isomorphism class of connected graphs on `n`
/// nodes, found by minimising the edge bitmask over all relabelings.
pub fn connected_unlabeled(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).tuple_combinations().collect();
    let index = |u: usize, v: usize| {
        pairs
            .iter()
            .position(|&e| e == (u.min(v), u.max(v)))
            .unwrap()
    };
    let perms: Vec<Vec<usize>> = (0..n).permutations(n).collect();
    let images: Vec<Vec<usize>> = perms
        .iter()
        .map(|p| pairs.iter().map(|&(u, v)| index(p[u], p[v])).collect())
        .collect();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0u32..1 << pairs.len() {
        let edges: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        let g = Graph::new(n, &edges).unwrap();
        if !g.is_connected() {
            continue;
        }
        let canonical = images
            .iter()
            .map(|img| {
                img.iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .fold(0u32, |acc, (_, &j)| acc | 1 << j)
            })
            .min()
            .unwrap();
        if seen.insert(canonical) {
            out.push(g);
        }
    }
    out
}

/// Ten small base graphs on at most five nodes, including an isolated node
/// and a disconnected graph.
pub fn base_graphs() -> Vec<Graph> {
    use majority_illusion::graph::*;
    vec![
        Graph::empty(1).unwrap(),
        path_graph(2).unwrap(),
        path_graph(4).unwrap(),
        cycle_graph(3).unwrap(),
        cycle_graph(5).unwrap(),
        complete_graph(4).unwrap(),
        complete_graph(5).unwrap(),
        complete_bipartite_graph(2, 3).unwrap(),
        Graph::new(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap(),
        Graph::new(5, &[(0, 1), (1, 2), (2, 0), (3, 4)]).unwrap(),
    ]
}
