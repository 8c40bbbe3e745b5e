//! Seeded test-corpus generators.

use std::collections::BTreeSet;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{edge_connectivity, DoubleWeightedGraph};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum GenerateError {
    #[error("need n >= 2 and K >= 1, got n = {n}, K = {k}")]
    Parameters { n: usize, k: u64 },
    #[error("no {k}-edge-connected multigraph on {n} vertices after {attempts} attempts")]
    Exhausted { n: usize, k: u64, attempts: usize },
    #[error("exhaustive enumeration is limited to {max} vertices")]
    TooLarge { max: usize },
}

pub const ATTEMPTS: usize = 20_000;

/// A random unit-weight multigraph on `n` vertices with edge connectivity
/// exactly `k`. Parallel edges make any `n >= 2` feasible. Samples edge multisets just above the degree lower bound and
/// keeps the first one whose connectivity checks out.
pub fn generate_k_connected(n: usize, k: u64, seed: u64) -> Result<DoubleWeightedGraph, GenerateError> {
    if k == 0 || n < 2 {
        return Err(GenerateError::Parameters { n, k });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let base = (n * k as usize).div_ceil(2);
    for _ in 0..ATTEMPTS {
        let m = base + rng.gen_range(0..=n / 2);
        let mut g = DoubleWeightedGraph::new(n);
        for _ in 0..m {
            let u = rng.gen_range(0..n);
            let mut v = rng.gen_range(0..n - 1);
            if v >= u {
                v += 1;
            }
            g.add_unit_edge(u.min(v), u.max(v)).expect("distinct endpoints");
        }
        if edge_connectivity(&g) == Ok(k) {
            return Ok(g);
        }
    }
    Err(GenerateError::Exhausted { n, k, attempts: ATTEMPTS })
}

pub const MAX_ENUMERATED: usize = 6;

/// All simple connected graphs on `n` vertices, one per isomorphism class,
/// ordered by their canonical edge mask.
pub fn connected_simple_graphs(n: usize) -> Result<Vec<DoubleWeightedGraph>, GenerateError> {
    if n > MAX_ENUMERATED {
        return Err(GenerateError::TooLarge { max: MAX_ENUMERATED });
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let index = |u: usize, v: usize| pairs.iter().position(|&p| p == (u.min(v), u.max(v))).expect("pair");
    let perms = permutations(n);
    // relabelled pair index for each permutation
    let maps: Vec<Vec<usize>> =
        perms.iter().map(|p| pairs.iter().map(|&(u, v)| index(p[u], p[v])).collect()).collect();
    let mut classes = BTreeSet::new();
    for mask in 0u32..1 << pairs.len() {
        let canon = maps
            .iter()
            .map(|map| (0..pairs.len()).filter(|&i| mask >> i & 1 == 1).fold(0u32, |acc, i| acc | 1 << map[i]))
            .min()
            .unwrap_or(mask);
        if canon == mask {
            classes.insert(mask);
        }
    }
    Ok(classes
        .into_iter()
        .map(|mask| {
            let edges: Vec<(usize, usize)> =
                pairs.iter().enumerate().filter(|&(i, _)| mask >> i & 1 == 1).map(|(_, &p)| p).collect();
            DoubleWeightedGraph::from_unit_edges(n, &edges).expect("valid pairs")
        })
        .filter(|g| g.is_connected())
        .collect())
}

/// Every connected simple graph with 2 to `max_n` vertices, up to isomorphism.
pub fn small_graph_corpus(max_n: usize) -> Result<Vec<DoubleWeightedGraph>, GenerateError> {
    let mut out = Vec::new();
    for n in 2..=max_n {
        out.extend(connected_simple_graphs(n)?);
    }
    Ok(out)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    heap(n, &mut p, &mut out);
    out
}

fn heap(k: usize, p: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if k <= 1 {
        out.push(p.clone());
        return;
    }
    for i in 0..k {
        heap(k - 1, p, out);
        let j = if k.is_multiple_of(2) { i } else { 0 };
        p.swap(j, k - 1);
    }
}
