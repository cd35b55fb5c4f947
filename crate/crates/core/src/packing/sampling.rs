//! Weight-proportional edge sampling into an unweighted multigraph.

use std::collections::HashSet;

use rand::Rng;

use crate::dsu::Dsu;
use crate::error::{Error, Result};
use crate::graph::WeightedGraph;

/// Default sampling constant `K` in `p = min(1, K·ln n / ĉ)`.
pub const DEFAULT_SAMPLING_CONSTANT: f64 = 50.0;

/// Simple edges with multiplicities. The multigraph's edge count `m'` is the
/// sum of the multiplicities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multigraph {
    n: usize,
    edges: Vec<(usize, usize, u64)>,
    cap: u64,
    repaired: usize,
}

impl Multigraph {
    /// Validates and wraps an edge list `(u, v, multiplicity)`; the cap is the
    /// largest multiplicity present.
    pub fn new(n: usize, edges: Vec<(usize, usize, u64)>) -> Result<Multigraph> {
        let mut seen = HashSet::new();
        for &(u, v, k) in &edges {
            if u >= n || v >= n || u == v || k == 0 || !seen.insert((u.min(v), u.max(v))) {
                return Err(Error::InvalidSpec(format!("bad multigraph edge ({u},{v}) x{k}")));
            }
        }
        let cap = edges.iter().map(|e| e.2).max().unwrap_or(0);
        Ok(Multigraph { n, edges, cap, repaired: 0 })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `(u, v, multiplicity)` per parallel class.
    pub fn edges(&self) -> &[(usize, usize, u64)] {
        &self.edges
    }

    pub fn m_prime(&self) -> u64 {
        self.edges.iter().map(|e| e.2).sum()
    }

    /// Upper bound every multiplicity respects.
    pub fn cap(&self) -> u64 {
        self.cap
    }

    /// Edges added with multiplicity 1 to reconnect an unlucky sample.
    pub fn repaired(&self) -> usize {
        self.repaired
    }

    /// The same multigraph with multiplicities as weights.
    pub fn to_weighted(&self) -> Result<WeightedGraph> {
        WeightedGraph::new(self.n, self.edges.iter().copied())
    }
}

/// `p = min(1, K·ln n / ĉ)`.
pub fn sampling_probability(n: usize, estimate: u64, k: f64) -> f64 {
    (k * (n as f64).ln() / estimate as f64).min(1.0)
}

/// `draws` independent weight-proportional draws with replacement; returns
/// how often each edge was drawn.
pub fn sample_draws(g: &WeightedGraph, draws: u64, r: &mut impl Rng) -> Result<Vec<u64>> {
    let total = g.total_weight();
    if total == 0 {
        return Err(Error::ZeroWeight);
    }
    let prefix: Vec<u64> = g
        .edges()
        .iter()
        .scan(0u64, |acc, e| {
            *acc += e.w;
            Some(*acc)
        })
        .collect();
    let mut count = vec![0u64; g.m()];
    for _ in 0..draws {
        let x = r.gen_range(0..total);
        count[prefix.partition_point(|&p| p <= x)] += 1;
    }
    Ok(count)
}

/// Samples `H` from a graph whose edges are all at most `estimate` heavy.
///
/// With `p` as in [`sampling_probability`], `H` takes `⌈p·W⌉` draws; when
/// `p = 1` or the estimate is below `ln n` it is the graph itself with
/// multiplicity = weight. Multiplicities are then capped at `cap` (default
/// `⌈2pĉ⌉`), and if sampling disconnected the graph, spanning-forest edges of
/// the input are added with multiplicity 1.
pub fn sample_multigraph(
    g: &WeightedGraph,
    estimate: u64,
    k: f64,
    cap: Option<u64>,
    r: &mut impl Rng,
) -> Result<Multigraph> {
    if g.total_weight() == 0 {
        return Err(Error::ZeroWeight);
    }
    if estimate == 0 {
        return Err(Error::InvalidSpec("cut estimate must be at least 1".into()));
    }
    let n = g.n();
    let p = sampling_probability(n, estimate, k);
    let counts: Vec<u64> = if p >= 1.0 || (estimate as f64) < (n as f64).ln() {
        g.edges().iter().map(|e| e.w).collect()
    } else {
        let draws = (p * g.total_weight() as f64).ceil() as u64;
        sample_draws(g, draws, r)?
    };
    let cap = cap.unwrap_or_else(|| (2.0 * p * estimate as f64).ceil() as u64).max(1);
    let mut dsu = Dsu::new(n);
    let mut edges = Vec::new();
    for (e, &c) in g.edges().iter().zip(&counts) {
        if c > 0 {
            edges.push((e.u, e.v, c.min(cap)));
            dsu.union(e.u, e.v);
        }
    }
    let mut repaired = 0;
    for (e, &c) in g.edges().iter().zip(&counts) {
        if c == 0 && dsu.union(e.u, e.v) {
            edges.push((e.u, e.v, 1));
            repaired += 1;
        }
    }
    Ok(Multigraph { n, edges, cap, repaired })
}
