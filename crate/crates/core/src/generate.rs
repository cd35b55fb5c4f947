//! Seeded random graph families for tests, benchmarks and the command line.
//!
//! Every generator is a pure function of its spec: the same seed always
//! yields the same graph, edge order included.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dsu::Dsu;
use crate::error::{Error, Result};
use crate::graph::WeightedGraph;

/// The crate's deterministic generator: `seed` picks the key, `stream` an
/// independent sequence under that key.
pub fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

#[derive(Clone, Debug, PartialEq)]
pub enum Model {
    /// Erdős–Rényi: every pair independently with probability `p`.
    Gnp { n: usize, p: f64 },
    /// `blocks` cliques of `block_size` vertices with edge weight `intra`,
    /// consecutive blocks joined by `links` distinct random edges of weight
    /// `cross`.
    Planted { blocks: usize, block_size: usize, intra: u64, cross: u64, links: usize },
    Grid { rows: usize, cols: usize },
    /// A uniform random recursive tree plus `extra` distinct random edges.
    TreePlus { n: usize, extra: usize },
}

#[derive(Clone, Debug, PartialEq)]
pub struct GenSpec {
    pub model: Model,
    /// Inclusive weight range (ignored by `Planted`).
    pub weights: (u64, u64),
    pub seed: u64,
}

#[derive(Clone, Debug)]
pub struct Generated {
    pub graph: WeightedGraph,
    /// For planted instances, the vertices of the first block (0-based).
    pub planted: Option<Vec<usize>>,
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidSpec(msg.into())
}

pub fn generate(spec: &GenSpec) -> Result<Generated> {
    let (lo, hi) = spec.weights;
    let needs_weights = !matches!(spec.model, Model::Planted { .. });
    if needs_weights && (lo == 0 || lo > hi) {
        return Err(invalid(format!("weight range {lo}..={hi} must satisfy 1 <= lo <= hi")));
    }
    let mut r = rng(spec.seed, 0);
    match spec.model {
        Model::Gnp { n, p } => {
            if n < 2 {
                return Err(invalid("gnp needs n >= 2"));
            }
            if !(0.0..=1.0).contains(&p) {
                return Err(invalid(format!("edge probability {p} outside [0, 1]")));
            }
            Ok(Generated { graph: gnp(n, p, spec.weights, &mut r)?, planted: None })
        }
        Model::Planted { blocks, block_size, intra, cross, links } => {
            if blocks < 2 || block_size == 0 || intra == 0 || cross == 0 {
                return Err(invalid("planted needs >= 2 blocks, non-empty blocks and positive weights"));
            }
            if links == 0 || links as u128 > block_size as u128 * block_size as u128 {
                return Err(invalid(format!("{links} links do not fit between blocks of {block_size}")));
            }
            let (graph, side) = planted(blocks, block_size, intra, cross, links, &mut r)?;
            Ok(Generated { graph, planted: Some(side) })
        }
        Model::Grid { rows, cols } => {
            if rows.saturating_mul(cols) < 2 {
                return Err(invalid("grid needs at least two cells"));
            }
            Ok(Generated { graph: grid(rows, cols, spec.weights, &mut r)?, planted: None })
        }
        Model::TreePlus { n, extra } => {
            if n < 2 {
                return Err(invalid("tree-plus needs n >= 2"));
            }
            let room = (n as u128 * (n as u128 - 1) / 2) - (n as u128 - 1);
            if extra as u128 > room {
                return Err(invalid(format!("only {room} non-tree pairs available for {extra} extra edges")));
            }
            Ok(Generated { graph: tree_plus(n, extra, spec.weights, &mut r)?, planted: None })
        }
    }
}

fn weight(r: &mut impl Rng, (lo, hi): (u64, u64)) -> u64 {
    r.gen_range(lo..=hi)
}

/// G(n, p) by geometric skipping over the pairs `(i, j)`, `i < j`, in
/// lexicographic order, then made connected by [`connect`].
pub fn gnp(n: usize, p: f64, weights: (u64, u64), r: &mut impl Rng) -> Result<WeightedGraph> {
    let mut edges = Vec::new();
    if p > 0.0 {
        let total = n as u64 * (n as u64 - 1) / 2;
        let log_q = (1.0 - p).ln();
        let skip = |r: &mut dyn rand::RngCore| -> u64 {
            if p >= 1.0 {
                0
            } else {
                let u: f64 = 1.0 - r.gen::<f64>();
                (u.ln() / log_q).floor().min(u64::MAX as f64 / 2.0) as u64
            }
        };
        let (mut i, mut row_start, mut row_len) = (0usize, 0u64, n as u64 - 1);
        let mut k = skip(r);
        while k < total {
            while k >= row_start + row_len {
                row_start += row_len;
                i += 1;
                row_len -= 1;
            }
            let j = i + 1 + (k - row_start) as usize;
            edges.push((i, j, weight(r, weights)));
            k = k.saturating_add(1 + skip(r));
        }
    }
    connect(n, &mut edges, weights, r);
    WeightedGraph::new(n, edges)
}

/// Joins the components of `edges` into one: each component after the first
/// (ordered by smallest vertex) gets an edge to a random vertex seen earlier.
pub fn connect(n: usize, edges: &mut Vec<(usize, usize, u64)>, weights: (u64, u64), r: &mut impl Rng) {
    let mut dsu = Dsu::new(n);
    for &(u, v, _) in edges.iter() {
        dsu.union(u, v);
    }
    let mut leader_seen = HashSet::new();
    let mut earlier: Vec<usize> = Vec::new();
    for v in 0..n {
        let root = dsu.find(v);
        if leader_seen.insert(root) && !earlier.is_empty() {
            let u = earlier[r.gen_range(0..earlier.len())];
            edges.push((u.min(v), u.max(v), weight(r, weights)));
        }
        earlier.push(v);
    }
}

fn planted(
    blocks: usize,
    size: usize,
    intra: u64,
    cross: u64,
    links: usize,
    r: &mut impl Rng,
) -> Result<(WeightedGraph, Vec<usize>)> {
    let n = blocks * size;
    let mut edges = Vec::new();
    for b in 0..blocks {
        let base = b * size;
        for i in 0..size {
            for j in i + 1..size {
                edges.push((base + i, base + j, intra));
            }
        }
        if b + 1 < blocks {
            let mut used = HashSet::new();
            while used.len() < links {
                let u = base + r.gen_range(0..size);
                let v = base + size + r.gen_range(0..size);
                if used.insert((u, v)) {
                    edges.push((u, v, cross));
                }
            }
        }
    }
    Ok((WeightedGraph::new(n, edges)?, (0..size).collect()))
}

fn grid(rows: usize, cols: usize, weights: (u64, u64), r: &mut impl Rng) -> Result<WeightedGraph> {
    let mut edges = Vec::new();
    for i in 0..rows {
        for j in 0..cols {
            let v = i * cols + j;
            if j + 1 < cols {
                edges.push((v, v + 1, weight(r, weights)));
            }
            if i + 1 < rows {
                edges.push((v, v + cols, weight(r, weights)));
            }
        }
    }
    WeightedGraph::new(rows * cols, edges)
}

fn tree_plus(n: usize, extra: usize, weights: (u64, u64), r: &mut impl Rng) -> Result<WeightedGraph> {
    let mut label: Vec<usize> = (0..n).collect();
    label.shuffle(r);
    let mut used = HashSet::new();
    let mut edges = Vec::new();
    for v in 1..n {
        let p = r.gen_range(0..v);
        let (a, b) = (label[p].min(label[v]), label[p].max(label[v]));
        used.insert((a, b));
        edges.push((a, b, weight(r, weights)));
    }
    while edges.len() < n - 1 + extra {
        let (a, b) = (r.gen_range(0..n), r.gen_range(0..n));
        if a != b && used.insert((a.min(b), a.max(b))) {
            edges.push((a.min(b), a.max(b), weight(r, weights)));
        }
    }
    WeightedGraph::new(n, edges)
}

/// A random spanning tree of a connected graph: Kruskal over a shuffled edge
/// order. Returns 0-based vertex pairs.
pub fn random_spanning_tree(g: &WeightedGraph, r: &mut impl Rng) -> Result<Vec<(usize, usize)>> {
    let mut order: Vec<usize> = (0..g.m()).collect();
    order.shuffle(r);
    let mut dsu = Dsu::new(g.n());
    let mut tree = Vec::with_capacity(g.n().saturating_sub(1));
    for i in order {
        let e = g.edge(i);
        if dsu.union(e.u, e.v) {
            tree.push((e.u, e.v));
        }
    }
    if tree.len() + 1 != g.n() {
        return Err(Error::Disconnected);
    }
    Ok(tree)
}
