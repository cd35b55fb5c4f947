//! End-to-end randomized minimum cut.
//!
//! estimate `ĉ` → contract edges heavier than `ĉ` → sample `H` → pack trees →
//! draw trees → solve the 2-respecting problem for each distinct tree on the
//! contracted graph → lift the best side back to the input vertices.
//!
//! The answer is always a genuine cut of the input; it is minimum with high
//! probability.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::generate::rng;
use crate::graph::{contract_heavy_edges, cut_weight, CutResult, Provenance, VertexMapping, WeightedGraph};
use crate::packing::{approx_min_cut, pack_trees, sample_multigraph, sample_trees, DEFAULT_SAMPLING_CONSTANT};
use crate::respect2::min_2respect;

// RNG streams under the configured seed.
const SAMPLE_STREAM: u64 = 1;
const TREE_STREAM: u64 = 2;

#[derive(Clone, Debug, PartialEq)]
pub struct PipelineConfig {
    pub seed: u64,
    /// Sampling constant `K` in `p = min(1, K·ln n / ĉ)`.
    pub sampling_constant: f64,
    /// `ε` of the cut estimate, as `(numerator, denominator)`.
    pub epsilon: (u64, u64),
    /// Trees to draw; `None` means `⌈3·log2 n⌉`.
    pub trees: Option<usize>,
    /// Worker threads for the per-tree solves; 0 uses rayon's default pool.
    pub parallelism: usize,
    /// Multiplicity cap for `H`; `None` means `⌈2pĉ⌉`.
    pub multiplicity_cap: Option<u64>,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            seed: 0,
            sampling_constant: DEFAULT_SAMPLING_CONSTANT,
            epsilon: (1, 1),
            trees: None,
            parallelism: 0,
            multiplicity_cap: None,
        }
    }
}

impl PipelineConfig {
    pub fn with_seed(seed: u64) -> Self {
        PipelineConfig { seed, ..Self::default() }
    }

    /// Number of trees drawn for a graph with `n` vertices (at least 1).
    pub fn tree_count(&self, n: usize) -> usize {
        self.trees.unwrap_or_else(|| (3.0 * (n.max(2) as f64).log2()).ceil() as usize).max(1)
    }
}

/// Everything a run produced, for reporting and auditing.
#[derive(Clone, Debug)]
pub struct PipelineRun {
    pub cut: CutResult,
    pub estimate: u64,
    /// The graph the trees span, and how its vertices map back.
    pub contracted: WeightedGraph,
    pub mapping: VertexMapping,
    /// `(simple edges, m')` of the sampled multigraph.
    pub sampled_edges: (usize, u64),
    pub packing_iterations: u64,
    pub packing_scale: u64,
    pub distinct_packed: usize,
    /// Distinct drawn trees, as edges of `contracted`, in first-draw order.
    pub trees: Vec<Vec<(usize, usize)>>,
}

/// Minimum cut of `g` (Monte Carlo).
pub fn min_cut(g: &WeightedGraph, cfg: &PipelineConfig) -> Result<CutResult> {
    run_pipeline(g, cfg).map(|r| r.cut)
}

/// Lifts a side of the contracted graph to the original vertices.
pub fn expand_cut(mapping: &VertexMapping, side: &[usize]) -> Result<Vec<usize>> {
    mapping.expand(side)
}

pub fn run_pipeline(g: &WeightedGraph, cfg: &PipelineConfig) -> Result<PipelineRun> {
    if g.n() < 2 {
        return Err(Error::TooFewVertices);
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let (num, den) = cfg.epsilon;
    let estimate = approx_min_cut(g, num, den)?;
    let (mut contracted, mut mapping) = contract_heavy_edges(g, estimate);
    if contracted.n() < 2 {
        (contracted, mapping) = contract_heavy_edges(g, g.total_weight());
    }

    let h = sample_multigraph(
        &contracted,
        estimate,
        cfg.sampling_constant,
        cfg.multiplicity_cap,
        &mut rng(cfg.seed, SAMPLE_STREAM),
    )?;
    let packing = pack_trees(&h)?;
    let drawn = sample_trees(&packing, cfg.tree_count(g.n()), &mut rng(cfg.seed, TREE_STREAM))?;
    let mut seen = vec![false; packing.trees.len()];
    let trees: Vec<Vec<(usize, usize)>> = drawn
        .into_iter()
        .filter(|&i| !std::mem::replace(&mut seen[i], true))
        .map(|i| packing.tree_edges(i))
        .collect();

    let solve = |tree: &Vec<(usize, usize)>| min_2respect(&contracted, tree);
    let results: Vec<Result<CutResult>> = match cfg.parallelism {
        1 => trees.iter().map(solve).collect(),
        0 => trees.par_iter().map(solve).collect(),
        k => rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build()
            .map_err(|e| Error::Internal(format!("thread pool: {e}")))?
            .install(|| trees.par_iter().map(solve).collect()),
    };
    let mut best: Option<CutResult> = None;
    for r in results {
        let c = r?;
        if best.as_ref().is_none_or(|b| c.weight < b.weight) {
            best = Some(c);
        }
    }
    let best = best.ok_or(Error::EmptyPacking)?;

    let side = expand_cut(&mapping, &best.side)?;
    let weight = cut_weight(g, &side)?;
    if weight != best.weight {
        return Err(Error::Internal(format!("contracted cut weighs {} but the lifted side weighs {weight}", best.weight)));
    }
    let provenance = {
        let lift = edge_lifter(g, &mapping);
        match best.provenance {
            Provenance::OneRespecting(e) => Provenance::OneRespecting(lift(e)),
            Provenance::TwoRespecting(a, b) => Provenance::TwoRespecting(lift(a), lift(b)),
            Provenance::Oracle => Provenance::Oracle,
        }
    };
    Ok(PipelineRun {
        cut: CutResult { weight, side, provenance },
        estimate,
        sampled_edges: (h.edges().len(), h.m_prime()),
        packing_iterations: packing.iterations,
        packing_scale: packing.scale,
        distinct_packed: packing.trees.len(),
        contracted,
        mapping,
        trees,
    })
}

/// Maps an edge of the contracted graph to the first input edge between the
/// two vertex classes.
fn edge_lifter<'a>(g: &'a WeightedGraph, mapping: &'a VertexMapping) -> impl Fn((usize, usize)) -> (usize, usize) + 'a {
    let mut first: HashMap<(usize, usize), (usize, usize)> = HashMap::new();
    for e in g.edges() {
        let (a, b) = (mapping.forward(e.u), mapping.forward(e.v));
        if a != b {
            first.entry((a.min(b), a.max(b))).or_insert((e.u, e.v));
        }
    }
    move |(a, b)| first[&(a.min(b), a.max(b))]
}
