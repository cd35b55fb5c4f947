//! Seeded inputs shared by the benchmarks.

use twocut::generate::rng;
use twocut::{generate, random_spanning_tree, GenSpec, Model, WeightedGraph};

/// `G(n, p)` with about `m` edges and average degree `degree`, weights 1..=20.
pub fn gnp_with_edges(m: usize, degree: usize, seed: u64) -> WeightedGraph {
    let n = (2 * m / degree).max(2);
    let p = (2.0 * m as f64 / (n as f64 * (n as f64 - 1.0))).min(1.0);
    generate(&GenSpec { model: Model::Gnp { n, p }, weights: (1, 20), seed }).expect("valid spec").graph
}

/// A graph together with a random spanning tree of it.
pub fn with_tree(g: WeightedGraph, seed: u64) -> (WeightedGraph, Vec<(usize, usize)>) {
    let tree = random_spanning_tree(&g, &mut rng(seed, 3)).expect("generated graphs are connected");
    (g, tree)
}
