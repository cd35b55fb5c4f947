//! Exact minimum cuts of weighted undirected graphs.
//!
//! The solver follows the tree-packing route: estimate the cut value, sample a
//! sparse multigraph, greedily pack spanning trees into it, and for a few of
//! those trees find the minimum cut that crosses at most two tree edges. That
//! last step is deterministic and runs in `O(m log n)` per tree.

pub mod bipartite;
mod cost;
mod dsu;
mod error;
pub mod generate;
pub mod graph;
pub mod induced;
pub mod oracle;
pub mod packing;
pub mod pipeline;
pub mod respect;
pub mod respect2;
pub mod score_tree;
mod stats;
pub mod tree;

pub use cost::Cost;
pub use error::{Error, ParseError, ParseErrorKind, Result};
pub use graph::{contract_heavy_edges, cut_weight, parse_graph, CutResult, Edge, Provenance, VertexMapping, WeightedGraph};
pub use bipartite::{build_bipartite_problems, solve_bipartite, BipartiteProblem, BipartiteSolution};
pub use generate::{generate, random_spanning_tree, GenSpec, Generated, Model};
pub use induced::{build_induced, recost_from_source, CostTree, Costs, InducedTree, Scope};
pub use oracle::{brute_2respect, exhaustive_min_cut, stoer_wagner};
pub use packing::{approx_min_cut, pack_trees, sample_multigraph, sample_trees, Multigraph, TreePacking};
pub use pipeline::{expand_cut, min_cut, run_pipeline, PipelineConfig, PipelineRun};
pub use respect::{compute_a, min_1respect, min_2respect_descendant, RespectScores};
pub use respect2::{min_2respect, min_2respect_instrumented};
pub use score_tree::ScoreTree;
pub use stats::OpStats;
pub use tree::{build_spanning_tree_view, heavy_decompose, HeavyPathDecomposition, LcaIndex, RootedBinaryTree, Topology};
