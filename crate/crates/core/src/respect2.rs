//! Minimum cut of a graph that crosses at most two edges of a spanning tree.

use crate::bipartite::{best_independent, build_bipartite_problems};
use crate::error::{Error, Result};
use crate::graph::{cut_weight, CutResult, WeightedGraph};
use crate::respect::{best_one_respecting, compute_a, descendant_scan, Candidate};
use crate::score_tree::ScoreTree;
use crate::stats::OpStats;
use crate::tree::build_spanning_tree_view;

/// The minimum over all cuts determined by one or two edges of the spanning
/// tree `tree_edges` (0-based vertex pairs). Ties keep the first candidate
/// found: single edges, then nested pairs in preorder, then independent pairs
/// by preorder of their branching node.
pub fn min_2respect(g: &WeightedGraph, tree_edges: &[(usize, usize)]) -> Result<CutResult> {
    min_2respect_instrumented(g, tree_edges).map(|(c, _)| c)
}

/// [`min_2respect`] together with its operation counters.
pub fn min_2respect_instrumented(g: &WeightedGraph, tree_edges: &[(usize, usize)]) -> Result<(CutResult, OpStats)> {
    if g.n() < 2 {
        return Err(Error::TooFewVertices);
    }
    let t = build_spanning_tree_view(g, tree_edges)?;
    let scores = compute_a(g, &t);
    let mut stats = OpStats::default();
    let mut score = ScoreTree::new(t.topology(), &scores.edge_costs(&t));

    // Problems are built first: their painting leaves the scores untouched,
    // while the walk below consumes them.
    let problems = build_bipartite_problems(g, &t, &scores, &mut score, &mut stats)?;
    let mut best: Option<Candidate> = best_one_respecting(&t, &scores);
    Candidate::improve(&mut best, descendant_scan(g, &t, &scores, &mut score, |_, _| {}));
    stats.score_ops += score.op_count();
    stats.score_steps += score.step_count();
    Candidate::improve(&mut best, best_independent(&problems, &mut stats)?);

    let cut = best.ok_or(Error::TooFewVertices)?.into_cut(g, &t)?;
    let actual = cut_weight(g, &cut.side)?;
    if actual != cut.weight {
        return Err(Error::Internal(format!("solver value {} but the side weighs {actual}", cut.weight)));
    }
    Ok((cut, stats))
}
