//! Cuts crossing one tree edge, and cuts crossing two tree edges where one
//! lies below the other.
//!
//! `A(e)` is the weight of graph edges with exactly one endpoint below tree
//! edge `e`. For nested edges `e` above `e'` the cut between them weighs
//! `A(e) + A(e') - 2·w(T_{e'}, V∖T_e)`. A preorder walk keeps, for every edge
//! `e'`, a score equal to `A(e')` minus twice the weight of edges leaving
//! `T_{e'}` whose LCA has already been visited; at the first visit of `e` the
//! score of each `e'` below it is then exactly the bracketed correction.

use crate::cost::Cost;
use crate::error::{Error, Result};
use crate::graph::{CutResult, Provenance, WeightedGraph};
use crate::score_tree::ScoreTree;
use crate::tree::RootedBinaryTree;

/// `A(e)` for every tree edge and the graph edges grouped by the LCA of
/// their endpoints.
#[derive(Clone, Debug)]
pub struct RespectScores {
    a: Vec<i64>,
    lca_start: Vec<usize>,
    lca_edges: Vec<usize>,
}

impl RespectScores {
    /// Weight crossing the edge above `node` (also defined for gadget edges).
    pub fn a(&self, node: usize) -> i64 {
        self.a[node]
    }

    /// Graph edge indices whose endpoints have `node` as LCA.
    pub fn lca_list(&self, node: usize) -> &[usize] {
        &self.lca_edges[self.lca_start[node]..self.lca_start[node + 1]]
    }

    /// Initial score-tree costs: `A(e)` on graph edges, `+inf + A(e)` on gadget edges.
    pub fn edge_costs(&self, t: &RootedBinaryTree) -> Vec<Cost> {
        (0..t.len())
            .map(|v| {
                let a = Cost::finite(self.a[v]);
                if t.edge_of(v).is_some() {
                    a
                } else {
                    Cost::INFINITY + a
                }
            })
            .collect()
    }
}

/// Computes `A` bottom-up (`+w` at both endpoints, `-2w` at their LCA).
pub fn compute_a(g: &WeightedGraph, t: &RootedBinaryTree) -> RespectScores {
    let size = t.len();
    let mut delta = vec![0i64; size];
    let mut count = vec![0usize; size + 1];
    let mut lcas = Vec::with_capacity(g.m());
    for e in g.edges() {
        let (a, b) = (t.node_of(e.u), t.node_of(e.v));
        let l = t.lca(a, b);
        let w = e.w as i64;
        delta[a] += w;
        delta[b] += w;
        delta[l] -= 2 * w;
        count[l + 1] += 1;
        lcas.push(l);
    }
    let topo = t.topology();
    for v in (1..size).rev() {
        let p = topo.parents()[v];
        delta[p] += delta[v];
    }
    for i in 0..size {
        count[i + 1] += count[i];
    }
    let lca_start = count.clone();
    let mut fill = count;
    let mut lca_edges = vec![0; g.m()];
    for (i, &l) in lcas.iter().enumerate() {
        lca_edges[fill[l]] = i;
        fill[l] += 1;
    }
    RespectScores { a: delta, lca_start, lca_edges }
}

/// How a candidate cut is determined by tree edges (named by lower node).
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub(crate) enum Determining {
    One(usize),
    Nested { upper: usize, lower: usize },
    Disjoint(usize, usize),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub(crate) struct Candidate {
    pub value: i64,
    pub by: Determining,
}

impl Candidate {
    /// Keeps `self` unless `other` is strictly better.
    pub fn improve(best: &mut Option<Candidate>, other: Option<Candidate>) {
        if let Some(o) = other {
            if best.is_none_or(|b| o.value < b.value) {
                *best = Some(o);
            }
        }
    }

    pub fn into_cut(self, g: &WeightedGraph, t: &RootedBinaryTree) -> Result<CutResult> {
        let pair = |node: usize| -> Result<(usize, usize)> {
            let e = t.edge_of(node).ok_or_else(|| Error::Internal(format!("node {node} has a gadget edge")))?;
            let e = g.edge(e);
            Ok((e.u, e.v))
        };
        let topo = t.topology();
        let (side, provenance) = match self.by {
            Determining::One(x) => (t.side_below(x, None), Provenance::OneRespecting(pair(x)?)),
            Determining::Nested { upper, lower } => {
                (t.side_below(upper, Some(lower)), Provenance::TwoRespecting(pair(upper)?, pair(lower)?))
            }
            Determining::Disjoint(a, b) => (
                t.vertices_in(&[topo.subtree(a), topo.subtree(b)]),
                Provenance::TwoRespecting(pair(a.min(b))?, pair(a.max(b))?),
            ),
        };
        let weight = u64::try_from(self.value).map_err(|_| Error::Internal("negative cut value".into()))?;
        Ok(CutResult { weight, side, provenance })
    }
}

pub(crate) fn best_one_respecting(t: &RootedBinaryTree, scores: &RespectScores) -> Option<Candidate> {
    let mut best: Option<Candidate> = None;
    for v in 1..t.len() {
        if t.edge_of(v).is_some() {
            Candidate::improve(&mut best, Some(Candidate { value: scores.a(v), by: Determining::One(v) }));
        }
    }
    best
}

/// Minimum cut crossing exactly one edge of the tree.
pub fn min_1respect(g: &WeightedGraph, t: &RootedBinaryTree) -> Result<CutResult> {
    let scores = compute_a(g, t);
    best_one_respecting(t, &scores).ok_or(Error::TooFewVertices)?.into_cut(g, t)
}

/// Runs the preorder walk on `score` (which must hold [`RespectScores::edge_costs`]),
/// calling `observe(x, score)` at the first visit of every node before the
/// candidate below `x` is evaluated. Leaves `score` with all LCA updates applied.
pub(crate) fn descendant_scan(
    g: &WeightedGraph,
    t: &RootedBinaryTree,
    scores: &RespectScores,
    score: &mut ScoreTree,
    mut observe: impl FnMut(usize, &ScoreTree),
) -> Option<Candidate> {
    let topo = t.topology();
    let mut best = None;
    for x in 0..t.len() {
        observe(x, score);
        if t.edge_of(x).is_some() && !topo.is_leaf(x) {
            let (c, y) = score.subtree_min(x).expect("inner node has edges below");
            if let Some(s) = c.get() {
                let cand = Candidate { value: scores.a(x) + s, by: Determining::Nested { upper: x, lower: y } };
                Candidate::improve(&mut best, Some(cand));
            }
        }
        for &i in scores.lca_list(x) {
            let e = g.edge(i);
            let w = e.w as i64;
            score.add(t.node_of(e.u), Cost::finite(-2 * w));
            score.add(t.node_of(e.v), Cost::finite(-2 * w));
            score.add(x, Cost::finite(4 * w));
        }
    }
    best
}

/// Minimum cut crossing two tree edges, one a descendant of the other.
/// Returns `None` when the tree has no such pair.
pub fn min_2respect_descendant(g: &WeightedGraph, t: &RootedBinaryTree) -> Result<Option<CutResult>> {
    let scores = compute_a(g, t);
    let mut score = ScoreTree::new(t.topology(), &scores.edge_costs(t));
    descendant_scan(g, t, &scores, &mut score, |_, _| {}).map(|c| c.into_cut(g, t)).transpose()
}

/// Same as [`min_2respect_descendant`], but hands every intermediate
/// score-tree state to `observe` (used to audit the walk).
pub fn min_2respect_descendant_observed(
    g: &WeightedGraph,
    t: &RootedBinaryTree,
    observe: impl FnMut(usize, &ScoreTree),
) -> Result<Option<CutResult>> {
    let scores = compute_a(g, t);
    let mut score = ScoreTree::new(t.topology(), &scores.edge_costs(t));
    descendant_scan(g, t, &scores, &mut score, observe).map(|c| c.into_cut(g, t)).transpose()
}
