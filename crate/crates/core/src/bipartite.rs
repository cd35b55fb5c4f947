//! Independent tree-edge pairs through bipartite problems.
//!
//! For a binary node `w` with children `x` and `y`, every pair of edges
//! `e` in `(w,x) ∪ T_x` and `e'` in `(w,y) ∪ T_y` determines the cut
//! `T_e ∪ T_e'`, which weighs `A(e) + A(e') - 2·w(T_e, T_e')`. Only graph
//! edges with LCA `w` join the two sides, so each `w` yields a problem: two
//! trees with edge costs `A` plus cross edges of cost `-2w` between them,
//! compacted with induced trees so that all problems together have size
//! `O(m)`.
//!
//! A problem is solved by recursion on fragments of `t1` (a piece of a heavy
//! path plus everything hanging off it through light edges), with heavy paths
//! chosen by cross-edge counts. Each call handles the at most three edges at
//! the fragment's middle node directly, against a small induced copy of `t2`,
//! and recurses on the rest.

use crate::cost::Cost;
use crate::error::{Error, Result};
use crate::graph::{CutResult, WeightedGraph};
use crate::induced::{build_induced, reinduce, CostTree, Costs, Scope};
use crate::respect::{Candidate, Determining, RespectScores};
use crate::score_tree::ScoreTree;
use crate::stats::OpStats;
use crate::tree::{heavy_decompose, HeavyPathDecomposition, RootedBinaryTree, Topology, NONE};

/// Two edge-cost trees and signed cross edges `(node of t1, node of t2, cost)`.
#[derive(Clone, Debug)]
pub struct BipartiteProblem {
    pub t1: CostTree,
    pub t2: CostTree,
    pub cross: Vec<(usize, usize, Cost)>,
    /// Base-tree node the problem was built at, `NONE` for standalone problems.
    pub at: usize,
}

impl BipartiteProblem {
    pub fn size(&self) -> usize {
        self.t1.len() + self.t2.len() + self.cross.len()
    }

    pub fn validate(&self) -> Result<()> {
        if self.t1.len() < 2 || self.t2.len() < 2 {
            return Err(Error::MalformedProblem("both trees need at least one edge".into()));
        }
        for &(x, y, _) in &self.cross {
            if x >= self.t1.len() || y >= self.t2.len() {
                return Err(Error::MalformedProblem(format!("cross edge ({x},{y}) has a missing endpoint")));
            }
        }
        Ok(())
    }
}

/// Best partner per `t1` edge and the overall optimum.
#[derive(Clone, Debug)]
pub struct BipartiteSolution {
    /// `(value, t1 edge, t2 edge)`, edges named by lower node.
    pub best: Option<(Cost, usize, usize)>,
    /// For each `t1` node, the best value for the edge above it and the `t2`
    /// edge attaining it (`None` at the root).
    pub per_edge: Vec<Option<(Cost, usize)>>,
    pub max_depth: usize,
    pub steps: u64,
}

/// Objective of a single pair; the reference the solver is tested against.
pub fn pair_value(p: &BipartiteProblem, e1: usize, e2: usize) -> Cost {
    let (a, b) = (&p.t1.topo, &p.t2.topo);
    let mut v = p.t1.cost[e1] + p.t2.cost[e2];
    for &(x, y, c) in &p.cross {
        if a.is_ancestor(e1, x) && b.is_ancestor(e2, y) {
            v += c;
        }
    }
    v
}

/// Solves a bipartite problem: for every edge of `t1`, the cheapest edge of
/// `t2` to pair it with, in `O(m log m)` for a problem of size `m`.
pub fn solve_bipartite(p: &BipartiteProblem) -> Result<BipartiteSolution> {
    p.validate()?;
    let t1 = &p.t1.topo;
    let mut load = vec![0u64; t1.len()];
    for &(x, _, _) in &p.cross {
        load[x] += 1;
    }
    let hld = heavy_decompose(t1, &load);
    let mut solver = Solver {
        p,
        hld,
        per_edge: vec![None; t1.len()],
        y_slot: vec![NONE; p.t2.len()],
        max_depth: 0,
        steps: 0,
    };
    let t2 = p.t2.localized();
    let all: Vec<usize> = (0..p.cross.len()).collect();
    let mut lambda: Vec<usize> = std::iter::once(0).chain(p.cross.iter().map(|c| c.1)).collect();
    lambda.sort_unstable();
    lambda.dedup();
    let root2 = reinduce(&t2, false, &lambda);
    solver.steps += root2.source_ops;
    let frag = Frag { path: solver.hld.path_of[0], lo: 0, hi: solver.hld.paths[solver.hld.path_of[0]].len() - 1 };
    let synthetic = root2.has_empty_class;
    solver.solve(frag, &all, &root2.tree, &root2.tree, synthetic, 1);

    let mut best: Option<(Cost, usize, usize)> = None;
    for (e, b) in solver.per_edge.iter().enumerate() {
        if let Some((v, partner)) = *b {
            if best.is_none_or(|(bv, _, _)| v < bv) {
                best = Some((v, e, partner));
            }
        }
    }
    Ok(BipartiteSolution { best, per_edge: solver.per_edge, max_depth: solver.max_depth, steps: solver.steps })
}

#[derive(Copy, Clone, Debug)]
struct Frag {
    path: usize,
    lo: usize,
    hi: usize,
}

struct Solver<'a> {
    p: &'a BipartiteProblem,
    hld: HeavyPathDecomposition,
    per_edge: Vec<Option<(Cost, usize)>>,
    // scratch: t2 node -> node of the current fragment tree
    y_slot: Vec<usize>,
    max_depth: usize,
    steps: u64,
}

/// Cheapest edge of `tree` after adding `extra[v]` (propagated subtree sums of
/// marked cross costs) to every edge; returns `(value, witness)`.
fn cheapest(tree: &CostTree, extra: Option<&[Cost]>) -> (Cost, usize) {
    let mut best = (Cost::SENTINEL, NONE);
    for v in 1..tree.len() {
        let c = tree.cost[v] + extra.map_or(Cost::ZERO, |x| x[v]);
        if c < best.0 {
            best = (c, tree.witness[v]);
        }
    }
    best
}

impl Solver<'_> {
    fn t1(&self) -> &Topology {
        &self.p.t1.topo
    }

    /// Subtree sums over `tree` of the costs of the given cross edges, placed at
    /// their `t2` endpoints (`slot` gives each endpoint's node in `tree`).
    fn propagate(&mut self, tree: &CostTree, edges: impl Iterator<Item = usize>, slot: &[usize]) -> Vec<Cost> {
        let mut sub = vec![Cost::ZERO; tree.len()];
        for k in edges {
            sub[slot[k]] += self.p.cross[k].2;
            self.steps += 1;
        }
        for v in (1..tree.len()).rev() {
            let pv = tree.topo.parents()[v];
            let s = sub[v];
            sub[pv] += s;
        }
        self.steps += tree.len() as u64;
        sub
    }

    fn record(&mut self, e: usize, partner: (Cost, usize)) {
        let v = self.p.t1.cost[e] + partner.0;
        self.per_edge[e] = Some((v, partner.1));
    }

    /// `T2(g)`-style tree for a sub-fragment: induced on `tree` by its real
    /// root and the `t2` endpoints of `edges`.
    fn induce_for(&mut self, tree: &CostTree, synthetic: bool, edges: &[usize], slot: &[usize]) -> (CostTree, bool) {
        let root = usize::from(synthetic);
        let mut lambda: Vec<usize> = std::iter::once(root).chain(edges.iter().map(|&k| slot[k])).collect();
        lambda.sort_unstable();
        lambda.dedup();
        let t = reinduce(tree, synthetic, &lambda);
        self.steps += t.source_ops;
        (t.tree, t.has_empty_class)
    }

    /// `edges` are indices into `cross` with `t1` endpoint inside `f`.
    /// `t2f` and `t2pf` share a topology; `t2pf` already includes the cost of
    /// cross edges hanging below the bottom of `f`.
    fn solve(&mut self, f: Frag, edges: &[usize], t2f: &CostTree, t2pf: &CostTree, synthetic: bool, depth: usize) {
        self.max_depth = self.max_depth.max(depth);
        debug_assert_eq!(t2f.len(), t2pf.len());
        let path = self.hld.paths[f.path].clone();
        if edges.is_empty() {
            self.base_case(f, &path, t2f, t2pf);
            return;
        }
        // Node of the fragment trees for each cross edge's t2 endpoint.
        for v in 0..t2f.len() {
            if t2f.origin[v] != NONE {
                self.y_slot[t2f.origin[v]] = v;
            }
        }
        let mut slot = vec![NONE; self.p.cross.len()];
        for &k in edges {
            slot[k] = self.y_slot[self.p.cross[k].1];
        }
        self.steps += (t2f.len() + edges.len()) as u64;

        // Middle node: first position whose light-size prefix exceeds half.
        let m = edges.len() as u64;
        let lights = &self.hld.light_positions[f.path];
        let start = lights.partition_point(|&i| i < f.lo);
        let mut prefix = 0u64;
        let mut mid = f.hi;
        for &i in &lights[start..] {
            self.steps += 1;
            prefix += self.hld.light_size[path[i]];
            if 2 * prefix > m {
                mid = i;
                break;
            }
        }
        let u = path[mid];
        let heavy = self.hld.heavy[u];
        let below_heavy = (mid < f.hi).then_some(heavy);

        let t1 = self.t1().clone();
        let light_children: Vec<usize> = t1.children(u).filter(|&c| c != heavy).collect();
        let mut upper = Vec::new();
        let mut lower = Vec::new();
        let mut at_mid = Vec::new();
        let mut in_light: Vec<Vec<usize>> = vec![Vec::new(); light_children.len()];
        for &k in edges {
            let x = self.p.cross[k].0;
            if !t1.is_ancestor(u, x) {
                upper.push(k);
            } else if x == u {
                at_mid.push(k);
            } else if below_heavy.is_some_and(|h| t1.is_ancestor(h, x)) {
                lower.push(k);
            } else {
                let j = light_children.iter().position(|&c| t1.is_ancestor(c, x)).expect("x lies below a light child");
                in_light[j].push(k);
            }
        }
        self.steps += edges.len() as u64;

        // Light edges at the middle node pair against T2(f).
        for (j, &c) in light_children.iter().enumerate() {
            let sub = self.propagate(t2f, in_light[j].iter().copied(), &slot);
            let best = cheapest(t2f, Some(&sub));
            self.record(c, best);
            self.steps += t2f.len() as u64;
        }
        // Edge above the middle node: everything of f below it, plus L↓(f).
        let mut t2p_upper = None;
        if mid > f.lo {
            let below: Vec<usize> = edges.iter().copied().filter(|&k| t1.is_ancestor(u, self.p.cross[k].0)).collect();
            let sub = self.propagate(t2pf, below.into_iter(), &slot);
            self.record(u, cheapest(t2pf, Some(&sub)));
            self.steps += t2pf.len() as u64;
            let mut shifted = t2pf.clone();
            for v in 1..shifted.len() {
                shifted.cost[v] += sub[v];
            }
            t2p_upper = Some(shifted);
        }
        // Edge below the middle node along the heavy path.
        if let Some(h) = below_heavy {
            let sub = self.propagate(t2pf, lower.iter().copied(), &slot);
            self.record(h, cheapest(t2pf, Some(&sub)));
            self.steps += t2pf.len() as u64;
        }

        if let Some(shifted) = t2p_upper {
            let (a, syn) = self.induce_for(t2f, synthetic, &upper, &slot);
            let (b, _) = self.induce_for(&shifted, synthetic, &upper, &slot);
            self.solve(Frag { path: f.path, lo: f.lo, hi: mid - 1 }, &upper, &a, &b, syn, depth + 1);
        }
        if mid < f.hi {
            let (a, syn) = self.induce_for(t2f, synthetic, &lower, &slot);
            let (b, _) = self.induce_for(t2pf, synthetic, &lower, &slot);
            self.solve(Frag { path: f.path, lo: mid + 1, hi: f.hi }, &lower, &a, &b, syn, depth + 1);
        }
        for (j, &c) in light_children.iter().enumerate() {
            let (a, syn) = self.induce_for(t2f, synthetic, &in_light[j], &slot);
            let p = self.hld.path_of[c];
            let whole = Frag { path: p, lo: 0, hi: self.hld.paths[p].len() - 1 };
            self.solve(whole, &in_light[j], &a, &a, syn, depth + 1);
        }
    }

    /// No cross edge starts inside `f`: heavy-path edges see only the cross
    /// edges below the fragment (already in `t2pf`), everything else sees none.
    fn base_case(&mut self, f: Frag, path: &[usize], t2f: &CostTree, t2pf: &CostTree) {
        let plain = cheapest(t2f, None);
        let shifted = cheapest(t2pf, None);
        self.steps += (t2f.len() + t2pf.len()) as u64;
        let t1 = self.t1().clone();
        for j in f.lo..=f.hi {
            let u = path[j];
            if j > f.lo {
                self.record(u, shifted);
            }
            for c in t1.children(u) {
                if c != self.hld.heavy[u] {
                    for v in t1.subtree(c) {
                        self.record(v, plain);
                    }
                    self.steps += t1.subtree_size(c) as u64;
                }
            }
        }
    }
}

/// Builds one problem per binary node of `t`. `score` must hold the edge
/// costs `A` (with `+inf` on gadget edges); it is painted temporarily and
/// restored. Problems come in preorder of their node.
pub fn build_bipartite_problems(
    g: &WeightedGraph,
    t: &RootedBinaryTree,
    scores: &RespectScores,
    score: &mut ScoreTree,
    stats: &mut OpStats,
) -> Result<Vec<BipartiteProblem>> {
    let topo = t.topology();
    let base = CostTree::identity(topo.clone(), scores.edge_costs(t));
    let mut problems = Vec::new();
    for w in 0..t.len() {
        let kids: Vec<usize> = topo.children(w).collect();
        let &[x, y] = kids.as_slice() else { continue };
        let mut cross = Vec::new();
        for &i in scores.lca_list(w) {
            let e = g.edge(i);
            let (a, b) = (t.node_of(e.u), t.node_of(e.v));
            if a == w || b == w {
                continue;
            }
            let (a, b) = if topo.is_ancestor(x, a) { (a, b) } else { (b, a) };
            cross.push((a, b, Cost::finite(-2 * e.w as i64)));
        }
        let side = |top: usize, ends: &mut dyn Iterator<Item = usize>| {
            let mut l: Vec<usize> = [w, top].into_iter().chain(ends).collect();
            l.sort_unstable();
            l.dedup();
            l
        };
        let lx = side(x, &mut cross.iter().map(|c| c.0));
        let ly = side(y, &mut cross.iter().map(|c| c.1));
        let lca = t.lca_index();
        let t1 = build_induced(&base, Costs::Scored { score, lca }, Scope::child(topo, w, x), &lx)?;
        let t2 = build_induced(&base, Costs::Scored { score, lca }, Scope::child(topo, w, y), &ly)?;
        for tr in [&t1, &t2] {
            if tr.variant == crate::induced::Variant::Sweep {
                stats.induce_steps += tr.source_ops;
            }
        }
        let find = |l: &[usize], nodes: &[usize], v: usize| nodes[l.binary_search(&v).expect("endpoint is in lambda")];
        let cross = cross
            .into_iter()
            .map(|(a, b, c)| (find(&lx, &t1.lambda_nodes, a), find(&ly, &t2.lambda_nodes, b), c))
            .collect();
        problems.push(BipartiteProblem { t1: t1.tree, t2: t2.tree, cross, at: w });
    }
    Ok(problems)
}

/// Best candidate over all problems (first strictly smallest in problem order).
pub(crate) fn best_independent(problems: &[BipartiteProblem], stats: &mut OpStats) -> Result<Option<Candidate>> {
    let mut best = None;
    for p in problems {
        stats.problems += 1;
        stats.problem_size += p.size() as u64;
        let sol = solve_bipartite(p)?;
        stats.solver_steps += sol.steps;
        stats.max_depth = stats.max_depth.max(sol.max_depth as u64);
        if let Some((v, e1, e2)) = sol.best {
            if let Some(value) = v.get() {
                let (a, b) = (p.t1.witness[e1], p.t2.witness[e2]);
                Candidate::improve(&mut best, Some(Candidate { value, by: Determining::Disjoint(a, b) }));
            }
        }
    }
    Ok(best)
}

/// Minimum cut crossing two tree edges neither of which is below the other.
/// Returns `None` when the tree has no branching node.
pub fn min_2respect_independent(g: &WeightedGraph, t: &RootedBinaryTree) -> Result<Option<CutResult>> {
    let scores = crate::respect::compute_a(g, t);
    let mut score = ScoreTree::new(t.topology(), &scores.edge_costs(t));
    let mut stats = OpStats::default();
    let problems = build_bipartite_problems(g, t, &scores, &mut score, &mut stats)?;
    best_independent(&problems, &mut stats)?.map(|c| c.into_cut(g, t)).transpose()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::parse_graph;
    use crate::tree::build_spanning_tree_view;

    fn edge_tree(cost: i64) -> CostTree {
        CostTree::identity(Topology::from_preorder_parents(vec![NONE, 0]), vec![Cost::ZERO, Cost::finite(cost)])
    }

    #[test]
    fn single_pair() {
        let p = BipartiteProblem { t1: edge_tree(5), t2: edge_tree(7), cross: vec![(1, 1, Cost::finite(-4))], at: NONE };
        let s = solve_bipartite(&p).unwrap();
        assert_eq!(s.best, Some((Cost::finite(8), 1, 1)));
    }

    #[test]
    fn separable_without_cross_edges() {
        let path = Topology::from_preorder_parents(vec![NONE, 0, 1]);
        let t1 = CostTree::identity(path.clone(), vec![Cost::ZERO, Cost::finite(6), Cost::finite(2)]);
        let t2 = CostTree::identity(path, vec![Cost::ZERO, Cost::finite(3), Cost::finite(9)]);
        let p = BipartiteProblem { t1, t2, cross: vec![], at: NONE };
        assert_eq!(solve_bipartite(&p).unwrap().best.unwrap().0, Cost::finite(5));
    }

    #[test]
    fn rejects_malformed() {
        let p = BipartiteProblem { t1: edge_tree(1), t2: edge_tree(1), cross: vec![(2, 0, Cost::ZERO)], at: NONE };
        assert!(matches!(solve_bipartite(&p), Err(Error::MalformedProblem(_))));
    }

    #[test]
    fn triangle_reduction() {
        let g = parse_graph("3 3\n1 2 1\n2 3 2\n1 3 3").unwrap();
        let t = build_spanning_tree_view(&g, &[(0, 1), (0, 2)]).unwrap();
        let scores = crate::respect::compute_a(&g, &t);
        let mut score = ScoreTree::new(t.topology(), &scores.edge_costs(&t));
        let mut stats = OpStats::default();
        let ps = build_bipartite_problems(&g, &t, &scores, &mut score, &mut stats).unwrap();
        assert_eq!(ps.len(), 1);
        assert_eq!(ps[0].cross.len(), 1);
        assert_eq!(ps[0].cross[0].2, Cost::finite(-4));
        let c = min_2respect_independent(&g, &t).unwrap().unwrap();
        assert_eq!(c.weight, 4);
        assert_eq!(c.side, vec![1, 2]);
    }

    #[test]
    fn path_tree_has_no_problems() {
        let g = parse_graph("3 2\n1 2 1\n2 3 1").unwrap();
        let t = build_spanning_tree_view(&g, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(min_2respect_independent(&g, &t).unwrap(), None);
    }

    #[test]
    fn k4_star() {
        let g = parse_graph("4 6\n1 2 1\n1 3 1\n1 4 1\n2 3 1\n2 4 1\n3 4 1").unwrap();
        let t = build_spanning_tree_view(&g, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let c = min_2respect_independent(&g, &t).unwrap().unwrap();
        assert_eq!(c.weight, 4);
        // the best pair isolates two leaves; single leaves are 1-respecting cuts of weight 3
        assert_eq!(crate::respect::min_1respect(&g, &t).unwrap().weight, 3);
    }
}
