#![allow(dead_code)]

use std::collections::BTreeMap;

use rand::seq::index::sample;
use rand::Rng;
use twocut::bipartite::pair_value;
use twocut::respect::min_2respect_descendant_observed;
use twocut::tree::NONE;
use twocut::{
    build_induced, build_spanning_tree_view, compute_a, cut_weight, solve_bipartite, BipartiteProblem, Cost, CostTree,
    Costs, RootedBinaryTree, Scope, Topology, WeightedGraph,
};

/// Random rooted tree on `n` nodes in preorder; `max_children` bounds the
/// branching (0 for unbounded).
pub fn random_topology(n: usize, max_children: usize, r: &mut impl Rng) -> Topology {
    let mut children = vec![Vec::new(); n];
    for v in 1..n {
        loop {
            let p = r.gen_range(0..v);
            if max_children == 0 || children[p].len() < max_children {
                children[p].push(v);
                break;
            }
        }
    }
    Topology::from_children(0, &children).0
}

/// Random edge costs in `-spread..=spread`; roughly one edge in `inf_every`
/// is infinite (0 disables).
pub fn random_costs(n: usize, spread: i64, inf_every: u32, r: &mut impl Rng) -> Vec<Cost> {
    (0..n)
        .map(|_| {
            if inf_every > 0 && r.gen_ratio(1, inf_every) {
                Cost::INFINITY
            } else {
                Cost::finite(r.gen_range(-spread..=spread))
            }
        })
        .collect()
}

pub fn random_cost_tree(n: usize, max_children: usize, spread: i64, inf_every: u32, r: &mut impl Rng) -> CostTree {
    let topo = random_topology(n, max_children, r);
    let cost = random_costs(n, spread, inf_every, r);
    CostTree::identity(topo, cost)
}

pub fn parents_are_preorder(t: &Topology) -> bool {
    t.parents()[0] == NONE && (1..t.len()).all(|v| t.parents()[v] < v)
}

// ---- induced trees: subset-grouping oracle

/// For each non-empty set of Λ entries (as a bitmask), the cheapest finite edge
/// whose lower subtree contains exactly that set.
pub fn classes(topo: &Topology, cost: &[Cost], lambda_at: &[usize], range: std::ops::Range<usize>) -> BTreeMap<u32, Cost> {
    let mut best = BTreeMap::new();
    for v in range {
        if !cost[v].is_finite() {
            continue;
        }
        let mut mask = 0u32;
        for (i, &l) in lambda_at.iter().enumerate() {
            if topo.is_ancestor(v, l) {
                mask |= 1 << i;
            }
        }
        if mask == 0 {
            continue;
        }
        let e = best.entry(mask).or_insert(cost[v]);
        if cost[v] < *e {
            *e = cost[v];
        }
    }
    best
}

/// Cheapest finite edge with no Λ node below it (the empty class).
pub fn empty_class(topo: &Topology, cost: &[Cost], lambda_at: &[usize], range: std::ops::Range<usize>) -> Option<Cost> {
    range
        .filter(|&v| cost[v].is_finite() && lambda_at.iter().all(|&l| !topo.is_ancestor(v, l)))
        .map(|v| cost[v])
        .min()
}

pub fn random_lambda(n: usize, k: usize, r: &mut impl Rng) -> Vec<usize> {
    let mut l = sample(r, n, k.min(n)).into_vec();
    l.sort_unstable();
    l
}

pub fn check_defining_property(src: &CostTree, lambda: &[usize]) -> usize {
    let t = build_induced(src, Costs::Explicit, Scope::whole(&src.topo), lambda).unwrap();
    let it = &t.tree;
    assert!(t.len() <= 2 * lambda.len() + 2, "size {} for |Λ| = {}", t.len(), lambda.len());
    assert_eq!(
        classes(&src.topo, &src.cost, lambda, 1..src.len()),
        classes(&it.topo, &it.cost, &t.lambda_nodes, 1..t.len()),
    );
    // the empty class: edges below which no Λ node lies
    let want = empty_class(&src.topo, &src.cost, lambda, 1..src.len());
    let got = empty_class(&it.topo, &it.cost, &t.lambda_nodes, 1..t.len());
    assert_eq!(want, got);
    let any_empty = (1..src.len()).any(|v| lambda.iter().all(|&l| !src.topo.is_ancestor(v, l)));
    assert_eq!(t.has_empty_class, any_empty);
    // witnesses are source edges of the same cost
    for v in 1..t.len() {
        if it.cost[v].is_finite() {
            assert_eq!(src.cost[it.witness[v]], it.cost[v]);
        }
    }
    t.len()
}

// ---- bipartite problems: all-pairs oracle

pub fn random_problem(size: usize, neg_only: bool, r: &mut impl Rng) -> BipartiteProblem {
    let n1 = r.gen_range(2..=(size / 3).max(2));
    let n2 = r.gen_range(2..=(size / 3).max(2));
    let m = size.saturating_sub(n1 + n2);
    let b1 = [0, 2, 3][r.gen_range(0..3)];
    let b2 = [0, 2][r.gen_range(0..2)];
    let t1 = random_cost_tree(n1, b1, 40, 12, r);
    let t2 = random_cost_tree(n2, b2, 40, 12, r);
    let cross = (0..m)
        .map(|_| {
            let c = if neg_only { -r.gen_range(1..=20) } else { r.gen_range(-20..=20) };
            (r.gen_range(0..n1), r.gen_range(0..n2), Cost::finite(c))
        })
        .collect();
    BipartiteProblem { t1, t2, cross, at: NONE }
}

pub fn check_bipartite(p: &BipartiteProblem) {
    let s = solve_bipartite(p).unwrap();
    let (n1, n2) = (p.t1.len(), p.t2.len());
    let mut overall: Option<Cost> = None;
    for e1 in 1..n1 {
        let want = (1..n2).map(|e2| pair_value(p, e1, e2)).min().unwrap();
        let (got, partner) = s.per_edge[e1].expect("every t1 edge gets a partner");
        assert_eq!(got, want, "t1 edge {e1}");
        assert_eq!(pair_value(p, e1, partner), got, "partner of {e1} does not attain its value");
        overall = Some(overall.map_or(want, |o| o.min(want)));
    }
    assert_eq!(s.best.map(|b| b.0), overall);
    let bound = 2.0 * (p.size() as f64).log2() + 4.0;
    assert!((s.max_depth as f64) <= bound, "depth {} > {bound}", s.max_depth);
}

// ---- descendant walk audit

/// Vertices below `upper` but not below `lower`.
pub fn between(t: &RootedBinaryTree, upper: usize, lower: usize) -> Vec<usize> {
    let topo = t.topology();
    (topo.subtree(upper))
        .filter(|&v| !topo.subtree(lower).contains(&v))
        .filter_map(|v| t.vertex_of(v))
        .collect()
}

/// At the first visit of every tree edge, `A(e) + score(e')` must equal the
/// weight of the cut determined by `e` and each real edge `e'` below it.
pub fn audit_descendant(g: &WeightedGraph, tree: &[(usize, usize)]) -> usize {
    let t = build_spanning_tree_view(g, tree).unwrap();
    let a = compute_a(g, &t);
    let topo = t.topology().clone();
    let mut checked = 0;
    let mut failures = Vec::new();
    min_2respect_descendant_observed(g, &t, |x, score| {
        if t.edge_of(x).is_none() {
            return;
        }
        for y in topo.subtree(x).skip(1) {
            if t.edge_of(y).is_none() {
                continue;
            }
            let side = between(&t, x, y);
            let want = cut_weight(g, &side).unwrap() as i64;
            let got = score.edge_cost(y).get().map(|s| a.a(x) + s);
            if got != Some(want) {
                failures.push((x, y, got, want));
            }
            checked += 1;
        }
    })
    .unwrap();
    assert!(failures.is_empty(), "mismatches (upper, lower, got, want): {failures:?}");
    checked
}
