//! Topologically induced trees.
//!
//! Given a tree with edge costs and a set `Λ` of its nodes, the induced tree
//! keeps only the root, `Λ` and the pairwise LCAs of `Λ`. Each of its edges
//! stands for a vertical path of the source and costs the minimum along it.
//! For every `S ⊆ Λ`, the cheapest edge whose subtree meets `Λ` exactly in
//! `S` costs the same in both trees. The `S = ∅` class (source edges with no
//! `Λ` node below) has no path to live on, so when it is non-empty the induced
//! tree gets a synthetic root with two children: the old root, behind an
//! infinite edge, and a leaf whose edge carries the class minimum.
//!
//! Two constructions are provided. The sweep walks every source node once; the
//! query variant touches `O(|Λ|)` score-tree operations. [`build_induced`]
//! picks whichever is cheaper for the instance.

use crate::cost::Cost;
use crate::error::{Error, Result};
use crate::score_tree::ScoreTree;
use crate::tree::{LcaIndex, Topology, NONE};

/// A tree with explicit edge costs whose nodes and edges remember what they
/// stand for in some base tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CostTree {
    pub topo: Topology,
    /// Cost of the edge above each node; the root's entry is `+inf`.
    pub cost: Vec<Cost>,
    /// Base node represented by each node, `NONE` for synthetic nodes.
    pub origin: Vec<usize>,
    /// Lower base node of the cheapest base edge each edge stands for,
    /// `NONE` for the root and for the synthetic infinite edge.
    pub witness: Vec<usize>,
}

impl CostTree {
    /// A tree that is its own base.
    pub fn identity(topo: Topology, mut cost: Vec<Cost>) -> CostTree {
        let n = topo.len();
        assert_eq!(cost.len(), n, "one cost per node");
        if n > 0 {
            cost[0] = Cost::INFINITY;
        }
        let mut witness: Vec<usize> = (0..n).collect();
        if n > 0 {
            witness[0] = NONE;
        }
        CostTree { topo, cost, origin: (0..n).collect(), witness }
    }

    pub fn len(&self) -> usize {
        self.topo.len()
    }

    pub fn is_empty(&self) -> bool {
        self.topo.is_empty()
    }

    /// Rebases the tree onto itself: origins and witnesses become local ids.
    pub fn localized(&self) -> CostTree {
        CostTree::identity(self.topo.clone(), self.cost.clone())
    }
}

/// The part of a source tree to induce on: `top` together with the nodes
/// `first..end`, which must form the subtrees of children of `top`.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct Scope {
    pub top: usize,
    pub first: usize,
    pub end: usize,
}

impl Scope {
    /// The whole tree.
    pub fn whole(topo: &Topology) -> Scope {
        Scope { top: 0, first: 1, end: topo.len() }
    }

    /// `top`, the edge to its child `child`, and everything below `child`.
    pub fn child(topo: &Topology, top: usize, child: usize) -> Scope {
        debug_assert_eq!(topo.parent(child), Some(top));
        Scope { top, first: child, end: topo.end(child) }
    }

    /// Number of source nodes in the scope.
    pub fn size(&self) -> usize {
        self.end - self.first + 1
    }

    fn contains(&self, v: usize) -> bool {
        v == self.top || (self.first <= v && v < self.end)
    }

    fn slot(&self, v: usize) -> usize {
        if v == self.top {
            0
        } else {
            1 + v - self.first
        }
    }
}

/// How source edge costs are read.
pub enum Costs<'a> {
    /// From the source tree's `cost` array.
    Explicit,
    /// From a live score tree over the same topology as the source.
    Scored { score: &'a mut ScoreTree, lca: &'a LcaIndex },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Variant {
    Sweep,
    Queries,
}

/// A tree topologically induced on a source by `Λ`.
#[derive(Clone, Debug)]
pub struct InducedTree {
    pub tree: CostTree,
    /// Source node of each node; `NONE` for the two synthetic nodes.
    pub source: Vec<usize>,
    /// Whether each node belongs to `Λ`.
    pub in_lambda: Vec<bool>,
    /// Node of each `Λ` entry, in input order.
    pub lambda_nodes: Vec<usize>,
    /// Whether the synthetic root and `S = ∅` leaf were added.
    pub has_empty_class: bool,
    /// Source work spent: nodes visited by the sweep or score-tree operations.
    pub source_ops: u64,
    pub variant: Variant,
    scope: Scope,
    lambda: Vec<usize>,
}

impl InducedTree {
    pub fn len(&self) -> usize {
        self.tree.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tree.is_empty()
    }

    /// Node standing for the source root (the scope's top).
    pub fn top_node(&self) -> usize {
        usize::from(self.has_empty_class)
    }
}

fn validate(scope: &Scope, lambda: &[usize]) -> Result<()> {
    if lambda.is_empty() {
        return Err(Error::InvalidLambda("empty".into()));
    }
    for w in lambda.windows(2) {
        if w[0] >= w[1] {
            return Err(Error::InvalidLambda(format!("not strictly increasing at {} then {}", w[0], w[1])));
        }
    }
    if let Some(&v) = lambda.iter().find(|&&v| !scope.contains(v)) {
        return Err(Error::InvalidLambda(format!("node {v} is outside the source")));
    }
    Ok(())
}

/// Builds the induced tree, choosing the sweep when the scope is no larger
/// than `|Λ|·⌈log2 |T|⌉` and the query variant otherwise (queries need a
/// score tree; with explicit costs the sweep is always used).
pub fn build_induced(src: &CostTree, costs: Costs<'_>, scope: Scope, lambda: &[usize]) -> Result<InducedTree> {
    validate(&scope, lambda)?;
    match costs {
        Costs::Explicit => Ok(sweep(src, scope, lambda)),
        Costs::Scored { score, lca } => {
            let log = usize::BITS - src.len().max(2).saturating_sub(1).leading_zeros();
            if scope.size() <= lambda.len() * log as usize {
                Ok(sweep_scored(src, score, scope, lambda))
            } else {
                Ok(queries(src, score, lca, scope, lambda))
            }
        }
    }
}

/// Forces a particular construction; used to cross-check the two variants.
pub fn build_induced_with(
    src: &CostTree,
    costs: Costs<'_>,
    scope: Scope,
    lambda: &[usize],
    variant: Variant,
) -> Result<InducedTree> {
    validate(&scope, lambda)?;
    match (variant, costs) {
        (Variant::Sweep, Costs::Explicit) => Ok(sweep(src, scope, lambda)),
        (Variant::Sweep, Costs::Scored { score, .. }) => Ok(sweep_scored(src, score, scope, lambda)),
        (Variant::Queries, Costs::Scored { score, lca }) => Ok(queries(src, score, lca, scope, lambda)),
        (Variant::Queries, Costs::Explicit) => {
            Err(Error::InvalidLambda("the query construction needs a score tree".into()))
        }
    }
}

/// Refreshes every edge cost (and witness) from the source's current costs.
pub fn recost_from_source(t: &mut InducedTree, src: &CostTree, costs: Costs<'_>) -> Result<()> {
    let fresh = build_induced_with(src, costs, t.scope, &t.lambda, t.variant)?;
    if fresh.tree.topo != t.tree.topo {
        return Err(Error::Internal("source topology changed under an induced tree".into()));
    }
    t.tree.cost = fresh.tree.cost;
    t.tree.witness = fresh.tree.witness;
    t.source_ops += fresh.source_ops;
    Ok(())
}

fn sweep_scored(src: &CostTree, score: &mut ScoreTree, scope: Scope, lambda: &[usize]) -> InducedTree {
    let before = score.op_count();
    let live: Vec<Cost> = (scope.first..scope.end).map(|v| score.edge_cost(v)).collect();
    let mut t = sweep_with(src, scope, lambda, None, |v| live[v - scope.first]);
    t.source_ops += score.op_count() - before;
    t
}

fn sweep(src: &CostTree, scope: Scope, lambda: &[usize]) -> InducedTree {
    sweep_with(src, scope, lambda, None, |v| src.cost[v])
}

/// Re-induces a tree that may itself carry a synthetic root, without stacking
/// a second synthetic layer: the sweep runs below the real root and the old
/// `S = ∅` leaf competes for the new one. `lambda` must contain the real root.
pub(crate) fn reinduce(src: &CostTree, synthetic: bool, lambda: &[usize]) -> InducedTree {
    if !synthetic {
        return sweep(src, Scope::whole(&src.topo), lambda);
    }
    let root = 1;
    let leaf = src.topo.end(root);
    debug_assert_eq!(leaf + 1, src.len());
    let scope = Scope { top: root, first: root + 1, end: leaf };
    let outside = (src.cost[leaf], src.witness[leaf]);
    sweep_with(src, scope, lambda, Some(outside), |v| src.cost[v])
}

/// Linear pass over the scope: mark nodes with a `Λ` node below, keep the
/// branching ones, and carry path minima down to the next kept node.
fn sweep_with(
    src: &CostTree,
    scope: Scope,
    lambda: &[usize],
    outside: Option<(Cost, usize)>,
    cost: impl Fn(usize) -> Cost,
) -> InducedTree {
    let topo = &src.topo;
    let slots = scope.size();
    let parent_slot = |v: usize| scope.slot(topo.parents()[v]);
    let mut in_lambda = vec![false; slots];
    for &v in lambda {
        in_lambda[scope.slot(v)] = true;
    }
    let mut has = in_lambda.clone();
    let mut branching = vec![0u8; slots];
    for v in (scope.first..scope.end).rev() {
        if has[scope.slot(v)] {
            let p = parent_slot(v);
            has[p] = true;
            branching[p] = branching[p].saturating_add(1);
        }
    }
    let keep = |s: usize| s == 0 || in_lambda[s] || branching[s] >= 2;

    let mut acc: Vec<(Cost, usize)> = vec![(Cost::ZERO, NONE); slots];
    let mut up = vec![0usize; slots];
    let mut empty: Option<(Cost, usize)> = None;
    for v in scope.first..scope.end {
        let (s, p) = (scope.slot(v), parent_slot(v));
        let here = (cost(v), v);
        if has[s] {
            if keep(p) {
                acc[s] = here;
                up[s] = p;
            } else {
                acc[s] = acc[p].min(here);
                up[s] = up[p];
            }
        } else if empty.is_none_or(|e| here < e) {
            empty = Some(here);
        }
    }
    let mut empty = empty.map(|(c, v)| (c, src.witness[v]));
    if let Some(o) = outside {
        if empty.is_none_or(|e| o.0 < e.0) {
            empty = Some(o);
        }
    }

    let shift = usize::from(empty.is_some());
    let mut new_id = vec![NONE; slots];
    let mut kept = vec![scope.top];
    new_id[0] = shift;
    for v in scope.first..scope.end {
        let s = scope.slot(v);
        if has[s] && keep(s) {
            new_id[s] = shift + kept.len();
            kept.push(v);
        }
    }
    let mut b = Builder::new(empty.is_some(), kept.len());
    for &v in &kept {
        let s = scope.slot(v);
        if v == scope.top {
            b.push_top(src, v, in_lambda[0]);
        } else {
            let (c, w) = acc[s];
            b.push(src, v, new_id[up[s]], c, w, in_lambda[s]);
        }
    }
    let lambda_nodes = lambda.iter().map(|&v| new_id[scope.slot(v)]).collect();
    b.finish(empty, lambda_nodes, slots as u64, Variant::Sweep, scope, lambda)
}

/// Stack-based construction over `Λ` and consecutive LCAs, with path minima
/// read from the score tree by temporarily painting the path above each
/// upper endpoint.
fn queries(src: &CostTree, score: &mut ScoreTree, lca: &LcaIndex, scope: Scope, lambda: &[usize]) -> InducedTree {
    let before = score.op_count();
    let topo = &src.topo;
    let mut nodes: Vec<usize> = Vec::with_capacity(2 * lambda.len() + 1);
    nodes.push(scope.top);
    nodes.extend_from_slice(lambda);
    for w in lambda.windows(2) {
        nodes.push(lca.lca(w[0], w[1]));
    }
    nodes.sort_unstable();
    nodes.dedup();

    // S = ∅ class: paint every root path through Λ, take the scope minimum.
    for &v in lambda {
        score.add(v, Cost::PAINT);
    }
    let mut empty: Option<(Cost, usize)> = None;
    let mut consider = |c: (Cost, usize)| {
        if !c.0.is_painted() && empty.is_none_or(|e| c < e) {
            empty = Some(c);
        }
    };
    if scope.first == scope.top + 1 && scope.end == topo.end(scope.top) {
        if let Ok(m) = score.subtree_min(scope.top) {
            consider(m);
        }
    } else {
        let x = scope.first;
        consider((score.edge_cost(x), x));
        if let Ok(m) = score.subtree_min(x) {
            consider(m);
        }
    }
    for &v in lambda {
        score.add(v, -Cost::PAINT);
    }
    let empty = empty.map(|(c, v)| (c, src.witness[v]));

    let shift = usize::from(empty.is_some());
    let mut b = Builder::new(empty.is_some(), nodes.len());
    let mut stack: Vec<usize> = Vec::new();
    let mut lambda_iter = lambda.iter().peekable();
    let mut lambda_nodes = Vec::with_capacity(lambda.len());
    for (i, &v) in nodes.iter().enumerate() {
        while let Some(&top) = stack.last() {
            if topo.is_ancestor(nodes[top], v) {
                break;
            }
            stack.pop();
        }
        let is_lambda = lambda_iter.next_if_eq(&&v).is_some();
        if is_lambda {
            lambda_nodes.push(shift + i);
        }
        match stack.last() {
            None => b.push_top(src, v, is_lambda),
            Some(&pi) => {
                let a = nodes[pi];
                score.add(a, Cost::PAINT);
                let (c, w) = score.path_argmin(v).expect("non-root node has a path");
                score.add(a, -Cost::PAINT);
                debug_assert!(!c.is_painted());
                b.push(src, v, shift + pi, c, w, is_lambda);
            }
        }
        stack.push(i);
    }
    let ops = score.op_count() - before;
    b.finish(empty, lambda_nodes, ops, Variant::Queries, scope, lambda)
}

/// Accumulates induced nodes in preorder, then wraps the synthetic parts.
struct Builder {
    shift: usize,
    parent: Vec<usize>,
    cost: Vec<Cost>,
    origin: Vec<usize>,
    witness: Vec<usize>,
    source: Vec<usize>,
    in_lambda: Vec<bool>,
}

impl Builder {
    fn new(synthetic: bool, capacity: usize) -> Builder {
        let mut b = Builder {
            shift: usize::from(synthetic),
            parent: Vec::with_capacity(capacity + 2),
            cost: Vec::with_capacity(capacity + 2),
            origin: Vec::with_capacity(capacity + 2),
            witness: Vec::with_capacity(capacity + 2),
            source: Vec::with_capacity(capacity + 2),
            in_lambda: Vec::with_capacity(capacity + 2),
        };
        if synthetic {
            b.raw(NONE, Cost::INFINITY, NONE, NONE, NONE, false);
        }
        b
    }

    fn raw(&mut self, parent: usize, cost: Cost, origin: usize, witness: usize, source: usize, lam: bool) {
        self.parent.push(parent);
        self.cost.push(cost);
        self.origin.push(origin);
        self.witness.push(witness);
        self.source.push(source);
        self.in_lambda.push(lam);
    }

    fn push_top(&mut self, src: &CostTree, v: usize, lam: bool) {
        let parent = if self.shift == 1 { 0 } else { NONE };
        self.raw(parent, Cost::INFINITY, src.origin[v], NONE, v, lam);
    }

    fn push(&mut self, src: &CostTree, v: usize, parent: usize, cost: Cost, argmin: usize, lam: bool) {
        self.raw(parent, cost, src.origin[v], src.witness[argmin], v, lam);
    }

    #[allow(clippy::too_many_arguments)]
    fn finish(
        mut self,
        empty: Option<(Cost, usize)>,
        lambda_nodes: Vec<usize>,
        source_ops: u64,
        variant: Variant,
        scope: Scope,
        lambda: &[usize],
    ) -> InducedTree {
        if let Some((c, w)) = empty {
            self.raw(0, c, NONE, w, NONE, false);
        }
        let topo = Topology::from_preorder_parents(self.parent);
        InducedTree {
            tree: CostTree { topo, cost: self.cost, origin: self.origin, witness: self.witness },
            source: self.source,
            in_lambda: self.in_lambda,
            lambda_nodes,
            has_empty_class: empty.is_some(),
            source_ops,
            variant,
            scope,
            lambda: lambda.to_vec(),
        }
    }
}
