//! Rooted trees numbered in preorder, the binarized spanning-tree view used by
//! the cut solvers, constant-time LCA and load-guided heavy-path decomposition.
//!
//! Every tree in this crate numbers its nodes in preorder, so node ids double
//! as preorder indices and the subtree of `v` is the id range `v..end(v)`.

use std::ops::Range;

use crate::cost::Cost;
use crate::dsu::Dsu;
use crate::error::{Error, Result};
use crate::graph::WeightedGraph;

/// Marker for "no node".
pub const NONE: usize = usize::MAX;

/// Shape of a rooted tree whose node ids are preorder indices. The root is 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Topology {
    parent: Vec<usize>,
    end: Vec<usize>,
    depth: Vec<u32>,
}

impl Topology {
    /// Renumbers a tree given by child lists into preorder. Returns the
    /// topology and the map from old ids to new ids. Children keep their order.
    pub fn from_children(root: usize, children: &[Vec<usize>]) -> (Topology, Vec<usize>) {
        let n = children.len();
        let mut new_id = vec![NONE; n];
        let mut parent = Vec::with_capacity(n);
        let mut stack = vec![(root, NONE)];
        while let Some((v, p)) = stack.pop() {
            new_id[v] = parent.len();
            parent.push(p);
            for &c in children[v].iter().rev() {
                stack.push((c, new_id[v]));
            }
        }
        (Topology::from_preorder_parents(parent), new_id)
    }

    /// Builds from a parent array that is already in preorder
    /// (`parent[0] == NONE`, `parent[v] < v`, subtrees contiguous).
    pub fn from_preorder_parents(parent: Vec<usize>) -> Topology {
        let n = parent.len();
        let mut end: Vec<usize> = (1..=n).collect();
        for v in (1..n).rev() {
            let p = parent[v];
            debug_assert!(p < v, "parent array is not in preorder");
            if end[v] > end[p] {
                end[p] = end[v];
            }
        }
        let mut depth = vec![0u32; n];
        for v in 1..n {
            depth[v] = depth[parent[v]] + 1;
        }
        Topology { parent, end, depth }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        let p = self.parent[v];
        (p != NONE).then_some(p)
    }

    pub fn parents(&self) -> &[usize] {
        &self.parent
    }

    pub fn end(&self, v: usize) -> usize {
        self.end[v]
    }

    pub fn depth(&self, v: usize) -> usize {
        self.depth[v] as usize
    }

    pub fn subtree(&self, v: usize) -> Range<usize> {
        v..self.end[v]
    }

    pub fn subtree_size(&self, v: usize) -> usize {
        self.end[v] - v
    }

    /// True when `a` is `b` or an ancestor of `b`.
    pub fn is_ancestor(&self, a: usize, b: usize) -> bool {
        a <= b && b < self.end[a]
    }

    pub fn is_leaf(&self, v: usize) -> bool {
        self.end[v] == v + 1
    }

    pub fn children(&self, v: usize) -> Children<'_> {
        Children { topo: self, next: v + 1, end: self.end[v] }
    }
}

pub struct Children<'a> {
    topo: &'a Topology,
    next: usize,
    end: usize,
}

impl Iterator for Children<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.next >= self.end {
            return None;
        }
        let c = self.next;
        self.next = self.topo.end[c];
        Some(c)
    }
}

/// Lowest common ancestors via an Euler tour and a sparse table of depth minima.
#[derive(Clone, Debug)]
pub struct LcaIndex {
    first: Vec<u32>,
    // table[k][i] = shallowest node among euler[i .. i + 2^k]
    table: Vec<Vec<u32>>,
    depth: Vec<u32>,
}

impl LcaIndex {
    pub fn new(topo: &Topology) -> LcaIndex {
        let n = topo.len();
        let mut euler: Vec<u32> = Vec::with_capacity(2 * n);
        let mut first = vec![0u32; n];
        if n > 0 {
            // iterative DFS emitting a node on entry and after each child
            let mut stack: Vec<(usize, usize)> = vec![(0, 1)];
            first[0] = 0;
            euler.push(0);
            while let Some(&mut (v, ref mut next)) = stack.last_mut() {
                if *next < topo.end(v) {
                    let c = *next;
                    *next = topo.end(c);
                    first[c] = euler.len() as u32;
                    euler.push(c as u32);
                    stack.push((c, c + 1));
                } else {
                    stack.pop();
                    if let Some(&(p, _)) = stack.last() {
                        euler.push(p as u32);
                    }
                }
            }
        }
        let depth: Vec<u32> = (0..n).map(|v| topo.depth(v) as u32).collect();
        let mut table = vec![euler];
        let mut k = 1;
        while (1usize << k) <= table[0].len() {
            let prev = &table[k - 1];
            let half = 1usize << (k - 1);
            let row: Vec<u32> = (0..prev.len() - half)
                .map(|i| {
                    let (a, b) = (prev[i], prev[i + half]);
                    if depth[a as usize] <= depth[b as usize] {
                        a
                    } else {
                        b
                    }
                })
                .collect();
            table.push(row);
            k += 1;
        }
        LcaIndex { first, table, depth }
    }

    pub fn lca(&self, u: usize, v: usize) -> usize {
        let (mut l, mut r) = (self.first[u] as usize, self.first[v] as usize);
        if l > r {
            std::mem::swap(&mut l, &mut r);
        }
        let k = (usize::BITS - 1 - (r - l + 1).leading_zeros()) as usize;
        let (a, b) = (self.table[k][l], self.table[k][r + 1 - (1 << k)]);
        if self.depth[a as usize] <= self.depth[b as usize] {
            a as usize
        } else {
            b as usize
        }
    }
}

/// A spanning tree of a graph, binarized and rooted at an artificial root.
///
/// Vertices of degree above three are expanded into balanced gadgets whose
/// internal edges cost `+inf`; the artificial root (node 0) hangs above the
/// node of graph vertex 0 through another `+inf` edge. Each edge is named by
/// its lower node.
#[derive(Clone, Debug)]
pub struct RootedBinaryTree {
    topo: Topology,
    lca: LcaIndex,
    vertex_of: Vec<usize>,
    node_of: Vec<usize>,
    edge_of: Vec<usize>,
    weight: Vec<Cost>,
}

impl RootedBinaryTree {
    pub fn topology(&self) -> &Topology {
        &self.topo
    }

    pub fn lca_index(&self) -> &LcaIndex {
        &self.lca
    }

    pub fn len(&self) -> usize {
        self.topo.len()
    }

    pub fn is_empty(&self) -> bool {
        self.topo.is_empty()
    }

    pub fn lca(&self, u: usize, v: usize) -> usize {
        self.lca.lca(u, v)
    }

    /// Graph vertex represented by a node; `None` for gadget nodes and the root.
    pub fn vertex_of(&self, node: usize) -> Option<usize> {
        let v = self.vertex_of[node];
        (v != NONE).then_some(v)
    }

    pub fn node_of(&self, vertex: usize) -> usize {
        self.node_of[vertex]
    }

    /// Graph edge index of the edge above `node`; `None` for gadget edges.
    pub fn edge_of(&self, node: usize) -> Option<usize> {
        let e = self.edge_of[node];
        (e != NONE).then_some(e)
    }

    /// Cost of the edge above `node`: the graph weight or `+inf`.
    pub fn weight(&self, node: usize) -> Cost {
        self.weight[node]
    }

    /// Graph vertices whose nodes lie in the given node ranges (sorted).
    pub(crate) fn vertices_in(&self, ranges: &[Range<usize>]) -> Vec<usize> {
        let mut out: Vec<usize> =
            ranges.iter().flat_map(|r| r.clone()).filter_map(|x| self.vertex_of(x)).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Graph vertices in the subtree of `node`, excluding the subtree of `minus` if given.
    pub(crate) fn side_below(&self, node: usize, minus: Option<usize>) -> Vec<usize> {
        match minus {
            Some(y) => self.vertices_in(&[node..y, self.topo.end(y)..self.topo.end(node)]),
            None => self.vertices_in(&[self.topo.subtree(node)]),
        }
    }
}

/// Binarizes the spanning tree `tree_edges` (0-based vertex pairs) of `g`.
pub fn build_spanning_tree_view(g: &WeightedGraph, tree_edges: &[(usize, usize)]) -> Result<RootedBinaryTree> {
    let n = g.n();
    if n == 0 {
        return Err(Error::NotSpanning("graph has no vertices".into()));
    }
    if tree_edges.len() != n - 1 {
        return Err(Error::NotSpanning(format!("expected {} edges, got {}", n - 1, tree_edges.len())));
    }
    let mut dsu = Dsu::new(n);
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for &(a, b) in tree_edges {
        if a >= n || b >= n {
            return Err(Error::NotSpanning(format!("edge ({},{}) out of range", a + 1, b + 1)));
        }
        let e = g
            .edge_index(a, b)
            .ok_or_else(|| Error::NotSpanning(format!("edge ({},{}) is not in the graph", a + 1, b + 1)))?;
        if !dsu.union(a, b) {
            return Err(Error::NotSpanning(format!("edge ({},{}) closes a cycle", a + 1, b + 1)));
        }
        adj[a].push((b, e));
        adj[b].push((a, e));
    }
    for list in &mut adj {
        list.sort_unstable();
    }

    // Temporary node ids: 0 = artificial root, 1 + v = vertex v, then gadgets.
    let mut children: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
    let mut vertex_of = vec![NONE; n + 1];
    let mut edge_of = vec![NONE; n + 1];
    for v in 0..n {
        vertex_of[1 + v] = v;
    }
    children[0].push(1);
    let mut visited = vec![false; n];
    visited[0] = true;
    let mut stack = vec![0usize];
    while let Some(v) = stack.pop() {
        let kids: Vec<(usize, usize)> = adj[v].iter().copied().filter(|&(c, _)| !visited[c]).collect();
        for &(c, e) in &kids {
            visited[c] = true;
            edge_of[1 + c] = e;
            stack.push(c);
        }
        let slots: Vec<usize> = kids.iter().map(|&(c, _)| 1 + c).collect();
        attach_balanced(1 + v, &slots, &mut children, &mut vertex_of, &mut edge_of);
    }

    let (topo, new_id) = Topology::from_children(0, &children);
    let size = topo.len();
    let mut vo = vec![NONE; size];
    let mut eo = vec![NONE; size];
    for old in 0..children.len() {
        vo[new_id[old]] = vertex_of[old];
        eo[new_id[old]] = edge_of[old];
    }
    let node_of: Vec<usize> = (0..n).map(|v| new_id[1 + v]).collect();
    let weight: Vec<Cost> = eo
        .iter()
        .map(|&e| if e == NONE { Cost::INFINITY } else { Cost::finite(g.edge(e).w as i64) })
        .collect();
    let lca = LcaIndex::new(&topo);
    Ok(RootedBinaryTree { topo, lca, vertex_of: vo, node_of, edge_of: eo, weight })
}

/// Hangs `slots` below `node`, inserting gadget nodes so no node gets more than
/// two children. Halves are split recursively, keeping the slot order.
fn attach_balanced(
    node: usize,
    slots: &[usize],
    children: &mut Vec<Vec<usize>>,
    vertex_of: &mut Vec<usize>,
    edge_of: &mut Vec<usize>,
) {
    if slots.len() <= 2 {
        children[node].extend_from_slice(slots);
        return;
    }
    let mid = slots.len() / 2;
    for half in [&slots[..mid], &slots[mid..]] {
        if half.len() == 1 {
            children[node].push(half[0]);
        } else {
            let gadget = children.len();
            children.push(Vec::new());
            vertex_of.push(NONE);
            edge_of.push(NONE);
            children[node].push(gadget);
            attach_balanced(gadget, half, children, vertex_of, edge_of);
        }
    }
}

/// Heavy-path decomposition guided by per-node loads.
#[derive(Clone, Debug)]
pub struct HeavyPathDecomposition {
    /// Heavy child of each node, or `NONE` for leaves.
    pub heavy: Vec<usize>,
    /// Heavy paths, each listed top to bottom.
    pub paths: Vec<Vec<usize>>,
    /// Path id and position on that path for each node.
    pub path_of: Vec<usize>,
    pub index_on_path: Vec<usize>,
    /// Sum of loads in each node's subtree.
    pub subtree_load: Vec<u64>,
    /// Own load plus the subtree loads of all light children.
    pub light_size: Vec<u64>,
    /// Per path: positions (on the path) of nodes with non-zero light size, in order.
    pub light_positions: Vec<Vec<usize>>,
}

impl HeavyPathDecomposition {
    /// Number of distinct heavy paths met by the tree path between `u` and `v`.
    pub fn paths_on_route(&self, topo: &Topology, u: usize, v: usize, lca: &LcaIndex) -> usize {
        let w = lca.lca(u, v);
        let mut seen = Vec::new();
        for start in [u, v] {
            let mut x = start;
            loop {
                let p = self.path_of[x];
                seen.push(p);
                let top = self.paths[p][0];
                if topo.is_ancestor(top, w) {
                    break;
                }
                x = topo.parent(top).expect("non-root path top has a parent");
            }
        }
        seen.sort_unstable();
        seen.dedup();
        seen.len()
    }
}

/// Decomposes `topo` into heavy paths: each node's heavy child is the child with
/// the largest subtree load, ties going to the child with the smaller preorder.
pub fn heavy_decompose(topo: &Topology, load: &[u64]) -> HeavyPathDecomposition {
    let n = topo.len();
    assert_eq!(load.len(), n, "one load per node");
    let mut subtree_load = load.to_vec();
    for v in (1..n).rev() {
        let p = topo.parent(v).expect("non-root node");
        subtree_load[p] += subtree_load[v];
    }
    let mut heavy = vec![NONE; n];
    let mut light_size = load.to_vec();
    for v in 0..n {
        let mut best = NONE;
        for c in topo.children(v) {
            if best == NONE || subtree_load[c] > subtree_load[best] {
                best = c;
            }
        }
        heavy[v] = best;
        for c in topo.children(v) {
            if c != best {
                light_size[v] += subtree_load[c];
            }
        }
    }
    let mut paths = Vec::new();
    let mut path_of = vec![NONE; n];
    let mut index_on_path = vec![0; n];
    let mut light_positions = Vec::new();
    // Preorder scan: a node starts a path exactly when it is not a heavy child.
    for v in 0..n {
        if path_of[v] != NONE {
            continue;
        }
        let id = paths.len();
        let mut path = Vec::new();
        let mut lights = Vec::new();
        let mut x = v;
        while x != NONE {
            path_of[x] = id;
            index_on_path[x] = path.len();
            if light_size[x] > 0 {
                lights.push(path.len());
            }
            path.push(x);
            x = heavy[x];
        }
        paths.push(path);
        light_positions.push(lights);
    }
    HeavyPathDecomposition { heavy, paths, path_of, index_on_path, subtree_load, light_size, light_positions }
}
