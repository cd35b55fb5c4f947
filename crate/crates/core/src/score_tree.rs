//! Root-path cost addition with path and subtree minima over a static tree.
//!
//! The tree is split into heavy paths by subtree size and laid out so that
//! every heavy path and every subtree is a contiguous range of one lazy
//! range-add / range-min segment tree. Each operation touches `O(log n)`
//! ranges of `O(log n)` segment nodes.
//!
//! Edges are named by their lower node; ties between equal costs go to the
//! edge whose lower node has the smaller preorder index.

use std::cell::Cell;

use crate::cost::Cost;
use crate::error::{Error, Result};
use crate::tree::{Topology, NONE};

// Padding leaves sit above every reachable cost, including painted ones.
const PAD: Cost = Cost::SENTINEL;

#[derive(Clone, Debug)]
pub struct ScoreTree {
    parent: Vec<usize>,
    head: Vec<usize>,
    pos: Vec<usize>,
    size: Vec<usize>,
    width: usize,
    min: Vec<(Cost, u32)>,
    lazy: Vec<Cost>,
    ops: Cell<u64>,
    steps: Cell<u64>,
}

type Entry = (Cost, u32);

fn pick(a: Entry, b: Entry) -> Entry {
    if b < a {
        b
    } else {
        a
    }
}

impl ScoreTree {
    /// `cost[v]` is the initial cost of the edge above `v`; `cost[0]` is ignored.
    pub fn new(topo: &Topology, cost: &[Cost]) -> ScoreTree {
        let n = topo.len();
        assert_eq!(cost.len(), n, "one cost per node");
        let mut size = vec![1usize; n];
        for v in (1..n).rev() {
            size[topo.parents()[v]] += size[v];
        }
        let mut heavy = vec![NONE; n];
        for v in 0..n {
            for c in topo.children(v) {
                if heavy[v] == NONE || size[c] > size[heavy[v]] {
                    heavy[v] = c;
                }
            }
        }
        // Heavy-first DFS: each subtree and each heavy path becomes contiguous.
        let mut head = vec![0; n];
        let mut pos = vec![0; n];
        let mut order = Vec::with_capacity(n);
        let mut stack = Vec::new();
        if n > 0 {
            stack.push(0);
        }
        while let Some(v) = stack.pop() {
            pos[v] = order.len();
            order.push(v);
            for c in topo.children(v) {
                if c != heavy[v] {
                    head[c] = c;
                    stack.push(c);
                }
            }
            if heavy[v] != NONE {
                head[heavy[v]] = head[v];
                stack.push(heavy[v]);
            }
        }
        let width = n.next_power_of_two().max(1);
        let mut min = vec![(PAD, u32::MAX); 2 * width];
        for (i, &v) in order.iter().enumerate() {
            min[width + i] = (if v == 0 { PAD } else { cost[v] }, v as u32);
        }
        for i in (1..width).rev() {
            min[i] = pick(min[2 * i], min[2 * i + 1]);
        }
        ScoreTree {
            parent: topo.parents().to_vec(),
            head,
            pos,
            size,
            width,
            min,
            lazy: vec![Cost::ZERO; 2 * width],
            ops: Cell::new(0),
            steps: Cell::new(0),
        }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    /// Number of public operations performed so far.
    pub fn op_count(&self) -> u64 {
        self.ops.get()
    }

    /// Number of segment-tree nodes visited so far.
    pub fn step_count(&self) -> u64 {
        self.steps.get()
    }

    /// Position ranges (inclusive) covering the edges on the path from `u` to the root.
    fn path_ranges(&self, mut u: usize, mut visit: impl FnMut(usize, usize)) {
        loop {
            let h = self.head[u];
            if h == 0 {
                if u != 0 {
                    visit(1, self.pos[u]);
                }
                return;
            }
            visit(self.pos[h], self.pos[u]);
            u = self.parent[h];
        }
    }

    /// Adds `delta` to every edge on the path from `u` to the root.
    pub fn add(&mut self, u: usize, delta: Cost) {
        self.ops.set(self.ops.get() + 1);
        let mut ranges = Vec::new();
        self.path_ranges(u, |l, r| ranges.push((l, r)));
        for (l, r) in ranges {
            self.range_add(1, 0, self.width, l, r + 1, delta);
        }
    }

    /// Minimum cost on the path from `u` to the root.
    pub fn path_min(&self, u: usize) -> Result<Cost> {
        self.path_argmin(u).map(|(c, _)| c)
    }

    /// Minimum cost on the path from `u` to the root, with the edge attaining it.
    pub fn path_argmin(&self, u: usize) -> Result<(Cost, usize)> {
        if u == 0 {
            return Err(Error::EmptyPath);
        }
        self.ops.set(self.ops.get() + 1);
        let mut best = (PAD, u32::MAX);
        self.path_ranges(u, |l, r| best = pick(best, self.range_min(1, 0, self.width, l, r + 1)));
        Ok((best.0, best.1 as usize))
    }

    /// Minimum cost over edges strictly inside the subtree of `u`, with the edge.
    pub fn subtree_min(&self, u: usize) -> Result<(Cost, usize)> {
        if self.size[u] == 1 {
            return Err(Error::EmptySubtree(u));
        }
        self.ops.set(self.ops.get() + 1);
        let l = self.pos[u] + 1;
        let (c, e) = self.range_min(1, 0, self.width, l, self.pos[u] + self.size[u]);
        Ok((c, e as usize))
    }

    /// Current cost of the edge above `v`.
    pub fn edge_cost(&self, v: usize) -> Cost {
        self.ops.set(self.ops.get() + 1);
        let mut i = self.width + self.pos[v];
        let mut c = self.min[i].0;
        i /= 2;
        while i >= 1 {
            c += self.lazy[i];
            i /= 2;
            self.step();
        }
        c
    }

    fn step(&self) {
        self.steps.set(self.steps.get() + 1);
    }

    fn range_add(&mut self, i: usize, nl: usize, nr: usize, l: usize, r: usize, d: Cost) {
        self.step();
        if l <= nl && nr <= r {
            self.min[i].0 += d;
            self.lazy[i] += d;
            return;
        }
        let mid = (nl + nr) / 2;
        if l < mid {
            self.range_add(2 * i, nl, mid, l, r, d);
        }
        if mid < r {
            self.range_add(2 * i + 1, mid, nr, l, r, d);
        }
        let (c, e) = pick(self.min[2 * i], self.min[2 * i + 1]);
        self.min[i] = (c + self.lazy[i], e);
    }

    fn range_min(&self, i: usize, nl: usize, nr: usize, l: usize, r: usize) -> Entry {
        self.step();
        if l <= nl && nr <= r {
            return self.min[i];
        }
        let mid = (nl + nr) / 2;
        let mut best = (PAD, u32::MAX);
        if l < mid {
            best = pick(best, self.range_min(2 * i, nl, mid, l, r));
        }
        if mid < r {
            best = pick(best, self.range_min(2 * i + 1, mid, nr, l, r));
        }
        (best.0 + self.lazy[i], best.1)
    }
}
