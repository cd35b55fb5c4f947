//! Constant-factor minimum cut estimate for weighted graphs.
//!
//! Heavy edges are contracted and, if weights are huge, rescaled; then the
//! sparse-certificate loop runs: record the minimum weighted degree `δ` as a
//! candidate, label every edge through a maximum-adjacency ordering, and
//! contract every edge whose label reaches `δ/(2+ε)` (its endpoints are at
//! least that well connected). The best candidate is within `2+ε` of the
//! minimum cut of the graph the loop ran on.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};

use crate::dsu::Dsu;
use crate::error::{Error, Result};
use crate::graph::{cut_weight_mask, WeightedGraph};

/// Result of [`approx_min_cut_detailed`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Estimate {
    /// Weight, in the input graph, of the best cut found.
    pub estimate: u64,
    /// That cut's side (0-based, sorted).
    pub side: Vec<usize>,
    /// Minimum edge weight on a maximum spanning tree.
    pub bottleneck: u64,
    /// Whether the weights were rescaled before the loop.
    pub scaled: bool,
    pub rounds: usize,
}

/// An estimate `ĉ` with `c <= ĉ <= (2+ε)(1+1/n)·c`, where `ε = eps_num/eps_den`.
pub fn approx_min_cut(g: &WeightedGraph, eps_num: u64, eps_den: u64) -> Result<u64> {
    approx_min_cut_detailed(g, eps_num, eps_den).map(|e| e.estimate)
}

pub fn approx_min_cut_detailed(g: &WeightedGraph, eps_num: u64, eps_den: u64) -> Result<Estimate> {
    let n = g.n();
    if eps_den == 0 {
        return Err(Error::InvalidSpec("epsilon denominator is zero".into()));
    }
    if n < 2 {
        return Err(Error::TooFewVertices);
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let bottleneck = max_spanning_bottleneck(g);
    let nn = n as u128;
    let heavy = nn * nn * bottleneck as u128;
    let scaled = bottleneck as u128 > nn * nn * nn;

    let mut dsu = Dsu::new(n);
    for e in g.edges().iter().filter(|e| e.w as u128 > heavy) {
        dsu.union(e.u, e.v);
    }
    let mut members: Vec<Vec<usize>> = Vec::new();
    let mut label = vec![usize::MAX; n];
    for v in 0..n {
        let r = dsu.find(v);
        if label[r] == usize::MAX {
            label[r] = members.len();
            members.push(Vec::new());
        }
        members[label[r]].push(v);
    }
    let raw = g.edges().iter().filter_map(|e| {
        let w = if scaled { (e.w as u128 * nn * nn * nn / bottleneck as u128) as u64 } else { e.w };
        (w > 0).then(|| (label[dsu.find(e.u)], label[dsu.find(e.v)], w))
    });
    let mut cur = Current::build(members, raw);

    // q ≥ δ/(2+ε)  ⇔  q·(2·den + num) ≥ δ·den
    let (num, den) = (eps_num as u128, eps_den as u128);
    let mut best: Option<(u64, Vec<usize>)> = None;
    let mut rounds = 0;
    let mut mask = vec![false; n];
    // the first round always has two vertices: the bottleneck edge survives
    while cur.len() >= 2 {
        rounds += 1;
        let (v, delta) = cur.min_degree();
        for &x in &cur.members[v] {
            mask[x] = true;
        }
        let w = cut_weight_mask(g, &mask);
        for &x in &cur.members[v] {
            mask[x] = false;
        }
        if best.as_ref().is_none_or(|(b, _)| w < *b) {
            let mut side = cur.members[v].clone();
            side.sort_unstable();
            best = Some((w, side));
        }
        if cur.len() == 2 {
            break;
        }
        let labels = cur.ma_labels();
        let mut join = Dsu::new(cur.len());
        for (i, &(a, b, _)) in cur.edges.iter().enumerate() {
            if labels[i] * (2 * den + num) >= delta as u128 * den {
                join.union(a, b);
            }
        }
        cur = cur.contract(&mut join);
    }
    let (estimate, side) = best.expect("the loop records a candidate before stopping");
    Ok(Estimate { estimate, side, bottleneck, scaled, rounds })
}

fn max_spanning_bottleneck(g: &WeightedGraph) -> u64 {
    let mut order: Vec<usize> = (0..g.m()).collect();
    order.sort_unstable_by_key(|&i| Reverse(g.edge(i).w));
    let mut dsu = Dsu::new(g.n());
    let mut low = u64::MAX;
    for i in order {
        let e = g.edge(i);
        if dsu.union(e.u, e.v) {
            low = low.min(e.w);
        }
    }
    low
}

/// The contracted graph the loop works on: merged simple edges plus the
/// original vertices behind every current vertex.
struct Current {
    members: Vec<Vec<usize>>,
    edges: Vec<(usize, usize, u64)>,
}

impl Current {
    fn build(members: Vec<Vec<usize>>, raw: impl Iterator<Item = (usize, usize, u64)>) -> Current {
        let mut merged: HashMap<(usize, usize), u64> = HashMap::new();
        for (a, b, w) in raw {
            if a != b {
                *merged.entry((a.min(b), a.max(b))).or_insert(0) += w;
            }
        }
        let mut edges: Vec<(usize, usize, u64)> = merged.into_iter().map(|((a, b), w)| (a, b, w)).collect();
        edges.sort_unstable();
        Current { members, edges }
    }

    fn len(&self) -> usize {
        self.members.len()
    }

    fn min_degree(&self) -> (usize, u64) {
        let mut deg = vec![0u64; self.len()];
        for &(a, b, w) in &self.edges {
            deg[a] += w;
            deg[b] += w;
        }
        let v = (0..deg.len()).min_by_key(|&v| (deg[v], v)).expect("non-empty");
        (v, deg[v])
    }

    /// Labels each edge with the attachment weight of its later endpoint,
    /// accumulated in scan order, for a maximum-adjacency ordering from 0.
    fn ma_labels(&self) -> Vec<u128> {
        let mut adj = vec![Vec::new(); self.len()];
        for (i, &(a, b, w)) in self.edges.iter().enumerate() {
            adj[a].push((b, w, i));
            adj[b].push((a, w, i));
        }
        let mut attach = vec![0u128; self.len()];
        let mut done = vec![false; self.len()];
        let mut labels = vec![0u128; self.edges.len()];
        let mut heap = BinaryHeap::from([(0u128, Reverse(0usize))]);
        while let Some((r, Reverse(x))) = heap.pop() {
            if done[x] || r != attach[x] {
                continue;
            }
            done[x] = true;
            for &(y, w, i) in &adj[x] {
                if !done[y] {
                    attach[y] += w as u128;
                    labels[i] = attach[y];
                    heap.push((attach[y], Reverse(y)));
                }
            }
        }
        labels
    }

    fn contract(self, join: &mut Dsu) -> Current {
        let mut label = vec![usize::MAX; self.len()];
        let mut members: Vec<Vec<usize>> = Vec::new();
        for (v, m) in self.members.into_iter().enumerate() {
            let r = join.find(v);
            if label[r] == usize::MAX {
                label[r] = members.len();
                members.push(Vec::new());
            }
            members[label[r]].extend(m);
        }
        let mut map = vec![0; label.len()];
        for (v, slot) in map.iter_mut().enumerate() {
            *slot = label[join.find(v)];
        }
        Current::build(members, self.edges.into_iter().map(|(a, b, w)| (map[a], map[b], w)))
    }
}
