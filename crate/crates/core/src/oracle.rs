//! Brute-force references. Nothing here reuses the solver's tree or cut code:
//! sides, rootings and cut weights are all recomputed from scratch.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::{CutResult, Provenance, WeightedGraph};

/// Largest graph the exhaustive oracle accepts.
pub const EXHAUSTIVE_LIMIT: usize = 22;

fn connected(g: &WeightedGraph) -> bool {
    let n = g.n();
    let mut adj = vec![Vec::new(); n];
    for e in g.edges() {
        adj[e.u].push(e.v);
        adj[e.v].push(e.u);
    }
    let mut seen = vec![false; n];
    let mut queue = VecDeque::from([0]);
    seen[0] = true;
    let mut count = 1;
    while let Some(v) = queue.pop_front() {
        for &u in &adj[v] {
            if !seen[u] {
                seen[u] = true;
                count += 1;
                queue.push_back(u);
            }
        }
    }
    count == n
}

fn weight_of(g: &WeightedGraph, inside: &[bool]) -> u64 {
    g.edges().iter().filter(|e| inside[e.u] ^ inside[e.v]).map(|e| e.w).sum()
}

/// Enumerates every side avoiding vertex 0 in Gray-code order; the first
/// minimum found is reported.
pub fn exhaustive_min_cut(g: &WeightedGraph) -> Result<CutResult> {
    let n = g.n();
    if n < 2 {
        return Err(Error::TooFewVertices);
    }
    if n > EXHAUSTIVE_LIMIT {
        return Err(Error::TooLarge { n, limit: EXHAUSTIVE_LIMIT });
    }
    let mut adj = vec![Vec::new(); n];
    for e in g.edges() {
        adj[e.u].push((e.v, e.w as i128));
        adj[e.v].push((e.u, e.w as i128));
    }
    let mut inside = vec![false; n];
    let mut cut: i128 = 0;
    let mut best: Option<(i128, Vec<bool>)> = None;
    for i in 1u64..(1 << (n - 1)) {
        // Gray code step i flips bit trailing_zeros(i), i.e. vertex 1 + that bit.
        let v = 1 + i.trailing_zeros() as usize;
        let (mut same, mut other) = (0i128, 0i128);
        for &(u, w) in &adj[v] {
            if inside[u] == inside[v] {
                same += w;
            } else {
                other += w;
            }
        }
        cut += same - other;
        inside[v] = !inside[v];
        if best.as_ref().is_none_or(|(b, _)| cut < *b) {
            best = Some((cut, inside.clone()));
        }
    }
    let (weight, mask) = best.expect("n >= 2 gives at least one side");
    let side = (0..n).filter(|&v| mask[v]).collect();
    Ok(CutResult { weight: weight as u64, side, provenance: Provenance::Oracle })
}

/// Stoer–Wagner on a dense adjacency matrix, `O(n^3)`.
pub fn stoer_wagner(g: &WeightedGraph) -> Result<CutResult> {
    let n = g.n();
    if n < 2 {
        return Err(Error::TooFewVertices);
    }
    if !connected(g) {
        return Err(Error::Disconnected);
    }
    let mut w = vec![vec![0u64; n]; n];
    for e in g.edges() {
        w[e.u][e.v] += e.w;
        w[e.v][e.u] += e.w;
    }
    let mut members: Vec<Vec<usize>> = (0..n).map(|v| vec![v]).collect();
    let mut alive: Vec<usize> = (0..n).collect();
    let mut best: Option<(u64, Vec<usize>)> = None;
    while alive.len() > 1 {
        let k = alive.len();
        let mut added = vec![false; k];
        let mut key = vec![0u64; k];
        let (mut prev, mut last) = (0, 0);
        for step in 0..k {
            let mut sel = usize::MAX;
            for i in 0..k {
                if !added[i] && (sel == usize::MAX || key[i] > key[sel]) {
                    sel = i;
                }
            }
            added[sel] = true;
            if step == k - 1 {
                let cut = key[sel];
                if best.as_ref().is_none_or(|(b, _)| cut < *b) {
                    best = Some((cut, members[alive[sel]].clone()));
                }
            }
            prev = last;
            last = sel;
            for i in 0..k {
                if !added[i] {
                    key[i] += w[alive[sel]][alive[i]];
                }
            }
        }
        let (s, t) = (alive[prev], alive[last]);
        for i in 0..n {
            w[s][i] += w[t][i];
            w[i][s] = w[s][i];
        }
        w[s][s] = 0;
        let moved = std::mem::take(&mut members[t]);
        members[s].extend(moved);
        alive.remove(last);
    }
    let (weight, group) = best.expect("at least one phase ran");
    // Report the side avoiding vertex 0, like the exhaustive oracle.
    let mut inside = vec![false; n];
    for v in group {
        inside[v] = true;
    }
    let side = (0..n).filter(|&v| inside[v] != inside[0]).collect();
    Ok(CutResult { weight, side, provenance: Provenance::Oracle })
}

/// Every cut determined by one tree edge or an unordered pair of tree edges,
/// evaluated directly. The side of a pair is the set of vertices whose tree
/// path to vertex 0 crosses exactly one of the two edges.
pub fn brute_2respect(g: &WeightedGraph, tree_edges: &[(usize, usize)]) -> Result<CutResult> {
    let n = g.n();
    if n < 2 {
        return Err(Error::TooFewVertices);
    }
    if tree_edges.len() != n - 1 {
        return Err(Error::NotSpanning(format!("expected {} edges", n - 1)));
    }
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in tree_edges {
        if a >= n || b >= n || g.edge_index(a, b).is_none() {
            return Err(Error::NotSpanning(format!("({},{}) is not a graph edge", a + 1, b + 1)));
        }
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut parent = vec![usize::MAX; n];
    let mut seen = vec![false; n];
    let mut queue = VecDeque::from([0]);
    seen[0] = true;
    while let Some(v) = queue.pop_front() {
        for &u in &adj[v] {
            if !seen[u] {
                seen[u] = true;
                parent[u] = v;
                queue.push_back(u);
            }
        }
    }
    if seen.iter().any(|s| !s) {
        return Err(Error::NotSpanning("tree does not reach every vertex".into()));
    }
    // below[c][v]: v lies in the subtree under the edge (parent[c], c).
    let children: Vec<usize> = (1..n).collect();
    let below: Vec<Vec<bool>> = children
        .iter()
        .map(|&c| {
            (0..n)
                .map(|mut v| loop {
                    if v == c {
                        break true;
                    }
                    if v == 0 {
                        break false;
                    }
                    v = parent[v];
                })
                .collect()
        })
        .collect();
    let edge = |c: usize| (parent[c].min(c), parent[c].max(c));
    let mut best: Option<(u64, Vec<bool>, Provenance)> = None;
    let mut offer = |w: u64, mask: Vec<bool>, p: Provenance| {
        if best.as_ref().is_none_or(|(b, _, _)| w < *b) {
            best = Some((w, mask, p));
        }
    };
    for (i, &c) in children.iter().enumerate() {
        offer(weight_of(g, &below[i]), below[i].clone(), Provenance::OneRespecting(edge(c)));
        for (j, &d) in children.iter().enumerate().skip(i + 1) {
            let mask: Vec<bool> = (0..n).map(|v| below[i][v] ^ below[j][v]).collect();
            offer(weight_of(g, &mask), mask, Provenance::TwoRespecting(edge(c), edge(d)));
        }
    }
    let (weight, mask, provenance) = best.expect("n >= 2 gives a tree edge");
    Ok(CutResult { weight, side: (0..n).filter(|&v| mask[v]).collect(), provenance })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::parse_graph;

    fn triangle() -> WeightedGraph {
        parse_graph("3 3\n1 2 1\n2 3 2\n1 3 3").unwrap()
    }

    fn k4() -> WeightedGraph {
        parse_graph("4 6\n1 2 1\n1 3 1\n1 4 1\n2 3 1\n2 4 1\n3 4 1").unwrap()
    }

    #[test]
    fn exhaustive_examples() {
        let c = exhaustive_min_cut(&triangle()).unwrap();
        assert_eq!((c.weight, c.side), (3, vec![1]));
        assert_eq!(exhaustive_min_cut(&parse_graph("2 1\n1 2 7").unwrap()).unwrap().weight, 7);
        assert_eq!(exhaustive_min_cut(&k4()).unwrap().weight, 3);
        let big = WeightedGraph::new(23, (0..22).map(|v| (v, v + 1, 1))).unwrap();
        assert_eq!(exhaustive_min_cut(&big).unwrap_err(), Error::TooLarge { n: 23, limit: 22 });
    }

    #[test]
    fn stoer_wagner_examples() {
        let c = stoer_wagner(&triangle()).unwrap();
        assert_eq!(c.weight, 3);
        assert_eq!(c.side, vec![1]);
        assert_eq!(stoer_wagner(&parse_graph("2 1\n1 2 7").unwrap()).unwrap().weight, 7);
        assert_eq!(stoer_wagner(&k4()).unwrap().weight, 3);
        let split = parse_graph("4 2\n1 2 1\n3 4 1").unwrap();
        assert_eq!(stoer_wagner(&split), Err(Error::Disconnected));
    }

    #[test]
    fn brute_examples() {
        let c = brute_2respect(&triangle(), &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(c.weight, 3);
        assert_eq!(c.provenance, Provenance::TwoRespecting((0, 1), (1, 2)));
        let tree = parse_graph("4 3\n1 2 5\n2 3 2\n3 4 9").unwrap();
        assert_eq!(brute_2respect(&tree, &[(0, 1), (1, 2), (2, 3)]).unwrap().weight, 2);
        let c4 = parse_graph("4 4\n1 2 1\n2 3 1\n3 4 1\n4 1 1").unwrap();
        assert_eq!(brute_2respect(&c4, &[(0, 1), (1, 2), (2, 3)]).unwrap().weight, 2);
        assert!(brute_2respect(&c4, &[(0, 1), (1, 2)]).is_err());
    }
}
