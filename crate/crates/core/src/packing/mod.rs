//! Randomized preprocessing: estimate the cut, sample a multigraph `H`, pack
//! spanning trees into `H` greedily and draw trees from the packing.
//!
//! The packing loop repeatedly takes a minimum spanning tree of `H` with
//! respect to edge loads and raises its weight and its edges' loads by the
//! same constant `1/L`, `L = ⌈96 ln m'⌉`, until some edge reaches load 1.
//! Since every increment is the same, loads are kept as integer counters and
//! all comparisons are exact. Parallel copies of an edge are used in cyclic
//! order, so their loads differ by at most one and the class only needs its
//! total count `t`: the least-loaded copy has `⌊t/k⌋` increments, the most
//! loaded `⌈t/k⌉`.

mod matula;
mod sampling;

use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::hash::{Hash, Hasher};

use rand::Rng;

use crate::dsu::Dsu;
use crate::error::{Error, Result};

pub use matula::{approx_min_cut, approx_min_cut_detailed, Estimate};
pub use sampling::{sample_draws, sample_multigraph, sampling_probability, Multigraph, DEFAULT_SAMPLING_CONSTANT};

/// A distinct tree of a packing and how many increments it received.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PackedTree {
    /// Indices into [`Multigraph::edges`], sorted.
    pub classes: Vec<u32>,
    pub count: u64,
}

/// Trees with weights `count / scale`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreePacking {
    /// Distinct trees in order of first appearance.
    pub trees: Vec<PackedTree>,
    /// `L`: the number of increments that make one unit of load.
    pub scale: u64,
    /// Loop iterations; `τ = iterations / scale`.
    pub iterations: u64,
    /// Increments received per parallel class.
    pub class_load: Vec<u64>,
    pub multiplicity: Vec<u64>,
    pub m_prime: u64,
    endpoints: Vec<(usize, usize)>,
}

impl TreePacking {
    /// A packing given directly as `(sorted class indices, count)` pairs over
    /// the classes of `h`, with weights `count / scale`.
    pub fn from_trees(h: &Multigraph, trees: Vec<(Vec<u32>, u64)>, scale: u64) -> Result<TreePacking> {
        let m = h.edges().len();
        let mut load = vec![0u64; m];
        let mut iterations = 0;
        for (classes, count) in &trees {
            if classes.len() + 1 != h.n() || classes.iter().any(|&c| c as usize >= m) {
                return Err(Error::NotSpanning(format!("tree with classes {classes:?}")));
            }
            for &c in classes {
                load[c as usize] += count;
            }
            iterations += count;
        }
        Ok(TreePacking {
            trees: trees.into_iter().map(|(classes, count)| PackedTree { classes, count }).collect(),
            scale: scale.max(1),
            iterations,
            class_load: load,
            multiplicity: h.edges().iter().map(|e| e.2).collect(),
            m_prime: h.m_prime(),
            endpoints: h.edges().iter().map(|&(u, v, _)| (u, v)).collect(),
        })
    }

    /// `τ` in units of `1/scale`.
    pub fn tau_scaled(&self) -> u64 {
        self.iterations
    }

    /// Edges of tree `i` as vertex pairs of `H`.
    pub fn tree_edges(&self, i: usize) -> Vec<(usize, usize)> {
        self.trees[i].classes.iter().map(|&c| self.endpoints[c as usize]).collect()
    }

    /// Loads of the copies of one class, in cyclic order.
    pub fn copy_loads(&self, class: usize) -> Vec<u64> {
        let (t, k) = (self.class_load[class], self.multiplicity[class]);
        (0..k).map(|i| t / k + u64::from(i < t % k)).collect()
    }

    /// Largest load of any single copy, in units of `1/scale`.
    pub fn max_copy_load(&self) -> u64 {
        self.class_load.iter().zip(&self.multiplicity).map(|(&t, &k)| t.div_ceil(k)).max().unwrap_or(0)
    }

    /// Class loads recomputed from the tree list.
    pub fn loads_from_scratch(&self) -> Vec<u64> {
        let mut load = vec![0; self.class_load.len()];
        for t in &self.trees {
            for &c in &t.classes {
                load[c as usize] += t.count;
            }
        }
        load
    }
}

/// `L = max(1, ⌈96 ln m'⌉)`.
pub fn packing_scale(m_prime: u64) -> u64 {
    ((96.0 * (m_prime as f64).ln()).ceil() as u64).max(1)
}

/// Greedy tree packing of `h`.
///
/// Consecutive iterations whose minimum spanning tree cannot change (no
/// least-loaded copy on the tree moves to a new level) are applied together;
/// the result is the same as running them one at a time. The edge order is
/// kept sorted by (level, class) between iterations: only tree edges move, and
/// each by one level, so a single merge restores it.
pub fn pack_trees(h: &Multigraph) -> Result<TreePacking> {
    let n = h.n();
    if n < 2 {
        return Err(Error::TooFewVertices);
    }
    let edges = h.edges();
    let m = edges.len();
    let m_prime = h.m_prime();
    let scale = packing_scale(m_prime);
    let mult: Vec<u64> = edges.iter().map(|e| e.2).collect();
    let mut load = vec![0u64; m];
    let mut level = vec![0u64; m];
    let mut order: Vec<u32> = (0..m as u32).collect();
    let mut trees: Vec<PackedTree> = Vec::new();
    let mut by_hash: HashMap<u64, Vec<usize>> = HashMap::new();
    let mut iterations = 0u64;
    let mut dsu = Dsu::new(n);
    let mut tree: Vec<u32> = Vec::with_capacity(n - 1);
    let mut moved = vec![false; m];
    let mut rising: Vec<u32> = Vec::new();
    let mut merged: Vec<u32> = Vec::with_capacity(m);

    loop {
        dsu.reset();
        tree.clear();
        for &i in &order {
            let (u, v, _) = edges[i as usize];
            if dsu.union(u, v) {
                tree.push(i);
                if tree.len() == n - 1 {
                    break;
                }
            }
        }
        if tree.len() != n - 1 {
            return Err(Error::Disconnected);
        }

        // iterations until a level on the tree changes or some copy reaches L
        let mut repeat = u64::MAX;
        for &i in &tree {
            let (t, k) = (load[i as usize], mult[i as usize]);
            repeat = repeat.min(k - t % k).min((scale - 1) * k + 1 - t);
        }
        let mut done = false;
        rising.clear();
        for &i in &tree {
            let i = i as usize;
            load[i] += repeat;
            done |= load[i].div_ceil(mult[i]) >= scale;
            if load[i] / mult[i] != level[i] {
                level[i] += 1;
                moved[i] = true;
                rising.push(i as u32);
            }
        }
        iterations += repeat;

        tree.sort_unstable();
        let hash = fingerprint(&tree);
        let slot = by_hash.entry(hash).or_default();
        match slot.iter().copied().find(|&j| trees[j].classes == tree) {
            Some(j) => trees[j].count += repeat,
            None => {
                slot.push(trees.len());
                trees.push(PackedTree { classes: tree.clone(), count: repeat });
            }
        }
        if done {
            break;
        }

        rising.sort_unstable_by_key(|&i| (level[i as usize], i));
        merged.clear();
        let mut r = 0;
        for &i in &order {
            if moved[i as usize] {
                continue;
            }
            let key = (level[i as usize], i);
            while r < rising.len() && (level[rising[r] as usize], rising[r]) < key {
                merged.push(rising[r]);
                r += 1;
            }
            merged.push(i);
        }
        merged.extend_from_slice(&rising[r..]);
        for &i in &rising {
            moved[i as usize] = false;
        }
        std::mem::swap(&mut order, &mut merged);
    }
    let endpoints = edges.iter().map(|&(u, v, _)| (u, v)).collect();
    Ok(TreePacking { trees, scale, iterations, class_load: load, multiplicity: mult, m_prime, endpoints })
}

fn fingerprint(classes: &[u32]) -> u64 {
    let mut h = DefaultHasher::new();
    classes.hash(&mut h);
    h.finish()
}

/// `k` independent draws of tree indices, each tree with probability
/// proportional to its weight.
pub fn sample_trees(p: &TreePacking, k: usize, r: &mut impl Rng) -> Result<Vec<usize>> {
    if p.iterations == 0 || p.trees.is_empty() {
        return Err(Error::EmptyPacking);
    }
    let prefix: Vec<u64> = p
        .trees
        .iter()
        .scan(0u64, |acc, t| {
            *acc += t.count;
            Some(*acc)
        })
        .collect();
    Ok((0..k)
        .map(|_| {
            let x = r.gen_range(0..p.iterations);
            prefix.partition_point(|&s| s <= x)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::rng;

    #[test]
    fn single_tree_multigraph() {
        let h = Multigraph::new(4, vec![(0, 1, 1), (1, 2, 1), (2, 3, 1)]).unwrap();
        let p = pack_trees(&h).unwrap();
        assert_eq!(p.trees.len(), 1);
        assert_eq!(p.iterations, p.scale);
        assert_eq!(p.max_copy_load(), p.scale);
        assert_eq!(sample_trees(&p, 5, &mut rng(0, 0)).unwrap(), vec![0; 5]);
    }

    #[test]
    fn triangle_bounds() {
        let h = Multigraph::new(3, vec![(0, 1, 1), (1, 2, 1), (0, 2, 1)]).unwrap();
        let p = pack_trees(&h).unwrap();
        // τ = iterations / scale must lie in [3/4, 2]
        assert!(4 * p.iterations >= 3 * p.scale && p.iterations <= 2 * p.scale);
        assert_eq!(p.loads_from_scratch(), p.class_load);
        assert!(p.max_copy_load() <= p.scale);
    }

    #[test]
    fn draws_and_errors() {
        let h = Multigraph::new(3, vec![(0, 1, 2), (1, 2, 1), (0, 2, 1)]).unwrap();
        let p = pack_trees(&h).unwrap();
        assert!(sample_trees(&p, 0, &mut rng(0, 0)).unwrap().is_empty());
        let split = Multigraph::new(4, vec![(0, 1, 1), (2, 3, 1)]).unwrap();
        assert_eq!(pack_trees(&split), Err(Error::Disconnected));
        let empty = TreePacking::from_trees(&h, vec![], 1).unwrap();
        assert_eq!(sample_trees(&empty, 3, &mut rng(0, 0)), Err(Error::EmptyPacking));
    }
}
