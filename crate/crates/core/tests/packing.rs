use std::collections::HashMap;

use proptest::prelude::*;
use rand::Rng;
use twocut::generate::rng;
use twocut::packing::{approx_min_cut_detailed, packing_scale, sample_draws, TreePacking};
use twocut::{
    approx_min_cut, exhaustive_min_cut, generate, pack_trees, sample_multigraph, sample_trees, GenSpec, Model,
    Multigraph, WeightedGraph,
};

/// The packing loop run literally: one iteration at a time, explicit per-copy
/// loads, each class handing out its copies in cyclic order, and a full sort
/// for every minimum spanning tree.
fn reference_packing(h: &Multigraph) -> (Vec<(Vec<u32>, u64)>, u64, Vec<Vec<u64>>) {
    let n = h.n();
    let classes = h.edges();
    let scale = packing_scale(h.m_prime());
    let mut copies: Vec<Vec<u64>> = classes.iter().map(|e| vec![0; e.2 as usize]).collect();
    let mut next: Vec<usize> = vec![0; classes.len()];
    let mut trees: Vec<(Vec<u32>, u64)> = Vec::new();
    let mut iterations = 0;
    while copies.iter().flatten().all(|&l| l < scale) {
        let mut order: Vec<usize> = (0..classes.len()).collect();
        order.sort_by_key(|&i| (copies[i][next[i]], i));
        let mut comp: Vec<usize> = (0..n).collect();
        let mut tree = Vec::new();
        for i in order {
            let (u, v, _) = classes[i];
            let (a, b) = (comp[u], comp[v]);
            if a != b {
                for c in comp.iter_mut() {
                    if *c == b {
                        *c = a;
                    }
                }
                tree.push(i as u32);
            }
        }
        for &i in &tree {
            let i = i as usize;
            copies[i][next[i]] += 1;
            next[i] = (next[i] + 1) % copies[i].len();
        }
        tree.sort_unstable();
        match trees.iter_mut().find(|t| t.0 == tree) {
            Some(t) => t.1 += 1,
            None => trees.push((tree, 1)),
        }
        iterations += 1;
    }
    (trees, iterations, copies)
}

fn random_multigraph(n: usize, p: f64, max_mult: u64, r: &mut impl Rng) -> Multigraph {
    let g = generate(&GenSpec { model: Model::Gnp { n, p }, weights: (1, max_mult), seed: r.gen() }).unwrap().graph;
    Multigraph::new(n, g.edges().iter().map(|e| (e.u, e.v, e.w)).collect()).unwrap()
}

#[test]
fn batched_packing_equals_literal_loop() {
    let mut r = rng(31, 0);
    for _ in 0..25 {
        let n = r.gen_range(2..=7);
        let h = random_multigraph(n, 0.6, 3, &mut r);
        let p = pack_trees(&h).unwrap();
        let (trees, iterations, copies) = reference_packing(&h);
        let got: Vec<(Vec<u32>, u64)> = p.trees.iter().map(|t| (t.classes.clone(), t.count)).collect();
        assert_eq!(got, trees);
        assert_eq!(p.iterations, iterations);
        for (i, c) in copies.iter().enumerate() {
            let mut want = c.clone();
            want.sort_unstable_by(|a, b| b.cmp(a));
            assert_eq!(p.copy_loads(i), want);
        }
    }
}

#[test]
fn triangle_packing_value() {
    let h = Multigraph::new(3, vec![(0, 1, 1), (1, 2, 1), (0, 2, 1)]).unwrap();
    let p = pack_trees(&h).unwrap();
    assert!(4 * p.tau_scaled() >= 3 * p.scale, "τ below 3/4");
    assert!(p.tau_scaled() <= 2 * p.scale, "τ above 2");
    let (trees, iterations, _) = reference_packing(&h);
    assert_eq!(p.iterations, iterations);
    assert_eq!(p.trees.len(), trees.len());
}

#[test]
fn packing_bounds_on_small_multigraphs() {
    let mut r = rng(32, 0);
    for _ in 0..100 {
        let n = r.gen_range(2..=9);
        let h = random_multigraph(n, r.gen_range(0.3..1.0), 4, &mut r);
        let c = exhaustive_min_cut(&h.to_weighted().unwrap()).unwrap().weight;
        let p = pack_trees(&h).unwrap();
        let l = p.scale;
        assert!(p.iterations <= c * (l - 1) + 1, "{} iterations for c' = {c}, L = {l}", p.iterations);
        assert!(p.max_copy_load() <= l);
        assert!(8 * p.tau_scaled() >= 3 * c * l, "τ·L = {} below 3c'L/8 for c' = {c}", p.tau_scaled());
        assert_eq!(p.loads_from_scratch(), p.class_load);
    }
}

#[test]
fn draw_counts_follow_weights() {
    let g = WeightedGraph::new(3, [(0, 1, 1), (1, 2, 2), (0, 2, 3)]).unwrap();
    for seed in 0..5 {
        let counts = sample_draws(&g, 600, &mut rng(seed, 4)).unwrap();
        // edges are stored sorted: (0,1) w1, (0,2) w3, (1,2) w2
        for (&got, (mean, prob)) in counts.iter().zip([(100.0, 1.0 / 6.0), (300.0, 0.5), (200.0, 1.0 / 3.0)]) {
            let sigma = (600.0f64 * prob * (1.0 - prob)).sqrt();
            assert!((got as f64 - mean).abs() <= 4.0 * sigma, "count {got} vs mean {mean}");
        }
    }
}

#[test]
fn tree_draws_follow_weights() {
    let h = Multigraph::new(3, vec![(0, 1, 1), (1, 2, 1), (0, 2, 1)]).unwrap();
    let p = TreePacking::from_trees(&h, vec![(vec![0, 1], 1), (vec![1, 2], 3)], 4).unwrap();
    for seed in 0..5 {
        let draws = sample_trees(&p, 4000, &mut rng(seed, 5)).unwrap();
        let ones = draws.iter().filter(|&&i| i == 0).count() as f64;
        let sigma = (4000.0f64 * 0.25 * 0.75).sqrt();
        assert!((ones - 1000.0).abs() <= 4.0 * sigma, "{ones} draws of the light tree");
    }
    let single = TreePacking::from_trees(&h, vec![(vec![0, 1], 5)], 4).unwrap();
    assert_eq!(sample_trees(&single, 7, &mut rng(0, 0)).unwrap(), vec![0; 7]);
}

#[test]
fn sampled_multigraph_contract() {
    let mut r = rng(33, 0);
    for _ in 0..20 {
        let n = r.gen_range(20..=60);
        let g = generate(&GenSpec { model: Model::Gnp { n, p: 0.5 }, weights: (1, 50), seed: r.gen() }).unwrap().graph;
        let est = approx_min_cut(&g, 1, 1).unwrap();
        let h1 = sample_multigraph(&g, est, 2.0, None, &mut rng(7, 1)).unwrap();
        let h2 = sample_multigraph(&g, est, 2.0, None, &mut rng(7, 1)).unwrap();
        assert_eq!(h1, h2);
        assert!(h1.edges().iter().all(|e| e.2 >= 1 && e.2 <= h1.cap()));
        assert!(h1.edges().iter().all(|e| g.edge_index(e.0, e.1).is_some()));
        assert!(h1.to_weighted().unwrap().is_connected());
    }
}

fn ratio_ok(est: u64, c: u64, n: usize) -> bool {
    // c ≤ ĉ ≤ (2+1)(1+1/n)·c
    c <= est && est as u128 * n as u128 <= 3 * (n as u128 + 1) * c as u128
}

#[test]
fn estimate_within_factor() {
    let mut r = rng(34, 0);
    let mut seen = HashMap::new();
    for _ in 0..150 {
        let n = r.gen_range(2..=14);
        let model = match r.gen_range(0..3) {
            0 => Model::Gnp { n, p: r.gen_range(0.1..1.0) },
            1 => Model::TreePlus { n, extra: r.gen_range(0..=n).min((n - 1) * (n - 2) / 2) },
            _ => Model::Grid { rows: 2, cols: n.max(2) / 2 },
        };
        let wmax = [1, 20, 1_000_000][r.gen_range(0..3)];
        let g = generate(&GenSpec { model, weights: (1, wmax), seed: r.gen() }).unwrap().graph;
        let c = exhaustive_min_cut(&g).unwrap().weight;
        let e = approx_min_cut_detailed(&g, 1, 1).unwrap();
        assert!(ratio_ok(e.estimate, c, g.n()), "ĉ = {} for c = {c}", e.estimate);
        *seen.entry(e.scaled).or_insert(0) += 1;
    }
    // huge weights take the rescaling path
    let g = generate(&GenSpec { model: Model::Gnp { n: 10, p: 0.5 }, weights: (1 << 40, 1 << 50), seed: 1 }).unwrap().graph;
    let e = approx_min_cut_detailed(&g, 1, 1).unwrap();
    assert!(e.scaled);
    assert!(ratio_ok(e.estimate, exhaustive_min_cut(&g).unwrap().weight, 10));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]
    #[test]
    fn packing_matches_reference(seed in any::<u64>(), n in 2usize..6, mult in 1u64..4) {
        let mut r = rng(seed, 0);
        let h = random_multigraph(n, 0.7, mult, &mut r);
        let p = pack_trees(&h).unwrap();
        let (trees, iterations, _) = reference_packing(&h);
        prop_assert_eq!(p.iterations, iterations);
        prop_assert_eq!(p.trees.len(), trees.len());
    }
}
