mod common;

use common::{check_defining_property, classes, empty_class, random_cost_tree, random_lambda};
use proptest::prelude::*;
use rand::Rng;
use twocut::generate::rng;
use twocut::induced::{build_induced_with, Variant};
use twocut::{build_induced, Cost, Costs, LcaIndex, Scope, ScoreTree};

#[test]
fn defining_property_on_random_trees() {
    let mut r = rng(3, 0);
    for case in 0..300 {
        let n = r.gen_range(2..=60);
        let src = random_cost_tree(n, [0, 2, 3][case % 3], 30, 8, &mut r);
        let k = r.gen_range(1..=10);
        let lambda = random_lambda(n, k, &mut r);
        check_defining_property(&src, &lambda);
    }
}

#[test]
fn composition_matches_direct_induction() {
    let mut r = rng(4, 0);
    for case in 0..300 {
        let n = r.gen_range(2..=60);
        let src = random_cost_tree(n, [0, 2][case % 2], 30, 10, &mut r);
        let outer = random_lambda(n, r.gen_range(1..=10), &mut r);
        let keep: Vec<usize> = outer.iter().copied().filter(|_| r.gen_bool(0.5)).collect();
        let inner = if keep.is_empty() { vec![outer[0]] } else { keep };

        let scope = Scope::whole(&src.topo);
        let t1 = build_induced(&src, Costs::Explicit, scope, &outer).unwrap();
        let mut mapped: Vec<usize> =
            inner.iter().map(|v| t1.lambda_nodes[outer.binary_search(v).unwrap()]).collect();
        mapped.sort_unstable();
        let t12 = build_induced(&t1.tree, Costs::Explicit, Scope::whole(&t1.tree.topo), &mapped).unwrap();
        let direct = build_induced(&src, Costs::Explicit, scope, &inner).unwrap();

        // t12 lists its Λ in the order of `mapped`; reorder to follow `inner`.
        let order: Vec<usize> = inner
            .iter()
            .map(|v| {
                let node = t1.lambda_nodes[outer.binary_search(v).unwrap()];
                t12.lambda_nodes[mapped.binary_search(&node).unwrap()]
            })
            .collect();
        assert_eq!(
            classes(&t12.tree.topo, &t12.tree.cost, &order, 1..t12.len()),
            classes(&direct.tree.topo, &direct.tree.cost, &direct.lambda_nodes, 1..direct.len()),
        );
        assert_eq!(
            empty_class(&t12.tree.topo, &t12.tree.cost, &order, 1..t12.len()),
            empty_class(&direct.tree.topo, &direct.tree.cost, &direct.lambda_nodes, 1..direct.len()),
        );
    }
}

#[test]
fn query_and_sweep_constructions_agree() {
    let mut r = rng(5, 0);
    for _ in 0..200 {
        let n = r.gen_range(2..=80);
        let src = random_cost_tree(n, 0, 25, 6, &mut r);
        let lambda = random_lambda(n, r.gen_range(1..=12), &mut r);
        let lca = LcaIndex::new(&src.topo);
        let mut score = ScoreTree::new(&src.topo, &src.cost);
        // perturb through the score tree so the live costs differ from `src.cost`
        for _ in 0..5 {
            let v = r.gen_range(0..n);
            score.add(v, Cost::finite(r.gen_range(-10..=10)));
        }
        let scope = Scope::whole(&src.topo);
        let q = build_induced_with(&src, Costs::Scored { score: &mut score, lca: &lca }, scope, &lambda, Variant::Queries)
            .unwrap();
        let s = build_induced_with(&src, Costs::Scored { score: &mut score, lca: &lca }, scope, &lambda, Variant::Sweep)
            .unwrap();
        assert_eq!(q.tree.topo, s.tree.topo);
        assert_eq!(q.tree.cost, s.tree.cost);
        assert_eq!(q.lambda_nodes, s.lambda_nodes);
    }
}

#[test]
fn child_scope_only_sees_that_subtree() {
    let mut r = rng(6, 0);
    for _ in 0..100 {
        let n = r.gen_range(3..=40);
        let src = random_cost_tree(n, 0, 20, 0, &mut r);
        let Some(child) = src.topo.children(0).next() else { continue };
        let scope = Scope::child(&src.topo, 0, child);
        let below: Vec<usize> = src.topo.subtree(child).collect();
        let mut lambda: Vec<usize> = std::iter::once(0).chain(below.iter().copied().filter(|_| r.gen_bool(0.3))).collect();
        lambda.dedup();
        let t = build_induced(&src, Costs::Explicit, scope, &lambda).unwrap();
        let want = classes(&src.topo, &src.cost, &lambda, src.topo.subtree(child));
        let got = classes(&t.tree.topo, &t.tree.cost, &t.lambda_nodes, 1..t.len());
        assert_eq!(want, got);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]
    #[test]
    fn size_bound_and_classes(seed in any::<u64>(), n in 2usize..50, k in 1usize..8) {
        let mut r = rng(seed, 1);
        let src = random_cost_tree(n, 0, 15, 5, &mut r);
        let lambda = random_lambda(n, k, &mut r);
        let size = check_defining_property(&src, &lambda);
        prop_assert!(size <= 2 * lambda.len() + 2);
    }
}
