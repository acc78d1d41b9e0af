// SPDX-License-Identifier: Apache-2.0
//! Invariances, reductions and ranges over generated instances.

mod common;

use common::*;
use gam_core::{
    ccns_matrix, continuous_ccns_matrix, continuous_homophily, continuous_regression_homophily, khop_neighborhoods,
    node_homophily, regression_homophily, CcnsOptions, ClassLabels, DiscreteGraph, KHopExpander, NodeLabels,
    RegressionLabels, WeightedGraph,
};
use proptest::prelude::*;
use rand::seq::SliceRandom;

fn instance() -> impl Strategy<Value = Instance> {
    (4usize..20, 0.05f64..0.6, 2usize..5, any::<u64>())
        .prop_map(|(n, p, c, seed)| random_instance(&mut rng(seed), n, p, c))
}

fn classes_of(inst: &Instance) -> NodeLabels {
    NodeLabels::Classification(ClassLabels::with_num_classes(inst.classes.clone(), inst.num_classes).unwrap())
}

fn targets_of(raw: &[f64]) -> NodeLabels {
    NodeLabels::Regression(RegressionLabels::normalize(raw.to_vec()).unwrap())
}

fn discrete(inst: &Instance) -> DiscreteGraph {
    DiscreteGraph::from_edges(inst.n, &inst.edges).unwrap()
}

fn weighted(inst: &Instance) -> WeightedGraph {
    WeightedGraph::from_weighted_edges(inst.n, &inst.weighted_triplets()).unwrap()
}

fn opts() -> CcnsOptions {
    CcnsOptions::default()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn every_metric_lies_in_unit_interval(inst in instance()) {
        let g = discrete(&inst);
        let wg = weighted(&inst);
        let c = classes_of(&inst);
        let y = targets_of(&inst.targets);
        for k in 1..=3 {
            let nbh = KHopExpander::new(&g, k).unwrap();
            for r in [node_homophily(&c, &nbh, None), regression_homophily(&y, &nbh, None)].into_iter().flatten() {
                prop_assert!(r.per_node.iter().flatten().all(|s| (0.0..=1.0).contains(s)));
                prop_assert!((0.0..=1.0).contains(&r.mean) && r.std >= 0.0 && r.std <= 0.5);
            }
            let m = ccns_matrix(&c, &nbh, None, opts()).unwrap();
            prop_assert!(m.row_major().iter().all(|x| (0.0..=1.0).contains(x)));
            prop_assert!(m.distance() >= 0.0 && m.distance() <= inst.num_classes as f64);
        }
        for r in [continuous_homophily(&wg, &c, None), continuous_regression_homophily(&wg, &y, None)].into_iter().flatten() {
            prop_assert!(r.per_node.iter().flatten().all(|s| (0.0..=1.0).contains(s)));
        }
    }

    #[test]
    fn renaming_classes_permutes_ccns(inst in instance(), seed in any::<u64>()) {
        let mut perm: Vec<u32> = (0..inst.num_classes as u32).collect();
        perm.shuffle(&mut rng(seed));
        let renamed = Instance { classes: inst.classes.iter().map(|&c| perm[c as usize]).collect(), ..inst.clone() };
        let g = discrete(&inst);
        let (a, b) = (classes_of(&inst), classes_of(&renamed));
        for k in 1..=2 {
            let nbh = KHopExpander::new(&g, k).unwrap();
            if let Ok(h) = node_homophily(&a, &nbh, None) {
                prop_assert_eq!(h, node_homophily(&b, &nbh, None).unwrap());
            }
            let (ma, mb) = (ccns_matrix(&a, &nbh, None, opts()).unwrap(), ccns_matrix(&b, &nbh, None, opts()).unwrap());
            for c in 0..inst.num_classes {
                for c2 in 0..inst.num_classes {
                    let moved = mb.get(perm[c] as usize, perm[c2] as usize);
                    prop_assert!((ma.get(c, c2) - moved).abs() <= 1e-12);
                }
            }
        }
    }

    #[test]
    fn renaming_nodes_leaves_summaries_unchanged(inst in instance(), seed in any::<u64>()) {
        let mut perm: Vec<u32> = (0..inst.n as u32).collect();
        perm.shuffle(&mut rng(seed));
        let mut classes = vec![0; inst.n];
        let mut targets = vec![0.0; inst.n];
        for v in 0..inst.n {
            classes[perm[v] as usize] = inst.classes[v];
            targets[perm[v] as usize] = inst.targets[v];
        }
        let moved = Instance {
            edges: inst.edges.iter().map(|&(u, v)| (perm[u as usize], perm[v as usize])).collect(),
            classes,
            targets,
            ..inst.clone()
        };
        let (g, g2) = (discrete(&inst), discrete(&moved));
        let (c, c2) = (classes_of(&inst), classes_of(&moved));
        for k in 1..=3 {
            let (n1, n2) = (KHopExpander::new(&g, k).unwrap(), KHopExpander::new(&g2, k).unwrap());
            if let Ok(h) = node_homophily(&c, &n1, None) {
                let h2 = node_homophily(&c2, &n2, None).unwrap();
                prop_assert!((h.mean - h2.mean).abs() <= 1e-12 && (h.std - h2.std).abs() <= 1e-12);
            }
            let d1 = ccns_matrix(&c, &n1, None, opts()).unwrap();
            let d2 = ccns_matrix(&c2, &n2, None, opts()).unwrap();
            prop_assert!(max_abs_diff(d1.row_major(), d2.row_major()) <= 1e-12);
        }
        let (w1, w2) = (weighted(&inst), weighted(&moved));
        if let Ok(h) = continuous_regression_homophily(&w1, &targets_of(&inst.targets), None) {
            let h2 = continuous_regression_homophily(&w2, &targets_of(&moved.targets), None).unwrap();
            prop_assert!((h.mean - h2.mean).abs() <= 1e-12);
        }
    }

    #[test]
    fn regression_metrics_ignore_reflection_and_affine_maps(inst in instance(), a in 0.01f64..100.0, b in -50.0f64..50.0) {
        prop_assume!(inst.targets.iter().any(|&y| y != inst.targets[0]));
        let g = discrete(&inst);
        let wg = weighted(&inst);
        let base = targets_of(&inst.targets);
        let reflected = targets_of(&inst.targets.iter().map(|y| -y).collect::<Vec<_>>());
        let affine = targets_of(&inst.targets.iter().map(|y| a * y + b).collect::<Vec<_>>());
        let nbh = KHopExpander::new(&g, 2).unwrap();
        if let Ok(h) = regression_homophily(&base, &nbh, None) {
            for other in [&reflected, &affine] {
                let h2 = regression_homophily(other, &nbh, None).unwrap();
                prop_assert!(scores_close(&h.per_node, &h2.per_node, 1e-9));
            }
        }
        if let Ok(h) = continuous_regression_homophily(&wg, &base, None) {
            for other in [&reflected, &affine] {
                let h2 = continuous_regression_homophily(&wg, other, None).unwrap();
                prop_assert!(scores_close(&h.per_node, &h2.per_node, 1e-9));
            }
        }
    }

    #[test]
    fn weighted_metrics_are_scale_free(inst in instance(), exp in -3i32..=3) {
        let wg = weighted(&inst);
        let scaled = wg.scaled(10f64.powi(exp)).unwrap();
        let c = classes_of(&inst);
        let y = targets_of(&inst.targets);
        if let (Ok(a), Ok(b)) = (continuous_homophily(&wg, &c, None), continuous_homophily(&scaled, &c, None)) {
            prop_assert!(scores_close(&a.per_node, &b.per_node, 1e-12));
        }
        if let (Ok(a), Ok(b)) = (continuous_regression_homophily(&wg, &y, None), continuous_regression_homophily(&scaled, &y, None)) {
            prop_assert!(scores_close(&a.per_node, &b.per_node, 1e-12));
        }
        let (a, b) = (continuous_ccns_matrix(&wg, &c, None, opts()).unwrap(), continuous_ccns_matrix(&scaled, &c, None, opts()).unwrap());
        prop_assert!(max_abs_diff(a.row_major(), b.row_major()) <= 1e-12);
    }

    #[test]
    fn uniform_weights_reduce_to_one_hop_metrics(inst in instance(), w in 0.01f64..10.0) {
        let g = discrete(&inst);
        let uniform = WeightedGraph::from_discrete(&g, w).unwrap();
        let nbh = KHopExpander::new(&g, 1).unwrap();
        let c = classes_of(&inst);
        let y = targets_of(&inst.targets);
        if let Ok(h) = node_homophily(&c, &nbh, None) {
            let hc = continuous_homophily(&uniform, &c, None).unwrap();
            prop_assert!(scores_close(&h.per_node, &hc.per_node, 1e-12));
            let hr = regression_homophily(&y, &nbh, None).unwrap();
            let hrc = continuous_regression_homophily(&uniform, &y, None).unwrap();
            prop_assert!(scores_close(&hr.per_node, &hrc.per_node, 1e-12));
        }
        let (d, wc) = (ccns_matrix(&c, &nbh, None, opts()).unwrap(), continuous_ccns_matrix(&uniform, &c, None, opts()).unwrap());
        prop_assert!(max_abs_diff(d.row_major(), wc.row_major()) <= 1e-12);
    }

    #[test]
    fn neighborhoods_grow_with_k_and_agree(inst in instance()) {
        let g = discrete(&inst);
        let mut prev: Option<gam_core::KHopNeighborhoods> = None;
        for k in 1..=4 {
            let cur = khop_neighborhoods(&g, k).unwrap();
            if let Some(p) = &prev {
                for v in 0..inst.n as u32 {
                    prop_assert!(p.of(v).iter().all(|u| cur.of(v).binary_search(u).is_ok()));
                }
            }
            prev = Some(cur);
        }
    }

    #[test]
    fn single_class_components_are_perfectly_homophilous(inst in instance(), k in 1usize..4) {
        // Label every node by its connected component.
        let dist = hop_distances(inst.n, &inst.edges);
        let comp: Vec<u32> = (0..inst.n).map(|v| (0..inst.n).find(|&u| dist[v][u] != UNREACHABLE).unwrap() as u32).collect();
        let labels = NodeLabels::Classification(ClassLabels::new(comp).unwrap());
        let g = discrete(&inst);
        if let Ok(h) = node_homophily(&labels, &KHopExpander::new(&g, k).unwrap(), None) {
            prop_assert_eq!(h.mean, 1.0);
            prop_assert_eq!(h.std, 0.0);
        }
    }
}
