// SPDX-License-Identifier: Apache-2.0
//! Library-versus-oracle comparison of every metric on one instance.

use gam_core::{
    ccns_matrix, continuous_ccns_matrix, continuous_homophily, continuous_regression_homophily, khop_neighborhoods,
    node_homophily, regression_homophily, CcnsMatrix, CcnsOptions, ClassLabels, DiscreteGraph, HomophilyResult,
    KHopExpander, Neighborhoods, NodeLabels, NodeSet, RegressionLabels, WeightedGraph,
};

use super::*;

pub struct Compared {
    pub checks: usize,
    pub max_error: f64,
}

fn cmp_homophily(
    what: &str,
    lib: gam_core::Result<HomophilyResult>,
    oracle: &[Option<f64>],
    nodes: &[usize],
    tol: f64,
    acc: &mut Compared,
) -> Result<(), String> {
    let expected = summarize(oracle, nodes);
    match (lib, expected) {
        (Err(_), None) => Ok(()),
        (Ok(r), Some((mean, std))) => {
            let got = spread(oracle.len(), &r.nodes, &r.per_node);
            let masked: Vec<Option<f64>> =
                (0..oracle.len()).map(|v| if nodes.contains(&v) { oracle[v] } else { None }).collect();
            if !scores_close(&got, &masked, tol) {
                return Err(format!("{what}: per-node scores differ: {got:?} vs {masked:?}"));
            }
            let err = (r.mean - mean).abs().max((r.std - std).abs());
            acc.max_error = acc.max_error.max(err);
            acc.checks += 1;
            if err > tol {
                return Err(format!("{what}: mean/std ({}, {}) vs ({mean}, {std})", r.mean, r.std));
            }
            Ok(())
        }
        (Ok(r), None) => Err(format!("{what}: expected an error, got mean {}", r.mean)),
        (Err(e), Some(_)) => Err(format!("{what}: unexpected error {e}")),
    }
}

fn cmp_ccns(
    what: &str,
    lib: gam_core::Result<CcnsMatrix>,
    oracle: Option<Vec<Vec<f64>>>,
    tol: f64,
    acc: &mut Compared,
) -> Result<(), String> {
    match (lib, oracle) {
        (Err(gam_core::GamError::EmptyClass { .. }), None) => Ok(()),
        (Ok(m), Some(expected)) => {
            let flat: Vec<f64> = expected.iter().flatten().copied().collect();
            let err = max_abs_diff(m.row_major(), &flat).max((m.distance() - ccns_distance(&expected)).abs());
            acc.max_error = acc.max_error.max(err);
            acc.checks += 1;
            if err > tol {
                return Err(format!("{what}: matrix {:?} vs {flat:?}", m.row_major()));
            }
            Ok(())
        }
        (lib, oracle) => Err(format!("{what}: library {:?} but oracle {:?}", lib.map(|m| m.distance()), oracle)),
    }
}

/// Compare all metrics on `inst`, averaging over `restrict` (all nodes if `None`).
pub fn compare_instance(inst: &Instance, restrict: Option<&[usize]>, tol: f64) -> Result<Compared, String> {
    let mut acc = Compared { checks: 0, max_error: 0.0 };
    let all: Vec<usize> = (0..inst.n).collect();
    let nodes = restrict.unwrap_or(&all);
    let set = restrict.map(|r| NodeSet::new(r.iter().map(|&v| v as u32).collect(), inst.n).unwrap());
    let set = set.as_ref();

    let graph = DiscreteGraph::from_edges(inst.n, &inst.edges).map_err(|e| e.to_string())?;
    let weighted = WeightedGraph::from_weighted_edges(inst.n, &inst.weighted_triplets()).map_err(|e| e.to_string())?;
    let classes =
        NodeLabels::Classification(ClassLabels::with_num_classes(inst.classes.clone(), inst.num_classes).unwrap());
    let targets = NodeLabels::Regression(RegressionLabels::normalize(inst.targets.clone()).unwrap());
    let y = min_max(&inst.targets);
    let dist = hop_distances(inst.n, &inst.edges);
    let w = inst.dense_weights();

    for k in 1..=3 {
        let sets = khop_sets(&dist, k);
        let expander = KHopExpander::new(&graph, k).unwrap();
        let materialized = khop_neighborhoods(&graph, k).unwrap();
        let mut scratch = expander.scratch();
        for v in 0..inst.n as u32 {
            let expected: Vec<u32> = sets[v as usize].iter().map(|&u| u as u32).collect();
            if expander.neighbors(v, &mut scratch) != expected.as_slice() || materialized.of(v) != expected.as_slice() {
                return Err(format!("k={k}: neighborhood of {v} differs from hop distances"));
            }
        }
        let h = homophily_scores(&sets, &inst.classes);
        cmp_homophily(&format!("homophily k={k}"), node_homophily(&classes, &expander, set), &h, nodes, tol, &mut acc)?;
        cmp_homophily(
            &format!("homophily csr k={k}"),
            node_homophily(&classes, &materialized, set),
            &h,
            nodes,
            tol,
            &mut acc,
        )?;
        let r = regression_scores(&sets, &y);
        cmp_homophily(
            &format!("hreg k={k}"),
            regression_homophily(&targets, &expander, set),
            &r,
            nodes,
            tol,
            &mut acc,
        )?;
        let hists = discrete_histograms(&sets, &inst.classes, inst.num_classes);
        for self_pairs in [true, false] {
            let opts = CcnsOptions { include_self_pairs: self_pairs };
            cmp_ccns(
                &format!("ccns k={k} self={self_pairs}"),
                ccns_matrix(&classes, &expander, set, opts),
                ccns(&hists, &inst.classes, inst.num_classes, nodes, self_pairs),
                tol,
                &mut acc,
            )?;
        }
    }

    let hc = weighted_homophily_scores(&w, &inst.classes);
    cmp_homophily("hcont", continuous_homophily(&weighted, &classes, set), &hc, nodes, tol, &mut acc)?;
    let hr = weighted_regression_scores(&w, &y);
    cmp_homophily("hreg_cont", continuous_regression_homophily(&weighted, &targets, set), &hr, nodes, tol, &mut acc)?;
    let whists = weighted_histograms(&w, &inst.classes, inst.num_classes);
    for self_pairs in [true, false] {
        let opts = CcnsOptions { include_self_pairs: self_pairs };
        cmp_ccns(
            &format!("ccns_cont self={self_pairs}"),
            continuous_ccns_matrix(&weighted, &classes, set, opts),
            ccns(&whists, &inst.classes, inst.num_classes, nodes, self_pairs),
            tol,
            &mut acc,
        )?;
    }
    Ok(acc)
}
