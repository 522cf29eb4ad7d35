//! Property tests over random small graphs and instances.

use bridgedepth::blocking::{is_blocking_set, shrink_blocking_set};
use bridgedepth::bridge_depth::{bridge_depth, bridge_depth_reference, tree_depth, treewidth};
use bridgedepth::graph::io::{dump_graph, dump_instance, load_graph, load_instance};
use bridgedepth::graph::{contract_all_bridges, find_bridges};
use bridgedepth::independence::{alpha, alpha_number};
use bridgedepth::kernel::{kernelize, verify_equivalence, Instance, KernelOptions, ReductionTrace};
use bridgedepth::oracle::{naive_alpha, naive_bridges, naive_is_blocking};
use bridgedepth::random::{random_instance, rng, InstanceParams};
use bridgedepth::{Graph, VertexSet};
use proptest::collection::vec;
use proptest::prelude::*;

/// A graph on ids 0..n from a list of candidate pairs.
fn graph_strategy(max_n: u32) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        vec((0..n, 0..n), 0..(n * 2) as usize).prop_map(move |pairs| {
            let mut g = Graph::with_vertices(0..n);
            for (u, v) in pairs {
                if u != v {
                    g.add_edge(u, v).unwrap();
                }
            }
            g
        })
    })
}

fn subset_strategy(g: &Graph) -> impl Strategy<Value = VertexSet> {
    let ids: Vec<u32> = g.vertices().collect();
    vec(any::<bool>(), ids.len()).prop_map(move |keep| {
        ids.iter()
            .zip(keep)
            .filter(|(_, k)| *k)
            .map(|(&v, _)| v)
            .collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn alpha_matches_powerset(g in graph_strategy(11)) {
        let r = alpha(&g).unwrap();
        prop_assert_eq!(r.alpha, naive_alpha(&g));
        prop_assert!(g.is_independent(&r.witness));
        prop_assert_eq!(r.witness.len(), r.alpha);
    }

    #[test]
    fn bridges_match_deletion(g in graph_strategy(11)) {
        prop_assert_eq!(find_bridges(&g), naive_bridges(&g));
    }

    #[test]
    fn bridge_contraction_keeps_bd(g in graph_strategy(9)) {
        let d = bridge_depth(&g).unwrap();
        let (h, _) = contract_all_bridges(&g);
        prop_assert!(find_bridges(&h).is_empty());
        prop_assert_eq!(bridge_depth(&h).unwrap(), d);
        prop_assert_eq!(bridge_depth_reference(&g), d);
    }

    #[test]
    fn bd_sits_between_tw_and_td(g in graph_strategy(9)) {
        let d = bridge_depth(&g).unwrap();
        prop_assert!(treewidth(&g).unwrap() <= d);
        prop_assert!(d <= tree_depth(&g).unwrap());
    }

    #[test]
    fn graph_files_round_trip(g in graph_strategy(12)) {
        let text = dump_graph(&g);
        let back = load_graph(&text).unwrap();
        prop_assert_eq!(dump_graph(&back), text);
        prop_assert_eq!((back.n(), back.m()), (g.n(), g.m()));
    }

    #[test]
    fn shrinking_keeps_a_blocking_subset((g, y) in graph_strategy(9).prop_flat_map(|g| {
        let s = subset_strategy(&g);
        (Just(g), s)
    })) {
        prop_assume!(!y.is_empty() && is_blocking_set(&g, &y).unwrap().is_some());
        let out = shrink_blocking_set(&g, &y).unwrap();
        prop_assert!(out.is_subset(&y));
        prop_assert!(naive_is_blocking(&g, &out));
        prop_assert!(out.len() <= 1 << bridge_depth(&g).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn kernels_are_equivalent_and_replayable(seed in any::<u64>(), c in 1u32..=2) {
        let params = InstanceParams { max_vertices: 14, c, ..InstanceParams::default() };
        let inst = random_instance(&mut rng(seed), &params).unwrap();
        let out = kernelize(&inst, &KernelOptions::default()).unwrap();
        prop_assert!(verify_equivalence(&inst, &out.instance).unwrap());
        prop_assert!(out.instance.size() <= inst.size());
        prop_assert_eq!(out.instance.c, 0);
        prop_assert_eq!(&out.instance.modulator, &out.instance.graph.vertex_set());
        let text = out.trace.to_json_lines();
        let parsed = ReductionTrace::from_json_lines(&text).unwrap();
        prop_assert_eq!(parsed.replay(&inst).unwrap(), out.instance.clone());
        let again = kernelize(&inst, &KernelOptions::default()).unwrap();
        prop_assert_eq!(again.trace.to_json_lines(), text);
    }

    #[test]
    fn instance_files_round_trip(seed in any::<u64>()) {
        let inst = random_instance(&mut rng(seed), &InstanceParams::default()).unwrap();
        let text = dump_instance(&inst.graph, &inst.modulator, inst.k, inst.c);
        let file = load_instance(&text).unwrap();
        prop_assert_eq!(file.k, Some(inst.k));
        prop_assert_eq!(file.c, Some(inst.c));
        prop_assert_eq!(file.modulator.len(), inst.modulator.len());
        let back = Instance::new(file.graph, file.modulator, inst.k, inst.c).unwrap();
        prop_assert_eq!(alpha_number(&back.graph).unwrap(), alpha_number(&inst.graph).unwrap());
    }
}
