use super::*;
use crate::graph::edge;
use crate::independence::alpha_number;
use crate::random::{random_instance, rng, InstanceParams};

fn graph(n: u32, edges: &[(u32, u32)]) -> Graph {
    Graph::from_edges(n, edges)
}

fn inst(g: Graph, x: &[u32], k: i64, c: u32) -> Instance {
    Instance::new(g, x.iter().copied().collect(), k, c).unwrap()
}

fn set(vs: &[u32]) -> VertexSet {
    vs.iter().copied().collect()
}

fn tree(vs: &[u32], es: &[(u32, u32)]) -> BridgeTree {
    BridgeTree {
        vertices: set(vs),
        edges: es.iter().map(|&(u, v)| edge(u, v)).collect(),
    }
}

/// α(G) ≥ k ⇔ α(G') ≥ k' for every k, given k' = k + shift.
fn equivalent_for_all_k(before: &Graph, after: &Graph, shift: i64) -> bool {
    let (a, b) = (
        alpha_number(before).unwrap() as i64,
        alpha_number(after).unwrap() as i64,
    );
    (0..=before.n() as i64 + 1).all(|k| (a >= k) == (b >= k + shift))
}

#[test]
fn construction_checks_the_modulator() {
    let g = crate::generators::cycle(4);
    assert!(matches!(
        Instance::new(g.clone(), VertexSet::new(), 0, 0),
        Err(Error::InvalidInstance(_))
    ));
    assert!(Instance::new(g.clone(), set(&[1]), 0, 1).is_ok());
    assert!(matches!(
        Instance::new(g, set(&[9]), 0, 1),
        Err(Error::UnknownVertex(9))
    ));
}

#[test]
fn chunk_enumeration() {
    let i = inst(graph(4, &[]), &[0, 1, 2], 0, 1);
    let chunks = enumerate_chunks(&i).unwrap();
    assert_eq!(chunks.len(), 6);
    assert_eq!(chunks[0], set(&[0]));
    assert_eq!(chunks[3], set(&[0, 1]));
    assert_eq!(chunks[5], set(&[1, 2]));
    assert_eq!(
        enumerate_chunks(&inst(graph(2, &[]), &[0], 0, 1))
            .unwrap()
            .len(),
        1
    );
    let clique = inst(graph(4, &[(0, 1), (1, 2), (0, 2)]), &[0, 1, 2], 0, 3);
    assert_eq!(enumerate_chunks(&clique).unwrap().len(), 3);
    // size bound 2^0 = 1
    assert_eq!(
        enumerate_chunks(&inst(graph(3, &[]), &[0, 1, 2], 0, 0))
            .unwrap()
            .len(),
        3
    );
}

#[test]
fn chunk_degrees() {
    // x = 6; K2s {0,1}, {2,3}, {4,5}
    let pairs = [(0, 1), (2, 3), (4, 5)];
    let mut one_end = pairs.to_vec();
    one_end.extend([(6, 0), (6, 2), (6, 4)]);
    let i = inst(graph(7, &one_end), &[6], 0, 1);
    // each K2 keeps α = 1 when one end is blocked
    assert_eq!(chunk_degree(&i, &set(&[6])).unwrap(), 0);
    let mut both_ends = one_end.clone();
    both_ends.extend([(6, 1), (6, 3), (6, 5)]);
    let i = inst(graph(7, &both_ends), &[6], 0, 1);
    assert_eq!(chunk_degree(&i, &set(&[6])).unwrap(), 3);
    let i = inst(graph(3, &[(0, 1), (2, 0), (2, 1)]), &[2], 0, 1);
    assert_eq!(chunk_degree(&i, &set(&[2])).unwrap(), 1);
    let i = inst(graph(3, &[(0, 1)]), &[2], 0, 1);
    assert_eq!(chunk_degree(&i, &set(&[2])).unwrap(), 0);
    assert!(chunk_degree(&i, &set(&[0])).is_err());
}

#[test]
fn free_and_almost_free() {
    // x = 2 sees a; b is isolated
    let i = inst(graph(3, &[(2, 0)]), &[2], 0, 1);
    assert!(is_free(&i, &set(&[1])).unwrap());
    for x in 0..5 {
        assert!(is_almost_free(&i, &set(&[1]), x).unwrap());
    }
    assert!(!is_free(&i, &set(&[0])).unwrap());
    assert!(is_almost_free(&i, &set(&[0]), 1).unwrap());
    assert!(!is_almost_free(&i, &set(&[0]), 2).unwrap());
    assert!(is_free(&i, &set(&[2])).is_err());
}

#[test]
fn free_components_are_removed() {
    // x = 0 sees 1; P3 {2,3,4} untouched, α = 2
    let i = inst(graph(5, &[(0, 1), (2, 3), (3, 4)]), &[0], 5, 1);
    let (out, trace) = rule_free(&i).unwrap().unwrap();
    assert_eq!(out.graph.vertex_set(), set(&[0, 1]));
    assert_eq!(out.k, 3);
    assert_eq!(trace.events[0].rule, RuleId::Rule1);
    // P3 attached to x at its middle keeps α = 2 without the middle
    let i = inst(graph(4, &[(1, 2), (2, 3), (0, 2)]), &[0], 2, 1);
    assert!(is_free(&i, &set(&[1, 2, 3])).unwrap());
    assert_eq!(rule_free(&i).unwrap().unwrap().0.graph.n(), 1);
    let i = inst(graph(2, &[(0, 1)]), &[0], 1, 1);
    assert!(rule_free(&i).unwrap().is_none());
}

#[test]
fn high_degree_chunks_are_cut() {
    // x = 0 conflicts on {1} and {2}: degree 2 ≥ |X|+1
    let i = inst(graph(3, &[(0, 1), (0, 2)]), &[0], 2, 1);
    assert!(rule_free(&i).unwrap().is_none());
    let (out, trace) = rule_chunk_degree(&i).unwrap().unwrap();
    assert!(!out.graph.has_edge(0, 1) && out.graph.has_edge(0, 2));
    assert_eq!(out.k, 2);
    assert_eq!(
        trace.events[0].op,
        Op::DeleteEdges {
            edges: vec![(0, 1)]
        }
    );
    let (after, _) = rule_free(&out).unwrap().unwrap();
    assert_eq!(after.graph.vertex_set(), set(&[0, 2]));
    // a single conflicted component has degree 1 < 2
    let i = inst(graph(2, &[(0, 1)]), &[0], 1, 1);
    assert!(rule_chunk_degree(&i).unwrap().is_none());
}

#[test]
fn pending_components_and_types() {
    // path 0-1-2 plus x = 3 seeing 0
    let i = inst(graph(4, &[(0, 1), (1, 2), (3, 0)]), &[3], 0, 1);
    let t = tree(&[0, 1, 2], &[(0, 1), (1, 2)]);
    let d = pending_decomposition(&i, &set(&[0, 1, 2]), &t).unwrap();
    assert!(d.pending.iter().all(|(v, h)| *h == set(&[*v])));
    assert!(d.types.values().all(|&t| t == VertexType::B));

    // p = 0 bridged to v = 1 with a pendant triangle {1, 2, 3}
    let g = graph(5, &[(0, 1), (1, 2), (2, 3), (3, 1), (4, 0)]);
    let i = inst(g, &[4], 0, 2);
    let d = pending_decomposition(&i, &set(&[0, 1, 2, 3]), &tree(&[0, 1], &[(0, 1)])).unwrap();
    assert_eq!(d.pending[&1], set(&[1, 2, 3]));
    assert_eq!(d.types[&1], VertexType::A);
    assert_eq!(d.types[&0], VertexType::B);

    // types depend on the tree: 1 has a pendant leaf 3 outside the path
    let g = graph(5, &[(0, 1), (1, 2), (1, 3), (4, 0)]);
    let i = inst(g, &[4], 0, 1);
    let comp = set(&[0, 1, 2, 3]);
    let whole = tree(&[0, 1, 2, 3], &[(0, 1), (1, 2), (1, 3)]);
    let path = tree(&[0, 1, 2], &[(0, 1), (1, 2)]);
    assert_eq!(
        pending_decomposition(&i, &comp, &whole).unwrap().types[&1],
        VertexType::B
    );
    let on_path = pending_decomposition(&i, &comp, &path).unwrap();
    assert_eq!(on_path.types[&1], VertexType::A);
    assert_eq!(on_path.pending[&1], set(&[1, 3]));

    // an edge on a cycle is not a bridge
    let i = inst(graph(4, &[(0, 1), (1, 2), (2, 0), (3, 0)]), &[3], 0, 2);
    let bad = tree(&[0, 1], &[(0, 1)]);
    assert!(matches!(
        pending_decomposition(&i, &set(&[0, 1, 2]), &bad),
        Err(Error::NotATreeOfBridges(_))
    ));
}

#[test]
fn conflict_structure_search() {
    // path 0..5, all type B
    let es: Vec<_> = (0..5).map(|i| (i, i + 1)).collect();
    let mut g = graph(7, &es);
    g.add_edge(6, 0).unwrap();
    let i = inst(g, &[6], 0, 1);
    let t = tree(&[0, 1, 2, 3, 4, 5], &es);
    let d = pending_decomposition(&i, &set(&[0, 1, 2, 3, 4, 5]), &t).unwrap();
    assert!(find_conflict_structure(&d, 1).unwrap().is_none());
    let s = find_conflict_structure(&d, 2).unwrap().unwrap();
    assert_eq!(s.roots, vec![0, 1, 2, 3]);
    assert_eq!(s.vertices, set(&[1, 2]));
    assert_eq!(conflict_structures(&d, 2).unwrap().len(), 3);
    let leaf = find_conflict_structure(&d, 3).unwrap().unwrap();
    assert_eq!((leaf.roots.clone(), leaf.vertices), (vec![0, 1], set(&[0])));
    assert_eq!(
        find_conflict_structure(&d, 4).unwrap().unwrap().roots,
        vec![0, 1, 2]
    );
    assert!(find_conflict_structure(&d, 5).is_err());
    assert!(find_conflict_structure(&d, 0).is_err());

    // an A endpoint: leaf 0 carries a pendant triangle
    let g = graph(6, &[(0, 1), (1, 2), (0, 3), (3, 4), (4, 0), (5, 2)]);
    let i = inst(g, &[5], 0, 2);
    let d = pending_decomposition(
        &i,
        &set(&[0, 1, 2, 3, 4]),
        &tree(&[0, 1, 2], &[(0, 1), (1, 2)]),
    )
    .unwrap();
    assert_eq!(
        find_conflict_structure(&d, 1).unwrap().unwrap().roots,
        vec![0, 1]
    );

    // star: no two adjacent degree-2 vertices
    let g = graph(5, &[(0, 1), (0, 2), (0, 3), (4, 1)]);
    let i = inst(g, &[4], 0, 1);
    let d = pending_decomposition(
        &i,
        &set(&[0, 1, 2, 3]),
        &tree(&[0, 1, 2, 3], &[(0, 1), (0, 2), (0, 3)]),
    )
    .unwrap();
    assert!(find_conflict_structure(&d, 2).unwrap().is_none());
    assert!(find_conflict_structure(&d, 4).unwrap().is_none());
}

#[test]
fn leaf_absorption() {
    let es = [(0, 1), (1, 2)];
    let i = inst(graph(4, &[(0, 1), (1, 2), (3, 0)]), &[3], 0, 1);
    let t = tree(&[0, 1, 2], &es);
    let d = pending_decomposition(&i, &set(&[0, 1, 2]), &t).unwrap();
    assert_eq!(absorbed_tree(&d), t);

    // leaf 0 sits on triangle {0, 4, 5}: type A under B-parent 1
    let g = graph(7, &[(0, 1), (1, 2), (0, 4), (4, 5), (5, 0), (6, 2)]);
    let i = inst(g, &[6], 0, 2);
    let comp = set(&[0, 1, 2, 4, 5]);
    let d = pending_decomposition(&i, &comp, &t).unwrap();
    assert_eq!((d.types[&0], d.types[&1]), (VertexType::A, VertexType::B));
    let t1 = absorbed_tree(&d);
    assert_eq!(t1, tree(&[1, 2], &[(1, 2)]));
    let d1 = pending_decomposition(&i, &comp, &t1).unwrap();
    assert_eq!(d1.types[&1], VertexType::B);
    assert_eq!(d1.leaf_counts().ab, 0);

    // B centre with three A-leaves, each on a triangle: all go in one pass
    let mut es = vec![(0, 1), (0, 2), (0, 3)];
    for (leaf, a, b) in [(1, 4, 5), (2, 6, 7), (3, 8, 9)] {
        es.extend([(leaf, a), (a, b), (b, leaf)]);
    }
    es.push((10, 0));
    let i = inst(graph(11, &es), &[10], 0, 2);
    let comp: VertexSet = (0..10).collect();
    let star = tree(&[0, 1, 2, 3], &[(0, 1), (0, 2), (0, 3)]);
    let d = pending_decomposition(&i, &comp, &star).unwrap();
    assert_eq!(d.types[&0], VertexType::B);
    let t1 = absorbed_tree(&d);
    assert_eq!(t1.vertices, set(&[0]));
    assert_eq!(
        pending_decomposition(&i, &comp, &t1).unwrap().leaf_counts(),
        LeafCounts::default()
    );
}

#[test]
fn meta_rules_on_small_trees() {
    // MR1: triangle {0, 1, 3} makes 1 type A; C = {0, 1, 2, 3} has no
    // X-neighbours since x = 4 hangs off 5
    let g = graph(6, &[(0, 1), (1, 2), (0, 3), (3, 1), (2, 5), (4, 5)]);
    let i = inst(g.clone(), &[4], 3, 2);
    let t = tree(&[1, 2, 5], &[(1, 2), (2, 5)]);
    let (out, _) = meta_rule_1(&i, &t).unwrap().unwrap();
    assert!(!out.graph.has_edge(1, 2));
    assert_eq!(out.k, 3);
    assert!(equivalent_for_all_k(&g, &out.graph, 0));

    // MR2 on the path 0-1-2-3 with an empty modulator
    let g = crate::generators::path(4);
    let i = Instance::new(g.clone(), VertexSet::new(), 2, 1).unwrap();
    let t = tree(&[1, 2, 3, 4], &[(1, 2), (2, 3), (3, 4)]);
    let (out, trace) = meta_rule_2(&i, &t).unwrap().unwrap();
    assert_eq!(trace.len(), 2);
    assert_eq!((out.graph.n(), out.graph.m(), out.k), (2, 1, 1));
    assert!(equivalent_for_all_k(&g, &out.graph, -1));

    // MR4: B-leaf 1 and its parent 2 go
    let g = crate::generators::path(3);
    let i = Instance::new(g.clone(), VertexSet::new(), 2, 1).unwrap();
    let (out, _) = meta_rule_4(&i, &tree(&[1, 2, 3], &[(1, 2), (2, 3)]))
        .unwrap()
        .unwrap();
    assert_eq!(out.graph.vertex_set(), set(&[3]));
    assert!(equivalent_for_all_k(&g, &out.graph, -1));

    // MR5: identify leaf 1 with 3, drop 2
    let g = crate::generators::path(4);
    let i = Instance::new(g.clone(), VertexSet::new(), 2, 1).unwrap();
    let (out, _) = meta_rule_5(&i, &t).unwrap().unwrap();
    assert_eq!((out.graph.n(), out.graph.m(), out.k), (2, 1, 1));
    assert!(equivalent_for_all_k(&g, &out.graph, -1));

    // MR3: centre 0 bridged to four triangles, x = 13 sees the centre
    let mut es = Vec::new();
    for j in 0..4 {
        let (a, b, c) = (1 + 3 * j, 2 + 3 * j, 3 + 3 * j);
        es.extend([(0, a), (a, b), (b, c), (c, a)]);
    }
    es.push((13, 0));
    let g = graph(14, &es);
    let i = inst(g.clone(), &[13], 5, 2);
    let t = tree(&[0, 1, 4, 7, 10], &[(0, 1), (0, 4), (0, 7), (0, 10)]);
    assert!(t.max_degree() > 2);
    let (out, trace) = meta_rule_3(&i, &t).unwrap().unwrap();
    assert!(out.graph.n() < g.n());
    assert!(trace.events.iter().all(|e| e.rule == RuleId::Mr3));
    assert!(equivalent_for_all_k(&g, &out.graph, out.k - i.k));
    // within the degree bound nothing happens
    assert!(meta_rule_3(&i, &tree(&[0, 1], &[(0, 1)]))
        .unwrap()
        .is_none());
}

#[test]
fn kernelize_examples() {
    // c = 0: unchanged
    let g = graph(3, &[(0, 1)]);
    let i = inst(g, &[0, 1, 2], 2, 0);
    let out = kernelize(&i, &KernelOptions::checked()).unwrap();
    assert_eq!(out.instance, i);
    assert!(out.trace.is_empty());

    // remainder is one triangle, x sees one corner: free
    let i = inst(graph(4, &[(0, 1), (1, 2), (2, 0), (3, 0)]), &[3], 2, 2);
    let out = kernelize(&i, &KernelOptions::checked()).unwrap();
    let first = &out.trace.events[0];
    assert_eq!((first.rule, first.dk), (RuleId::Rule1, -1));
    assert_eq!(out.instance.graph.vertex_set(), set(&[3]));
    assert_eq!(out.instance.modulator, set(&[3]));
    assert_eq!((out.instance.k, out.instance.c), (1, 0));
    assert!(verify_equivalence(&i, &out.instance).unwrap());

    // negative k short-circuits to a single vertex with k = 0
    let i = inst(graph(4, &[(0, 1), (1, 2), (2, 0), (3, 0)]), &[3], -1, 2);
    let out = kernelize(&i, &KernelOptions::default()).unwrap();
    assert_eq!(
        (out.instance.graph.n(), out.instance.k, out.instance.c),
        (1, 0, 0)
    );
    assert_eq!(out.trace.replay(&i).unwrap(), out.instance);
}

#[test]
fn traces_replay_and_round_trip() {
    for seed in 0..40 {
        let p = InstanceParams {
            c: 1 + seed as u32 % 2,
            ..Default::default()
        };
        let i = random_instance(&mut rng(seed), &p).unwrap();
        let out = kernelize(&i, &KernelOptions::checked()).unwrap();
        let text = out.trace.to_json_lines();
        let back = ReductionTrace::from_json_lines(&text).unwrap();
        assert_eq!(back, out.trace);
        assert_eq!(back.replay(&i).unwrap(), out.instance);
        assert!(out.instance.size() <= i.size());
        assert_eq!(out.instance.modulator, out.instance.graph.vertex_set());
    }
    assert!(matches!(
        ReductionTrace::from_json_lines("{\"schema\":\"other\"}"),
        Err(Error::Parse { line: 1, .. })
    ));
}

#[test]
fn equivalence_detects_off_by_one() {
    let g = graph(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 3)]);
    let base = Instance::new(g.clone(), set(&[0]), 0, 1).unwrap();
    let i = Instance {
        k: alpha_number(&g).unwrap() as i64,
        ..base
    };
    assert!(verify_equivalence(&i, &i).unwrap());
    let out = kernelize(&i, &KernelOptions::default()).unwrap();
    assert!(verify_equivalence(&i, &out.instance).unwrap());
    let mut trace = out.trace.clone();
    trace.events.last_mut().unwrap().dk += 1;
    let mutated = trace.replay(&i).unwrap();
    assert!(!verify_equivalence(&i, &mutated).unwrap());
}

#[test]
fn not_almost_free_parts_are_few() {
    let mut checked = 0;
    for seed in 0..200u64 {
        let mut r = rng(seed);
        let i = random_instance(&mut r, &InstanceParams::default()).unwrap();
        let chunks = enumerate_chunks(&i).unwrap().len();
        for comp in i.remainder_components() {
            let vs: Vec<_> = comp.iter().copied().collect();
            for cut in 1..vs.len() {
                let parts = [
                    vs[..cut].iter().copied().collect(),
                    vs[cut..].iter().copied().collect::<VertexSet>(),
                ];
                if !crate::independence::alpha_additive_check(
                    &i.graph.induced(&comp).unwrap(),
                    &parts,
                )
                .unwrap()
                {
                    continue;
                }
                for x in 1..=3 {
                    let stuck = parts
                        .iter()
                        .filter(|p| !is_almost_free(&i, p, x).unwrap())
                        .count();
                    assert!(stuck < chunks * x as usize);
                    checked += 1;
                }
            }
        }
    }
    assert!(checked > 100);
}
