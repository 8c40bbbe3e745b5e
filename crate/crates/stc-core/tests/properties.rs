use std::collections::BTreeSet;

use proptest::prelude::*;

use stc_core::cactus::{build_cactus, enumerate_min_cuts, root_cut_tree, CutKind, RootedCutTree};
use stc_core::gadgets::{expand_double_weights, UniformEdges};
use stc_core::generate::generate_k_connected;
use stc_core::hub::{decide_stc_equals_k, hub_oracle, is_safe_tree};
use stc_core::io::{parse_graph, write_graph};
use stc_core::oracle::{stc_decide, stc_exact};
use stc_core::reduction::{
    assignment_to_tree, build_degree3, random_m2p1n, reduce_degree3, reduce_degree4, tree_to_assignment, SatInstance,
};
use stc_core::{
    cut_edges, edge_congestion, edge_connectivity, tree_congestion, tree_shores, CutShore, DoubleWeight,
    DoubleWeightedGraph, SpanningTree,
};

fn multigraph() -> impl Strategy<Value = DoubleWeightedGraph> {
    (3usize..=7, 1u64..=4, any::<u64>()).prop_map(|(n, k, seed)| generate_k_connected(n, k, seed).expect("feasible"))
}

/// Random weights on a multigraph; heavy never below light.
fn weighted() -> impl Strategy<Value = DoubleWeightedGraph> {
    (multigraph(), prop::collection::vec((1u64..=3, 0u64..=3), 64)).prop_map(|(g, ws)| {
        let mut out = DoubleWeightedGraph::new(g.vertex_count());
        for (e, &(a, extra)) in g.edges().iter().zip(ws.iter().cycle()) {
            out.add_edge(e.u, e.v, DoubleWeight::new(a, a + extra).unwrap()).unwrap();
        }
        out
    })
}

/// Kruskal over edges in a shuffled order.
fn random_tree(g: &DoubleWeightedGraph, keys: &[u32]) -> SpanningTree {
    let mut order: Vec<usize> = (0..g.edge_count()).collect();
    order.sort_by_key(|&e| (keys[e % keys.len()].wrapping_mul(e as u32 + 1), e));
    let mut parent: Vec<usize> = (0..g.vertex_count()).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        if p[x] != x {
            let r = find(p, p[x]);
            p[x] = r;
        }
        p[x]
    }
    let mut edges = Vec::new();
    for e in order {
        let (a, b) = (find(&mut parent, g.edge(e).u), find(&mut parent, g.edge(e).v));
        if a != b {
            parent[a] = b;
            edges.push(e);
        }
    }
    SpanningTree::new(g, edges).unwrap()
}

fn connected_in_tree(g: &DoubleWeightedGraph, t: &SpanningTree, side: &CutShore) -> bool {
    let start = side.vertices().next().unwrap();
    let mut seen = BTreeSet::from([start]);
    let mut stack = vec![start];
    while let Some(x) = stack.pop() {
        for &e in t.edges() {
            let ed = g.edge(e);
            if ed.has_endpoint(x) {
                let y = ed.other(x);
                if side.contains(y) && seen.insert(y) {
                    stack.push(y);
                }
            }
        }
    }
    seen.len() == side.len()
}

fn crosses(x: &CutShore, y: &CutShore) -> bool {
    let n = x.vertex_count();
    let mut quads = [0; 4];
    for v in 0..n {
        quads[usize::from(x.contains(v)) * 2 + usize::from(y.contains(v))] += 1;
    }
    quads.iter().all(|&q| q > 0)
}

fn between(g: &DoubleWeightedGraph, a: &CutShore, b: &CutShore) -> u64 {
    g.edges()
        .iter()
        .filter(|e| (a.contains(e.u) && b.contains(e.v)) || (a.contains(e.v) && b.contains(e.u)))
        .map(|e| e.weight.light())
        .sum()
}

fn rooted(g: &DoubleWeightedGraph) -> Option<RootedCutTree> {
    let family = enumerate_min_cuts(g).ok()?;
    let cactus = build_cactus(g, &family).ok()?;
    root_cut_tree(g, &cactus).ok()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn shores_partition_and_stay_connected(g in weighted(), keys in prop::collection::vec(any::<u32>(), 8)) {
        let t = random_tree(&g, &keys);
        for &e in t.edges() {
            let (a, b) = tree_shores(&g, &t, e).unwrap();
            prop_assert_eq!(a.len() + b.len(), g.vertex_count());
            prop_assert!((0..g.vertex_count()).all(|v| a.contains(v) != b.contains(v)));
            prop_assert!(connected_in_tree(&g, &t, &a) && connected_in_tree(&g, &t, &b));
            prop_assert!(edge_congestion(&g, &t, e).unwrap() >= g.edge(e).weight.heavy());
            prop_assert_eq!(cut_edges(&g, &a).unwrap(), cut_edges(&g, &b).unwrap());
        }
    }

    #[test]
    fn congestion_ignores_vertex_names(g in weighted(), keys in prop::collection::vec(any::<u32>(), 8), rot in 0usize..7) {
        let n = g.vertex_count();
        let perm: Vec<usize> = (0..n).map(|v| (v * 5 + rot) % n).collect();
        prop_assume!(perm.iter().collect::<BTreeSet<_>>().len() == n);
        let h = g.permuted(&perm).unwrap();
        let t = random_tree(&g, &keys);
        let th = SpanningTree::new(&h, t.edges().iter().copied()).unwrap();
        prop_assert_eq!(tree_congestion(&g, &t), tree_congestion(&h, &th));
        prop_assert_eq!(stc_exact(&g).unwrap().value, stc_exact(&h).unwrap().value);
    }

    #[test]
    fn exact_is_a_lower_bound_and_decide_agrees(g in weighted(), keys in prop::collection::vec(any::<u32>(), 8)) {
        let t = random_tree(&g, &keys);
        let best = stc_exact(&g).unwrap().value;
        prop_assert!(best <= tree_congestion(&g, &t));
        for k in best.saturating_sub(1)..=best + 1 {
            prop_assert_eq!(stc_decide(&g, k).unwrap().is_some(), best <= k);
        }
    }

    #[test]
    fn every_tree_edge_cuts_at_least_lambda(g in multigraph(), keys in prop::collection::vec(any::<u32>(), 8)) {
        let lambda = edge_connectivity(&g).unwrap();
        let t = random_tree(&g, &keys);
        for &e in t.edges() {
            prop_assert!(edge_congestion(&g, &t, e).unwrap() >= lambda);
        }
        prop_assert!(stc_exact(&g).unwrap().value >= lambda);
    }

    #[test]
    fn basic_cuts_are_laminar_and_tile(g in multigraph()) {
        let Some(tree) = rooted(&g) else { return Ok(()) };
        let family = enumerate_min_cuts(&g).unwrap();
        let cactus = build_cactus(&g, &family).unwrap();
        let k = tree.k;
        for entry in &tree.entries {
            for y in family.shores() {
                prop_assert!(!crosses(&entry.shore, y));
            }
            let kids: Vec<&CutShore> = entry.children.iter().map(|&c| &tree.entries[c].shore).collect();
            let mut covered: Vec<usize> = kids.iter().flat_map(|s| s.vertices()).collect();
            if let CutKind::Node(b) = entry.kind {
                covered.extend_from_slice(cactus.preimage(b));
            }
            covered.sort_unstable();
            prop_assert_eq!(covered, entry.shore.vertices().collect::<Vec<_>>());
            if let CutKind::Cycle(_) = entry.kind {
                let outside = entry.shore.complement();
                let l = kids.len();
                for i in 0..l {
                    for j in i + 1..l {
                        let want = if j == i + 1 { k / 2 } else { 0 };
                        prop_assert_eq!(between(&g, kids[i], kids[j]), want);
                    }
                }
                prop_assert_eq!(between(&g, kids[0], &outside), k / 2);
                prop_assert_eq!(between(&g, kids[l - 1], &outside), k / 2);
            }
        }
    }

    #[test]
    fn hub_sets_match_the_oracle(g in multigraph()) {
        let d = decide_stc_equals_k(&g).unwrap();
        prop_assert_eq!(d.is_yes(), stc_exact(&g).unwrap().value == d.k);
        let Some(run) = &d.run else { return Ok(()) };
        for (i, entry) in run.tree.entries.iter().enumerate() {
            let mut accepted = BTreeSet::new();
            for w in 0..g.vertex_count() {
                let Some(t) = hub_oracle(&g, d.k, &entry.shore, w).unwrap() else { continue };
                accepted.insert(w);
                prop_assert!(is_safe_tree(&g, d.k, &t, w).unwrap());
                // crossing edges of any basic cut share an endpoint
                for other in &run.tree.entries {
                    let crossing: Vec<_> = t.iter().map(|&e| g.edge(e)).filter(|e| other.shore.contains(e.u) != other.shore.contains(e.v)).collect();
                    if let Some(first) = crossing.first() {
                        prop_assert!(
                            crossing.iter().all(|e| e.has_endpoint(first.u)) || crossing.iter().all(|e| e.has_endpoint(first.v))
                        );
                    }
                }
            }
            prop_assert_eq!(run.hubs[i].vertices(), accepted);
            prop_assert!(run.hubs[i].len() as u64 <= 2 * d.k);
        }
        // safe trees of disjoint children glue at a shared hub
        for entry in &run.tree.entries {
            for (a, &c1) in entry.children.iter().enumerate() {
                for &c2 in &entry.children[a + 1..] {
                    let (z1, z2) = (&run.tree.entries[c1].shore, &run.tree.entries[c2].shore);
                    for w in run.hubs[c1].vertices().intersection(&run.hubs[c2].vertices()) {
                        if z1.contains(*w) || z2.contains(*w) {
                            continue;
                        }
                        let mut t = hub_oracle(&g, d.k, z1, *w).unwrap().unwrap();
                        t.extend(hub_oracle(&g, d.k, z2, *w).unwrap().unwrap());
                        prop_assert!(is_safe_tree(&g, d.k, &t, *w).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn expansion_keeps_degrees(g in multigraph(), pick in any::<usize>(), a in 1u64..=2, gap in 2u64..=3) {
        let heavy = pick % g.edge_count();
        let mut h = DoubleWeightedGraph::new(g.vertex_count());
        for (i, e) in g.edges().iter().enumerate() {
            let w = if i == heavy { DoubleWeight::new(a, a + gap) } else { DoubleWeight::uniform(1) };
            h.add_edge(e.u, e.v, w.unwrap()).unwrap();
        }
        let x = expand_double_weights(&h, gap + 2, UniformEdges::Parallel).unwrap();
        for v in 0..h.vertex_count() {
            prop_assert_eq!(x.weighted_degree(v).unwrap(), h.weighted_degree(v).unwrap());
        }
        for v in h.vertex_count()..x.vertex_count() {
            prop_assert!(x.weighted_degree(v).unwrap() <= 3);
        }
    }

    #[test]
    fn graph_text_round_trips(g in weighted()) {
        let text = write_graph(&g);
        let back = parse_graph(&text).unwrap();
        prop_assert_eq!(write_graph(&back), text);
        prop_assert_eq!(back, g);
    }
}

fn models(inst: &SatInstance, cap: usize) -> Vec<Vec<bool>> {
    (0u64..1 << inst.n)
        .map(|mask| (0..inst.n).map(|i| mask >> i & 1 == 1).collect::<Vec<_>>())
        .filter(|v| inst.is_satisfied_by(v))
        .take(cap)
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn reductions_are_sound_both_ways(seed in any::<u64>()) {
        let inst = random_m2p1n(12, seed).unwrap();
        let d3 = reduce_degree3(&inst).unwrap();
        let d4 = reduce_degree4(&inst).unwrap();
        prop_assert!((0..d3.graph.vertex_count()).all(|v| d3.graph.weighted_degree(v).unwrap() == 3));
        prop_assert_eq!(d4.graph.max_weighted_degree(), 4);
        prop_assert_eq!(build_degree3(&inst, 11).unwrap().graph.edge_count(), d3.graph.edge_count());
        prop_assert_eq!(build_degree3(&inst, 97).unwrap().graph.edge_count(), d3.graph.edge_count());
        for model in models(&inst, 3) {
            for art in [&d3, &d4] {
                let t = assignment_to_tree(art, &model).unwrap();
                prop_assert!(tree_congestion(&art.graph, &t) <= art.k);
                prop_assert!(inst.is_satisfied_by(&tree_to_assignment(art, &t).unwrap()));
            }
        }
    }
}
