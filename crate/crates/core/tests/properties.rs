use proptest::collection::vec;
use proptest::prelude::*;

use linetree::formulas::{eval_theorem_main, eval_theorem_main_gamma_form};
use linetree::harness::{emit_graph, parse_graph};
use linetree::transforms::{clique_insert, line_graph, subdivide};
use linetree::treecount::{
    count_matrix_tree, count_via_deletion_contraction, enumerate_spanning_trees,
};
use linetree::{BigCount, EdgeId, EdgeSet, MultiGraph};

/// Loop-free multigraph on `2..=max_n` vertices, possibly disconnected.
fn multigraph(max_n: usize, max_m: usize) -> impl Strategy<Value = MultiGraph> {
    (2..=max_n).prop_flat_map(move |n| {
        vec((0..n, 1..n), 0..=max_m).prop_map(move |pairs| {
            let pairs: Vec<(usize, usize)> =
                pairs.into_iter().map(|(u, d)| (u, (u + d) % n)).collect();
            MultiGraph::from_edges(n, &pairs).unwrap()
        })
    })
}

/// Connected loop-free multigraph: a random recursive tree plus extra edges.
fn connected(max_n: usize, max_extra: usize) -> impl Strategy<Value = MultiGraph> {
    (1..=max_n).prop_flat_map(move |n| {
        let parents: Vec<_> = (1..n).map(|v| 0..v).collect();
        let extra = if n < 2 { 0 } else { max_extra };
        (parents, vec((0..n, 1..n.max(2)), 0..=extra)).prop_map(move |(parents, extra)| {
            let mut pairs: Vec<(usize, usize)> = parents
                .into_iter()
                .enumerate()
                .map(|(i, p)| (p, i + 1))
                .collect();
            pairs.extend(extra.into_iter().map(|(u, d)| (u, (u + d) % n)));
            MultiGraph::from_edges(n, &pairs).unwrap()
        })
    })
}

fn no_loops(g: &MultiGraph) -> bool {
    g.edges().iter().all(|e| e.u != e.v)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn handshake(g in multigraph(8, 16)) {
        prop_assert_eq!(g.degrees().iter().sum::<usize>(), 2 * g.edge_count());
    }

    #[test]
    fn components_partition_the_vertices(g in multigraph(8, 10)) {
        let mut seen: Vec<usize> = g.components().into_iter().flatten().map(|v| v.0).collect();
        seen.sort_unstable();
        prop_assert_eq!(seen, (0..g.vertex_count()).collect::<Vec<_>>());
        for e in g.edges() {
            let comps = g.components();
            let cu = comps.iter().position(|c| c.contains(&e.u));
            let cv = comps.iter().position(|c| c.contains(&e.v));
            prop_assert_eq!(cu, cv);
        }
    }

    #[test]
    fn quotients_and_constructions_stay_loop_free(g in multigraph(7, 12), pick in any::<prop::sample::Index>()) {
        prop_assert!(no_loops(&line_graph(&g).graph));
        prop_assert!(no_loops(&subdivide(&g, 2).graph));
        prop_assert!(no_loops(&clique_insert(&g).graph));
        if g.edge_count() > 0 {
            let id = EdgeId(pick.index(g.edge_count()));
            let (h, _) = g.contract_edges(&EdgeSet::from([id])).unwrap();
            prop_assert!(no_loops(&h));
            prop_assert!(!h.contains_edge(id));
        }
    }

    #[test]
    fn delete_and_contract_commute(g in multigraph(7, 12), a in any::<prop::sample::Index>(), b in any::<prop::sample::Index>()) {
        prop_assume!(g.edge_count() >= 2);
        let e = EdgeId(a.index(g.edge_count()));
        let f = EdgeId(b.index(g.edge_count()));
        prop_assume!(e != f);
        let (contracted, _) = g.contract_edges(&EdgeSet::from([e])).unwrap();
        if contracted.contains_edge(f) {
            let one = contracted.delete_edges(&EdgeSet::from([f])).unwrap();
            let (two, _) = g
                .delete_edges(&EdgeSet::from([f]))
                .unwrap()
                .contract_edges(&EdgeSet::from([e]))
                .unwrap();
            prop_assert_eq!(one, two);
        }
    }

    #[test]
    fn oracles_agree(g in multigraph(7, 12)) {
        let mt = count_matrix_tree(&g);
        let listed = BigCount::from(enumerate_spanning_trees(&g, 1 << 20).unwrap().len());
        prop_assert_eq!(&mt, &listed);
        prop_assert_eq!(&mt, &count_via_deletion_contraction(&g));
    }

    #[test]
    fn doubling_an_edge_adds_the_contraction(g in connected(7, 8), pick in any::<prop::sample::Index>()) {
        prop_assume!(g.edge_count() > 0);
        let id = EdgeId(pick.index(g.edge_count()));
        let e = *g.edge(id).unwrap();
        let mut doubled = g.clone();
        doubled.add_edge(e.u, e.v).unwrap();
        let (contracted, _) = g.contract_edges(&EdgeSet::from([id])).unwrap();
        prop_assert_eq!(
            count_matrix_tree(&doubled),
            count_matrix_tree(&g) + count_matrix_tree(&contracted)
        );
    }

    #[test]
    fn parse_inverts_emit(g in multigraph(9, 14)) {
        let text = emit_graph(&g);
        prop_assert_eq!(parse_graph(&text).unwrap(), g);
    }

    #[test]
    fn main_formula_forms_agree(g in connected(5, 4), r in 0usize..3) {
        prop_assume!(g.edge_count() > 0);
        prop_assert_eq!(
            eval_theorem_main(&g, r).unwrap(),
            eval_theorem_main_gamma_form(&g, r).unwrap()
        );
    }

    #[test]
    fn relabelling_preserves_the_count(
        (g, perm) in multigraph(7, 10).prop_flat_map(|g| {
            let n = g.vertex_count();
            (Just(g), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
        })
    ) {
        let pairs: Vec<(usize, usize)> = g
            .edges()
            .iter()
            .rev()
            .map(|e| (perm[e.u.0], perm[e.v.0]))
            .collect();
        let h = MultiGraph::from_edges(g.vertex_count(), &pairs).unwrap();
        prop_assert_eq!(count_matrix_tree(&g), count_matrix_tree(&h));
    }
}
