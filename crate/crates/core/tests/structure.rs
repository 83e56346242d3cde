mod common;

use std::collections::BTreeSet;

use ecc_core::combinatorial::{brute_force, matching_k_approx};
use ecc_core::conflict::{extend_coloring, find_conflict, ConflictGraph, Fallback};
use ecc_core::{Coloring, EdgeColoredHypergraph, EdgeSet, Problem};
use proptest::prelude::*;

fn arb_instance() -> impl Strategy<Value = EdgeColoredHypergraph> {
    arb_weighted(0..4)
}

fn arb_weighted(weights: std::ops::Range<u32>) -> impl Strategy<Value = EdgeColoredHypergraph> {
    (1usize..7, 1usize..4).prop_flat_map(move |(n, k)| {
        let edge = (
            0..k,
            weights.clone(),
            proptest::sample::subsequence((0..n).collect::<Vec<_>>(), 1..=n.min(3)),
        );
        proptest::collection::vec(edge, 0..8).prop_map(move |edges| {
            let text = std::iter::once(format!("{n} {} {k}", edges.len()))
                .chain(edges.iter().map(|(c, w, nodes)| {
                    let ids: Vec<String> = nodes.iter().map(|v| (v + 1).to_string()).collect();
                    format!("{} {w} {} {}", c + 1, nodes.len(), ids.join(" "))
                }))
                .collect::<Vec<_>>()
                .join("\n");
            EdgeColoredHypergraph::parse(&text).unwrap()
        })
    })
}

fn arb_with_coloring() -> impl Strategy<Value = (EdgeColoredHypergraph, Coloring)> {
    arb_instance().prop_flat_map(|h| {
        let (n, k) = (h.node_count(), h.color_count());
        (
            Just(h),
            proptest::collection::vec(0..k, n).prop_map(Coloring::new),
        )
    })
}

/// Conflict pairs straight from the definition.
fn naive_pairs(h: &EdgeColoredHypergraph) -> BTreeSet<(usize, usize)> {
    let mut pairs = BTreeSet::new();
    for (i, e) in h.edges().iter().enumerate() {
        for (j, f) in h.edges().iter().enumerate().skip(i + 1) {
            if e.color != f.color && e.nodes.iter().any(|v| f.nodes.contains(v)) {
                pairs.insert((i, j));
            }
        }
    }
    pairs
}

proptest! {
    #[test]
    fn text_round_trip(h in arb_instance()) {
        prop_assert_eq!(EdgeColoredHypergraph::parse(&h.to_text()).unwrap(), h);
    }

    #[test]
    fn error_vector_accounts_for_every_edge((h, lam) in arb_with_coloring()) {
        let m = h.color_error_vector(&lam);
        let class = h.color_weights();
        let mut unsat = 0.0;
        for (id, e) in h.edges().iter().enumerate() {
            if !e.nodes.iter().all(|&v| lam.color(v) == e.color) {
                unsat += e.weight;
                prop_assert!(!h.is_satisfied(&lam, id).unwrap());
            }
        }
        prop_assert!((m.total() - unsat).abs() < 1e-12);
        for c in 0..h.color_count() {
            prop_assert!(m.0[c] <= class[c] + 1e-12);
        }
        prop_assert_eq!(h.unsatisfied_edges(&lam).len(),
            (0..h.edge_count()).filter(|&e| !h.is_satisfied(&lam, e).unwrap()).count());
    }

    #[test]
    fn conflict_graph_matches_definition(h in arb_instance()) {
        let g = ConflictGraph::build(&h);
        let pairs: BTreeSet<_> = g.pairs().iter().copied().collect();
        prop_assert_eq!(pairs, naive_pairs(&h));
        for (e, f) in naive_pairs(&h) {
            prop_assert!(g.adjacent(e, f) && g.adjacent(f, e));
        }
        prop_assert_eq!(g.pairs().to_vec(), ConflictGraph::build(&h).pairs().to_vec());
    }

    #[test]
    fn unsatisfied_sets_are_vertex_covers((h, lam) in arb_with_coloring()) {
        let g = ConflictGraph::build(&h);
        prop_assert!(g.is_vertex_cover(&h.unsatisfied_edges(&lam)));
    }

    /// Removing a set leaves no conflict exactly when the set is a cover, and
    /// then extension satisfies everything outside it.
    #[test]
    fn extension_iff_cover(h in arb_instance(), mask in any::<u8>()) {
        let m = h.edge_count();
        let set = EdgeSet::from_ids(m, (0..m).filter(|&e| mask >> e & 1 == 1)).unwrap();
        let cover = ConflictGraph::build(&h).is_vertex_cover(&set);
        prop_assert_eq!(find_conflict(&h, &set).is_none(), cover);
        match extend_coloring(&h, &set, Fallback::FirstColor) {
            Ok(lam) => {
                prop_assert!(cover);
                for e in set.complement().iter() {
                    prop_assert!(h.is_satisfied(&lam, e).unwrap());
                }
            }
            Err(_) => prop_assert!(!cover),
        }
    }

    #[test]
    fn matching_is_maximal_and_k_approximate(h in arb_weighted(1..2)) {
        let res = matching_k_approx(&h).unwrap();
        let g = ConflictGraph::build(&h);
        prop_assert!(g.is_vertex_cover(&res.matched));
        let mut used = BTreeSet::new();
        for &(e, f) in &res.pairs {
            prop_assert!(g.adjacent(e, f));
            prop_assert!(used.insert(e) && used.insert(f));
        }
        prop_assert_eq!(used.len(), res.matched.len());
        let errors = h.color_error_vector(&res.coloring);
        let fair = brute_force(&h, Problem::ColorFair).unwrap().value;
        prop_assert!(errors.max() <= h.color_count() as f64 * fair + 1e-9);
        let min = brute_force(&h, Problem::Min).unwrap().value;
        prop_assert!(errors.total() <= 2.0 * min + 1e-9);
    }
}
