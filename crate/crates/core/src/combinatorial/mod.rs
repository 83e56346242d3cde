//! Algorithms that work directly on the conflict structure, without LPs.

mod brute;
mod fpt;

pub use brute::{
    brute_force, brute_force_protected, for_each_coloring, BruteForceResult, MAX_ENUMERATION,
};
pub use fpt::{fpt_colorfair, fpt_protected, fpt_search, BranchBudget};

use crate::conflict::{extend_coloring, Fallback};
use crate::error::Result;
use crate::hypergraph::{Coloring, EdgeColoredHypergraph, EdgeSet};

#[derive(Debug, Clone, PartialEq)]
pub struct MatchingResult {
    pub coloring: Coloring,
    /// Endpoints of the matching, i.e. the edges left unsatisfied.
    pub matched: EdgeSet,
    /// Matched pairs `(earlier, later)` in the order they were formed.
    pub pairs: Vec<(usize, usize)>,
}

/// Greedy maximal matching in the conflict graph, computed without building it.
///
/// Edges are scanned by id. Each node keeps a stack of earlier unmatched
/// incident edges; all live entries of a stack share one color, so only the
/// top live entry needs checking. Matched edges are dropped lazily. Runs in
/// `O(sum_e |e|)`.
pub fn matching_k_approx(h: &EdgeColoredHypergraph) -> Result<MatchingResult> {
    let m = h.edge_count();
    let mut matched = EdgeSet::empty(m);
    let mut pairs = Vec::new();
    let mut registry: Vec<Vec<usize>> = vec![Vec::new(); h.node_count()];

    for (id, e) in h.edges().iter().enumerate() {
        let mut partner = None;
        for &v in &e.nodes {
            let stack = &mut registry[v];
            while stack.last().is_some_and(|&f| matched.contains(f)) {
                stack.pop();
            }
            if let Some(&f) = stack.last() {
                if h.edges()[f].color != e.color {
                    partner = Some(f);
                    break;
                }
            }
        }
        match partner {
            Some(f) => {
                matched.insert(f);
                matched.insert(id);
                pairs.push((f, id));
            }
            None => {
                for &v in &e.nodes {
                    registry[v].push(id);
                }
            }
        }
    }
    let coloring = extend_coloring(h, &matched, Fallback::FirstColor)?;
    Ok(MatchingResult {
        coloring,
        matched,
        pairs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conflict::ConflictGraph;
    use crate::hypergraph::{triangle_gadget, Hyperedge};

    #[test]
    fn conflict_free_matches_nothing() {
        let h = EdgeColoredHypergraph::new(
            3,
            2,
            vec![
                Hyperedge::unit(0, vec![0, 1]),
                Hyperedge::unit(0, vec![1, 2]),
            ],
        )
        .unwrap();
        let res = matching_k_approx(&h).unwrap();
        assert!(res.matched.is_empty());
        assert_eq!(h.color_error_vector(&res.coloring).total(), 0.0);
    }

    #[test]
    fn triangle_trace() {
        let h = triangle_gadget();
        let res = matching_k_approx(&h).unwrap();
        // edge 1 meets edge 0 at node 1 first; edge 2 finds both partners gone
        assert_eq!(res.pairs, vec![(0, 1)]);
        assert_eq!(res.matched.iter().collect::<Vec<_>>(), vec![0, 1]);
        assert!(h.is_satisfied(&res.coloring, 2).unwrap());
        assert_eq!(h.color_error_vector(&res.coloring).max(), 1.0);
    }

    #[test]
    fn single_conflicting_pair() {
        let h = EdgeColoredHypergraph::new(
            2,
            2,
            vec![Hyperedge::unit(0, vec![0, 1]), Hyperedge::unit(1, vec![1])],
        )
        .unwrap();
        let res = matching_k_approx(&h).unwrap();
        assert_eq!(res.matched.len(), 2);
        // both edges are given up, but the fallback color still satisfies e0
        assert_eq!(h.color_error_vector(&res.coloring).0, vec![0.0, 1.0]);
    }

    #[test]
    fn stale_entries_are_skipped() {
        // e0 (c0) and e1 (c1) match at node 0; e2 (c0) then sits on node 1
        // under e0's dead entry and must still meet e3 (c2) there.
        let h = EdgeColoredHypergraph::new(
            3,
            3,
            vec![
                Hyperedge::unit(0, vec![0, 1]),
                Hyperedge::unit(1, vec![0]),
                Hyperedge::unit(0, vec![1, 2]),
                Hyperedge::unit(2, vec![1]),
            ],
        )
        .unwrap();
        let res = matching_k_approx(&h).unwrap();
        assert_eq!(res.pairs, vec![(0, 1), (2, 3)]);
        assert!(ConflictGraph::build(&h).is_vertex_cover(&res.matched));
    }
}
