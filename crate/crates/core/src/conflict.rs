//! Conflicts between overlapping, distinctly colored hyperedges.
//!
//! Any set of edges that contains one member of every conflicting pair can be
//! left unsatisfied while every other edge is satisfied; [`extend_coloring`]
//! builds that coloring.

use std::collections::BTreeSet;

use crate::error::{EccError, Result};
use crate::hypergraph::{Coloring, EdgeColoredHypergraph, EdgeSet};
use crate::relax::FractionalSolution;

/// One vertex per hyperedge; adjacent iff the hyperedges overlap and differ in color.
#[derive(Debug, Clone, PartialEq)]
pub struct ConflictGraph {
    color_class: Vec<usize>,
    adjacency: Vec<Vec<usize>>,
    pairs: Vec<(usize, usize)>,
}

impl ConflictGraph {
    pub fn build(h: &EdgeColoredHypergraph) -> Self {
        let mut pairs = BTreeSet::new();
        for v in 0..h.node_count() {
            let inc = h.incident(v);
            for (i, &e) in inc.iter().enumerate() {
                for &f in &inc[i + 1..] {
                    if h.edges()[e].color != h.edges()[f].color {
                        pairs.insert((e.min(f), e.max(f)));
                    }
                }
            }
        }
        let mut adjacency = vec![Vec::new(); h.edge_count()];
        for &(e, f) in &pairs {
            adjacency[e].push(f);
            adjacency[f].push(e);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Self {
            color_class: h.edges().iter().map(|e| e.color).collect(),
            adjacency,
            pairs: pairs.into_iter().collect(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    /// Adjacent pairs `(e, f)` with `e < f`, ascending.
    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn neighbors(&self, e: usize) -> &[usize] {
        &self.adjacency[e]
    }

    pub fn adjacent(&self, e: usize, f: usize) -> bool {
        self.adjacency[e].binary_search(&f).is_ok()
    }

    pub fn color_class(&self, e: usize) -> usize {
        self.color_class[e]
    }

    /// Whether `cover` contains an endpoint of every adjacency.
    pub fn is_vertex_cover(&self, cover: &EdgeSet) -> bool {
        self.pairs
            .iter()
            .all(|&(e, f)| cover.contains(e) || cover.contains(f))
    }
}

/// A node with two distinctly colored incident edges `first < second`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Conflict {
    pub node: usize,
    pub first: usize,
    pub second: usize,
}

/// First conflict among the edges not in `dead`, scanning nodes in ascending
/// order and, per node, edge-id pairs in lexicographic order.
pub fn find_conflict(h: &EdgeColoredHypergraph, dead: &EdgeSet) -> Option<Conflict> {
    for v in 0..h.node_count() {
        let mut alive = h.incident(v).iter().copied().filter(|&e| !dead.contains(e));
        let Some(first) = alive.next() else {
            continue;
        };
        let color = h.edges()[first].color;
        // edges between `first` and the first off-color edge share its color,
        // so this is the lexicographically smallest pair at `v`
        if let Some(second) = alive.find(|&f| h.edges()[f].color != color) {
            return Some(Conflict {
                node: v,
                first,
                second,
            });
        }
    }
    None
}

/// How to color a node the algorithm leaves undetermined.
#[derive(Debug, Clone, Copy, Default)]
pub enum Fallback<'a> {
    /// Color 0.
    #[default]
    FirstColor,
    /// The color with the largest assignment (smallest distance) variable,
    /// lowest index on ties.
    Fractional(&'a FractionalSolution),
}

impl Fallback<'_> {
    pub fn color(&self, node: usize) -> usize {
        match self {
            Fallback::FirstColor => 0,
            Fallback::Fractional(frac) => frac.preferred_color(node),
        }
    }
}

/// Colors every node so that each edge outside `unsatisfied` is satisfied.
///
/// Nodes touched by a surviving edge take that edge's color; the others take
/// the fallback color. Fails if two surviving edges of different colors share
/// a node, i.e. `unsatisfied` is not a vertex cover of the conflict graph.
pub fn extend_coloring(
    h: &EdgeColoredHypergraph,
    unsatisfied: &EdgeSet,
    fallback: Fallback<'_>,
) -> Result<Coloring> {
    let mut colors = Vec::with_capacity(h.node_count());
    for v in 0..h.node_count() {
        let mut survivors = h
            .incident(v)
            .iter()
            .copied()
            .filter(|&e| !unsatisfied.contains(e));
        match survivors.next() {
            None => colors.push(fallback.color(v)),
            Some(first) => {
                let c = h.edges()[first].color;
                if let Some(second) = survivors.find(|&f| h.edges()[f].color != c) {
                    return Err(EccError::CoverViolation {
                        node: v,
                        first,
                        second,
                    });
                }
                colors.push(c);
            }
        }
    }
    Ok(Coloring::new(colors))
}
