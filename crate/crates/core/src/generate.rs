//! Seeded random instances, sized for exhaustive cross-checking.

use rand::seq::index;
use rand::Rng;

use crate::hypergraph::{EdgeColoredHypergraph, Hyperedge};

#[derive(Debug, Clone, PartialEq)]
pub struct InstanceShape {
    pub nodes: usize,
    pub colors: usize,
    pub edges: usize,
    /// Inclusive range of edge sizes, clamped to `nodes`.
    pub min_rank: usize,
    pub max_rank: usize,
    /// Draw integer weights in `1..=w`; `None` gives unit weights.
    pub max_weight: Option<u32>,
}

impl InstanceShape {
    pub fn new(nodes: usize, colors: usize, edges: usize, rank: usize) -> Self {
        InstanceShape {
            nodes,
            colors,
            edges,
            min_rank: rank,
            max_rank: rank,
            max_weight: None,
        }
    }
}

/// Samples an instance with the given shape. Edges have distinct nodes but
/// may repeat each other.
pub fn random_instance<R: Rng + ?Sized>(
    rng: &mut R,
    shape: &InstanceShape,
) -> EdgeColoredHypergraph {
    assert!(shape.nodes > 0 && shape.colors > 0, "empty shape");
    let hi = shape.max_rank.clamp(1, shape.nodes);
    let lo = shape.min_rank.clamp(1, hi);
    let edges = (0..shape.edges)
        .map(|_| {
            let r = rng.gen_range(lo..=hi);
            let mut nodes = index::sample(rng, shape.nodes, r).into_vec();
            nodes.sort_unstable();
            let color = rng.gen_range(0..shape.colors);
            let weight = shape
                .max_weight
                .map_or(1.0, |w| rng.gen_range(1..=w.max(1)) as f64);
            Hyperedge::new(color, weight, nodes)
        })
        .collect();
    EdgeColoredHypergraph::new(shape.nodes, shape.colors, edges)
        .expect("generated instances are valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn respects_shape() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let shape = InstanceShape {
            min_rank: 2,
            max_rank: 3,
            max_weight: Some(4),
            ..InstanceShape::new(6, 3, 20, 2)
        };
        let h = random_instance(&mut rng, &shape);
        assert_eq!(
            (h.node_count(), h.color_count(), h.edge_count()),
            (6, 3, 20)
        );
        for e in h.edges() {
            assert!((2..=3).contains(&e.nodes.len()));
            assert!((1.0..=4.0).contains(&e.weight) && e.weight.fract() == 0.0);
        }
    }

    #[test]
    fn rank_clamped_to_node_count() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let h = random_instance(&mut rng, &InstanceShape::new(2, 2, 5, 3));
        assert_eq!(h.rank(), 2);
    }
}
