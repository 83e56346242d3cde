#![allow(dead_code)]

use ecc_core::generate::{random_instance, InstanceShape};
use ecc_core::EdgeColoredHypergraph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Small instance with `n <= max_nodes`, `k <= max_colors`, edges of rank in
/// `ranks`, and up to `max_edges` edges.
pub fn small_instance(
    rng: &mut ChaCha8Rng,
    max_nodes: usize,
    max_colors: usize,
    max_edges: usize,
    ranks: (usize, usize),
    weighted: bool,
) -> EdgeColoredHypergraph {
    let shape = InstanceShape {
        nodes: rng.gen_range(ranks.1.max(2)..=max_nodes),
        colors: rng.gen_range(2..=max_colors),
        edges: rng.gen_range(1..=max_edges),
        min_rank: ranks.0,
        max_rank: ranks.1,
        max_weight: weighted.then_some(3),
    };
    random_instance(rng, &shape)
}
