use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Seeded source of independent per-trial generators.
///
/// Each trial gets its own ChaCha8 stream seeded from a splitmix64 mix of the
/// master seed and the trial index, so results do not depend on the order in
/// which trials are run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RandomSource {
    master_seed: u64,
}

impl RandomSource {
    pub fn new(master_seed: u64) -> Self {
        Self { master_seed }
    }

    pub fn master_seed(&self) -> u64 {
        self.master_seed
    }

    pub fn stream(&self, trial: u64) -> ChaCha8Rng {
        let seed =
            splitmix64(self.master_seed ^ splitmix64(trial.wrapping_add(0x5851_f42d_4c95_7f2d)));
        ChaCha8Rng::seed_from_u64(seed)
    }
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// A uniformly random priority order on colors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColorPriority {
    rank: Vec<usize>,
}

impl ColorPriority {
    /// Fisher-Yates shuffle of `0..k`; position in the shuffled order is the priority.
    pub fn sample<R: Rng + ?Sized>(k: usize, rng: &mut R) -> Self {
        let mut order: Vec<usize> = (0..k).collect();
        order.shuffle(rng);
        let mut rank = vec![0; k];
        for (pos, &c) in order.iter().enumerate() {
            rank[c] = pos;
        }
        Self { rank }
    }

    pub fn from_order(order: &[usize]) -> Self {
        let mut rank = vec![0; order.len()];
        for (pos, &c) in order.iter().enumerate() {
            rank[c] = pos;
        }
        Self { rank }
    }

    pub fn priority(&self, color: usize) -> usize {
        self.rank[color]
    }

    /// Highest-priority color among `candidates`.
    pub fn best(&self, candidates: impl IntoIterator<Item = usize>) -> Option<usize> {
        candidates.into_iter().max_by_key(|&c| self.rank[c])
    }
}

/// Independent uniform thresholds `alpha_c` in `[0, 1)`, drawn in color order.
pub fn sample_thresholds<R: Rng + ?Sized>(k: usize, rng: &mut R) -> Vec<f64> {
    (0..k).map(|_| rng.gen::<f64>()).collect()
}
