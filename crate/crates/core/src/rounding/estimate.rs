use rayon::prelude::*;

use super::{
    graph_round_with, hyper_round_with, require_graph, strong_colors, RandomSource, RoundingDraw,
};
use crate::error::{EccError, Result};
use crate::hypergraph::EdgeColoredHypergraph;
use crate::relax::FractionalSolution;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scheme {
    /// Priority rounding for hypergraphs of any rank.
    Hyper,
    /// Strong/weak priority rounding for graphs.
    Graph,
}

/// Per-edge satisfaction probability guaranteed relative to `z_e`:
/// `(2/e)^r / (r + 1)` for the hypergraph scheme at rank `r`, `154/405` for
/// the graph scheme.
pub fn guarantee(scheme: Scheme, rank: usize) -> f64 {
    match scheme {
        Scheme::Hyper => (2.0 / std::f64::consts::E).powi(rank as i32) / (rank as f64 + 1.0),
        Scheme::Graph => 154.0 / 405.0,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SatisfactionEstimate {
    pub trials: usize,
    /// Fraction of trials satisfying each edge.
    pub frequencies: Vec<f64>,
    /// Binomial standard error of each frequency.
    pub standard_errors: Vec<f64>,
    /// Mean satisfied weight per trial.
    pub mean_objective: f64,
    pub objective_standard_error: f64,
}

/// Runs `scheme` for `trials` independent draws and tallies how often each edge
/// ends up satisfied. Trial `t` uses stream `t` of the seeded source, so the
/// result is independent of the parallel schedule.
pub fn estimate_satisfaction(
    h: &EdgeColoredHypergraph,
    frac: &FractionalSolution,
    scheme: Scheme,
    trials: usize,
    master_seed: u64,
) -> Result<SatisfactionEstimate> {
    if trials == 0 {
        return Err(EccError::InvalidParameter(
            "trials must be at least 1".into(),
        ));
    }
    frac.validate(h)?;
    let strong = match scheme {
        Scheme::Hyper => None,
        Scheme::Graph => {
            require_graph(h)?;
            Some(strong_colors(h, frac)?)
        }
    };
    let source = RandomSource::new(master_seed);
    let k = h.color_count();

    let outcomes: Vec<(Vec<bool>, f64)> = (0..trials as u64)
        .into_par_iter()
        .map(|t| {
            let draw = RoundingDraw::sample(k, &mut source.stream(t));
            let lam = match &strong {
                None => hyper_round_with(h, frac, &draw),
                Some(strong) => graph_round_with(h, frac, strong, &draw),
            };
            let satisfied: Vec<bool> = h
                .edges()
                .iter()
                .map(|e| e.nodes.iter().all(|&v| lam.color(v) == e.color))
                .collect();
            let weight = h
                .edges()
                .iter()
                .zip(&satisfied)
                .filter(|(_, &s)| s)
                .map(|(e, _)| e.weight)
                .sum();
            (satisfied, weight)
        })
        .collect();

    let n = trials as f64;
    let mut counts = vec![0usize; h.edge_count()];
    let (mut sum, mut sum_sq) = (0.0, 0.0);
    for (satisfied, weight) in &outcomes {
        for (c, &s) in counts.iter_mut().zip(satisfied) {
            *c += s as usize;
        }
        sum += weight;
        sum_sq += weight * weight;
    }
    let frequencies: Vec<f64> = counts.iter().map(|&c| c as f64 / n).collect();
    let standard_errors = frequencies
        .iter()
        .map(|f| (f * (1.0 - f) / n).sqrt())
        .collect();
    let mean = sum / n;
    let variance = if trials > 1 {
        ((sum_sq - n * mean * mean) / (n - 1.0)).max(0.0)
    } else {
        0.0
    };
    Ok(SatisfactionEstimate {
        trials,
        frequencies,
        standard_errors,
        mean_objective: mean,
        objective_standard_error: (variance / n).sqrt(),
    })
}
