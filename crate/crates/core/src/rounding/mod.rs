//! Rounding schemes turning fractional solutions into colorings.

mod estimate;
mod rng;

pub use estimate::{estimate_satisfaction, guarantee, SatisfactionEstimate, Scheme};
pub use rng::{sample_thresholds, ColorPriority, RandomSource};

use rand::Rng;

use crate::conflict::{extend_coloring, Fallback};
use crate::error::{EccError, Result};
use crate::hypergraph::{Coloring, EdgeColoredHypergraph, EdgeSet};
use crate::lp::FEAS_TOL;
use crate::relax::{FractionalSolution, Orientation};

/// Slack applied to the deterministic thresholds so that LP round-off cannot
/// break the cover property the roundings rely on.
pub const THRESHOLD_TOL: f64 = 1e-9;

const STRONG: f64 = 2.0 / 3.0;

/// Random choices of one rounding run: a color priority and one threshold per color.
#[derive(Debug, Clone, PartialEq)]
pub struct RoundingDraw {
    pub priority: ColorPriority,
    pub thresholds: Vec<f64>,
}

impl RoundingDraw {
    /// Draws the priority first, then the thresholds in color order.
    pub fn sample<R: Rng + ?Sized>(k: usize, rng: &mut R) -> Self {
        let priority = ColorPriority::sample(k, rng);
        let thresholds = sample_thresholds(k, rng);
        Self {
            priority,
            thresholds,
        }
    }
}

/// Each node takes the highest-priority color it wants (`alpha_c < x[v][c]`),
/// or its LP-preferred color if it wants none.
pub fn hyper_maxecc_round<R: Rng + ?Sized>(
    h: &EdgeColoredHypergraph,
    frac: &FractionalSolution,
    rng: &mut R,
) -> Result<Coloring> {
    frac.validate(h)?;
    Ok(hyper_round_with(
        h,
        frac,
        &RoundingDraw::sample(h.color_count(), rng),
    ))
}

pub fn hyper_round_with(
    h: &EdgeColoredHypergraph,
    frac: &FractionalSolution,
    draw: &RoundingDraw,
) -> Coloring {
    let k = h.color_count();
    let colors = (0..h.node_count())
        .map(|v| {
            let wanted = (0..k).filter(|&c| draw.thresholds[c] < frac.assignment(v, c));
            draw.priority
                .best(wanted)
                .unwrap_or_else(|| frac.preferred_color(v))
        })
        .collect();
    Coloring::new(colors)
}

fn require_graph(h: &EdgeColoredHypergraph) -> Result<()> {
    match h.edges().iter().position(|e| e.len() != 2) {
        None => Ok(()),
        Some(id) => Err(EccError::InvalidParameter(format!(
            "graph rounding needs every edge to have 2 nodes; edge {id} has {}",
            h.edges()[id].len()
        ))),
    }
}

/// The strong/weak variant for graphs: a node prefers the highest-priority
/// weak color it wants, then its strong color (`x >= 2/3`), then its
/// LP-preferred color.
pub fn graph_maxecc_round<R: Rng + ?Sized>(
    h: &EdgeColoredHypergraph,
    frac: &FractionalSolution,
    rng: &mut R,
) -> Result<Coloring> {
    require_graph(h)?;
    frac.validate(h)?;
    let strong = strong_colors(h, frac)?;
    Ok(graph_round_with(
        h,
        frac,
        &strong,
        &RoundingDraw::sample(h.color_count(), rng),
    ))
}

/// The strong color of each node, if any.
pub fn strong_colors(
    h: &EdgeColoredHypergraph,
    frac: &FractionalSolution,
) -> Result<Vec<Option<usize>>> {
    (0..h.node_count())
        .map(|v| {
            let mut strong = (0..h.color_count()).filter(|&c| frac.assignment(v, c) >= STRONG);
            let first = strong.next();
            if strong.next().is_some() {
                let total: f64 = (0..h.color_count()).map(|c| frac.assignment(v, c)).sum();
                debug_assert!(total > 1.0 + FEAS_TOL);
                return Err(EccError::CorruptedFractional(format!(
                    "node {v} has two strong colors (assignment sum {total})"
                )));
            }
            Ok(first)
        })
        .collect()
}

pub fn graph_round_with(
    h: &EdgeColoredHypergraph,
    frac: &FractionalSolution,
    strong: &[Option<usize>],
    draw: &RoundingDraw,
) -> Coloring {
    let k = h.color_count();
    let colors = (0..h.node_count())
        .map(|v| {
            let wanted_weak = (0..k)
                .filter(|&c| Some(c) != strong[v])
                .filter(|&c| draw.thresholds[c] < frac.assignment(v, c));
            draw.priority
                .best(wanted_weak)
                .or(strong[v])
                .unwrap_or_else(|| frac.preferred_color(v))
        })
        .collect();
    Coloring::new(colors)
}

fn require_distance(frac: &FractionalSolution) -> Result<()> {
    if frac.orientation == Orientation::Distance {
        Ok(())
    } else {
        Err(EccError::InvalidParameter(
            "rounding needs a distance-oriented solution".into(),
        ))
    }
}

/// Assigns each node the unique color at distance below 1/2, falling back to
/// the closest color (lowest index on ties).
pub fn half_threshold_round(
    h: &EdgeColoredHypergraph,
    frac: &FractionalSolution,
) -> Result<Coloring> {
    require_distance(frac)?;
    frac.validate(h)?;
    let colors = (0..h.node_count())
        .map(|v| {
            let mut close =
                (0..h.color_count()).filter(|&c| frac.node_color[v][c] < 0.5 - THRESHOLD_TOL);
            match (close.next(), close.next()) {
                (Some(c), None) => Ok(c),
                (None, _) => Ok(frac.preferred_color(v)),
                (Some(a), Some(b)) => Err(EccError::CorruptedFractional(format!(
                    "node {v} is within 1/2 of colors {a} and {b}"
                ))),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Coloring::new(colors))
}

fn check_rho(rho: f64) -> Result<()> {
    if rho > 0.0 && rho <= 0.5 {
        Ok(())
    } else {
        Err(EccError::InvalidParameter(format!(
            "rho must lie in (0, 1/2], got {rho}"
        )))
    }
}

/// Edges given up by the bicriteria rounding: protected edges with
/// `gamma >= 1 - rho`, other edges with `gamma >= rho`.
pub fn protected_selection(
    h: &EdgeColoredHypergraph,
    frac: &FractionalSolution,
    protected: usize,
    rho: f64,
) -> Result<EdgeSet> {
    require_distance(frac)?;
    check_rho(rho)?;
    if protected >= h.color_count() {
        return Err(EccError::InvalidParameter(format!(
            "protected color {protected} outside [0, {})",
            h.color_count()
        )));
    }
    let mut set = EdgeSet::empty(h.edge_count());
    for (id, e) in h.edges().iter().enumerate() {
        let threshold = if e.color == protected { 1.0 - rho } else { rho };
        if frac.edge_value[id] >= threshold - THRESHOLD_TOL {
            set.insert(id);
        }
    }
    Ok(set)
}

pub fn protected_round(
    h: &EdgeColoredHypergraph,
    frac: &FractionalSolution,
    protected: usize,
    rho: f64,
) -> Result<Coloring> {
    let set = protected_selection(h, frac, protected, rho)?;
    extend_coloring(h, &set, Fallback::Fractional(frac))
}

/// Gives up every edge with `gamma >= 1/2` and satisfies the rest.
pub fn lovasz_round(h: &EdgeColoredHypergraph, gamma: &[f64]) -> Result<Coloring> {
    if gamma.len() != h.edge_count() {
        return Err(EccError::InvalidParameter(format!(
            "gamma has {} entries for {} edges",
            gamma.len(),
            h.edge_count()
        )));
    }
    let set = EdgeSet::from_ids(
        h.edge_count(),
        (0..gamma.len()).filter(|&e| gamma[e] >= 0.5 - THRESHOLD_TOL),
    )?;
    extend_coloring(h, &set, Fallback::FirstColor)
}
