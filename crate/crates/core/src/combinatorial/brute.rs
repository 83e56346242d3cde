//! Exhaustive search over colorings, the reference oracle for small instances.

use crate::error::{EccError, Result};
use crate::hypergraph::{Coloring, EdgeColoredHypergraph, Problem};

/// Largest number of colorings [`for_each_coloring`] will visit.
pub const MAX_ENUMERATION: u64 = 1 << 24;

#[derive(Debug, Clone, PartialEq)]
pub struct BruteForceResult {
    pub value: f64,
    pub witness: Coloring,
}

/// Visits every coloring of the nodes incident to some edge, in lexicographic
/// order; isolated nodes stay at color 0.
pub fn for_each_coloring(
    h: &EdgeColoredHypergraph,
    mut visit: impl FnMut(&Coloring),
) -> Result<()> {
    let free = h.incident_nodes();
    let k = h.color_count() as u64;
    let count = (0..free.len()).try_fold(1u64, |acc, _| acc.checked_mul(k));
    match count {
        Some(c) if c <= MAX_ENUMERATION => {}
        _ => {
            return Err(EccError::TooLarge(format!(
                "{k}^{} colorings exceed the limit of {MAX_ENUMERATION}",
                free.len()
            )))
        }
    }
    let mut lam = Coloring::uniform(h.node_count(), 0);
    loop {
        visit(&lam);
        // odometer: the last free node is the least significant digit
        let mut i = free.len();
        loop {
            if i == 0 {
                return Ok(());
            }
            i -= 1;
            let v = free[i];
            if lam.color(v) + 1 < h.color_count() {
                lam.set(v, lam.color(v) + 1);
                break;
            }
            lam.set(v, 0);
        }
    }
}

fn improves(candidate: f64, best: f64, maximize: bool) -> bool {
    let margin = 1e-12 * best.abs().max(1.0);
    if maximize {
        candidate > best + margin
    } else {
        candidate < best - margin
    }
}

/// Optimal value of a scalar objective and the lexicographically smallest
/// coloring attaining it.
pub fn brute_force(h: &EdgeColoredHypergraph, problem: Problem) -> Result<BruteForceResult> {
    problem.validate(h.color_count())?;
    if let Problem::Protected(_) = problem {
        return Err(EccError::InvalidParameter(
            "use brute_force_protected for the budgeted objective".into(),
        ));
    }
    let maximize = problem.is_maximization();
    let total = h.total_weight();
    let mut best: Option<BruteForceResult> = None;
    for_each_coloring(h, |lam| {
        let value = h
            .color_error_vector(lam)
            .objective(problem, total)
            .primary();
        if best
            .as_ref()
            .is_none_or(|b| improves(value, b.value, maximize))
        {
            best = Some(BruteForceResult {
                value,
                witness: lam.clone(),
            });
        }
    })?;
    Ok(best.expect("at least one coloring is enumerated"))
}

/// Minimum total unsatisfied weight among colorings leaving at most `budget`
/// unsatisfied weight in color `protected`; `None` if no coloring qualifies.
pub fn brute_force_protected(
    h: &EdgeColoredHypergraph,
    protected: usize,
    budget: f64,
) -> Result<Option<BruteForceResult>> {
    Problem::Protected(protected).validate(h.color_count())?;
    let mut best: Option<BruteForceResult> = None;
    for_each_coloring(h, |lam| {
        let m = h.color_error_vector(lam);
        if m.0[protected] > budget + 1e-9 {
            return;
        }
        let value = m.total();
        if best
            .as_ref()
            .is_none_or(|b| improves(value, b.value, false))
        {
            best = Some(BruteForceResult {
                value,
                witness: lam.clone(),
            });
        }
    })?;
    Ok(best)
}
