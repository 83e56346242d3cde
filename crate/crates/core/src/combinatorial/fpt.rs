//! Bounded search trees over conflicts.
//!
//! Every coloring leaves at least one edge of each conflict unsatisfied, so
//! branching on "give up the first edge" / "give up the second edge" of the
//! first remaining conflict enumerates every minimal unsatisfied set. Branches
//! whose given-up weight already exceeds the budget are pruned.

use crate::conflict::{extend_coloring, find_conflict, Fallback};
use crate::error::{EccError, Result};
use crate::hypergraph::{Coloring, EdgeColoredHypergraph, EdgeSet};

const BUDGET_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BranchBudget {
    /// At most `tau` unsatisfied weight in every color.
    ColorFair { tau: f64 },
    /// At most `total` unsatisfied weight, of which at most `protected_budget`
    /// in color `color`.
    Protected {
        total: f64,
        protected_budget: f64,
        color: usize,
    },
}

impl BranchBudget {
    fn validate(&self, k: usize) -> Result<Self> {
        let bad = |what: &str, v: f64| {
            Err(EccError::InvalidParameter(format!(
                "{what} must be nonnegative, got {v}"
            )))
        };
        match *self {
            BranchBudget::ColorFair { tau } if tau.is_nan() || tau < 0.0 => bad("tau", tau),
            BranchBudget::Protected { total, .. } if total.is_nan() || total < 0.0 => {
                bad("total budget", total)
            }
            BranchBudget::Protected {
                protected_budget, ..
            } if protected_budget.is_nan() || protected_budget < 0.0 => {
                bad("protected budget", protected_budget)
            }
            BranchBudget::Protected { color, .. } if color >= k => Err(EccError::InvalidParameter(
                format!("protected color {color} outside [0, {k})"),
            )),
            BranchBudget::Protected {
                total,
                protected_budget,
                color,
            } => Ok(BranchBudget::Protected {
                total,
                // a protected budget above the total budget never binds
                protected_budget: protected_budget.min(total),
                color,
            }),
            b => Ok(b),
        }
    }

    fn admits(&self, per_color: &[f64], total: f64) -> bool {
        match *self {
            BranchBudget::ColorFair { tau } => per_color.iter().all(|&m| m <= tau + BUDGET_TOL),
            BranchBudget::Protected {
                total: t,
                protected_budget,
                color,
            } => total <= t + BUDGET_TOL && per_color[color] <= protected_budget + BUDGET_TOL,
        }
    }
}

struct Search<'a> {
    h: &'a EdgeColoredHypergraph,
    budget: BranchBudget,
    dead: EdgeSet,
    per_color: Vec<f64>,
    total: f64,
}

impl Search<'_> {
    fn run(&mut self) -> Option<EdgeSet> {
        let Some(conflict) = find_conflict(self.h, &self.dead) else {
            return Some(self.dead.clone());
        };
        for e in [conflict.first, conflict.second] {
            let edge = &self.h.edges()[e];
            self.per_color[edge.color] += edge.weight;
            self.total += edge.weight;
            if self.budget.admits(&self.per_color, self.total) {
                self.dead.insert(e);
                if let Some(found) = self.run() {
                    return Some(found);
                }
                self.dead.remove(e);
            }
            self.per_color[edge.color] -= edge.weight;
            self.total -= edge.weight;
        }
        None
    }
}

/// Depth-first branching on the first conflict, giving up the lower edge id
/// first. Returns a coloring within `budget` if one exists.
pub fn fpt_search(h: &EdgeColoredHypergraph, budget: BranchBudget) -> Result<Option<Coloring>> {
    let budget = budget.validate(h.color_count())?;
    let mut search = Search {
        h,
        budget,
        dead: EdgeSet::empty(h.edge_count()),
        per_color: vec![0.0; h.color_count()],
        total: 0.0,
    };
    match search.run() {
        None => Ok(None),
        Some(dead) => extend_coloring(h, &dead, Fallback::FirstColor).map(Some),
    }
}

/// Decides whether some coloring leaves at most `tau` unsatisfied weight per color.
pub fn fpt_colorfair(h: &EdgeColoredHypergraph, tau: f64) -> Result<Option<Coloring>> {
    fpt_search(h, BranchBudget::ColorFair { tau })
}

/// Decides whether some coloring leaves at most `total` unsatisfied weight, at
/// most `protected_budget` of it in color `color`.
pub fn fpt_protected(
    h: &EdgeColoredHypergraph,
    total: f64,
    protected_budget: f64,
    color: usize,
) -> Result<Option<Coloring>> {
    fpt_search(
        h,
        BranchBudget::Protected {
            total,
            protected_budget,
            color,
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::{triangle_gadget, Hyperedge};

    fn conflict_free() -> EdgeColoredHypergraph {
        EdgeColoredHypergraph::new(
            3,
            2,
            vec![Hyperedge::unit(0, vec![0, 1]), Hyperedge::unit(1, vec![2])],
        )
        .unwrap()
    }

    #[test]
    fn colorfair_on_triangle() {
        let h = triangle_gadget();
        let lam = fpt_colorfair(&h, 1.0)
            .unwrap()
            .expect("tau = 1 is feasible");
        assert!(h.color_error_vector(&lam).max() <= 1.0);
        assert_eq!(fpt_colorfair(&h, 0.0).unwrap(), None);
    }

    #[test]
    fn conflict_free_needs_no_budget() {
        let h = conflict_free();
        let lam = fpt_colorfair(&h, 0.0).unwrap().unwrap();
        assert_eq!(h.color_error_vector(&lam).total(), 0.0);
        let lam = fpt_protected(&h, 0.0, 0.0, 1).unwrap().unwrap();
        assert_eq!(h.color_error_vector(&lam).total(), 0.0);
    }

    #[test]
    fn protected_on_triangle() {
        let h = triangle_gadget();
        let lam = fpt_protected(&h, 2.0, 0.0, 0).unwrap().unwrap();
        let m = h.color_error_vector(&lam);
        assert_eq!(m.0[0], 0.0);
        assert_eq!(m.total(), 2.0);
        assert_eq!(fpt_protected(&h, 1.0, 1.0, 0).unwrap(), None);
    }

    #[test]
    fn protected_budget_clamps_to_total() {
        let h = triangle_gadget();
        assert_eq!(fpt_protected(&h, 1.0, 5.0, 0).unwrap(), None);
        assert!(fpt_protected(&h, 2.0, 5.0, 0).unwrap().is_some());
    }

    #[test]
    fn rejects_bad_budgets() {
        let h = triangle_gadget();
        assert!(fpt_colorfair(&h, -1.0).is_err());
        assert!(fpt_protected(&h, 1.0, 1.0, 3).is_err());
        assert!(fpt_protected(&h, -1.0, 1.0, 0).is_err());
    }
}
