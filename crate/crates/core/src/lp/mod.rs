//! Dense linear programs and the solvers used by every relaxation.

mod frank_wolfe;
mod simplex;

pub use frank_wolfe::{frank_wolfe_minimize, ConvexOracle, FwParams, FwResult};

use crate::error::{EccError, Result};

/// Feasibility tolerance promised for optimal solutions.
pub const FEAS_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Minimize,
    Maximize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub coeffs: Vec<f64>,
    pub relation: Relation,
    pub rhs: f64,
}

/// `optimize c.x  s.t.  rows, lo <= x <= hi`. Bounds default to `[0, 1]`;
/// lower bounds must be finite, upper bounds may be `+inf`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearProgram {
    pub sense: Sense,
    pub objective: Vec<f64>,
    pub rows: Vec<Row>,
    pub bounds: Vec<(f64, f64)>,
}

impl LinearProgram {
    pub fn new(variable_count: usize, sense: Sense) -> Self {
        Self {
            sense,
            objective: vec![0.0; variable_count],
            rows: Vec::new(),
            bounds: vec![(0.0, 1.0); variable_count],
        }
    }

    pub fn variable_count(&self) -> usize {
        self.objective.len()
    }

    pub fn add_row(&mut self, coeffs: Vec<f64>, relation: Relation, rhs: f64) {
        self.rows.push(Row {
            coeffs,
            relation,
            rhs,
        });
    }

    /// Adds a row given as `(variable, coefficient)` pairs.
    pub fn add_sparse_row(&mut self, terms: &[(usize, f64)], relation: Relation, rhs: f64) {
        let mut coeffs = vec![0.0; self.variable_count()];
        for &(j, a) in terms {
            coeffs[j] += a;
        }
        self.add_row(coeffs, relation, rhs);
    }

    pub fn set_bounds(&mut self, var: usize, lo: f64, hi: f64) {
        self.bounds[var] = (lo, hi);
    }

    pub fn with_objective(&self, sense: Sense, objective: Vec<f64>) -> Self {
        Self {
            sense,
            objective,
            ..self.clone()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.variable_count();
        if self.bounds.len() != n {
            return Err(EccError::Solver(format!(
                "{} bounds for {n} variables",
                self.bounds.len()
            )));
        }
        if self.objective.iter().any(|c| !c.is_finite()) {
            return Err(EccError::Solver("non-finite objective coefficient".into()));
        }
        for (i, row) in self.rows.iter().enumerate() {
            if row.coeffs.len() != n {
                return Err(EccError::Solver(format!(
                    "row {i} has {} coefficients for {n} variables",
                    row.coeffs.len()
                )));
            }
            if !row.rhs.is_finite() || row.coeffs.iter().any(|a| !a.is_finite()) {
                return Err(EccError::Solver(format!("row {i} has a non-finite entry")));
            }
        }
        for (j, &(lo, hi)) in self.bounds.iter().enumerate() {
            if !lo.is_finite() || hi.is_nan() || hi == f64::NEG_INFINITY || lo > hi {
                return Err(EccError::Solver(format!(
                    "variable {j} has invalid bounds [{lo}, {hi}]"
                )));
            }
        }
        Ok(())
    }

    pub fn evaluate(&self, x: &[f64]) -> f64 {
        dot(&self.objective, x)
    }

    /// Largest violation of any row or bound at `x`.
    pub fn max_violation(&self, x: &[f64]) -> f64 {
        let mut worst: f64 = 0.0;
        for row in &self.rows {
            let lhs = dot(&row.coeffs, x);
            let v = match row.relation {
                Relation::Le => lhs - row.rhs,
                Relation::Ge => row.rhs - lhs,
                Relation::Eq => (lhs - row.rhs).abs(),
            };
            worst = worst.max(v);
        }
        for (xj, &(lo, hi)) in x.iter().zip(&self.bounds) {
            worst = worst.max(lo - xj).max(xj - hi);
        }
        worst
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution {
    pub status: LpStatus,
    pub values: Vec<f64>,
    pub objective_value: f64,
}

impl LpSolution {
    /// The solution if optimal, otherwise the matching error.
    pub fn into_optimal(self) -> Result<Self> {
        match self.status {
            LpStatus::Optimal => Ok(self),
            LpStatus::Infeasible => Err(EccError::Infeasible),
            LpStatus::Unbounded => Err(EccError::Unbounded),
        }
    }
}

/// Solves `lp` with the two-phase dense simplex method (Bland's rule).
pub fn solve_lp(lp: &LinearProgram) -> Result<LpSolution> {
    lp.validate()?;
    simplex::solve(lp)
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}
