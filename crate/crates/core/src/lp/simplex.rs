//! Dense two-phase primal simplex on a full tableau.
//!
//! Variables are shifted to `y = x - lo >= 0`; finite upper bounds become
//! explicit `y <= hi - lo` rows. Entering and leaving variables follow Bland's
//! rule, so the method terminates on degenerate programs.

use super::{dot, LinearProgram, LpSolution, LpStatus, Relation, Sense};
use crate::error::{EccError, Result};

const PIVOT_EPS: f64 = 1e-9;
const COST_EPS: f64 = 1e-9;
const PHASE_ONE_EPS: f64 = 1e-9;
const RATIO_TIE: f64 = 1e-11;

struct Tableau {
    cols: usize,
    /// Row-major, `cols + 1` entries per row; the last entry is the rhs.
    data: Vec<f64>,
    basis: Vec<usize>,
    /// Reduced costs followed by the negated objective value.
    cost: Vec<f64>,
}

impl Tableau {
    fn rows(&self) -> usize {
        self.basis.len()
    }

    fn width(&self) -> usize {
        self.cols + 1
    }

    fn at(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.width() + j]
    }

    fn rhs(&self, i: usize) -> f64 {
        self.at(i, self.cols)
    }

    /// Resets the cost row to `c` priced out against the current basis.
    fn price(&mut self, c: &[f64]) {
        let w = self.width();
        self.cost = c.to_vec();
        self.cost.push(0.0);
        for i in 0..self.rows() {
            let cb = c[self.basis[i]];
            if cb != 0.0 {
                let row = &self.data[i * w..(i + 1) * w];
                for (cj, aij) in self.cost.iter_mut().zip(row) {
                    *cj -= cb * aij;
                }
            }
        }
    }

    fn pivot(&mut self, r: usize, s: usize) {
        let w = self.width();
        let p = self.data[r * w + s];
        for j in 0..w {
            self.data[r * w + j] /= p;
        }
        self.data[r * w + s] = 1.0;
        let pivot_row: Vec<f64> = self.data[r * w..(r + 1) * w].to_vec();
        for i in 0..self.rows() {
            if i == r {
                continue;
            }
            let f = self.data[i * w + s];
            if f != 0.0 {
                let row = &mut self.data[i * w..(i + 1) * w];
                for (a, b) in row.iter_mut().zip(&pivot_row) {
                    *a -= f * b;
                }
                row[s] = 0.0;
            }
        }
        let f = self.cost[s];
        if f != 0.0 {
            for (a, b) in self.cost.iter_mut().zip(&pivot_row) {
                *a -= f * b;
            }
            self.cost[s] = 0.0;
        }
        self.basis[r] = s;
    }

    fn remove_row(&mut self, r: usize) {
        let w = self.width();
        self.data.drain(r * w..(r + 1) * w);
        self.basis.remove(r);
    }

    /// Minimizes the priced cost row over columns `< allowed`.
    fn optimize(&mut self, allowed: usize, max_pivots: usize) -> Result<Option<usize>> {
        for pivots in 0..max_pivots {
            let Some(s) = (0..allowed).find(|&j| self.cost[j] < -COST_EPS) else {
                return Ok(Some(pivots));
            };
            let mut best: Option<(usize, f64)> = None;
            for i in 0..self.rows() {
                let a = self.at(i, s);
                if a <= PIVOT_EPS {
                    continue;
                }
                let ratio = self.rhs(i).max(0.0) / a;
                best = match best {
                    None => Some((i, ratio)),
                    Some((bi, br)) => {
                        let tie = (ratio - br).abs() <= RATIO_TIE * (1.0 + br.abs());
                        if (tie && self.basis[i] < self.basis[bi]) || (!tie && ratio < br) {
                            Some((i, ratio))
                        } else {
                            Some((bi, br))
                        }
                    }
                };
            }
            match best {
                None => return Ok(None),
                Some((r, _)) => self.pivot(r, s),
            }
        }
        Err(EccError::Solver(format!(
            "iteration cap of {max_pivots} pivots reached"
        )))
    }
}

pub(super) fn solve(lp: &LinearProgram) -> Result<LpSolution> {
    let n = lp.variable_count();

    // Standard-form rows over the shifted variables, rhs made nonnegative.
    let mut rows: Vec<(Vec<f64>, Relation, f64)> = Vec::new();
    let lo: Vec<f64> = lp.bounds.iter().map(|b| b.0).collect();
    for row in &lp.rows {
        rows.push((
            row.coeffs.clone(),
            row.relation,
            row.rhs - dot(&row.coeffs, &lo),
        ));
    }
    for (j, &(l, h)) in lp.bounds.iter().enumerate() {
        if h.is_finite() {
            let mut a = vec![0.0; n];
            a[j] = 1.0;
            rows.push((a, Relation::Le, h - l));
        }
    }
    for (a, rel, b) in rows.iter_mut() {
        if *b < 0.0 {
            a.iter_mut().for_each(|x| *x = -*x);
            *b = -*b;
            *rel = match rel {
                Relation::Le => Relation::Ge,
                Relation::Ge => Relation::Le,
                Relation::Eq => Relation::Eq,
            };
        }
    }

    let slack_count = rows.iter().filter(|r| r.1 != Relation::Eq).count();
    let artificial_count = rows.iter().filter(|r| r.1 != Relation::Le).count();
    let first_artificial = n + slack_count;
    let cols = first_artificial + artificial_count;
    let w = cols + 1;

    let mut data = vec![0.0; rows.len() * w];
    let mut basis = Vec::with_capacity(rows.len());
    let (mut next_slack, mut next_art) = (n, first_artificial);
    for (i, (a, rel, b)) in rows.iter().enumerate() {
        let row = &mut data[i * w..(i + 1) * w];
        row[..n].copy_from_slice(a);
        row[cols] = *b;
        match rel {
            Relation::Le => {
                row[next_slack] = 1.0;
                basis.push(next_slack);
                next_slack += 1;
            }
            Relation::Ge => {
                row[next_slack] = -1.0;
                next_slack += 1;
                row[next_art] = 1.0;
                basis.push(next_art);
                next_art += 1;
            }
            Relation::Eq => {
                row[next_art] = 1.0;
                basis.push(next_art);
                next_art += 1;
            }
        }
    }
    let mut t = Tableau {
        cols,
        data,
        basis,
        cost: Vec::new(),
    };
    let max_pivots = 50_000 + 50 * (cols + t.rows());

    if artificial_count > 0 {
        let mut c1 = vec![0.0; cols];
        c1[first_artificial..].iter_mut().for_each(|c| *c = 1.0);
        t.price(&c1);
        t.optimize(cols, max_pivots)?
            .ok_or_else(|| EccError::Solver("phase one reported unbounded".into()))?;
        let infeasibility = -t.cost[cols];
        if infeasibility > PHASE_ONE_EPS {
            return Ok(LpSolution {
                status: LpStatus::Infeasible,
                values: Vec::new(),
                objective_value: f64::NAN,
            });
        }
        // Drive remaining (zero-level) artificials out of the basis.
        let mut i = 0;
        while i < t.rows() {
            if t.basis[i] >= first_artificial {
                match (0..first_artificial).find(|&j| t.at(i, j).abs() > PIVOT_EPS) {
                    Some(j) => {
                        t.pivot(i, j);
                        i += 1;
                    }
                    None => t.remove_row(i),
                }
            } else {
                i += 1;
            }
        }
    }

    let sign = match lp.sense {
        Sense::Minimize => 1.0,
        Sense::Maximize => -1.0,
    };
    let mut c2 = vec![0.0; cols];
    for j in 0..n {
        c2[j] = sign * lp.objective[j];
    }
    t.price(&c2);
    if t.optimize(first_artificial, max_pivots)?.is_none() {
        return Ok(LpSolution {
            status: LpStatus::Unbounded,
            values: Vec::new(),
            objective_value: sign * f64::NEG_INFINITY,
        });
    }

    let mut values = lo;
    for i in 0..t.rows() {
        let j = t.basis[i];
        if j < n {
            values[j] += t.rhs(i).max(0.0);
        }
    }
    for (x, &(l, h)) in values.iter_mut().zip(&lp.bounds) {
        *x = x.clamp(l, h);
    }
    let objective_value = lp.evaluate(&values);
    Ok(LpSolution {
        status: LpStatus::Optimal,
        values,
        objective_value,
    })
}
