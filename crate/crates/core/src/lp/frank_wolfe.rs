//! Away-step Frank-Wolfe over an LP-described polytope.
//!
//! The linear minimization oracle is one [`solve_lp`] call per iteration. The
//! iterate is kept as an explicit convex combination of LP vertices, so it
//! stays feasible, and away steps give linear convergence on the strongly
//! convex compositions we feed it.

use super::{dot, solve_lp, LinearProgram, LpStatus, Sense};
use crate::error::{EccError, Result};

/// Convex function with a (sub)gradient oracle.
pub trait ConvexOracle {
    fn evaluate(&self, x: &[f64]) -> (f64, Vec<f64>);
}

impl<F> ConvexOracle for F
where
    F: Fn(&[f64]) -> (f64, Vec<f64>),
{
    fn evaluate(&self, x: &[f64]) -> (f64, Vec<f64>) {
        self(x)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FwParams {
    pub max_iters: usize,
    /// Stop once the duality gap `<grad, x - s>` falls to this value.
    pub tol: f64,
}

impl Default for FwParams {
    fn default() -> Self {
        Self {
            max_iters: 5_000,
            tol: 1e-6,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FwResult {
    pub point: Vec<f64>,
    pub value: f64,
    /// Final duality gap; `value - gap` is a lower bound on the minimum.
    pub gap: f64,
    pub iterations: usize,
}

const SAME_VERTEX: f64 = 1e-12;
const LINE_SEARCH_STEPS: usize = 60;

fn linear_minimizer(region: &LinearProgram, direction: &[f64]) -> Result<Vec<f64>> {
    let sol = solve_lp(&region.with_objective(Sense::Minimize, direction.to_vec()))?;
    match sol.status {
        LpStatus::Optimal => Ok(sol.values),
        LpStatus::Infeasible => Err(EccError::Infeasible),
        LpStatus::Unbounded => Err(EccError::Solver(
            "Frank-Wolfe region must be bounded".into(),
        )),
    }
}

/// Minimizes `x -> (1 - t) x + t (x + d)` along `t in [0, t_max]` by bisection
/// on the sign of the directional derivative.
fn line_search(oracle: &impl ConvexOracle, x: &[f64], d: &[f64], t_max: f64) -> f64 {
    let slope = |t: f64| {
        let y: Vec<f64> = x.iter().zip(d).map(|(a, b)| a + t * b).collect();
        dot(&oracle.evaluate(&y).1, d)
    };
    if slope(t_max) <= 0.0 {
        return t_max;
    }
    let (mut lo, mut hi) = (0.0, t_max);
    for _ in 0..LINE_SEARCH_STEPS {
        let mid = 0.5 * (lo + hi);
        if slope(mid) <= 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// Minimizes the convex `oracle` over the feasible region of `region` (its
/// objective is ignored). The region must be nonempty and bounded.
pub fn frank_wolfe_minimize(
    region: &LinearProgram,
    oracle: &impl ConvexOracle,
    params: FwParams,
) -> Result<FwResult> {
    let n = region.variable_count();
    let start = linear_minimizer(region, &vec![0.0; n])?;
    let mut x = start.clone();
    let mut active: Vec<(Vec<f64>, f64)> = vec![(start, 1.0)];
    let mut gap = f64::INFINITY;

    for iteration in 0..params.max_iters {
        let (value, grad) = oracle.evaluate(&x);
        let s = linear_minimizer(region, &grad)?;
        let gx = dot(&grad, &x);
        gap = gx - dot(&grad, &s);
        if gap <= params.tol {
            return Ok(FwResult {
                point: x,
                value,
                gap: gap.max(0.0),
                iterations: iteration,
            });
        }

        let (away, away_score) = active
            .iter()
            .enumerate()
            .map(|(i, (v, _))| (i, dot(&grad, v)))
            .fold((0, f64::NEG_INFINITY), |best, cur| {
                if cur.1 > best.1 {
                    cur
                } else {
                    best
                }
            });
        let away_gap = away_score - gx;
        let away_weight = active[away].1;

        if gap >= away_gap || away_weight >= 1.0 {
            let d: Vec<f64> = s.iter().zip(&x).map(|(a, b)| a - b).collect();
            let t = line_search(oracle, &x, &d, 1.0);
            if t >= 1.0 {
                active = vec![(s.clone(), 1.0)];
                x = s;
            } else {
                for (_, w) in active.iter_mut() {
                    *w *= 1.0 - t;
                }
                match active.iter_mut().find(|(v, _)| same_vertex(v, &s)) {
                    Some((_, w)) => *w += t,
                    None => active.push((s, t)),
                }
                x.iter_mut().zip(&d).for_each(|(xi, di)| *xi += t * di);
            }
        } else {
            let t_max = away_weight / (1.0 - away_weight);
            let d: Vec<f64> = x.iter().zip(&active[away].0).map(|(a, b)| a - b).collect();
            let t = line_search(oracle, &x, &d, t_max);
            for (_, w) in active.iter_mut() {
                *w *= 1.0 + t;
            }
            active[away].1 -= t;
            if t >= t_max {
                active.remove(away);
            }
            x.iter_mut().zip(&d).for_each(|(xi, di)| *xi += t * di);
        }
        active.retain(|(_, w)| *w > 0.0);
    }
    Err(EccError::NoConvergence {
        iterations: params.max_iters,
        last: gap,
    })
}

fn same_vertex(a: &[f64], b: &[f64]) -> bool {
    a.iter().zip(b).all(|(x, y)| (x - y).abs() <= SAME_VERTEX)
}
