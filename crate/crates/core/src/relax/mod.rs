//! LP and convex relaxations of the clustering objectives.
//!
//! Maximization relaxations produce assignment variables `x[v][c]` and edge
//! variables `z[e]`; minimization relaxations produce distances
//! `d[v][c] = 1 - x[v][c]` and `gamma[e] = 1 - z[e]`.

mod lovasz;

pub use lovasz::{lovasz_extension, minimize_lovasz, set_function, LovaszParams, LovaszResult};

use crate::error::{EccError, Result};
use crate::hypergraph::EdgeColoredHypergraph;
use crate::lp::{
    frank_wolfe_minimize, solve_lp, FwParams, LinearProgram, LpStatus, Relation, Sense, FEAS_TOL,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    /// `node_color` holds `x[v][c]`, `edge_value` holds `z[e]`.
    Assignment,
    /// `node_color` holds `d[v][c]`, `edge_value` holds `gamma[e]`.
    Distance,
}

/// Optimal (or near-optimal) relaxation variables mapped back onto an instance.
#[derive(Debug, Clone, PartialEq)]
pub struct FractionalSolution {
    pub orientation: Orientation,
    pub node_color: Vec<Vec<f64>>,
    pub edge_value: Vec<f64>,
    /// Relaxation objective at this point.
    pub bound: f64,
    /// Optimality certificate slack: the relaxation optimum lies within
    /// `[bound - gap, bound]` for minimization. Zero for exact LP solves.
    pub gap: f64,
}

impl FractionalSolution {
    pub fn assignment(&self, v: usize, c: usize) -> f64 {
        match self.orientation {
            Orientation::Assignment => self.node_color[v][c],
            Orientation::Distance => 1.0 - self.node_color[v][c],
        }
    }

    pub fn distance(&self, v: usize, c: usize) -> f64 {
        1.0 - self.assignment(v, c)
    }

    /// Per-edge satisfaction level `z[e]`.
    pub fn satisfaction(&self, e: usize) -> f64 {
        match self.orientation {
            Orientation::Assignment => self.edge_value[e],
            Orientation::Distance => 1.0 - self.edge_value[e],
        }
    }

    /// Largest assignment variable of `v`, lowest color on ties.
    pub fn preferred_color(&self, v: usize) -> usize {
        let row = &self.node_color[v];
        let mut best = 0;
        for c in 1..row.len() {
            let better = match self.orientation {
                Orientation::Assignment => row[c] > row[best],
                Orientation::Distance => row[c] < row[best],
            };
            if better {
                best = c;
            }
        }
        best
    }

    /// The lower bound certified for a minimization relaxation.
    pub fn lower_bound(&self) -> f64 {
        (self.bound - self.gap).max(0.0)
    }

    /// Checks the structural invariants of the orientation against `h`.
    pub fn validate(&self, h: &EdgeColoredHypergraph) -> Result<()> {
        let (n, k) = (h.node_count(), h.color_count());
        if self.node_color.len() != n
            || self.node_color.iter().any(|r| r.len() != k)
            || self.edge_value.len() != h.edge_count()
        {
            return Err(EccError::CorruptedFractional("dimension mismatch".into()));
        }
        let in_unit = |x: f64| (-FEAS_TOL..=1.0 + FEAS_TOL).contains(&x);
        if !self
            .node_color
            .iter()
            .flatten()
            .chain(&self.edge_value)
            .all(|&x| in_unit(x))
        {
            return Err(EccError::CorruptedFractional("value outside [0, 1]".into()));
        }
        for (v, row) in self.node_color.iter().enumerate() {
            let sum: f64 = row.iter().sum();
            match self.orientation {
                Orientation::Assignment if (sum - 1.0).abs() > FEAS_TOL => {
                    return Err(EccError::CorruptedFractional(format!(
                        "node {v}: assignment sums to {sum}"
                    )));
                }
                Orientation::Distance => {
                    if sum < (k as f64 - 1.0) - FEAS_TOL {
                        return Err(EccError::CorruptedFractional(format!(
                            "node {v}: distances sum to {sum} < k - 1"
                        )));
                    }
                    let close = row.iter().filter(|&&d| d < 0.5 - FEAS_TOL).count();
                    if close > 1 {
                        return Err(EccError::CorruptedFractional(format!(
                            "node {v}: {close} colors with distance below 1/2"
                        )));
                    }
                }
                _ => {}
            }
        }
        for (id, e) in h.edges().iter().enumerate() {
            for &v in &e.nodes {
                let ok = match self.orientation {
                    Orientation::Assignment => {
                        self.edge_value[id] <= self.node_color[v][e.color] + FEAS_TOL
                    }
                    Orientation::Distance => {
                        self.node_color[v][e.color] <= self.edge_value[id] + FEAS_TOL
                    }
                };
                if !ok {
                    return Err(EccError::CorruptedFractional(format!(
                        "edge {id} violates its node constraint at node {v}"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Column layout shared by all relaxations: node-color variables first, then
/// one variable per edge, then any auxiliary variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VariableLayout {
    pub nodes: usize,
    pub colors: usize,
    pub edges: usize,
}

impl VariableLayout {
    pub fn of(h: &EdgeColoredHypergraph) -> Self {
        Self {
            nodes: h.node_count(),
            colors: h.color_count(),
            edges: h.edge_count(),
        }
    }

    pub fn node_color(&self, v: usize, c: usize) -> usize {
        v * self.colors + c
    }

    pub fn edge(&self, e: usize) -> usize {
        self.nodes * self.colors + e
    }

    /// Index of the `i`-th auxiliary variable.
    pub fn aux(&self, i: usize) -> usize {
        self.nodes * self.colors + self.edges + i
    }

    pub fn base_count(&self) -> usize {
        self.aux(0)
    }

    fn unpack(&self, values: &[f64]) -> (Vec<Vec<f64>>, Vec<f64>) {
        let node_color = (0..self.nodes)
            .map(|v| {
                (0..self.colors)
                    .map(|c| values[self.node_color(v, c)].clamp(0.0, 1.0))
                    .collect()
            })
            .collect();
        let edge_value = (0..self.edges)
            .map(|e| values[self.edge(e)].clamp(0.0, 1.0))
            .collect();
        (node_color, edge_value)
    }
}

/// Removes round-off that leaves a node within 1/2 of two colors: every such
/// distance but the smallest (lowest color on ties) is lifted to exactly 1/2,
/// and the edge variables it bounds follow. Feasible inputs move by at most
/// the solver tolerance.
fn settle_distances(
    h: &EdgeColoredHypergraph,
    node_color: &mut [Vec<f64>],
    edge_value: &mut [f64],
) {
    for row in node_color.iter_mut() {
        let close: Vec<usize> = (0..row.len()).filter(|&c| row[c] < 0.5).collect();
        if let Some(&keep) = close.iter().min_by(|&&a, &&b| row[a].total_cmp(&row[b])) {
            for c in close {
                if c != keep {
                    row[c] = 0.5;
                }
            }
        }
    }
    for (id, e) in h.edges().iter().enumerate() {
        for &v in &e.nodes {
            edge_value[id] = edge_value[id].max(node_color[v][e.color]);
        }
    }
}

/// `max sum w_e z_e  s.t.  sum_c x[v][c] = 1,  x[v][color(e)] >= z_e (v in e)`,
/// all variables in `[0, 1]`.
pub fn build_maxecc_lp(h: &EdgeColoredHypergraph) -> (LinearProgram, VariableLayout) {
    let layout = VariableLayout::of(h);
    let mut lp = LinearProgram::new(layout.base_count(), Sense::Maximize);
    for (id, e) in h.edges().iter().enumerate() {
        lp.objective[layout.edge(id)] = e.weight;
    }
    for v in 0..h.node_count() {
        let terms: Vec<_> = (0..h.color_count())
            .map(|c| (layout.node_color(v, c), 1.0))
            .collect();
        lp.add_sparse_row(&terms, Relation::Eq, 1.0);
    }
    for (id, e) in h.edges().iter().enumerate() {
        for &v in &e.nodes {
            lp.add_sparse_row(
                &[
                    (layout.node_color(v, e.color), 1.0),
                    (layout.edge(id), -1.0),
                ],
                Relation::Ge,
                0.0,
            );
        }
    }
    (lp, layout)
}

pub fn solve_maxecc_relaxation(h: &EdgeColoredHypergraph) -> Result<FractionalSolution> {
    let (lp, layout) = build_maxecc_lp(h);
    let sol = solve_lp(&lp)?.into_optimal()?;
    let (node_color, mut edge_value) = layout.unpack(&sol.values);
    // Zero-weight edges are not pushed to their cap by the objective.
    for (id, e) in h.edges().iter().enumerate() {
        edge_value[id] = e
            .nodes
            .iter()
            .map(|&v| node_color[v][e.color])
            .fold(1.0, f64::min);
    }
    let frac = FractionalSolution {
        orientation: Orientation::Assignment,
        node_color,
        edge_value,
        bound: sol.objective_value,
        gap: 0.0,
    };
    frac.validate(h)?;
    Ok(frac)
}

/// Distance-variable rows shared by the minimization relaxations:
/// `sum_c d[v][c] >= k - 1` and `d[v][color(e)] <= gamma_e` for `v in e`.
fn distance_region(h: &EdgeColoredHypergraph, aux: usize) -> (LinearProgram, VariableLayout) {
    let layout = VariableLayout::of(h);
    let mut lp = LinearProgram::new(layout.base_count() + aux, Sense::Minimize);
    let k = h.color_count();
    for v in 0..h.node_count() {
        let terms: Vec<_> = (0..k).map(|c| (layout.node_color(v, c), 1.0)).collect();
        lp.add_sparse_row(&terms, Relation::Ge, k as f64 - 1.0);
    }
    for (id, e) in h.edges().iter().enumerate() {
        for &v in &e.nodes {
            lp.add_sparse_row(
                &[
                    (layout.node_color(v, e.color), 1.0),
                    (layout.edge(id), -1.0),
                ],
                Relation::Le,
                0.0,
            );
        }
    }
    (lp, layout)
}

/// The relaxed p-mean program in the form its solver needs.
#[derive(Debug, Clone)]
pub enum PMeanProgram {
    /// `p = 1` (minimize total weight of gamma) or `p = inf` (minimize the
    /// auxiliary `t >= m_c`).
    Linear {
        lp: LinearProgram,
        layout: VariableLayout,
    },
    /// `1 < p < inf`: the feasible region with auxiliaries
    /// `m_c = sum_{e in E_c} w_e gamma_e`, minimized under the p-norm of `m`.
    Convex {
        region: LinearProgram,
        layout: VariableLayout,
        p: f64,
    },
}

pub fn build_pmean_program(h: &EdgeColoredHypergraph, p: f64) -> Result<PMeanProgram> {
    if p.is_nan() || p < 1.0 {
        return Err(EccError::InvalidParameter(format!(
            "p-mean relaxation needs p >= 1, got {p}"
        )));
    }
    let k = h.color_count();
    if p == 1.0 {
        let (mut lp, layout) = distance_region(h, 0);
        for (id, e) in h.edges().iter().enumerate() {
            lp.objective[layout.edge(id)] = e.weight;
        }
        return Ok(PMeanProgram::Linear { lp, layout });
    }
    if p.is_infinite() {
        let (mut lp, layout) = distance_region(h, 1);
        let t = layout.aux(0);
        lp.set_bounds(t, 0.0, h.total_weight().max(1.0));
        lp.objective[t] = 1.0;
        for c in 0..k {
            let mut terms: Vec<_> = h
                .edges_of_color(c)
                .map(|id| (layout.edge(id), h.edges()[id].weight))
                .collect();
            terms.push((t, -1.0));
            lp.add_sparse_row(&terms, Relation::Le, 0.0);
        }
        return Ok(PMeanProgram::Linear { lp, layout });
    }
    let (mut region, layout) = distance_region(h, k);
    let class_weight = h.color_weights();
    for c in 0..k {
        let mc = layout.aux(c);
        region.set_bounds(mc, 0.0, class_weight[c]);
        let mut terms: Vec<_> = h
            .edges_of_color(c)
            .map(|id| (layout.edge(id), -h.edges()[id].weight))
            .collect();
        terms.push((mc, 1.0));
        region.add_sparse_row(&terms, Relation::Eq, 0.0);
    }
    Ok(PMeanProgram::Convex { region, layout, p })
}

/// p-norm of the `m_c` block of `x` with its gradient; zero gradient at the origin.
fn pnorm_oracle(layout: VariableLayout, p: f64) -> impl Fn(&[f64]) -> (f64, Vec<f64>) {
    move |x: &[f64]| {
        let m = &x[layout.aux(0)..layout.aux(layout.colors)];
        let norm = m
            .iter()
            .map(|v| v.max(0.0).powf(p))
            .sum::<f64>()
            .powf(1.0 / p);
        let mut grad = vec![0.0; x.len()];
        if norm > 0.0 {
            for (c, v) in m.iter().enumerate() {
                grad[layout.aux(c)] = (v.max(0.0) / norm).powf(p - 1.0);
            }
        }
        (norm, grad)
    }
}

/// Solves the relaxed p-mean program (`p >= 1` or `p = inf`).
pub fn solve_pmean_relaxation(
    h: &EdgeColoredHypergraph,
    p: f64,
    fw: FwParams,
) -> Result<FractionalSolution> {
    let (values, layout, bound, gap) = match build_pmean_program(h, p)? {
        PMeanProgram::Linear { lp, layout } => {
            let sol = solve_lp(&lp)?.into_optimal()?;
            (sol.values, layout, sol.objective_value, 0.0)
        }
        PMeanProgram::Convex { region, layout, p } => {
            let res = frank_wolfe_minimize(&region, &pnorm_oracle(layout, p), fw)?;
            (res.point, layout, res.value, res.gap)
        }
    };
    let (mut node_color, mut edge_value) = layout.unpack(&values);
    settle_distances(h, &mut node_color, &mut edge_value);
    let frac = FractionalSolution {
        orientation: Orientation::Distance,
        node_color,
        edge_value,
        bound,
        gap,
    };
    frac.validate(h)?;
    Ok(frac)
}

/// The MinECC LP relaxation (`p = 1`).
pub fn solve_min_relaxation(h: &EdgeColoredHypergraph) -> Result<FractionalSolution> {
    solve_pmean_relaxation(h, 1.0, FwParams::default())
}

/// MinECC LP plus `sum_{e in E_c1} w_e gamma_e <= budget`.
pub fn build_protected_lp(
    h: &EdgeColoredHypergraph,
    protected: usize,
    budget: f64,
) -> Result<(LinearProgram, VariableLayout)> {
    if protected >= h.color_count() {
        return Err(EccError::InvalidParameter(format!(
            "protected color {protected} outside [0, {})",
            h.color_count()
        )));
    }
    if budget.is_nan() || budget < 0.0 {
        return Err(EccError::InvalidParameter(format!(
            "budget must be nonnegative, got {budget}"
        )));
    }
    let (mut lp, layout) = distance_region(h, 0);
    for (id, e) in h.edges().iter().enumerate() {
        lp.objective[layout.edge(id)] = e.weight;
    }
    let terms: Vec<_> = h
        .edges_of_color(protected)
        .map(|id| (layout.edge(id), h.edges()[id].weight))
        .collect();
    lp.add_sparse_row(&terms, Relation::Le, budget);
    Ok((lp, layout))
}

pub fn solve_protected_relaxation(
    h: &EdgeColoredHypergraph,
    protected: usize,
    budget: f64,
) -> Result<FractionalSolution> {
    let (lp, layout) = build_protected_lp(h, protected, budget)?;
    let sol = solve_lp(&lp)?;
    if sol.status != LpStatus::Optimal {
        return Err(sol.into_optimal().unwrap_err());
    }
    let (mut node_color, mut edge_value) = layout.unpack(&sol.values);
    settle_distances(h, &mut node_color, &mut edge_value);
    let frac = FractionalSolution {
        orientation: Orientation::Distance,
        node_color,
        edge_value,
        bound: sol.objective_value,
        gap: 0.0,
    };
    frac.validate(h)?;
    Ok(frac)
}
