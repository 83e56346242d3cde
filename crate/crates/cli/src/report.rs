use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Infeasible,
}

/// Outcome of one `solve` run. Colors are 1-based.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub problem: String,
    pub algorithm: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub objective: Option<f64>,
    /// Unsatisfied weight of the protected color, for protected runs.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub protected_objective: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub color_error_vector: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub relaxation_bound: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub approx_ratio_upper_bound: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coloring: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub master_seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trials: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_time: Option<f64>,
}

/// objective / bound for minimization, bound / objective for maximization;
/// `None` when the quotient is undefined or infinite.
pub fn approx_ratio(objective: f64, bound: f64, maximize: bool) -> Option<f64> {
    let (num, den) = if maximize {
        (bound, objective)
    } else {
        (objective, bound)
    };
    if den > 0.0 {
        Some(num / den)
    } else {
        None
    }
}

fn join<T: ToString>(items: &[T]) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join(" ")
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map(T::to_string).unwrap_or_default()
}

impl RunReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    /// Header plus one row; list fields are space-separated.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record([
            "problem",
            "algorithm",
            "status",
            "objective",
            "protected_objective",
            "relaxation_bound",
            "approx_ratio_upper_bound",
            "master_seed",
            "trials",
            "wall_time",
            "color_error_vector",
            "coloring",
        ])
        .expect("in-memory write");
        w.write_record([
            self.problem.clone(),
            self.algorithm.clone(),
            serde_json::to_value(self.status)
                .ok()
                .and_then(|v| v.as_str().map(str::to_string))
                .unwrap_or_default(),
            opt(&self.objective),
            opt(&self.protected_objective),
            opt(&self.relaxation_bound),
            opt(&self.approx_ratio_upper_bound),
            opt(&self.master_seed),
            opt(&self.trials),
            opt(&self.wall_time),
            self.color_error_vector
                .as_deref()
                .map(join)
                .unwrap_or_default(),
            self.coloring.as_deref().map(join).unwrap_or_default(),
        ])
        .expect("in-memory write");
        String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
    }
}

/// One edge of an `estimate` table. Edge ids are 0-based file order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EstimateRow {
    pub edge: usize,
    pub color: usize,
    pub z: f64,
    pub floor: f64,
    pub frequency: f64,
    pub standard_error: f64,
    pub pass: bool,
}

/// One budget of a `bench` sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub fraction: f64,
    pub budget: u64,
    pub total_unsatisfied: f64,
    pub protected_unsatisfied: f64,
    pub bound: f64,
    /// protected_unsatisfied / budget; empty when the budget is 0.
    pub violation_factor: Option<f64>,
}

pub fn rows_to_csv<T: Serialize>(rows: &[T]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
}
