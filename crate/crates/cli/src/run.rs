use std::fs;
use std::path::Path;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::ValueEnum;
use ecc_core::combinatorial::{
    brute_force, brute_force_protected, fpt_colorfair, fpt_protected, matching_k_approx,
};
use ecc_core::lp::FwParams;
use ecc_core::relax::{
    minimize_lovasz, solve_maxecc_relaxation, solve_pmean_relaxation, solve_protected_relaxation,
    LovaszParams,
};
use ecc_core::rounding::{
    estimate_satisfaction, graph_maxecc_round, guarantee, half_threshold_round, hyper_maxecc_round,
    lovasz_round, protected_round, RandomSource, Scheme,
};
use ecc_core::{Coloring, EdgeColoredHypergraph, ObjectiveValue, Problem};

use crate::args::{AlgArg, BenchArgs, EstimateArgs, Format, ProblemArg, SchemeArg, SolveArgs};
use crate::report::{approx_ratio, rows_to_csv, BenchRow, EstimateRow, RunReport, Status};

/// Rendered command output and whether it answers "no".
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub text: String,
    pub infeasible: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Pipeline {
    /// p-mean relaxation (`p >= 1`) and half-threshold rounding.
    RelaxRound {
        p: f64,
    },
    ProtectedRound {
        budget: f64,
        rho: f64,
    },
    HyperMax {
        seed: u64,
    },
    GraphMax {
        seed: u64,
    },
    Matching,
    FptColorFair {
        tau: f64,
    },
    FptProtected {
        t: f64,
        budget: f64,
    },
    Brute,
    BruteProtected {
        budget: f64,
    },
    Lovasz {
        p: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct Plan {
    problem: Problem,
    pipeline: Pipeline,
}

fn name<T: ValueEnum>(v: &T) -> String {
    v.to_possible_value()
        .map(|p| p.get_name().to_string())
        .unwrap_or_default()
}

fn check_rho(rho: f64) -> Result<()> {
    if !(rho > 0.0 && rho <= 0.5) {
        bail!("--rho must lie in (0, 0.5], got {rho}");
    }
    Ok(())
}

/// Checks the flag combination and picks the pipeline, without touching the input.
fn plan(args: &SolveArgs) -> Result<Plan> {
    use AlgArg as A;
    use ProblemArg as P;
    let (problem, alg) = (args.problem, args.alg);
    let protected = problem == P::Protected;
    let allowed = [
        ("--p", args.p.is_some(), problem == P::Pmean),
        (
            "--protected-color",
            args.protected_color.is_some(),
            protected,
        ),
        ("--budget", args.budget.is_some(), protected),
        ("--rho", args.rho.is_some(), protected && alg == A::LpRound),
        (
            "--tau",
            args.tau.is_some(),
            problem == P::Colorfair && alg == A::Fpt,
        ),
        ("--t", args.t.is_some(), protected && alg == A::Fpt),
        (
            "--seed",
            args.seed.is_some(),
            matches!(alg, A::HyperMax | A::GraphMax),
        ),
    ];
    let rejected: Vec<&str> = allowed
        .iter()
        .filter(|(_, present, ok)| *present && !ok)
        .map(|(flag, _, _)| *flag)
        .collect();
    if !rejected.is_empty() {
        bail!(
            "{} not valid with --problem {} --alg {}",
            rejected.join(", "),
            name(&problem),
            name(&alg)
        );
    }

    let missing = |flag: &str| anyhow::anyhow!("--problem {} needs {flag}", name(&problem));
    let problem_value = match problem {
        P::Max => Problem::Max,
        P::Min => Problem::Min,
        P::Pmean => Problem::PMean(args.p.ok_or_else(|| missing("--p"))?),
        P::Colorfair => Problem::ColorFair,
        P::Protected => {
            let c = args
                .protected_color
                .ok_or_else(|| missing("--protected-color"))?;
            if c == 0 {
                bail!("--protected-color is 1-based");
            }
            Problem::Protected(c - 1)
        }
    };
    let budget = || -> Result<f64> { Ok(args.budget.ok_or_else(|| missing("--budget"))? as f64) };
    let seed = args.seed.unwrap_or(0);

    let pipeline = match (problem_value, alg) {
        (Problem::Max, A::HyperMax) => Pipeline::HyperMax { seed },
        (Problem::Max, A::GraphMax) => Pipeline::GraphMax { seed },
        (Problem::Min, A::LpRound) => Pipeline::RelaxRound { p: 1.0 },
        (Problem::ColorFair, A::LpRound) => Pipeline::RelaxRound { p: f64::INFINITY },
        (Problem::PMean(p), A::LpRound) if p >= 1.0 => Pipeline::RelaxRound { p },
        (Problem::PMean(p), A::LpRound) => {
            bail!("--alg lp-round needs p >= 1; use --alg lovasz for p = {p}")
        }
        (Problem::PMean(p), A::Lovasz) if p < 1.0 => Pipeline::Lovasz { p },
        (Problem::PMean(p), A::Lovasz) => {
            bail!("--alg lovasz needs p < 1; use --alg lp-round for p = {p}")
        }
        (Problem::Min | Problem::ColorFair, A::Matching) => Pipeline::Matching,
        (Problem::ColorFair, A::Fpt) => Pipeline::FptColorFair {
            tau: args
                .tau
                .ok_or_else(|| anyhow::anyhow!("--alg fpt needs --tau"))? as f64,
        },
        (Problem::Protected(_), A::Fpt) => Pipeline::FptProtected {
            t: args
                .t
                .ok_or_else(|| anyhow::anyhow!("--alg fpt needs --t"))? as f64,
            budget: budget()?,
        },
        (Problem::Protected(_), A::LpRound) => {
            let rho = args.rho.unwrap_or(0.5);
            check_rho(rho)?;
            Pipeline::ProtectedRound {
                budget: budget()?,
                rho,
            }
        }
        (Problem::Protected(_), A::Brute) => Pipeline::BruteProtected { budget: budget()? },
        (_, A::Brute) => Pipeline::Brute,
        _ => bail!(
            "--alg {} does not solve --problem {}",
            name(&alg),
            name(&problem)
        ),
    };
    Ok(Plan {
        problem: problem_value,
        pipeline,
    })
}

pub fn load_instance(path: &Path) -> Result<EdgeColoredHypergraph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    EdgeColoredHypergraph::parse(&text).with_context(|| format!("in {}", path.display()))
}

fn check_color(h: &EdgeColoredHypergraph, c: usize) -> Result<()> {
    if c >= h.color_count() {
        bail!(
            "--protected-color {} exceeds the instance's {} colors",
            c + 1,
            h.color_count()
        );
    }
    Ok(())
}

/// Runs the pipeline; `None` means the decision problem answered "no".
fn execute(h: &EdgeColoredHypergraph, plan: &Plan) -> Result<Option<(Coloring, Option<f64>)>> {
    let protected = match plan.problem {
        Problem::Protected(c) => c,
        _ => 0,
    };
    Ok(match plan.pipeline {
        Pipeline::RelaxRound { p } => {
            let frac = solve_pmean_relaxation(h, p, FwParams::default())?;
            Some((half_threshold_round(h, &frac)?, Some(frac.lower_bound())))
        }
        Pipeline::ProtectedRound { budget, rho } => {
            let frac = solve_protected_relaxation(h, protected, budget)?;
            Some((protected_round(h, &frac, protected, rho)?, Some(frac.bound)))
        }
        Pipeline::HyperMax { seed } => {
            let frac = solve_maxecc_relaxation(h)?;
            let lam = hyper_maxecc_round(h, &frac, &mut RandomSource::new(seed).stream(0))?;
            Some((lam, Some(frac.bound)))
        }
        Pipeline::GraphMax { seed } => {
            let frac = solve_maxecc_relaxation(h)?;
            let lam = graph_maxecc_round(h, &frac, &mut RandomSource::new(seed).stream(0))?;
            Some((lam, Some(frac.bound)))
        }
        Pipeline::Matching => Some((matching_k_approx(h)?.coloring, None)),
        Pipeline::FptColorFair { tau } => fpt_colorfair(h, tau)?.map(|lam| (lam, None)),
        Pipeline::FptProtected { t, budget } => {
            fpt_protected(h, t, budget, protected)?.map(|lam| (lam, None))
        }
        Pipeline::Brute => Some((brute_force(h, plan.problem)?.witness, None)),
        Pipeline::BruteProtected { budget } => {
            brute_force_protected(h, protected, budget)?.map(|r| (r.witness, None))
        }
        Pipeline::Lovasz { p } => {
            let res = minimize_lovasz(h, p, LovaszParams::default())?;
            Some((lovasz_round(h, &res.gamma)?, None))
        }
    })
}

pub fn solve(args: &SolveArgs) -> Result<Outcome> {
    let plan = plan(args)?;
    let h = load_instance(&args.input)?;
    if let Problem::Protected(c) = plan.problem {
        check_color(&h, c)?;
    }
    let start = Instant::now();
    let result = execute(&h, &plan)?;
    let elapsed = start.elapsed().as_secs_f64();

    let mut report = RunReport {
        problem: plan.problem.to_string(),
        algorithm: name(&args.alg),
        status: Status::Infeasible,
        objective: None,
        protected_objective: None,
        color_error_vector: None,
        relaxation_bound: None,
        approx_ratio_upper_bound: None,
        coloring: None,
        master_seed: match plan.pipeline {
            Pipeline::HyperMax { seed } | Pipeline::GraphMax { seed } => Some(seed),
            _ => None,
        },
        trials: None,
        wall_time: args.timing.then_some(elapsed),
    };
    let infeasible = result.is_none();
    if let Some((lam, bound)) = result {
        let (objective, protected) = match h.objective(&lam, plan.problem)? {
            ObjectiveValue::Scalar(v) => (v, None),
            ObjectiveValue::Pair { total, protected } => (total, Some(protected)),
        };
        report.status = Status::Ok;
        report.objective = Some(objective);
        report.protected_objective = protected;
        report.color_error_vector = Some(h.color_error_vector(&lam).0);
        report.relaxation_bound = bound;
        report.approx_ratio_upper_bound =
            bound.and_then(|b| approx_ratio(objective, b, plan.problem.is_maximization()));
        report.coloring = Some(lam.to_one_based());
    }
    let text = match args.format {
        Format::Json => report.to_json(),
        Format::Csv => report.to_csv(),
    };
    Ok(Outcome { text, infeasible })
}

pub fn estimate(args: &EstimateArgs) -> Result<Outcome> {
    let h = load_instance(&args.input)?;
    let scheme = match args.scheme {
        SchemeArg::Hyper => Scheme::Hyper,
        SchemeArg::Graph => Scheme::Graph,
    };
    if scheme == Scheme::Graph {
        if let Some(id) = h.edges().iter().position(|e| e.len() != 2) {
            bail!(
                "--scheme graph needs every edge to have 2 nodes; edge {id} has {}",
                h.edges()[id].len()
            );
        }
    }
    if args.trials == 0 {
        bail!("--trials must be at least 1");
    }
    let frac = solve_maxecc_relaxation(&h)?;
    let est = estimate_satisfaction(&h, &frac, scheme, args.trials, args.seed)?;
    let g = guarantee(scheme, h.rank());
    let rows: Vec<EstimateRow> = h
        .edges()
        .iter()
        .enumerate()
        .map(|(id, e)| {
            let z = frac.satisfaction(id);
            let (frequency, se) = (est.frequencies[id], est.standard_errors[id]);
            EstimateRow {
                edge: id,
                color: e.color + 1,
                z,
                floor: g * z,
                frequency,
                standard_error: se,
                pass: frequency >= g * z - 3.0 * se,
            }
        })
        .collect();
    let mut text = format!(
        "# scheme={} trials={} seed={} guarantee={g} lp_bound={} mean_satisfied={} mean_satisfied_se={}\n",
        name(&args.scheme),
        args.trials,
        args.seed,
        frac.bound,
        est.mean_objective,
        est.objective_standard_error
    );
    text.push_str(&rows_to_csv(&rows));
    Ok(Outcome {
        text,
        infeasible: false,
    })
}

pub fn bench(args: &BenchArgs) -> Result<Outcome> {
    if args.problem != ProblemArg::Protected {
        bail!("bench supports only --problem protected");
    }
    check_rho(args.rho)?;
    if let Some(f) = args.fractions.iter().find(|f| !(0.0..=1.0).contains(*f)) {
        bail!("--fractions entries must lie in [0, 1], got {f}");
    }
    if args.protected_color == 0 {
        bail!("--protected-color is 1-based");
    }
    let h = load_instance(&args.input)?;
    let c = args.protected_color - 1;
    check_color(&h, c)?;
    if h.edges_of_color(c).next().is_none() {
        bail!("protected color {} has no edges", args.protected_color);
    }
    let class_weight = h.color_weights()[c];
    let rows = args
        .fractions
        .iter()
        .map(|&fraction| {
            // the slack keeps e.g. 0.1 * 10 from rounding up to 2
            let budget = (fraction * class_weight - 1e-9).ceil().max(0.0) as u64;
            let frac = solve_protected_relaxation(&h, c, budget as f64)?;
            let lam = protected_round(&h, &frac, c, args.rho)?;
            let m = h.color_error_vector(&lam);
            Ok(BenchRow {
                fraction,
                budget,
                total_unsatisfied: m.total(),
                protected_unsatisfied: m.0[c],
                bound: frac.bound,
                violation_factor: (budget > 0).then(|| m.0[c] / budget as f64),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Outcome {
        text: rows_to_csv(&rows),
        infeasible: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::args::{Cli, Command};
    use clap::Parser;

    fn solve_args(line: &str) -> SolveArgs {
        let argv = std::iter::once("ecc").chain(line.split_whitespace());
        match Cli::try_parse_from(argv).unwrap().command {
            Command::Solve(a) => a,
            _ => unreachable!(),
        }
    }

    #[test]
    fn plans_valid_combinations() {
        let p = plan(&solve_args("solve --problem min --alg lp-round --input x")).unwrap();
        assert_eq!(p.pipeline, Pipeline::RelaxRound { p: 1.0 });
        let p = plan(&solve_args(
            "solve --problem pmean --p inf --alg lp-round --input x",
        ))
        .unwrap();
        assert_eq!(p.problem, Problem::PMean(f64::INFINITY));
        let p = plan(&solve_args(
            "solve --problem protected --protected-color 2 --budget 1 --alg lp-round --input x",
        ))
        .unwrap();
        assert_eq!(p.problem, Problem::Protected(1));
        assert_eq!(
            p.pipeline,
            Pipeline::ProtectedRound {
                budget: 1.0,
                rho: 0.5
            }
        );
    }

    #[test]
    fn rejects_stray_flags() {
        for line in [
            "solve --problem min --alg lp-round --rho 0.5 --input x",
            "solve --problem min --alg lp-round --seed 3 --input x",
            "solve --problem colorfair --alg matching --tau 1 --input x",
            "solve --problem max --alg lp-round --input x",
            "solve --problem pmean --p 0.5 --alg lp-round --input x",
            "solve --problem pmean --p 2 --alg lovasz --input x",
            "solve --problem pmean --alg brute --input x",
            "solve --problem colorfair --alg fpt --input x",
            "solve --problem protected --protected-color 1 --alg brute --input x",
            "solve --problem protected --protected-color 0 --budget 1 --alg brute --input x",
            "solve --problem protected --protected-color 1 --budget 1 --rho 0.7 --alg lp-round --input x",
        ] {
            assert!(plan(&solve_args(line)).is_err(), "{line}");
        }
    }
}
