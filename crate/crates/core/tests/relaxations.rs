mod common;

use ecc_core::combinatorial::brute_force;
use ecc_core::conflict::ConflictGraph;
use ecc_core::lp::{solve_lp, FwParams, LinearProgram, LpStatus, Relation, Sense};
use ecc_core::relax::{
    solve_maxecc_relaxation, solve_min_relaxation, solve_pmean_relaxation,
    solve_protected_relaxation,
};
use ecc_core::{FractionalSolution, Problem};
use rand::Rng;

/// Solves the square system `a x = b` by Gaussian elimination with partial
/// pivoting; `None` if singular.
fn solve_square(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[piv][col].abs() < 1e-10 {
            return None;
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for r in 0..n {
            if r != col {
                let f = a[r][col] / a[col][col];
                for c in col..n {
                    a[r][c] -= f * a[col][c];
                }
                b[r] -= f * b[col];
            }
        }
    }
    Some((0..n).map(|i| b[i] / a[i][i]).collect())
}

/// Optimum over all basic solutions: every choice of `n` tight constraints
/// among rows and bounds. Bounds are finite, so some vertex is optimal when
/// the program is feasible.
fn vertex_enumeration(lp: &LinearProgram) -> Option<f64> {
    let n = lp.variable_count();
    let mut planes: Vec<(Vec<f64>, f64)> =
        lp.rows.iter().map(|r| (r.coeffs.clone(), r.rhs)).collect();
    for j in 0..n {
        let mut unit = vec![0.0; n];
        unit[j] = 1.0;
        planes.push((unit.clone(), lp.bounds[j].0));
        planes.push((unit, lp.bounds[j].1));
    }
    let mut best: Option<f64> = None;
    let total = planes.len();
    let mut pick: Vec<usize> = (0..n).collect();
    loop {
        let a = pick.iter().map(|&i| planes[i].0.clone()).collect();
        let b = pick.iter().map(|&i| planes[i].1).collect();
        if let Some(x) = solve_square(a, b) {
            if lp.max_violation(&x) <= 1e-9 {
                let v = lp.evaluate(&x);
                best = Some(match (best, lp.sense) {
                    (None, _) => v,
                    (Some(b), Sense::Minimize) => b.min(v),
                    (Some(b), Sense::Maximize) => b.max(v),
                });
            }
        }
        // next n-subset in lexicographic order
        let mut i = n;
        loop {
            if i == 0 {
                return best;
            }
            i -= 1;
            if pick[i] < total - n + i {
                pick[i] += 1;
                for j in i + 1..n {
                    pick[j] = pick[j - 1] + 1;
                }
                break;
            }
        }
    }
}

fn random_lp(rng: &mut impl Rng) -> LinearProgram {
    let n = rng.gen_range(1..=6);
    let sense = if rng.gen_bool(0.5) {
        Sense::Minimize
    } else {
        Sense::Maximize
    };
    let mut lp = LinearProgram::new(n, sense);
    lp.objective = (0..n).map(|_| rng.gen_range(-3..=3) as f64).collect();
    for j in 0..n {
        let lo = rng.gen_range(-2..=1) as f64;
        lp.set_bounds(j, lo, lo + rng.gen_range(0..=3) as f64);
    }
    for _ in 0..rng.gen_range(0..=8) {
        let coeffs = (0..n).map(|_| rng.gen_range(-2..=2) as f64).collect();
        let relation = [Relation::Le, Relation::Ge, Relation::Eq][rng.gen_range(0..3)];
        lp.add_row(coeffs, relation, rng.gen_range(-3..=3) as f64);
    }
    lp
}

#[test]
fn simplex_matches_vertex_enumeration() {
    let mut rng = common::rng(41);
    let (mut optimal, mut infeasible) = (0, 0);
    for case in 0..400 {
        let lp = random_lp(&mut rng);
        let sol = solve_lp(&lp).unwrap();
        match (sol.status, vertex_enumeration(&lp)) {
            (LpStatus::Optimal, Some(v)) => {
                optimal += 1;
                assert!(lp.max_violation(&sol.values) <= 1e-9, "case {case}");
                assert!(
                    (sol.objective_value - v).abs() <= 1e-7,
                    "case {case}: {} vs {v}",
                    sol.objective_value
                );
                assert!((lp.evaluate(&sol.values) - sol.objective_value).abs() <= 1e-9);
            }
            (LpStatus::Infeasible, None) => infeasible += 1,
            (status, oracle) => {
                panic!("case {case}: simplex {status:?}, enumeration {oracle:?}\n{lp:?}")
            }
        }
    }
    assert!(optimal > 100 && infeasible > 10, "{optimal} / {infeasible}");
}

fn assert_structure(h: &ecc_core::EdgeColoredHypergraph, frac: &FractionalSolution) {
    frac.validate(h).unwrap();
    for v in 0..h.node_count() {
        let sum: f64 = (0..h.color_count()).map(|c| frac.assignment(v, c)).sum();
        assert!((sum - 1.0).abs() <= 1e-9 || frac.orientation == ecc_core::Orientation::Distance);
        let close = (0..h.color_count())
            .filter(|&c| frac.distance(v, c) < 0.5 - 1e-9)
            .count();
        assert!(close <= 1);
    }
}

#[test]
fn relaxations_bound_the_integral_optima() {
    let mut rng = common::rng(5);
    for _ in 0..40 {
        let h = common::small_instance(&mut rng, 6, 3, 6, (1, 3), true);
        let max = solve_maxecc_relaxation(&h).unwrap();
        assert_structure(&h, &max);
        assert!(max.bound >= brute_force(&h, Problem::Max).unwrap().value - 1e-9);

        for (p, problem) in [
            (1.0, Problem::Min),
            (2.0, Problem::PMean(2.0)),
            (f64::INFINITY, Problem::ColorFair),
        ] {
            let frac = solve_pmean_relaxation(&h, p, FwParams::default()).unwrap();
            assert_structure(&h, &frac);
            let opt = brute_force(&h, problem).unwrap().value;
            assert!(
                frac.lower_bound() <= opt + 1e-9,
                "p = {p}: {} > {opt}",
                frac.lower_bound()
            );
        }
    }
}

#[test]
fn pmean_relaxation_is_monotone_in_p() {
    let mut rng = common::rng(6);
    for _ in 0..20 {
        let h = common::small_instance(&mut rng, 6, 3, 6, (2, 2), false);
        let values: Vec<f64> = [1.0, 1.5, 2.0, 4.0, f64::INFINITY]
            .iter()
            .map(|&p| {
                solve_pmean_relaxation(&h, p, FwParams::default())
                    .unwrap()
                    .bound
            })
            .collect();
        for w in values.windows(2) {
            assert!(w[1] <= w[0] + 1e-5, "{values:?}");
        }
    }
}

#[test]
fn protected_optima_cover_conflicts() {
    let mut rng = common::rng(7);
    for _ in 0..40 {
        let h = common::small_instance(&mut rng, 6, 3, 7, (1, 3), false);
        let pairs = ConflictGraph::build(&h).pairs().to_vec();
        let c1 = rng.gen_range(0..h.color_count());
        let size = h.edges_of_color(c1).count();
        for b in [0, size.div_ceil(2), size] {
            let frac = solve_protected_relaxation(&h, c1, b as f64).unwrap();
            assert_structure(&h, &frac);
            for &(e, f) in &pairs {
                assert!(frac.edge_value[e] + frac.edge_value[f] >= 1.0 - 1e-9);
            }
            let used: f64 = h.edges_of_color(c1).map(|e| frac.edge_value[e]).sum();
            assert!(used <= b as f64 + 1e-9);
            let min = solve_min_relaxation(&h).unwrap().bound;
            assert!(frac.bound >= min - 1e-9);
        }
    }
}
