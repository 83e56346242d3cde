mod common;

use ecc_core::combinatorial::{brute_force, brute_force_protected};
use ecc_core::lp::FwParams;
use ecc_core::relax::{
    lovasz_extension, minimize_lovasz, set_function, solve_maxecc_relaxation,
    solve_pmean_relaxation, solve_protected_relaxation, LovaszParams,
};
use ecc_core::rounding::{
    graph_maxecc_round, half_threshold_round, hyper_maxecc_round, lovasz_round, protected_round,
    RandomSource,
};
use ecc_core::{
    Coloring, EdgeColoredHypergraph, EdgeSet, FractionalSolution, Orientation, Problem,
};
use rand::Rng;

fn assert_total(h: &EdgeColoredHypergraph, lam: &Coloring) {
    assert_eq!(lam.len(), h.node_count());
    h.validate_coloring(lam).unwrap();
}

#[test]
fn randomized_roundings_always_return_colorings() {
    let mut rng = common::rng(1);
    let source = RandomSource::new(99);
    for i in 0..200 {
        let graph = i % 2 == 0;
        let ranks = if graph { (2, 2) } else { (1, 3) };
        let h = common::small_instance(&mut rng, 7, 4, 8, ranks, i % 3 == 0);
        let frac = solve_maxecc_relaxation(&h).unwrap();
        for t in 0..50 {
            let mut stream = source.stream(i * 1000 + t);
            assert_total(&h, &hyper_maxecc_round(&h, &frac, &mut stream).unwrap());
            if graph {
                assert_total(&h, &graph_maxecc_round(&h, &frac, &mut stream).unwrap());
            }
        }
    }
}

#[test]
fn integral_solutions_round_to_themselves() {
    let mut rng = common::rng(2);
    for _ in 0..50 {
        let h = common::small_instance(&mut rng, 6, 3, 6, (2, 2), false);
        let lam = Coloring::new(
            (0..h.node_count())
                .map(|_| rng.gen_range(0..h.color_count()))
                .collect(),
        );
        let node_color = (0..h.node_count())
            .map(|v| {
                (0..h.color_count())
                    .map(|c| (lam.color(v) == c) as u8 as f64)
                    .collect()
            })
            .collect();
        let edge_value = (0..h.edge_count())
            .map(|e| h.is_satisfied(&lam, e).unwrap() as u8 as f64)
            .collect();
        let frac = FractionalSolution {
            orientation: Orientation::Assignment,
            node_color,
            edge_value,
            bound: 0.0,
            gap: 0.0,
        };
        for t in 0..20 {
            let mut stream = RandomSource::new(t).stream(0);
            assert_eq!(hyper_maxecc_round(&h, &frac, &mut stream).unwrap(), lam);
            assert_eq!(graph_maxecc_round(&h, &frac, &mut stream).unwrap(), lam);
        }
    }
}

#[test]
fn half_threshold_is_within_factor_two() {
    let mut rng = common::rng(3);
    for _ in 0..30 {
        let h = common::small_instance(&mut rng, 6, 3, 7, (1, 3), true);
        for (p, problem) in [
            (1.0, Problem::Min),
            (2.0, Problem::PMean(2.0)),
            (f64::INFINITY, Problem::ColorFair),
        ] {
            let frac = solve_pmean_relaxation(&h, p, FwParams::default()).unwrap();
            let lam = half_threshold_round(&h, &frac).unwrap();
            let value = h.objective(&lam, problem).unwrap().primary();
            let opt = brute_force(&h, problem).unwrap().value;
            assert!(
                value <= 2.0 * frac.bound + 1e-6,
                "p = {p}: {value} vs bound {}",
                frac.bound
            );
            assert!(value <= 2.0 * opt + 1e-6);
        }
    }
}

#[test]
fn bicriteria_rounding() {
    let mut rng = common::rng(4);
    for _ in 0..40 {
        let h = common::small_instance(&mut rng, 6, 3, 7, (1, 3), false);
        let c1 = rng.gen_range(0..h.color_count());
        let size = h.edges_of_color(c1).count();
        for b in [0, 1, size.div_ceil(2)] {
            let b = b as f64;
            let frac = solve_protected_relaxation(&h, c1, b).unwrap();
            let opt = brute_force_protected(&h, c1, b).unwrap().unwrap().value;
            assert!(frac.bound <= opt + 1e-9);
            for rho in [0.25, 0.5] {
                let lam = protected_round(&h, &frac, c1, rho).unwrap();
                let m = h.color_error_vector(&lam);
                assert!(m.total() <= frac.bound / rho + 1e-9);
                assert!(m.0[c1] <= b / (1.0 - rho) + 1e-9);
            }
        }
    }
}

/// `E_rho f({e : gamma_e >= rho})` by integrating the piecewise-constant
/// integrand over the breakpoints of `gamma`.
fn level_set_integral(h: &EdgeColoredHypergraph, p: f64, gamma: &[f64]) -> f64 {
    let mut cuts: Vec<f64> = gamma.iter().copied().chain([0.0, 1.0]).collect();
    cuts.sort_by(f64::total_cmp);
    cuts.windows(2)
        .map(|w| {
            let mid = 0.5 * (w[0] + w[1]);
            let set = EdgeSet::from_ids(gamma.len(), (0..gamma.len()).filter(|&e| gamma[e] >= mid))
                .unwrap();
            (w[1] - w[0]) * set_function(h, p, &set)
        })
        .sum()
}

#[test]
fn lovasz_extension_is_expected_level_set_value() {
    let mut rng = common::rng(5);
    for _ in 0..100 {
        let h = common::small_instance(&mut rng, 6, 3, 7, (1, 3), true);
        let gamma: Vec<f64> = (0..h.edge_count()).map(|_| rng.gen::<f64>()).collect();
        let p = rng.gen_range(0.1..0.9);
        let (value, grad) = lovasz_extension(&h, p, &gamma).unwrap();
        assert!((value - level_set_integral(&h, p, &gamma)).abs() < 1e-9);
        // the greedy vector is a subgradient, and exact on the positive orthant
        let linear: f64 = grad.iter().zip(&gamma).map(|(g, x)| g * x).sum();
        assert!((linear - value).abs() < 1e-9);

        let samples = 20_000;
        let mc: f64 = (0..samples)
            .map(|_| {
                let rho: f64 = rng.gen();
                let set =
                    EdgeSet::from_ids(gamma.len(), (0..gamma.len()).filter(|&e| gamma[e] >= rho))
                        .unwrap();
                set_function(&h, p, &set)
            })
            .sum::<f64>()
            / samples as f64;
        let scale = set_function(&h, p, &EdgeSet::full(h.edge_count())).max(1.0);
        assert!((mc - value).abs() <= 0.05 * scale, "{mc} vs {value}");
    }
}

#[test]
fn lovasz_rounding_within_factor() {
    let mut rng = common::rng(6);
    let p = 0.5;
    let params = LovaszParams {
        iterations: 2_000,
        ..LovaszParams::default()
    };
    for _ in 0..10 {
        let h = common::small_instance(&mut rng, 6, 3, 6, (1, 3), false);
        let res = minimize_lovasz(&h, p, params).unwrap();
        let lam = lovasz_round(&h, &res.gamma).unwrap();
        let value = h.objective(&lam, Problem::PMean(p)).unwrap().primary();
        let opt = brute_force(&h, Problem::PMean(p)).unwrap().value;
        assert!(value <= 2f64.powf(1.0 / p) * opt + 1e-9, "{value} vs {opt}");
    }
}
