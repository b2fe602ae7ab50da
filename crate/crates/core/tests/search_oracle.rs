//! Search-versus-enumeration checks: on lattices small enough to scan
//! completely, the engine should recover the exhaustive optimum on
//! nearly every seed.

use tabutruss_core::design::DesignVector;
use tabutruss_core::engine::{run_search, SearchConfig};
use tabutruss_core::problem::FnProblem;
use tabutruss_core::synthetic::standard_problems;

fn value_matches(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-9 * a.abs().max(b.abs()).max(1.0)
}

#[test]
fn one_dimensional_quadratic_is_exact() {
    let problem = FnProblem::new(vec![0.0], vec![2.0], |x| ((x[0] - 1.25).powi(2), true));
    let config = SearchConfig {
        min_step: 0.05,
        initial_step: Some(0.25),
        max_evaluations: 2_000,
        rng_seed: 17,
        ..SearchConfig::default()
    };
    // 1.25 lies on the 0.05 lattice: the optimum must be found exactly
    let result = run_search(&problem, &config, &DesignVector::new(vec![0.1])).unwrap();
    assert!((result.best.values()[0] - 1.25).abs() < 1e-12);
}

#[test]
fn two_local_minima_bowl_matches_enumeration() {
    // started in the shallower well, the search has to climb the ridge
    // to match the enumeration optimum in the deeper one
    let problems = standard_problems(3);
    let problem = &problems[0];
    let (truth, _) = problem.enumerate_optimum();
    let result = run_search(problem, &problem.config, &problem.start).unwrap();
    assert!(
        value_matches(result.best_value, truth),
        "search {} vs enumeration {}",
        result.best_value,
        truth
    );
}

#[test]
fn seeded_runs_match_enumeration_on_at_least_95_of_100() {
    for index in 0..standard_problems(0).len() {
        let (truth, _) = standard_problems(0)[index].enumerate_optimum();
        let mut matches = 0;
        for seed in 0..100 {
            let problems = standard_problems(seed);
            let problem = &problems[index];
            let result = run_search(problem, &problem.config, &problem.start).unwrap();
            if value_matches(result.best_value, truth) {
                matches += 1;
            }
        }
        let name = standard_problems(0)[index].name;
        assert!(
            matches >= 95,
            "{name}: only {matches}/100 seeded runs reached the enumeration optimum {truth}"
        );
    }
}
