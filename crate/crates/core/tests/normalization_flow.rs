//! Normalization derivation on a trimmed budget: structural invariants
//! of the constants and the compound-start selection.

use tabutruss_core::engine::SearchConfig;
use tabutruss_core::fem::{standard_ten_bar_model, MassMatrix, TrussModel};
use tabutruss_core::objectives::{
    derive_normalization, evaluate, ConstraintSet, DisplacementMode, ObjectiveKind, ObjectiveSpec,
};

fn imperial() -> (TrussModel, ObjectiveSpec) {
    let mut model = standard_ten_bar_model(360.0, 1.0e7, 0.1, 1.0e5);
    model.dynamic_density = model.density / 386.088;
    let spec = ObjectiveSpec {
        kind: ObjectiveKind::Compound,
        constraints: ConstraintSet {
            sigma_max: 2.5e4,
            delta_max: 2.0,
            a_min: 0.1,
            a_max: 33.5,
        },
        normalization: None,
        displacement_mode: DisplacementMode::PerComponent,
        mass_matrix: MassMatrix::Consistent,
        compound_form: Default::default(),
    };
    (model, spec)
}

#[test]
fn derived_constants_satisfy_best_not_worse_than_worst() {
    let (model, spec) = imperial();
    let search = SearchConfig {
        min_step: 0.05,
        initial_step: Some(2.0),
        max_evaluations: 2_000,
        rng_seed: 3,
        ..SearchConfig::default()
    };
    let derivation = derive_normalization(&model, &spec, 1.0, &search).unwrap();
    let c = derivation.constants;
    // each objective's worst spans at least its own best
    assert!(c.mass.worst >= c.mass.best);
    assert!(c.neg_frequency.worst >= c.neg_frequency.best);
    assert!(c.displacement.worst >= c.displacement.best);
    assert_eq!(derivation.solutions.len(), 3);
    // every single-objective solution is feasible
    for solution in &derivation.solutions {
        let single = spec.with_kind(solution.kind);
        let outcome = evaluate(&single, &model, 1.0, &solution.design).unwrap();
        assert!(outcome.feasible, "{:?} solution infeasible", solution.kind);
    }
}

#[test]
fn compound_start_is_feasible_with_positive_score() {
    let (model, spec) = imperial();
    let search = SearchConfig {
        min_step: 0.05,
        initial_step: Some(2.0),
        max_evaluations: 2_000,
        rng_seed: 3,
        ..SearchConfig::default()
    };
    let derivation = derive_normalization(&model, &spec, 1.0, &search).unwrap();
    let mut compound = spec.clone();
    compound.normalization = Some(derivation.constants);
    let start = derivation
        .compound_start(&model, &compound, 1.0, search.min_step)
        .unwrap();
    let outcome = evaluate(&compound, &model, 1.0, &start).unwrap();
    assert!(outcome.feasible);
    assert!(
        outcome.value > 0.0,
        "compound start must not sit on the zero-score plateau, got {}",
        outcome.value
    );
}
