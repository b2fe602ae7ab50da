//! The shipped benchmark configs parse and carry the documented
//! problem quantities.

use std::path::PathBuf;

use tabutruss_cli::config::{load_config, UnitSystem};
use tabutruss_core::objectives::ObjectiveKind;

fn config_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../configs").join(name)
}

#[test]
fn bland_config_carries_the_metric_case() {
    let config = load_config(&config_path("bland.json")).unwrap();
    assert_eq!(config.problem.units, UnitSystem::Metric);
    assert_eq!(config.problem.length, Some(3.0));
    assert_eq!(config.problem.youngs_modulus, 2.07e8);
    assert_eq!(config.problem.density, 7850.0);
    assert_eq!(config.problem.load, Some(500.0));
    assert_eq!(config.problem.area_unit_scale, 0.01);
    assert_eq!(config.objective.kind, ObjectiveKind::Mass);
    assert_eq!(config.objective.sigma_max, 1.6e5);
    assert_eq!(config.objective.delta_max, 0.015);
    assert_eq!(config.objective.a_min, 0.168);
    let built = config.build().unwrap();
    assert_eq!(built.start.values(), &[0.761; 10]);
    assert_eq!(built.search.max_evaluations, 20_000);
}

#[test]
fn bd_configs_carry_the_imperial_case() {
    for name in ["bd.json", "bd_compound.json"] {
        let config = load_config(&config_path(name)).unwrap();
        assert_eq!(config.problem.units, UnitSystem::Imperial, "{name}");
        assert_eq!(config.problem.length, Some(360.0));
        assert_eq!(config.problem.youngs_modulus, 1.0e7);
        assert_eq!(config.problem.density, 0.1);
        assert_eq!(config.problem.load, Some(100.0));
        assert_eq!(config.objective.sigma_max, 2.5e4);
        assert_eq!(config.objective.delta_max, 2.0);
        assert_eq!(config.objective.a_min, 0.1);
        assert_eq!(config.objective.a_max, 33.5);
    }
    let compound = load_config(&config_path("bd_compound.json")).unwrap();
    assert_eq!(compound.objective.kind, ObjectiveKind::Compound);
    assert_eq!(compound.build().unwrap().search.max_evaluations, 50_000);
}
