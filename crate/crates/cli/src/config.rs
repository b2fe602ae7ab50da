//! Run configuration: the JSON schema, strict parsing and the build
//! step that turns a file into a ready-to-run problem.
//!
//! Unknown keys are rejected, not warned about. The full schema is
//! documented in `docs/config-schema.md`.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use tabutruss_core::design::DesignVector;
use tabutruss_core::engine::SearchConfig;
use tabutruss_core::fem::{standard_ten_bar_model, MassMatrix, TrussModel};
use tabutruss_core::objectives::{
    CompoundForm, ConstraintSet, DisplacementMode, NormalizationConstants, ObjectiveKind,
    ObjectiveSpec, TrussProblem,
};

/// Standard gravity in inch–pound units, used to turn the imperial
/// weight density into the dynamic mass density.
pub const GRAVITY_IN_PER_S2: f64 = 386.088;

#[derive(Debug, Error)]
pub enum ConfigFileError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}:{line}:{column}: {message}")]
    Parse {
        path: String,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{path}: {message}")]
    Schema { path: String, message: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum UnitSystem {
    /// Tables in kN, m, kPa, kg; converted to N, m, Pa internally.
    Metric,
    /// Tables in kip, in, psi, lb (weight); the dynamic density is the
    /// weight density over g.
    Imperial,
}

/// Problem block: either the ten-bar shorthand with the published table
/// quantities, or an explicit truss in consistent physical units.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemBlock {
    pub kind: ProblemKind,
    pub units: UnitSystem,
    /// Bay length (standard_ten_bar only): m or in.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub length: Option<f64>,
    /// Young's modulus: metric kN/m², imperial psi; custom models give
    /// base units (Pa or psi) directly.
    pub youngs_modulus: f64,
    /// Density: kg/m³ or lb/in³ (weight density).
    pub density: f64,
    /// Applied load (standard_ten_bar only): kN or kip, acting straight
    /// down at the two free lower-chord nodes.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub load: Option<f64>,
    /// Multiplier from display area units to physical area units.
    #[serde(default = "default_area_unit_scale")]
    pub area_unit_scale: f64,
    /// Custom geometry (kind = "custom"): node coordinates.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nodes: Option<Vec<(f64, f64)>>,
    /// Custom geometry: member endpoint pairs, zero-based node indices.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub members: Option<Vec<(usize, usize)>>,
    /// Custom geometry: fully fixed node indices.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub supports: Option<Vec<usize>>,
    /// Custom geometry: (node, Fx, Fy) in base force units.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub loads: Option<Vec<(usize, f64, f64)>>,
    /// Free-text commentary carried along with the config.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub notes: Option<String>,
}

fn default_area_unit_scale() -> f64 {
    1.0
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProblemKind {
    StandardTenBar,
    Custom,
}

/// Objective block: limits in the file's unit system.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObjectiveBlock {
    pub kind: ObjectiveKind,
    /// Stress limit: metric kPa, imperial psi.
    pub sigma_max: f64,
    /// Displacement limit: m or in.
    pub delta_max: f64,
    /// Area bounds in display units.
    pub a_min: f64,
    pub a_max: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub displacement_mode: Option<DisplacementMode>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mass_matrix: Option<MassMatrix>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub compound_form: Option<CompoundForm>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub normalization: Option<NormalizationConstants>,
}

/// Start point selection.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StartBlock {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub uniform: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub areas: Option<Vec<f64>>,
}

/// Search block: every field optional, defaults echoed into the report.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SearchBlock {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tabu_size: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elite_size: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pattern_factor: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub intensify_after: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub diversify_after: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reduce_after: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub initial_step: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub min_step: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_evaluations: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rng_seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub start: Option<StartBlock>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputBlock {
    #[serde(default = "default_output_directory")]
    pub directory: String,
    #[serde(default = "default_trace_filename")]
    pub trace_filename: String,
}

fn default_output_directory() -> String {
    "out".to_string()
}

fn default_trace_filename() -> String {
    "trace.csv".to_string()
}

impl Default for OutputBlock {
    fn default() -> Self {
        Self {
            directory: default_output_directory(),
            trace_filename: default_trace_filename(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub problem: ProblemBlock,
    pub objective: ObjectiveBlock,
    #[serde(default)]
    pub search: SearchBlock,
    #[serde(default)]
    pub output: OutputBlock,
}

/// Parse a config file, rejecting unknown keys and malformed values
/// with the offending location.
pub fn load_config(path: &Path) -> Result<RunConfig, ConfigFileError> {
    let display = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|source| ConfigFileError::Io {
        path: display.clone(),
        source,
    })?;
    let config: RunConfig =
        serde_json::from_str(&text).map_err(|e| ConfigFileError::Parse {
            path: display.clone(),
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
    validate(&config).map_err(|message| ConfigFileError::Schema {
        path: display,
        message,
    })?;
    Ok(config)
}

fn validate(config: &RunConfig) -> Result<(), String> {
    let p = &config.problem;
    for (name, value) in [
        ("problem.youngs_modulus", p.youngs_modulus),
        ("problem.density", p.density),
        ("problem.area_unit_scale", p.area_unit_scale),
        ("objective.sigma_max", config.objective.sigma_max),
        ("objective.delta_max", config.objective.delta_max),
        ("objective.a_min", config.objective.a_min),
        ("objective.a_max", config.objective.a_max),
    ] {
        if value.is_nan() || value <= 0.0 {
            return Err(format!("{name} must be positive, got {value}"));
        }
    }
    if config.objective.a_min >= config.objective.a_max {
        return Err(format!(
            "objective.a_min {} must be below objective.a_max {}",
            config.objective.a_min, config.objective.a_max
        ));
    }
    match p.kind {
        ProblemKind::StandardTenBar => {
            if p.length.is_none() || p.load.is_none() {
                return Err("standard_ten_bar needs problem.length and problem.load".to_string());
            }
            if p.nodes.is_some() || p.members.is_some() || p.supports.is_some() || p.loads.is_some()
            {
                return Err(
                    "standard_ten_bar does not take explicit geometry fields".to_string()
                );
            }
        }
        ProblemKind::Custom => {
            if p.nodes.is_none() || p.members.is_none() || p.supports.is_none() || p.loads.is_none()
            {
                return Err(
                    "custom problems need problem.nodes, members, supports and loads".to_string(),
                );
            }
        }
    }
    if let Some(start) = &config.search.start {
        match (&start.uniform, &start.areas) {
            (Some(_), Some(_)) => {
                return Err("search.start takes either uniform or areas, not both".to_string())
            }
            (None, None) => {
                return Err("search.start needs one of uniform or areas".to_string())
            }
            _ => {}
        }
    }
    Ok(())
}

/// Everything a run needs, built from a config in internal units.
pub struct BuiltProblem {
    pub model: TrussModel,
    pub spec: ObjectiveSpec,
    pub area_scale: f64,
    pub search: SearchConfig,
    pub start: DesignVector,
    pub output: OutputBlock,
}

impl RunConfig {
    /// Resolve units, defaults and the start point.
    pub fn build(&self) -> Result<BuiltProblem, String> {
        let model = self.build_model()?;
        let spec = self.build_spec();
        let search = self.build_search();
        let start = self.resolve_start(&model);
        Ok(BuiltProblem {
            model,
            spec,
            area_scale: self.problem.area_unit_scale,
            search,
            start,
            output: self.output.clone(),
        })
    }

    /// Scale factor from the file's force-like quantities to base
    /// units: kN→N and kPa→Pa for metric tables, kip→lb for imperial
    /// loads (moduli and stress limits are already psi).
    fn force_scale(&self) -> f64 {
        1e3
    }

    pub fn build_model(&self) -> Result<TrussModel, String> {
        let p = &self.problem;
        let mut model = match p.kind {
            ProblemKind::StandardTenBar => {
                let length = p.length.expect("validated");
                let load = p.load.expect("validated");
                let (e, f) = match p.units {
                    UnitSystem::Metric => (
                        p.youngs_modulus * self.force_scale(),
                        load * self.force_scale(),
                    ),
                    UnitSystem::Imperial => (p.youngs_modulus, load * self.force_scale()),
                };
                standard_ten_bar_model(length, e, p.density, f)
            }
            ProblemKind::Custom => {
                let mut loads = BTreeMap::new();
                for &(node, fx, fy) in p.loads.as_ref().expect("validated") {
                    loads.insert(node, (fx, fy));
                }
                TrussModel {
                    nodes: p.nodes.clone().expect("validated"),
                    members: p.members.clone().expect("validated"),
                    supports: p.supports.clone().expect("validated"),
                    loads,
                    youngs_modulus: p.youngs_modulus,
                    density: p.density,
                    dynamic_density: p.density,
                }
            }
        };
        if p.units == UnitSystem::Imperial {
            model.dynamic_density = model.density / GRAVITY_IN_PER_S2;
        }
        model.validate().map_err(|e| e.to_string())?;
        Ok(model)
    }

    pub fn build_spec(&self) -> ObjectiveSpec {
        let o = &self.objective;
        let sigma_scale = match (self.problem.kind, self.problem.units) {
            // metric tables carry the limit in kPa
            (ProblemKind::StandardTenBar, UnitSystem::Metric) => self.force_scale(),
            _ => 1.0,
        };
        ObjectiveSpec {
            kind: o.kind,
            constraints: ConstraintSet {
                sigma_max: o.sigma_max * sigma_scale,
                delta_max: o.delta_max,
                a_min: o.a_min,
                a_max: o.a_max,
            },
            normalization: o.normalization,
            displacement_mode: o.displacement_mode.unwrap_or_default(),
            mass_matrix: o.mass_matrix.unwrap_or_default(),
            compound_form: o.compound_form.unwrap_or_default(),
        }
    }

    pub fn build_search(&self) -> SearchConfig {
        let s = &self.search;
        let defaults = SearchConfig::default();
        SearchConfig {
            tabu_size: s.tabu_size.unwrap_or(defaults.tabu_size),
            elite_size: s.elite_size.unwrap_or(defaults.elite_size),
            pattern_factor: s.pattern_factor.unwrap_or(defaults.pattern_factor),
            intensify_after: s.intensify_after.unwrap_or(defaults.intensify_after),
            diversify_after: s.diversify_after.unwrap_or(defaults.diversify_after),
            reduce_after: s.reduce_after.unwrap_or(defaults.reduce_after),
            initial_step: s.initial_step,
            min_step: s.min_step.unwrap_or(defaults.min_step),
            max_evaluations: s.max_evaluations.unwrap_or(defaults.max_evaluations),
            rng_seed: s.rng_seed.unwrap_or(defaults.rng_seed),
        }
    }

    /// Explicit start when given, otherwise the stiffest design (all
    /// areas at the upper bound), which is feasible whenever anything
    /// is.
    pub fn resolve_start(&self, model: &TrussModel) -> DesignVector {
        let d = model.member_count();
        match &self.search.start {
            Some(StartBlock {
                uniform: Some(value),
                ..
            }) => DesignVector::uniform(*value, d),
            Some(StartBlock {
                areas: Some(areas), ..
            }) => DesignVector::new(areas.clone()),
            _ => DesignVector::uniform(self.objective.a_max, d),
        }
    }

    pub fn to_problem(&self) -> Result<(BuiltProblem, TrussProblem), String> {
        let built = self.build()?;
        let problem = TrussProblem::new(built.model.clone(), built.spec.clone(), built.area_scale)
            .map_err(|e| e.to_string())?;
        Ok((built, problem))
    }
}
