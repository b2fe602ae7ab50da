//! Objective and constraint layer.
//!
//! Three raw objectives are supported — total mass, the negated
//! fundamental frequency (so that maximizing frequency becomes a
//! minimization) and the summed nodal displacement — plus their
//! game-theoretic compound: the product over objectives of the
//! normalized distance from each objective's worst value. The compound
//! score lies in [0, 1] and is maximized; the engine adapter negates it
//! to fit the minimization convention.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::design::DesignVector;
use crate::engine::{run_search, SearchConfig, SearchError, SearchResult};
use crate::fem::{analyze, AnalysisResult, FemError, MassMatrix, TrussModel};
use crate::grid::{Grid, GridError};
use crate::problem::{Evaluation, Problem, ProblemError};

/// Relative slack when comparing responses against their limits, so a
/// design sitting exactly on a constraint boundary does not flap on the
/// last floating-point bit.
const FEASIBILITY_SLACK: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum ObjectiveError {
    #[error("area A{} = {value} outside [{lower}, {upper}]", variable + 1)]
    AreaOutOfBounds {
        variable: usize,
        value: f64,
        lower: f64,
        upper: f64,
    },
    #[error("compound objective requires normalization constants")]
    MissingNormalization,
    #[error("normalization for {objective} is degenerate: best equals worst ({value})")]
    DegenerateNormalization { objective: &'static str, value: f64 },
    #[error("analysis failed at {design}: {source}")]
    Fem {
        design: DesignVector,
        source: FemError,
    },
    #[error(transparent)]
    Grid(#[from] GridError),
    #[error("single-objective {objective} search failed: {source}")]
    NormalizationRun {
        objective: &'static str,
        source: SearchError,
    },
    #[error("no feasible uniform start exists on the area lattice")]
    NoFeasibleStart,
}

/// Stress, displacement and side constraints of one benchmark case.
/// Stress and displacement limits are in the model's physical units;
/// the area bounds are in display units (the units the design vector
/// carries).
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct ConstraintSet {
    pub sigma_max: f64,
    pub delta_max: f64,
    pub a_min: f64,
    pub a_max: f64,
}

impl ConstraintSet {
    pub fn validate(&self) -> Result<(), ObjectiveError> {
        if self.a_min.is_nan() || self.a_max.is_nan() || self.a_min >= self.a_max {
            return Err(ObjectiveError::AreaOutOfBounds {
                variable: 0,
                value: self.a_min,
                lower: self.a_min,
                upper: self.a_max,
            });
        }
        Ok(())
    }
}

/// How the nodal displacement limit is enforced.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DisplacementMode {
    /// |δx| and |δy| each limited at every free node.
    #[default]
    PerComponent,
    /// The resultant norm limited at every free node.
    Resultant,
}

/// Which compound formula is used.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CompoundForm {
    /// Product of per-objective margins normalized into [0, 1].
    #[default]
    Normalized,
    /// Raw product of un-normalized worst-value margins.
    Raw,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ObjectiveKind {
    Mass,
    NegFrequency,
    Displacement,
    Compound,
}

impl ObjectiveKind {
    pub fn label(self) -> &'static str {
        match self {
            ObjectiveKind::Mass => "mass",
            ObjectiveKind::NegFrequency => "neg_frequency",
            ObjectiveKind::Displacement => "displacement",
            ObjectiveKind::Compound => "compound",
        }
    }
}

/// Best/worst value pair for one objective, minimization sense.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ObjectiveRange {
    pub best: f64,
    pub worst: f64,
}

/// Normalization constants of the compound objective: per raw objective
/// the best value (from its own single-objective search) and the worst
/// value it takes across the three single-objective solutions.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct NormalizationConstants {
    pub mass: ObjectiveRange,
    pub neg_frequency: ObjectiveRange,
    pub displacement: ObjectiveRange,
}

impl NormalizationConstants {
    pub fn validate(&self) -> Result<(), ObjectiveError> {
        for (label, range) in [
            ("mass", self.mass),
            ("neg_frequency", self.neg_frequency),
            ("displacement", self.displacement),
        ] {
            if range.best == range.worst {
                return Err(ObjectiveError::DegenerateNormalization {
                    objective: label,
                    value: range.best,
                });
            }
        }
        Ok(())
    }

    fn ranges(&self) -> [ObjectiveRange; 3] {
        [self.mass, self.neg_frequency, self.displacement]
    }
}

/// Which objective is active plus everything needed to evaluate it.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ObjectiveSpec {
    pub kind: ObjectiveKind,
    pub constraints: ConstraintSet,
    #[serde(default)]
    pub normalization: Option<NormalizationConstants>,
    #[serde(default)]
    pub displacement_mode: DisplacementMode,
    #[serde(default)]
    pub mass_matrix: MassMatrix,
    #[serde(default)]
    pub compound_form: CompoundForm,
}

impl ObjectiveSpec {
    pub fn validate(&self) -> Result<(), ObjectiveError> {
        self.constraints.validate()?;
        if self.kind == ObjectiveKind::Compound {
            match &self.normalization {
                None => return Err(ObjectiveError::MissingNormalization),
                Some(norm) => norm.validate()?,
            }
        }
        Ok(())
    }

    pub fn with_kind(&self, kind: ObjectiveKind) -> ObjectiveSpec {
        ObjectiveSpec {
            kind,
            ..self.clone()
        }
    }
}

/// One constraint violation with its margin.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "constraint", rename_all = "snake_case")]
pub enum Violation {
    Stress {
        member: usize,
        value: f64,
        limit: f64,
    },
    Displacement {
        node: usize,
        value: f64,
        limit: f64,
    },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::Stress {
                member,
                value,
                limit,
            } => write!(
                f,
                "member {} stress |{:.6e}| exceeds {:.6e} by {:.3e}",
                member + 1,
                value,
                limit,
                value.abs() - limit
            ),
            Violation::Displacement { node, value, limit } => write!(
                f,
                "node {} displacement {:.6e} exceeds {:.6e} by {:.3e}",
                node + 1,
                value,
                limit,
                value - limit
            ),
        }
    }
}

/// Everything one evaluation yields: the active objective value, the
/// three raw objective values, feasibility and the full analysis.
#[derive(Clone, Debug)]
pub struct EvalOutcome {
    /// Active objective value: f1, f2 = −ω₁, f3, or the compound score.
    pub value: f64,
    pub feasible: bool,
    pub violations: Vec<Violation>,
    /// (mass, −ω₁, total displacement), all minimization sense.
    pub raw: [f64; 3],
    pub analysis: AnalysisResult,
}

/// Evaluate the active objective at a design, running the truss
/// analysis once. Areas are given in display units and scaled by
/// `area_scale` into the model's physical units.
pub fn evaluate(
    spec: &ObjectiveSpec,
    model: &TrussModel,
    area_scale: f64,
    areas: &DesignVector,
) -> Result<EvalOutcome, ObjectiveError> {
    for (variable, &value) in areas.values().iter().enumerate() {
        let slack = FEASIBILITY_SLACK * (spec.constraints.a_max - spec.constraints.a_min);
        if value < spec.constraints.a_min - slack || value > spec.constraints.a_max + slack {
            return Err(ObjectiveError::AreaOutOfBounds {
                variable,
                value,
                lower: spec.constraints.a_min,
                upper: spec.constraints.a_max,
            });
        }
    }
    let physical = DesignVector::new(areas.values().iter().map(|a| a * area_scale).collect());
    let analysis = analyze(model, &physical, spec.mass_matrix).map_err(|source| {
        ObjectiveError::Fem {
            design: areas.clone(),
            source,
        }
    })?;

    let mut violations = Vec::new();
    let sigma_limit = spec.constraints.sigma_max * (1.0 + FEASIBILITY_SLACK);
    for (member, &stress) in analysis.stresses.iter().enumerate() {
        if stress.abs() > sigma_limit {
            violations.push(Violation::Stress {
                member,
                value: stress,
                limit: spec.constraints.sigma_max,
            });
        }
    }
    let delta_limit = spec.constraints.delta_max * (1.0 + FEASIBILITY_SLACK);
    for &(node, dx, dy) in &analysis.displacements {
        let measure = match spec.displacement_mode {
            DisplacementMode::PerComponent => dx.abs().max(dy.abs()),
            DisplacementMode::Resultant => dx.hypot(dy),
        };
        if measure > delta_limit {
            violations.push(Violation::Displacement {
                node,
                value: measure,
                limit: spec.constraints.delta_max,
            });
        }
    }

    let raw = [analysis.mass, -analysis.omega1, analysis.total_displacement];
    let value = match spec.kind {
        ObjectiveKind::Mass => raw[0],
        ObjectiveKind::NegFrequency => raw[1],
        ObjectiveKind::Displacement => raw[2],
        ObjectiveKind::Compound => {
            let norm = spec
                .normalization
                .as_ref()
                .ok_or(ObjectiveError::MissingNormalization)?;
            compound_objective(&raw, norm, spec.compound_form)?
        }
    };
    Ok(EvalOutcome {
        value,
        feasible: violations.is_empty(),
        violations,
        raw,
        analysis,
    })
}

/// The compound score: the product over objectives of the margin to the
/// worst value. In the normalized form each factor is divided by the
/// best-to-worst range and clamped into [0, 1] before multiplying, so
/// the score itself lies in [0, 1]; the search maximizes it.
pub fn compound_objective(
    values: &[f64; 3],
    norm: &NormalizationConstants,
    form: CompoundForm,
) -> Result<f64, ObjectiveError> {
    norm.validate()?;
    let mut product = 1.0;
    for (&value, range) in values.iter().zip(norm.ranges()) {
        let factor = match form {
            CompoundForm::Normalized => {
                ((range.worst - value) / (range.worst - range.best)).clamp(0.0, 1.0)
            }
            CompoundForm::Raw => range.worst - value,
        };
        product *= factor;
    }
    Ok(product)
}

/// Truss problem as seen by the search engine: display-unit area bounds
/// and a minimization value (the compound score enters negated).
pub struct TrussProblem {
    model: TrussModel,
    spec: ObjectiveSpec,
    area_scale: f64,
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl TrussProblem {
    pub fn new(
        model: TrussModel,
        spec: ObjectiveSpec,
        area_scale: f64,
    ) -> Result<Self, ObjectiveError> {
        spec.validate()?;
        let d = model.member_count();
        let lower = vec![spec.constraints.a_min; d];
        let upper = vec![spec.constraints.a_max; d];
        Ok(Self {
            model,
            spec,
            area_scale,
            lower,
            upper,
        })
    }

    pub fn model(&self) -> &TrussModel {
        &self.model
    }

    pub fn spec(&self) -> &ObjectiveSpec {
        &self.spec
    }

    pub fn area_scale(&self) -> f64 {
        self.area_scale
    }

    /// Full evaluation with analysis attached, for reports.
    pub fn outcome(&self, areas: &DesignVector) -> Result<EvalOutcome, ObjectiveError> {
        evaluate(&self.spec, &self.model, self.area_scale, areas)
    }

    /// Map an engine (minimization) value back to the objective value.
    pub fn objective_from_engine(&self, engine_value: f64) -> f64 {
        match self.spec.kind {
            ObjectiveKind::Compound => -engine_value,
            _ => engine_value,
        }
    }
}

impl Problem for TrussProblem {
    fn lower_bounds(&self) -> &[f64] {
        &self.lower
    }

    fn upper_bounds(&self) -> &[f64] {
        &self.upper
    }

    fn evaluate(&self, point: &DesignVector) -> Result<Evaluation, ProblemError> {
        let outcome = self.outcome(point).map_err(|e| ProblemError::EvaluationFailed {
            design: point.clone(),
            message: e.to_string(),
        })?;
        let value = match self.spec.kind {
            ObjectiveKind::Compound => -outcome.value,
            _ => outcome.value,
        };
        Ok(Evaluation {
            value,
            feasible: outcome.feasible,
        })
    }
}

/// One single-objective solution feeding the normalization.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SingleObjectiveSolution {
    pub kind: ObjectiveKind,
    pub design: DesignVector,
    /// (mass, −ω₁, displacement) at this design.
    pub raw: [f64; 3],
    pub evaluations: u64,
}

/// Derived normalization constants together with the designs that
/// produced them, so compound runs are reproducible.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NormalizationDerivation {
    pub constants: NormalizationConstants,
    pub solutions: Vec<SingleObjectiveSolution>,
}

impl NormalizationDerivation {
    /// Start point for the compound search: the best-scoring feasible
    /// candidate among the single-objective designs and their snapped
    /// centroid.
    pub fn compound_start(
        &self,
        model: &TrussModel,
        spec: &ObjectiveSpec,
        area_scale: f64,
        min_step: f64,
    ) -> Result<DesignVector, ObjectiveError> {
        let mut compound_spec = spec.with_kind(ObjectiveKind::Compound);
        compound_spec.normalization = Some(self.constants);
        let d = self.solutions[0].design.len();
        let grid = Grid::new(
            vec![compound_spec.constraints.a_min; d],
            vec![compound_spec.constraints.a_max; d],
            min_step,
        )?;
        let mut candidates: Vec<DesignVector> =
            self.solutions.iter().map(|s| s.design.clone()).collect();
        let mut centroid = vec![0.0; d];
        for solution in &self.solutions {
            for (acc, &v) in centroid.iter_mut().zip(solution.design.values()) {
                *acc += v / self.solutions.len() as f64;
            }
        }
        candidates.push(grid.snap(&centroid));

        let mut best: Option<(f64, DesignVector)> = None;
        for candidate in candidates {
            let snapped = grid.snap(candidate.values());
            let outcome = evaluate(&compound_spec, model, area_scale, &snapped)?;
            if !outcome.feasible {
                continue;
            }
            if best.as_ref().is_none_or(|(score, _)| outcome.value > *score) {
                best = Some((outcome.value, snapped));
            }
        }
        best.map(|(_, design)| design)
            .ok_or(ObjectiveError::NoFeasibleStart)
    }
}

/// Smallest uniform design on the area lattice satisfying all
/// constraints, scanning upward from the lower bound. This mirrors how
/// the mass benchmark chooses its start: the lowest uniform value that
/// keeps the structure feasible.
pub fn smallest_feasible_uniform(
    spec: &ObjectiveSpec,
    model: &TrussModel,
    area_scale: f64,
    min_step: f64,
) -> Result<DesignVector, ObjectiveError> {
    let d = model.member_count();
    let steps = ((spec.constraints.a_max - spec.constraints.a_min) / min_step + 1e-9) as u64;
    for j in 0..=steps {
        let value = spec.constraints.a_min + j as f64 * min_step;
        let candidate = DesignVector::uniform(value, d);
        let outcome = evaluate(spec, model, area_scale, &candidate)?;
        if outcome.feasible {
            return Ok(candidate);
        }
    }
    Err(ObjectiveError::NoFeasibleStart)
}

/// Run the three single-objective searches and assemble the
/// normalization constants: each objective's best is its own search
/// optimum, its worst is the worst value it takes across the three
/// optimal designs.
///
/// Starts follow the benchmark conventions: the mass search starts at
/// the smallest feasible uniform design, the frequency and displacement
/// searches at the upper area bound (the stiffest design, always
/// feasible when any design is).
pub fn derive_normalization(
    model: &TrussModel,
    spec: &ObjectiveSpec,
    area_scale: f64,
    search: &SearchConfig,
) -> Result<NormalizationDerivation, ObjectiveError> {
    let d = model.member_count();
    let kinds = [
        ObjectiveKind::Mass,
        ObjectiveKind::NegFrequency,
        ObjectiveKind::Displacement,
    ];
    let mut solutions = Vec::with_capacity(3);
    for kind in kinds {
        let single = spec.with_kind(kind);
        let start = match kind {
            ObjectiveKind::Mass => {
                smallest_feasible_uniform(&single, model, area_scale, search.min_step)?
            }
            _ => DesignVector::uniform(single.constraints.a_max, d),
        };
        let problem = TrussProblem::new(model.clone(), single.clone(), area_scale)?;
        let result: SearchResult =
            run_search(&problem, search, &start).map_err(|source| {
                ObjectiveError::NormalizationRun {
                    objective: kind.label(),
                    source,
                }
            })?;
        let outcome = evaluate(&single, model, area_scale, &result.best)?;
        solutions.push(SingleObjectiveSolution {
            kind,
            design: result.best,
            raw: outcome.raw,
            evaluations: result.evaluations,
        });
    }

    let range = |index: usize| -> ObjectiveRange {
        let best = solutions[index].raw[index];
        let worst = solutions
            .iter()
            .map(|s| s.raw[index])
            .fold(f64::NEG_INFINITY, f64::max);
        ObjectiveRange { best, worst }
    };
    let constants = NormalizationConstants {
        mass: range(0),
        neg_frequency: range(1),
        displacement: range(2),
    };
    constants.validate()?;
    Ok(NormalizationDerivation {
        constants,
        solutions,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fem::standard_ten_bar_model;
    use approx::assert_relative_eq;

    /// Metric benchmark: internal units N, m, Pa; areas displayed in
    /// multiples of 1e-2 m².
    fn metric_case() -> (TrussModel, ObjectiveSpec, f64) {
        let model = standard_ten_bar_model(3.0, 2.07e11, 7850.0, 5.0e5);
        let spec = ObjectiveSpec {
            kind: ObjectiveKind::Mass,
            constraints: ConstraintSet {
                sigma_max: 1.6e8,
                delta_max: 0.015,
                a_min: 0.168,
                a_max: 4.95,
            },
            normalization: None,
            displacement_mode: DisplacementMode::PerComponent,
            mass_matrix: MassMatrix::Consistent,
            compound_form: CompoundForm::Normalized,
        };
        (model, spec, 1e-2)
    }

    #[test]
    fn uniform_start_of_the_mass_benchmark_is_feasible() {
        let (model, spec, scale) = metric_case();
        let outcome = evaluate(&spec, &model, scale, &DesignVector::uniform(0.761, 10)).unwrap();
        assert!(outcome.feasible, "violations: {:?}", outcome.violations);
        assert_relative_eq!(outcome.value, 2089.09, max_relative = 1e-4);
    }

    #[test]
    fn out_of_bounds_area_is_rejected_naming_the_variable() {
        let (model, spec, scale) = metric_case();
        let mut areas = DesignVector::uniform(0.761, 10);
        areas.values_mut()[3] = 9.0;
        let err = evaluate(&spec, &model, scale, &areas).unwrap_err();
        match err {
            ObjectiveError::AreaOutOfBounds { variable, .. } => assert_eq!(variable, 3),
            other => panic!("unexpected error {other}"),
        }
        assert!(err.to_string().contains("A4"));
    }

    #[test]
    fn overloaded_design_reports_the_violated_member() {
        // scale the loads up until the start design breaks
        let (mut model, spec, scale) = metric_case();
        for load in model.loads.values_mut() {
            load.1 *= 2.0;
        }
        let outcome = evaluate(&spec, &model, scale, &DesignVector::uniform(0.761, 10)).unwrap();
        assert!(!outcome.feasible);
        assert!(!outcome.violations.is_empty());
        let text = outcome
            .violations
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join("; ");
        assert!(text.contains("member") || text.contains("node"), "{text}");
    }

    fn norm() -> NormalizationConstants {
        NormalizationConstants {
            mass: ObjectiveRange {
                best: 10.0,
                worst: 20.0,
            },
            neg_frequency: ObjectiveRange {
                best: -5.0,
                worst: -1.0,
            },
            displacement: ObjectiveRange {
                best: 1.0,
                worst: 3.0,
            },
        }
    }

    #[test]
    fn compound_is_zero_at_any_worst_value() {
        let score = compound_objective(&[20.0, -3.0, 2.0], &norm(), CompoundForm::Normalized).unwrap();
        assert_eq!(score, 0.0);
    }

    #[test]
    fn compound_is_one_at_all_best_values() {
        let score = compound_objective(&[10.0, -5.0, 1.0], &norm(), CompoundForm::Normalized).unwrap();
        assert_eq!(score, 1.0);
    }

    #[test]
    fn compound_multiplies_the_factors() {
        // factors 0.5, 0.8, 0.9 -> product 0.36
        let values = [15.0, -4.2, 1.2];
        let score = compound_objective(&values, &norm(), CompoundForm::Normalized).unwrap();
        assert_relative_eq!(score, 0.5 * 0.8 * 0.9, max_relative = 1e-12);
    }

    #[test]
    fn compound_clamps_outside_the_range() {
        // mass above worst would be negative without clamping
        let score = compound_objective(&[25.0, -5.0, 1.0], &norm(), CompoundForm::Normalized).unwrap();
        assert_eq!(score, 0.0);
        // better than best clamps to 1
        let score = compound_objective(&[5.0, -5.0, 1.0], &norm(), CompoundForm::Normalized).unwrap();
        assert_eq!(score, 1.0);
    }

    #[test]
    fn raw_form_skips_normalization() {
        let score = compound_objective(&[15.0, -4.0, 2.0], &norm(), CompoundForm::Raw).unwrap();
        assert_relative_eq!(score, 5.0 * 3.0 * 1.0, max_relative = 1e-12);
    }

    #[test]
    fn degenerate_normalization_is_a_configuration_error() {
        let mut bad = norm();
        bad.displacement.worst = bad.displacement.best;
        assert!(matches!(
            compound_objective(&[1.0, 1.0, 1.0], &bad, CompoundForm::Normalized),
            Err(ObjectiveError::DegenerateNormalization { .. })
        ));
    }

    #[test]
    fn evaluation_is_pure() {
        let (model, spec, scale) = metric_case();
        let areas = DesignVector::uniform(0.761, 10);
        let a = evaluate(&spec, &model, scale, &areas).unwrap();
        let b = evaluate(&spec, &model, scale, &areas).unwrap();
        assert_eq!(a.value.to_bits(), b.value.to_bits());
        assert_eq!(a.feasible, b.feasible);
    }

    #[test]
    fn engine_adapter_negates_the_compound_score() {
        let (model, mut spec, scale) = metric_case();
        spec.kind = ObjectiveKind::Compound;
        spec.normalization = Some(NormalizationConstants {
            mass: ObjectiveRange {
                best: 1000.0,
                worst: 3000.0,
            },
            neg_frequency: ObjectiveRange {
                best: -500.0,
                worst: -100.0,
            },
            displacement: ObjectiveRange {
                best: 0.01,
                worst: 0.1,
            },
        });
        let problem = TrussProblem::new(model.clone(), spec.clone(), scale).unwrap();
        let areas = DesignVector::uniform(0.761, 10);
        let engine_eval = problem.evaluate(&areas).unwrap();
        let outcome = evaluate(&spec, &model, scale, &areas).unwrap();
        assert_eq!(engine_eval.value, -outcome.value);
        assert_eq!(problem.objective_from_engine(engine_eval.value), outcome.value);
    }

    #[test]
    fn normalization_round_trips_through_json_bit_exactly() {
        let constants = NormalizationConstants {
            mass: ObjectiveRange {
                best: 5483.38729177,
                worst: 12855.7662,
            },
            neg_frequency: ObjectiveRange {
                best: -182.0047,
                worst: -92.9613,
            },
            displacement: ObjectiveRange {
                best: 3.4938,
                worst: 6.3039,
            },
        };
        let json = serde_json::to_string(&constants).unwrap();
        let back: NormalizationConstants = serde_json::from_str(&json).unwrap();
        assert_eq!(constants, back);
        let values = [7000.0, -170.0, 4.4];
        let a = compound_objective(&values, &constants, CompoundForm::Normalized).unwrap();
        let b = compound_objective(&values, &back, CompoundForm::Normalized).unwrap();
        assert_eq!(a.to_bits(), b.to_bits());
    }
}
