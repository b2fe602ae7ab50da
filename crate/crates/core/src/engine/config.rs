//! Search control parameters.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ConfigError {
    #[error("counter thresholds must satisfy intensify < diversify < reduce, got {intensify}/{diversify}/{reduce}")]
    ThresholdOrder {
        intensify: u32,
        diversify: u32,
        reduce: u32,
    },
    #[error("{name} must be positive, got {value}")]
    NonPositive { name: &'static str, value: f64 },
    #[error("{name} must be at least 1")]
    ZeroCount { name: &'static str },
    #[error("pattern factor must exceed 1, got {0}")]
    PatternFactor(f64),
    #[error("initial step {initial} is below the minimum step {min}")]
    StepOrder { initial: f64, min: f64 },
}

/// All tunables of the tabu search control algorithm.
///
/// The counter thresholds trigger, in order of a growing stall count:
/// intensification, diversification, then step reduction. The stall
/// counter itself is reset only by improvement or by a step reduction.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SearchConfig {
    /// Short-term memory length n: the last n visited solutions are tabu.
    pub tabu_size: usize,
    /// Intermediate-term memory length m: the m best solutions kept for
    /// intensification.
    pub elite_size: usize,
    /// Pattern-move extension factor k.
    pub pattern_factor: f64,
    /// Stall count that triggers intensification.
    pub intensify_after: u32,
    /// Stall count that triggers diversification.
    pub diversify_after: u32,
    /// Stall count that triggers a step reduction.
    pub reduce_after: u32,
    /// Starting step size. `None` selects a tenth of the variable range,
    /// truncated to the step grid.
    pub initial_step: Option<f64>,
    /// Minimum step size; also the spacing of the parameter lattice.
    pub min_step: f64,
    /// Hard budget on objective evaluations.
    pub max_evaluations: u64,
    /// Seed for the diversification stream; fixes the whole run.
    pub rng_seed: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            tabu_size: 7,
            elite_size: 5,
            pattern_factor: 2.0,
            intensify_after: 4,
            diversify_after: 12,
            reduce_after: 24,
            initial_step: None,
            min_step: 1e-3,
            max_evaluations: 20_000,
            rng_seed: 0,
        }
    }
}

impl SearchConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.tabu_size == 0 {
            return Err(ConfigError::ZeroCount { name: "tabu_size" });
        }
        if self.elite_size == 0 {
            return Err(ConfigError::ZeroCount { name: "elite_size" });
        }
        if self.max_evaluations == 0 {
            return Err(ConfigError::ZeroCount {
                name: "max_evaluations",
            });
        }
        if self.pattern_factor.is_nan() || self.pattern_factor <= 1.0 {
            return Err(ConfigError::PatternFactor(self.pattern_factor));
        }
        if self.min_step.is_nan() || self.min_step <= 0.0 {
            return Err(ConfigError::NonPositive {
                name: "min_step",
                value: self.min_step,
            });
        }
        if !(self.intensify_after > 0
            && self.intensify_after < self.diversify_after
            && self.diversify_after < self.reduce_after)
        {
            return Err(ConfigError::ThresholdOrder {
                intensify: self.intensify_after,
                diversify: self.diversify_after,
                reduce: self.reduce_after,
            });
        }
        if let Some(step) = self.initial_step {
            if step.is_nan() || step <= 0.0 {
                return Err(ConfigError::NonPositive {
                    name: "initial_step",
                    value: step,
                });
            }
            if step < self.min_step {
                return Err(ConfigError::StepOrder {
                    initial: step,
                    min: self.min_step,
                });
            }
        }
        Ok(())
    }

    /// The starting step actually used: the configured value (truncated
    /// to a multiple of the minimum step) or a tenth of the widest
    /// variable range.
    pub fn resolve_initial_step(&self, lower: &[f64], upper: &[f64]) -> f64 {
        let raw = self.initial_step.unwrap_or_else(|| {
            lower
                .iter()
                .zip(upper)
                .map(|(&lo, &hi)| (hi - lo) / 10.0)
                .fold(0.0_f64, f64::max)
        });
        truncate_to_multiple(raw, self.min_step)
    }
}

/// Truncate `value` down to a multiple of `unit`, never below `unit`.
pub fn truncate_to_multiple(value: f64, unit: f64) -> f64 {
    let k = (value / unit + 1e-9).floor();
    (k.max(1.0)) * unit
}

/// Halve the step, then truncate the result to a multiple of the
/// minimum step size. Never drops below the minimum step.
pub fn reduce_step(step: f64, min_step: f64) -> f64 {
    truncate_to_multiple((step / 2.0).max(min_step), min_step)
}
