//! The evaluator abstraction the search engine drives.

use thiserror::Error;

use crate::design::DesignVector;

/// Outcome of one objective evaluation as seen by the engine.
///
/// `value` follows the engine's minimization convention; evaluators for
/// maximized quantities negate before returning. Infeasible points carry
/// their raw objective value; the engine never accepts them as moves.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Evaluation {
    pub value: f64,
    pub feasible: bool,
}

#[derive(Debug, Error)]
pub enum ProblemError {
    #[error("evaluation failed at {design}: {message}")]
    EvaluationFailed {
        design: DesignVector,
        message: String,
    },
}

/// An objective evaluator over a box-bounded design space.
///
/// Implementations must be pure: the same point always yields the same
/// `Evaluation`. The engine relies on this for deterministic replay and
/// it is what makes concurrent candidate evaluation legal.
pub trait Problem {
    fn lower_bounds(&self) -> &[f64];

    fn upper_bounds(&self) -> &[f64];

    fn evaluate(&self, point: &DesignVector) -> Result<Evaluation, ProblemError>;

    fn dimension(&self) -> usize {
        self.lower_bounds().len()
    }
}

/// Closure-backed problem for tests and synthetic benchmarks.
pub struct FnProblem<F> {
    lower: Vec<f64>,
    upper: Vec<f64>,
    eval: F,
}

impl<F> FnProblem<F>
where
    F: Fn(&[f64]) -> (f64, bool),
{
    pub fn new(lower: Vec<f64>, upper: Vec<f64>, eval: F) -> Self {
        Self { lower, upper, eval }
    }
}

impl<F> Problem for FnProblem<F>
where
    F: Fn(&[f64]) -> (f64, bool),
{
    fn lower_bounds(&self) -> &[f64] {
        &self.lower
    }

    fn upper_bounds(&self) -> &[f64] {
        &self.upper
    }

    fn evaluate(&self, point: &DesignVector) -> Result<Evaluation, ProblemError> {
        let (value, feasible) = (self.eval)(point.values());
        Ok(Evaluation { value, feasible })
    }
}
