//! The tabu search control loop.
//!
//! One control step performs exactly one of four actions, dispatched on
//! the stall counter (moves since the last improvement):
//!
//! * below every threshold: a normal neighborhood move — evaluate all
//!   coordinate moves, accept the best non-tabu feasible one, then try
//!   the pattern extension if the move improved on the old base;
//! * at the intensification threshold: restart the base at a point
//!   blended from the elite list;
//! * at the diversification threshold: restart the base at a random
//!   feasible lattice point;
//! * at the reduction threshold: halve-and-truncate the step, reset the
//!   counter, rebase at the incumbent and explore at the finer step.
//!
//! The counter is not reset by intensification or diversification
//! themselves; only a new incumbent (or a step reduction) resets it.
//! The search stops when the evaluation budget is exhausted or when the
//! stall counter hits the reduction threshold with the step already at
//! its minimum.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::design::DesignVector;
use crate::engine::config::{reduce_step, ConfigError, SearchConfig};
use crate::engine::memory::{EliteList, TabuList};
use crate::grid::{Grid, GridError};
use crate::neighborhood::{
    classify, generate_neighborhood, pattern_move, select_move, MoveSource,
};
use crate::problem::{Evaluation, Problem, ProblemError};

/// Cap on redraws when diversification keeps hitting tabu or infeasible
/// points, and on perturbation steps when walking an intensification
/// point toward the incumbent.
const RESTART_ATTEMPTS: usize = 50;

#[derive(Debug, Error)]
pub enum SearchError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Grid(#[from] GridError),
    #[error(transparent)]
    Problem(#[from] ProblemError),
    #[error("start point is infeasible: {0}")]
    InfeasibleStart(DesignVector),
    #[error("start point has dimension {got}, problem has {want}")]
    DimensionMismatch { got: usize, want: usize },
}

/// What a trace row records about its control step.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Event {
    Move,
    Intensify,
    Diversify,
    Reduce,
}

impl Event {
    pub fn as_str(self) -> &'static str {
        match self {
            Event::Move => "move",
            Event::Intensify => "intensify",
            Event::Diversify => "diversify",
            Event::Reduce => "reduce",
        }
    }
}

/// One row of the convergence trace, appended per control step.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceRow {
    pub evaluations: u64,
    pub best_objective: f64,
    pub step_size: f64,
    pub event: Event,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TerminationReason {
    /// Evaluation budget exhausted.
    MaxEvaluations,
    /// Step at its minimum and the stall counter reached the reduction
    /// threshold again.
    StepConverged,
}

/// How a point became the search base, kept for diagnostics and the
/// no-revisit property checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AcceptKind {
    Explore,
    Pattern,
    Intensify,
    Diversify,
}

#[derive(Clone, Debug)]
pub struct AcceptedPoint {
    pub point: DesignVector,
    pub value: f64,
    pub kind: AcceptKind,
    /// True when the point was tabu and accepted through aspiration.
    pub aspiration: bool,
}

#[derive(Clone, Debug)]
pub struct SearchResult {
    pub best: DesignVector,
    pub best_value: f64,
    pub evaluations: u64,
    pub termination: TerminationReason,
    pub trace: Vec<TraceRow>,
    /// Base points in acceptance order, including restarts.
    pub accepted: Vec<AcceptedPoint>,
    /// Diversifications that exhausted their attempt cap and fell back
    /// to the incumbent.
    pub diversification_fallbacks: u32,
}

struct Engine<'a, P: Problem> {
    problem: &'a P,
    config: &'a SearchConfig,
    grid: Grid,
    rng: ChaCha8Rng,
    base: DesignVector,
    base_value: f64,
    best: DesignVector,
    best_value: f64,
    step: f64,
    stall: u32,
    evaluations: u64,
    tabu: TabuList,
    elite: EliteList,
    trace: Vec<TraceRow>,
    accepted: Vec<AcceptedPoint>,
    diversification_fallbacks: u32,
}

/// Run the search from a feasible, grid-aligned start point.
///
/// The start is snapped to the lattice before evaluation. A fixed
/// `rng_seed` makes the whole run, including the trace, reproducible
/// bit for bit.
pub fn run_search<P: Problem>(
    problem: &P,
    config: &SearchConfig,
    start: &DesignVector,
) -> Result<SearchResult, SearchError> {
    config.validate()?;
    if start.len() != problem.dimension() {
        return Err(SearchError::DimensionMismatch {
            got: start.len(),
            want: problem.dimension(),
        });
    }
    let grid = Grid::new(
        problem.lower_bounds().to_vec(),
        problem.upper_bounds().to_vec(),
        config.min_step,
    )?;
    let tol = grid.tolerance();
    let start = grid.snap(start.values());
    let engine = Engine {
        problem,
        config,
        rng: ChaCha8Rng::seed_from_u64(config.rng_seed),
        base: start.clone(),
        base_value: 0.0,
        best: start.clone(),
        best_value: 0.0,
        step: config.resolve_initial_step(problem.lower_bounds(), problem.upper_bounds()),
        stall: 0,
        evaluations: 0,
        tabu: TabuList::new(config.tabu_size, tol),
        elite: EliteList::new(config.elite_size, tol),
        trace: Vec::new(),
        accepted: Vec::new(),
        diversification_fallbacks: 0,
        grid,
    };
    engine.run(start)
}

impl<'a, P: Problem> Engine<'a, P> {
    fn run(mut self, start: DesignVector) -> Result<SearchResult, SearchError> {
        let first = self.evaluate(&start)?;
        if !first.feasible {
            return Err(SearchError::InfeasibleStart(start));
        }
        self.base_value = first.value;
        self.best_value = first.value;
        self.tabu.push(start.clone());
        self.elite.insert(start, first.value);

        let termination = loop {
            if self.evaluations >= self.config.max_evaluations {
                break TerminationReason::MaxEvaluations;
            }
            if self.stall == self.config.reduce_after {
                if self.step <= self.config.min_step * (1.0 + 1e-9) {
                    break TerminationReason::StepConverged;
                }
                self.step = reduce_step(self.step, self.config.min_step);
                self.stall = 0;
                // refine around the incumbent rather than wherever the
                // last restart left the base
                self.base = self.best.clone();
                self.base_value = self.best_value;
                self.explore(Event::Reduce)?;
            } else if self.stall == self.config.diversify_after {
                self.diversify()?;
            } else if self.stall == self.config.intensify_after {
                self.intensify()?;
            } else {
                self.explore(Event::Move)?;
            }
        };

        Ok(SearchResult {
            best: self.best,
            best_value: self.best_value,
            evaluations: self.evaluations,
            termination,
            trace: self.trace,
            accepted: self.accepted,
            diversification_fallbacks: self.diversification_fallbacks,
        })
    }

    fn evaluate(&mut self, point: &DesignVector) -> Result<Evaluation, ProblemError> {
        self.evaluations += 1;
        self.problem.evaluate(point)
    }

    fn budget_left(&self) -> bool {
        self.evaluations < self.config.max_evaluations
    }

    fn record(&mut self, event: Event) {
        self.trace.push(TraceRow {
            evaluations: self.evaluations,
            best_objective: self.best_value,
            step_size: self.step,
            event,
        });
    }

    /// Update incumbent bookkeeping after the base moved; resets the
    /// stall counter on improvement.
    fn settle(&mut self, feasible: bool) {
        if feasible && self.base_value < self.best_value {
            self.best = self.base.clone();
            self.best_value = self.base_value;
            self.elite.insert(self.base.clone(), self.base_value);
            self.stall = 0;
        } else {
            self.stall += 1;
        }
    }

    /// One neighborhood sweep: evaluate all coordinate moves, adopt the
    /// best admissible one, then attempt the pattern extension.
    fn explore(&mut self, event: Event) -> Result<(), SearchError> {
        let points = generate_neighborhood(&self.base, self.step, &self.grid);
        let mut candidates = Vec::with_capacity(points.len());
        for point in points {
            if !self.budget_left() {
                break;
            }
            let eval = self.evaluate(&point)?;
            candidates.push(classify(
                point,
                eval.value,
                eval.feasible,
                &self.tabu,
                MoveSource::Explore,
            ));
        }
        let Some(chosen) = select_move(&candidates, self.best_value) else {
            // every candidate tabu or infeasible: a stall step
            self.stall += 1;
            self.record(event);
            return Ok(());
        };
        let chosen = &candidates[chosen];
        let old_base = std::mem::replace(&mut self.base, chosen.point.clone());
        let old_value = std::mem::replace(&mut self.base_value, chosen.objective);
        let aspiration = chosen.tabu;
        self.tabu.push(self.base.clone());
        self.accepted.push(AcceptedPoint {
            point: self.base.clone(),
            value: self.base_value,
            kind: AcceptKind::Explore,
            aspiration,
        });

        // an improving exploration move is extended along its vector
        if self.base_value < old_value && self.budget_left() {
            let extended = pattern_move(&old_base, &self.base, self.config.pattern_factor, &self.grid);
            let tol = self.grid.tolerance();
            if !extended.approx_eq(&self.base, tol) && !self.tabu.contains(&extended) {
                let eval = self.evaluate(&extended)?;
                if eval.feasible && eval.value < self.base_value {
                    self.base = extended;
                    self.base_value = eval.value;
                    self.tabu.push(self.base.clone());
                    self.accepted.push(AcceptedPoint {
                        point: self.base.clone(),
                        value: self.base_value,
                        kind: AcceptKind::Pattern,
                        aspiration: false,
                    });
                }
            }
        }

        self.settle(true);
        self.record(event);
        Ok(())
    }

    /// Restart the base at `point` with a known evaluation.
    fn adopt_restart(&mut self, point: DesignVector, eval: Evaluation, kind: AcceptKind) {
        self.base = point;
        self.base_value = eval.value;
        self.tabu.push(self.base.clone());
        self.accepted.push(AcceptedPoint {
            point: self.base.clone(),
            value: self.base_value,
            kind,
            aspiration: false,
        });
        self.settle(eval.feasible);
    }

    /// Reinitialize the search at a blend of the elite solutions: their
    /// component-wise mean snapped to the lattice. A tabu or infeasible
    /// blend is perturbed one grid step per variable toward the
    /// incumbent until admissible.
    fn intensify(&mut self) -> Result<(), SearchError> {
        let mut point = match self.elite.mean() {
            Some(mean) => self.grid.snap(&mean),
            None => self.best.clone(),
        };
        let tol = self.grid.tolerance();
        for _ in 0..RESTART_ATTEMPTS {
            let at_incumbent = point.approx_eq(&self.best, tol);
            if !self.tabu.contains(&point) || at_incumbent {
                if !self.budget_left() {
                    break;
                }
                let eval = self.evaluate(&point)?;
                if eval.feasible || at_incumbent {
                    self.adopt_restart(point, eval, AcceptKind::Intensify);
                    self.record(Event::Intensify);
                    return Ok(());
                }
            }
            if at_incumbent {
                break;
            }
            point = self.step_toward_incumbent(&point);
        }
        self.restart_at_incumbent(AcceptKind::Intensify, Event::Intensify)
    }

    /// Fallback restart at the incumbent. Skipped entirely when the
    /// budget is gone so that every trace row reflects at least one
    /// evaluation.
    fn restart_at_incumbent(&mut self, kind: AcceptKind, event: Event) -> Result<(), SearchError> {
        if !self.budget_left() {
            return Ok(());
        }
        let point = self.best.clone();
        let eval = self.evaluate(&point)?;
        self.adopt_restart(point, eval, kind);
        self.record(event);
        Ok(())
    }

    fn step_toward_incumbent(&self, point: &DesignVector) -> DesignVector {
        let tol = self.grid.tolerance();
        let moved: Vec<f64> = point
            .values()
            .iter()
            .zip(self.best.values())
            .map(|(&p, &b)| {
                if (b - p).abs() <= tol {
                    p
                } else {
                    p + (b - p).signum() * self.grid.step()
                }
            })
            .collect();
        self.grid.snap(&moved)
    }

    /// Random refreshment: draw uniform lattice points until one is
    /// neither tabu nor infeasible. Failing that, fall back to the
    /// incumbent and count the fallback.
    fn diversify(&mut self) -> Result<(), SearchError> {
        for _ in 0..RESTART_ATTEMPTS {
            if !self.budget_left() {
                break;
            }
            let point = self.grid.random_point(&mut self.rng);
            if self.tabu.contains(&point) {
                continue;
            }
            let eval = self.evaluate(&point)?;
            if eval.feasible {
                self.adopt_restart(point, eval, AcceptKind::Diversify);
                self.record(Event::Diversify);
                return Ok(());
            }
        }
        self.diversification_fallbacks += 1;
        self.restart_at_incumbent(AcceptKind::Diversify, Event::Diversify)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problem::FnProblem;

    fn quadratic_1d(target: f64) -> FnProblem<impl Fn(&[f64]) -> (f64, bool)> {
        FnProblem::new(vec![0.0], vec![10.0], move |x| {
            ((x[0] - target).powi(2), true)
        })
    }

    fn config(seed: u64) -> SearchConfig {
        SearchConfig {
            min_step: 0.1,
            initial_step: Some(1.0),
            max_evaluations: 5_000,
            rng_seed: seed,
            ..SearchConfig::default()
        }
    }

    #[test]
    fn quadratic_on_grid_is_solved_exactly() {
        // target on the 0.1 lattice: the unique grid optimum must be hit
        let problem = quadratic_1d(7.3);
        let result = run_search(&problem, &config(1), &DesignVector::new(vec![1.0])).unwrap();
        assert!(
            (result.best.values()[0] - 7.3).abs() < 1e-12,
            "best {} != 7.3",
            result.best
        );
        assert!(result.best_value <= 1e-24);
    }

    #[test]
    fn infeasible_start_is_rejected() {
        let problem = FnProblem::new(vec![0.0], vec![1.0], |_| (0.0, false));
        let err = run_search(&problem, &config(1), &DesignVector::new(vec![0.5]));
        assert!(matches!(err, Err(SearchError::InfeasibleStart(_))));
    }

    #[test]
    fn incumbent_is_monotone_and_trace_well_formed() {
        let problem = quadratic_1d(4.2);
        let result = run_search(&problem, &config(3), &DesignVector::new(vec![9.0])).unwrap();
        let mut prev_best = f64::INFINITY;
        let mut prev_evals = 0;
        for row in &result.trace {
            assert!(row.best_objective <= prev_best, "best must not worsen");
            assert!(row.evaluations > prev_evals, "evaluations must increase");
            prev_best = row.best_objective;
            prev_evals = row.evaluations;
        }
        assert!(result.evaluations <= 5_000);
    }

    #[test]
    fn fixed_seed_reproduces_the_trace() {
        let problem = FnProblem::new(vec![0.0, 0.0], vec![5.0, 5.0], |x| {
            ((x[0] - 2.0).powi(2) + (x[1] - 3.5).powi(2) + (x[0] * x[1]).sin(), true)
        });
        let a = run_search(&problem, &config(42), &DesignVector::new(vec![0.0, 0.0])).unwrap();
        let b = run_search(&problem, &config(42), &DesignVector::new(vec![0.0, 0.0])).unwrap();
        assert_eq!(a.trace, b.trace);
        assert_eq!(a.best, b.best);
    }

    #[test]
    fn stall_counter_schedule_fires_in_order() {
        // constant objective: nothing ever improves, so the counter
        // marches straight through the thresholds
        let problem = FnProblem::new(vec![0.0], vec![10.0], |_| (1.0, true));
        let cfg = SearchConfig {
            min_step: 0.1,
            initial_step: Some(0.2),
            max_evaluations: 10_000,
            rng_seed: 5,
            intensify_after: 4,
            diversify_after: 8,
            reduce_after: 12,
            ..SearchConfig::default()
        };
        let result = run_search(&problem, &cfg, &DesignVector::new(vec![5.0])).unwrap();
        let events: Vec<Event> = result.trace.iter().map(|r| r.event).collect();
        // stall hits 4 after four non-improving moves -> intensify fires
        assert_eq!(events[0..4], [Event::Move; 4]);
        assert_eq!(events[4], Event::Intensify);
        assert_eq!(events[5..8], [Event::Move; 3]);
        assert_eq!(events[8], Event::Diversify);
        assert_eq!(events[9..12], [Event::Move; 3]);
        // counter reaches 12: step 0.2 -> 0.1 with a rebase-and-explore
        assert_eq!(events[12], Event::Reduce);
        assert!((result.trace[12].step_size - 0.1).abs() < 1e-12);
        // second pass at minimum step: same cadence, then termination
        assert_eq!(result.termination, TerminationReason::StepConverged);
        assert_eq!(events.len(), 24);
    }

    #[test]
    fn improving_move_resets_the_stall_counter() {
        // strictly decreasing along +x: every move improves, so no
        // intensification should ever fire
        let problem = FnProblem::new(vec![0.0], vec![100.0], |x| (-x[0], true));
        let cfg = SearchConfig {
            min_step: 1.0,
            initial_step: Some(1.0),
            max_evaluations: 2_000,
            rng_seed: 0,
            ..SearchConfig::default()
        };
        let result = run_search(&problem, &cfg, &DesignVector::new(vec![0.0])).unwrap();
        assert_eq!(result.best.values()[0], 100.0);
        let pre_arrival = result
            .trace
            .iter()
            .take_while(|r| r.best_objective > -100.0)
            .collect::<Vec<_>>();
        assert!(pre_arrival.iter().all(|r| r.event == Event::Move));
    }

    #[test]
    fn budget_is_respected_exactly() {
        let problem = quadratic_1d(3.0);
        let cfg = SearchConfig {
            max_evaluations: 37,
            min_step: 0.1,
            initial_step: Some(0.5),
            rng_seed: 9,
            ..SearchConfig::default()
        };
        let result = run_search(&problem, &cfg, &DesignVector::new(vec![9.0])).unwrap();
        assert!(result.evaluations <= 37);
        assert_eq!(result.termination, TerminationReason::MaxEvaluations);
    }

    #[test]
    fn termination_at_min_step_raises_converged() {
        let problem = FnProblem::new(vec![0.0], vec![10.0], |_| (1.0, true));
        let cfg = SearchConfig {
            min_step: 0.5,
            initial_step: Some(0.5),
            max_evaluations: 100_000,
            rng_seed: 2,
            intensify_after: 4,
            diversify_after: 8,
            reduce_after: 12,
            ..SearchConfig::default()
        };
        let result = run_search(&problem, &cfg, &DesignVector::new(vec![5.0])).unwrap();
        assert_eq!(result.termination, TerminationReason::StepConverged);
        // step already minimal: exactly one stall cycle runs
        assert_eq!(result.trace.len(), 12);
    }
}
