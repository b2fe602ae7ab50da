//! Small synthetic benchmark problems whose step grids are exhaustively
//! enumerable, used to check the search against ground-truth optima.

use crate::design::DesignVector;
use crate::engine::SearchConfig;
use crate::grid::Grid;
use crate::problem::{Evaluation, Problem, ProblemError};

/// A named, enumerable benchmark: a closed-form objective on a bounded
/// lattice together with the search settings used against it.
pub struct SyntheticProblem {
    pub name: &'static str,
    lower: Vec<f64>,
    upper: Vec<f64>,
    objective: fn(&[f64]) -> (f64, bool),
    pub config: SearchConfig,
    pub start: DesignVector,
}

impl Problem for SyntheticProblem {
    fn lower_bounds(&self) -> &[f64] {
        &self.lower
    }

    fn upper_bounds(&self) -> &[f64] {
        &self.upper
    }

    fn evaluate(&self, point: &DesignVector) -> Result<Evaluation, ProblemError> {
        let (value, feasible) = (self.objective)(point.values());
        Ok(Evaluation { value, feasible })
    }
}

impl SyntheticProblem {
    pub fn grid(&self) -> Grid {
        Grid::new(self.lower.clone(), self.upper.clone(), self.config.min_step)
            .expect("synthetic bounds are valid")
    }

    /// Exhaustive enumeration of the full lattice: the optimal feasible
    /// value and the number of points visited.
    pub fn enumerate_optimum(&self) -> (f64, u64) {
        let grid = self.grid();
        let axes = grid.points_per_axis();
        let d = axes.len();
        let mut index = vec![0u64; d];
        let mut best = f64::INFINITY;
        let mut count = 0u64;
        let mut point = vec![0.0; d];
        loop {
            for i in 0..d {
                point[i] = grid.lower()[i] + index[i] as f64 * grid.step();
            }
            let (value, feasible) = (self.objective)(&point);
            count += 1;
            if feasible && value < best {
                best = value;
            }
            // odometer increment
            let mut axis = 0;
            loop {
                if axis == d {
                    return (best, count);
                }
                index[axis] += 1;
                if index[axis] < axes[axis] {
                    break;
                }
                index[axis] = 0;
                axis += 1;
            }
        }
    }
}

fn tilted_double_well(x: &[f64]) -> (f64, bool) {
    // two basins near x = ±1; the tilt makes the left one global, so a
    // search started on the right has to climb the central ridge
    let well = (x[0] * x[0] - 1.0).powi(2);
    (well + 0.3 * x[0] + (x[1] - 0.5).powi(2), true)
}

fn eggcarton(x: &[f64]) -> (f64, bool) {
    let waves: f64 = x.iter().map(|&v| (3.0 * v).sin().powi(2)).sum();
    let bowl: f64 = x.iter().map(|&v| v * v).sum();
    (bowl + 8.0 * waves, true)
}

fn constrained_quadratic(x: &[f64]) -> (f64, bool) {
    let value = (x[0] - 1.3).powi(2) + (x[1] + 0.6).powi(2) + (x[2] - 2.1).powi(2)
        + 0.5 * x[0] * x[1];
    let feasible = x.iter().sum::<f64>() <= 2.0;
    (value, feasible)
}

/// The three stock problems: a tilted double-well bowl with two
/// grid-local minima, a multimodal bowl with a field of sine traps, and
/// a constrained quadratic whose optimum sits on the constraint
/// surface. Every grid has at most 10⁵ points.
pub fn standard_problems(seed: u64) -> Vec<SyntheticProblem> {
    let base = SearchConfig::default();
    vec![
        SyntheticProblem {
            name: "tilted_double_well",
            lower: vec![-2.0, -2.0],
            upper: vec![2.0, 2.0],
            objective: tilted_double_well,
            config: SearchConfig {
                min_step: 0.05,
                initial_step: Some(0.4),
                max_evaluations: 12_000,
                rng_seed: seed,
                ..base.clone()
            },
            // start inside the wrong (shallower) well
            start: DesignVector::new(vec![1.0, -1.5]),
        },
        SyntheticProblem {
            name: "eggcarton",
            lower: vec![-4.0, -4.0],
            upper: vec![4.0, 4.0],
            objective: eggcarton,
            config: SearchConfig {
                min_step: 0.08,
                initial_step: Some(0.8),
                max_evaluations: 12_000,
                rng_seed: seed,
                ..base.clone()
            },
            start: DesignVector::new(vec![-3.6, 3.6]),
        },
        SyntheticProblem {
            name: "constrained_quadratic",
            lower: vec![-3.0, -3.0, -3.0],
            upper: vec![3.0, 3.0, 3.0],
            objective: constrained_quadratic,
            config: SearchConfig {
                min_step: 0.15,
                initial_step: Some(0.6),
                max_evaluations: 12_000,
                rng_seed: seed,
                ..base
            },
            start: DesignVector::new(vec![-3.0, -3.0, -3.0]),
        },
    ]
}
