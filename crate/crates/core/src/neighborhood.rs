//! Move generation for the modified pattern search.
//!
//! Unlike the classical method, which accepts the first improving
//! coordinate move, every trial move in the neighborhood is evaluated
//! and the best non-tabu one is chosen. A successful exploration move is
//! extended along its own vector by the pattern factor.

use crate::design::DesignVector;
use crate::engine::memory::TabuList;
use crate::grid::Grid;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MoveSource {
    Explore,
    Pattern,
}

/// One evaluated trial move.
#[derive(Clone, Debug)]
pub struct CandidateMove {
    pub point: DesignVector,
    pub objective: f64,
    pub feasible: bool,
    pub tabu: bool,
    pub source: MoveSource,
}

/// All coordinate moves around `base`: for each variable in index order,
/// `+step` then `-step`, snapped to the grid. Moves that clip back onto
/// the base itself are omitted, so an interior base yields exactly `2d`
/// points.
pub fn generate_neighborhood(base: &DesignVector, step: f64, grid: &Grid) -> Vec<DesignVector> {
    let tol = grid.tolerance();
    let mut points = Vec::with_capacity(2 * base.len());
    let mut scratch = base.values().to_vec();
    for i in 0..base.len() {
        for sign in [1.0, -1.0] {
            let orig = scratch[i];
            scratch[i] = orig + sign * step;
            let snapped = grid.snap(&scratch);
            scratch[i] = orig;
            if !snapped.approx_eq(base, tol) {
                points.push(snapped);
            }
        }
    }
    points
}

/// Pick the best feasible candidate that is not tabu. A tabu candidate
/// is eligible only under aspiration: its value strictly improves on
/// the incumbent. Ties break on candidate order. `None` when every
/// candidate is tabu or infeasible.
pub fn select_move(candidates: &[CandidateMove], incumbent_value: f64) -> Option<usize> {
    let mut choice: Option<usize> = None;
    for (i, c) in candidates.iter().enumerate() {
        if !c.feasible {
            continue;
        }
        if c.tabu && c.objective >= incumbent_value {
            continue;
        }
        match choice {
            Some(j) if candidates[j].objective <= c.objective => {}
            _ => choice = Some(i),
        }
    }
    choice
}

/// Extend the accepted exploration move along its own vector:
/// `old_base + k * (new_base - old_base)`, clipped to bounds and
/// snapped to the grid. The caller adopts the result as the next base
/// only if it improves on the exploration point.
pub fn pattern_move(
    old_base: &DesignVector,
    new_base: &DesignVector,
    k: f64,
    grid: &Grid,
) -> DesignVector {
    let extended: Vec<f64> = old_base
        .values()
        .iter()
        .zip(new_base.values())
        .map(|(&o, &n)| o + k * (n - o))
        .collect();
    grid.snap(&extended)
}

/// Classify raw neighborhood points into evaluated candidates.
pub fn classify(
    point: DesignVector,
    objective: f64,
    feasible: bool,
    tabu: &TabuList,
    source: MoveSource,
) -> CandidateMove {
    let tabu = tabu.contains(&point);
    CandidateMove {
        point,
        objective,
        feasible,
        tabu,
        source,
    }
}
