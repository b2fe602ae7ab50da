//! The step grid: the lattice of admissible parameter values.
//!
//! Every candidate the search visits lies on the lattice
//! `lower[i] + j * step` clipped to `[lower[i], upper[i]]`. Keeping all
//! points on one lattice makes tabu comparisons exact (tolerance of half
//! a step) and keeps the search space finite and enumerable.

use rand::Rng;
use thiserror::Error;

use crate::design::DesignVector;

/// Small relative slack absorbing floating-point drift when converting
/// continuous values to lattice indices.
const INDEX_EPS: f64 = 1e-9;

#[derive(Debug, Error, PartialEq)]
pub enum GridError {
    #[error("grid step must be positive, got {0}")]
    NonPositiveStep(f64),
    #[error("variable {index}: lower bound {lower} is not below upper bound {upper}")]
    EmptyRange {
        index: usize,
        lower: f64,
        upper: f64,
    },
    #[error("bounds have mismatched dimensions: {lower} lower vs {upper} upper")]
    DimensionMismatch { lower: usize, upper: usize },
}

/// Bounded lattice with uniform spacing `step` in every variable.
#[derive(Clone, Debug)]
pub struct Grid {
    lower: Vec<f64>,
    upper: Vec<f64>,
    step: f64,
    /// Highest lattice index per variable; lattice point count is this + 1.
    max_index: Vec<u64>,
}

impl Grid {
    pub fn new(lower: Vec<f64>, upper: Vec<f64>, step: f64) -> Result<Self, GridError> {
        if step <= 0.0 {
            return Err(GridError::NonPositiveStep(step));
        }
        if lower.len() != upper.len() {
            return Err(GridError::DimensionMismatch {
                lower: lower.len(),
                upper: upper.len(),
            });
        }
        let mut max_index = Vec::with_capacity(lower.len());
        for (i, (&lo, &hi)) in lower.iter().zip(&upper).enumerate() {
            if lo.is_nan() || hi.is_nan() || lo >= hi {
                return Err(GridError::EmptyRange {
                    index: i,
                    lower: lo,
                    upper: hi,
                });
            }
            max_index.push(((hi - lo) / step + INDEX_EPS).floor() as u64);
        }
        Ok(Self {
            lower,
            upper,
            step,
            max_index,
        })
    }

    pub fn dimension(&self) -> usize {
        self.lower.len()
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    /// Tolerance for treating two lattice points as the same point.
    pub fn tolerance(&self) -> f64 {
        self.step / 2.0
    }

    /// Lattice point count per variable.
    pub fn points_per_axis(&self) -> Vec<u64> {
        self.max_index.iter().map(|&m| m + 1).collect()
    }

    /// Total number of lattice points, saturating at `u64::MAX`.
    pub fn total_points(&self) -> u64 {
        self.max_index
            .iter()
            .fold(1u64, |acc, &m| acc.saturating_mul(m + 1))
    }

    /// Nearest lattice point: round half-up to a multiple of the step
    /// from the lower bound, then clip into the bounded index range.
    pub fn snap(&self, values: &[f64]) -> DesignVector {
        debug_assert_eq!(values.len(), self.dimension());
        let snapped = values
            .iter()
            .enumerate()
            .map(|(i, &v)| self.lattice_value(i, self.index_of(i, v)))
            .collect();
        DesignVector::new(snapped)
    }

    /// True iff `point` lies on the lattice (within half-step tolerance).
    pub fn contains(&self, point: &DesignVector) -> bool {
        point.len() == self.dimension()
            && point
                .values()
                .iter()
                .enumerate()
                .all(|(i, &v)| (v - self.lattice_value(i, self.index_of(i, v))).abs() <= 1e-12 * self.step.max(1.0) + self.step * 1e-6)
    }

    /// Uniformly random lattice point.
    pub fn random_point<R: Rng>(&self, rng: &mut R) -> DesignVector {
        let values = (0..self.dimension())
            .map(|i| {
                let j = rng.gen_range(0..=self.max_index[i]);
                self.lattice_value(i, j)
            })
            .collect();
        DesignVector::new(values)
    }

    fn index_of(&self, axis: usize, value: f64) -> u64 {
        let raw = (value - self.lower[axis]) / self.step + 0.5 + INDEX_EPS;
        if raw <= 0.0 {
            0
        } else {
            (raw.floor() as u64).min(self.max_index[axis])
        }
    }

    fn lattice_value(&self, axis: usize, index: u64) -> f64 {
        self.lower[axis] + index as f64 * self.step
    }
}
