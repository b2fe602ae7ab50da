//! Design-space point type shared by the search engine and the evaluators.

use std::fmt;

use serde::{Deserialize, Serialize};

/// A point in the design space: one value per design variable.
///
/// For the truss benchmarks the components are the ten member
/// cross-sectional areas, expressed in the problem's display units
/// (e.g. multiples of 10⁻² m² for the metric case, in² for the
/// imperial case).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DesignVector(Vec<f64>);

impl DesignVector {
    pub fn new(values: Vec<f64>) -> Self {
        Self(values)
    }

    pub fn uniform(value: f64, dimension: usize) -> Self {
        Self(vec![value; dimension])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn values_mut(&mut self) -> &mut [f64] {
        &mut self.0
    }

    /// Component-wise closeness test used for tabu membership and
    /// duplicate detection: true iff `|a_i - b_i| <= tol` for every i.
    pub fn approx_eq(&self, other: &DesignVector, tol: f64) -> bool {
        self.0.len() == other.0.len()
            && self
                .0
                .iter()
                .zip(&other.0)
                .all(|(a, b)| (a - b).abs() <= tol)
    }
}

impl fmt::Display for DesignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

impl From<Vec<f64>> for DesignVector {
    fn from(values: Vec<f64>) -> Self {
        Self(values)
    }
}

impl From<&[f64]> for DesignVector {
    fn from(values: &[f64]) -> Self {
        Self(values.to_vec())
    }
}

impl std::ops::Index<usize> for DesignVector {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}
