//! Short-term and intermediate-term search memory.

use std::collections::VecDeque;

use crate::design::DesignVector;

/// Short-term recency memory: a FIFO of the last `capacity` visited
/// solutions. Moves back onto any of them are forbidden (tabu) unless
/// the aspiration criterion overrides.
#[derive(Clone, Debug)]
pub struct TabuList {
    entries: VecDeque<DesignVector>,
    capacity: usize,
    tolerance: f64,
}

impl TabuList {
    /// `tolerance` is the half-step membership tolerance applied per
    /// component.
    pub fn new(capacity: usize, tolerance: f64) -> Self {
        Self {
            entries: VecDeque::with_capacity(capacity),
            capacity,
            tolerance,
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn contains(&self, candidate: &DesignVector) -> bool {
        self.entries
            .iter()
            .any(|e| e.approx_eq(candidate, self.tolerance))
    }

    /// Record a visited solution, evicting the oldest entry when full.
    /// Re-pushing a point already in the list refreshes its recency
    /// instead of spending capacity on a duplicate.
    pub fn push(&mut self, point: DesignVector) {
        if let Some(pos) = self
            .entries
            .iter()
            .position(|e| e.approx_eq(&point, self.tolerance))
        {
            self.entries.remove(pos);
        } else if self.entries.len() == self.capacity {
            self.entries.pop_front();
        }
        self.entries.push_back(point);
    }
}

/// Intermediate-term memory: the `capacity` best solutions found so
/// far, kept sorted best-first. Updated only when a new incumbent
/// appears, not on every move.
#[derive(Clone, Debug)]
pub struct EliteList {
    entries: Vec<(DesignVector, f64)>,
    capacity: usize,
    tolerance: f64,
}

impl EliteList {
    pub fn new(capacity: usize, tolerance: f64) -> Self {
        Self {
            entries: Vec::with_capacity(capacity + 1),
            capacity,
            tolerance,
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[(DesignVector, f64)] {
        &self.entries
    }

    /// Insert a new incumbent. Duplicate designs are ignored; the worst
    /// entry is evicted once the list is full.
    pub fn insert(&mut self, point: DesignVector, value: f64) {
        if self
            .entries
            .iter()
            .any(|(e, _)| e.approx_eq(&point, self.tolerance))
        {
            return;
        }
        let pos = self
            .entries
            .partition_point(|(_, v)| *v <= value);
        self.entries.insert(pos, (point, value));
        self.entries.truncate(self.capacity);
    }

    /// Component-wise arithmetic mean of the stored designs. `None`
    /// when the list is empty.
    pub fn mean(&self) -> Option<Vec<f64>> {
        let first = self.entries.first()?;
        let dim = first.0.len();
        let mut acc = vec![0.0; dim];
        for (design, _) in &self.entries {
            for (a, &v) in acc.iter_mut().zip(design.values()) {
                *a += v;
            }
        }
        let n = self.entries.len() as f64;
        for a in &mut acc {
            *a /= n;
        }
        Some(acc)
    }
}
