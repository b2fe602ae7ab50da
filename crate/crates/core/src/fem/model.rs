//! Truss geometry, supports, loads and material data.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ModelError {
    #[error("member {index} references node {node}, but only {count} nodes exist")]
    BadNodeIndex {
        index: usize,
        node: usize,
        count: usize,
    },
    #[error("member {index} connects node {node} to itself")]
    DegenerateMember { index: usize, node: usize },
    #[error("member {index} has zero length")]
    ZeroLength { index: usize },
    #[error("support references unknown node {node}")]
    BadSupport { node: usize },
}

/// A pin-jointed planar truss.
///
/// `density` is the density used for the mass objective (a weight
/// density in the imperial benchmark); `dynamic_density` is the density
/// entering the mass matrix for the frequency computation. They are
/// equal for metric models and differ by the gravitational constant for
/// imperial ones.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TrussModel {
    /// Node coordinates (x, y), length units.
    pub nodes: Vec<(f64, f64)>,
    /// Member endpoints as node index pairs.
    pub members: Vec<(usize, usize)>,
    /// Fully fixed node indices, ascending.
    pub supports: Vec<usize>,
    /// Node index → applied (Fx, Fy), force units.
    pub loads: BTreeMap<usize, (f64, f64)>,
    /// Young's modulus, stress units.
    pub youngs_modulus: f64,
    /// Density for the mass objective.
    pub density: f64,
    /// Density for the dynamic mass matrix.
    pub dynamic_density: f64,
}

impl TrussModel {
    pub fn validate(&self) -> Result<(), ModelError> {
        let count = self.nodes.len();
        for (index, &(a, b)) in self.members.iter().enumerate() {
            for node in [a, b] {
                if node >= count {
                    return Err(ModelError::BadNodeIndex { index, node, count });
                }
            }
            if a == b {
                return Err(ModelError::DegenerateMember { index, node: a });
            }
            if self.member_length(index) == 0.0 {
                return Err(ModelError::ZeroLength { index });
            }
        }
        for &node in &self.supports {
            if node >= count {
                return Err(ModelError::BadSupport { node });
            }
        }
        Ok(())
    }

    pub fn member_count(&self) -> usize {
        self.members.len()
    }

    pub fn member_length(&self, index: usize) -> f64 {
        let (i, j) = self.members[index];
        let (xi, yi) = self.nodes[i];
        let (xj, yj) = self.nodes[j];
        ((xj - xi).powi(2) + (yj - yi).powi(2)).sqrt()
    }

    /// Direction cosines (c, s) and length of a member.
    pub fn member_geometry(&self, index: usize) -> (f64, f64, f64) {
        let (i, j) = self.members[index];
        let (xi, yi) = self.nodes[i];
        let (xj, yj) = self.nodes[j];
        let length = self.member_length(index);
        ((xj - xi) / length, (yj - yi) / length, length)
    }

    /// Free node indices in ascending order.
    pub fn free_nodes(&self) -> Vec<usize> {
        (0..self.nodes.len())
            .filter(|n| !self.supports.contains(n))
            .collect()
    }

    /// Global DOF index → reduced index over free DOFs, with the fixed
    /// ordering (node ascending, x before y).
    pub fn free_dof_map(&self) -> Vec<Option<usize>> {
        let mut map = vec![None; 2 * self.nodes.len()];
        let mut next = 0;
        for node in self.free_nodes() {
            map[2 * node] = Some(next);
            map[2 * node + 1] = Some(next + 1);
            next += 2;
        }
        map
    }

    pub fn free_dof_count(&self) -> usize {
        2 * self.free_nodes().len()
    }
}

/// The ten-bar cantilever benchmark geometry.
///
/// Nodes (with `L` the bay length): n1 (2L, L), n2 (2L, 0), n3 (L, L),
/// n4 (L, 0), n5 (0, L), n6 (0, 0); n5 and n6 are fully fixed and the
/// load `F` acts straight down at n2 and n4. Members 1–6 have length L
/// (the four chords and the two verticals n3-n4 and n1-n2), members
/// 7–10 are the √2·L diagonals:
///
/// ```text
///   n5 --m1-- n3 --m2-- n1
///   |  m7/m8  |  m9/m10 |        m7: n5-n4   m8: n6-n3
///   n6 --m3-- n4 --m4-- n2       m9: n3-n2   m10: n4-n1
/// ```
pub fn standard_ten_bar_model(length: f64, youngs_modulus: f64, density: f64, load: f64) -> TrussModel {
    let l = length;
    let nodes = vec![
        (2.0 * l, l),   // n1
        (2.0 * l, 0.0), // n2
        (l, l),         // n3
        (l, 0.0),       // n4
        (0.0, l),       // n5
        (0.0, 0.0),     // n6
    ];
    let members = vec![
        (4, 2), // m1: n5-n3
        (2, 0), // m2: n3-n1
        (5, 3), // m3: n6-n4
        (3, 1), // m4: n4-n2
        (2, 3), // m5: n3-n4
        (0, 1), // m6: n1-n2
        (4, 3), // m7: n5-n4
        (5, 2), // m8: n6-n3
        (2, 1), // m9: n3-n2
        (3, 0), // m10: n4-n1
    ];
    let mut loads = BTreeMap::new();
    loads.insert(1, (0.0, -load));
    loads.insert(3, (0.0, -load));
    TrussModel {
        nodes,
        members,
        supports: vec![4, 5],
        loads,
        youngs_modulus,
        density,
        dynamic_density: density,
    }
}
