//! Direct stiffness analysis of a pin-jointed truss: assembly, static
//! solve, member stresses, total mass and the fundamental frequency.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::design::DesignVector;
use crate::fem::linalg::{
    generalized_eigenvalues, Cholesky, LinalgError, Matrix,
};
use crate::fem::model::{ModelError, TrussModel};

#[derive(Debug, Error)]
pub enum FemError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("member {index} needs a positive area, got {area}")]
    NonPositiveArea { index: usize, area: f64 },
    #[error("area vector has {got} entries, model has {want} members")]
    AreaCount { got: usize, want: usize },
    #[error("stiffness matrix is singular: the structure is kinematically unstable ({0})")]
    UnstableStructure(LinalgError),
    #[error("mass matrix is not positive definite ({0})")]
    DegenerateMass(LinalgError),
    #[error("linear solver failed: {0}")]
    Solver(LinalgError),
}

/// Element mass formulation. The consistent matrix follows the same
/// linear shape functions as the stiffness; the lumped variant splits
/// the bar mass evenly over its two nodes.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MassMatrix {
    #[default]
    Consistent,
    Lumped,
}

/// Everything one analysis produces for a given area vector.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AnalysisResult {
    /// (node index, δx, δy) for each free node, ascending node order.
    pub displacements: Vec<(usize, f64, f64)>,
    /// Axial stress per member, tension positive.
    pub stresses: Vec<f64>,
    /// Total mass `ρ Σ Aᵢ ℓᵢ`.
    pub mass: f64,
    /// Fundamental natural frequency, rad/s.
    pub omega1: f64,
    /// Fundamental natural frequency, Hz.
    pub frequency_hz: f64,
    /// Sum of the resultant displacements of the free nodes.
    pub total_displacement: f64,
    /// Relative equilibrium residual ‖K·u − F‖ / ‖F‖ of the solve.
    pub residual: f64,
}

/// 4×4 element stiffness in global coordinates over the DOF order
/// (uxi, uyi, uxj, uyj): `(EA/ℓ)` times the rank-one block built from
/// the direction cosines.
pub fn element_stiffness(
    model: &TrussModel,
    member: usize,
    area: f64,
) -> Result<[[f64; 4]; 4], FemError> {
    if area.is_nan() || area <= 0.0 {
        return Err(FemError::NonPositiveArea {
            index: member,
            area,
        });
    }
    let (c, s, length) = model.member_geometry(member);
    if length == 0.0 {
        return Err(FemError::Model(ModelError::ZeroLength { index: member }));
    }
    let k = model.youngs_modulus * area / length;
    let cc = k * c * c;
    let cs = k * c * s;
    let ss = k * s * s;
    Ok([
        [cc, cs, -cc, -cs],
        [cs, ss, -cs, -ss],
        [-cc, -cs, cc, cs],
        [-cs, -ss, cs, ss],
    ])
}

/// 4×4 element mass in global coordinates. The consistent form
/// `(ρAℓ/6)·[[2,0,1,0],[0,2,0,1],[1,0,2,0],[0,1,0,2]]` is rotation
/// invariant, so no transformation is needed.
pub fn element_mass(
    model: &TrussModel,
    member: usize,
    area: f64,
    kind: MassMatrix,
) -> Result<[[f64; 4]; 4], FemError> {
    if area.is_nan() || area <= 0.0 {
        return Err(FemError::NonPositiveArea {
            index: member,
            area,
        });
    }
    let (_, _, length) = model.member_geometry(member);
    if length == 0.0 {
        return Err(FemError::Model(ModelError::ZeroLength { index: member }));
    }
    let total = model.dynamic_density * area * length;
    Ok(match kind {
        MassMatrix::Consistent => {
            let d = total / 3.0;
            let o = total / 6.0;
            [
                [d, 0.0, o, 0.0],
                [0.0, d, 0.0, o],
                [o, 0.0, d, 0.0],
                [0.0, o, 0.0, d],
            ]
        }
        MassMatrix::Lumped => {
            let h = total / 2.0;
            [
                [h, 0.0, 0.0, 0.0],
                [0.0, h, 0.0, 0.0],
                [0.0, 0.0, h, 0.0],
                [0.0, 0.0, 0.0, h],
            ]
        }
    })
}

/// Assemble the reduced stiffness and mass matrices over the free DOFs,
/// ordered node-ascending with x before y.
pub fn assemble(
    model: &TrussModel,
    areas: &DesignVector,
    mass_kind: MassMatrix,
) -> Result<(Matrix, Matrix), FemError> {
    if areas.len() != model.member_count() {
        return Err(FemError::AreaCount {
            got: areas.len(),
            want: model.member_count(),
        });
    }
    let dof_map = model.free_dof_map();
    let n = model.free_dof_count();
    let mut k = Matrix::zeros(n);
    let mut m = Matrix::zeros(n);
    for (member, &area) in areas.values().iter().enumerate() {
        let ke = element_stiffness(model, member, area)?;
        let me = element_mass(model, member, area, mass_kind)?;
        let (a, b) = model.members[member];
        let dofs = [2 * a, 2 * a + 1, 2 * b, 2 * b + 1];
        for (p, &dof_p) in dofs.iter().enumerate() {
            let Some(i) = dof_map[dof_p] else { continue };
            for (q, &dof_q) in dofs.iter().enumerate() {
                let Some(j) = dof_map[dof_q] else { continue };
                k[(i, j)] += ke[p][q];
                m[(i, j)] += me[p][q];
            }
        }
    }
    Ok((k, m))
}

/// Reduced load vector matching the free-DOF ordering.
pub fn load_vector(model: &TrussModel) -> Vec<f64> {
    let dof_map = model.free_dof_map();
    let mut f = vec![0.0; model.free_dof_count()];
    for (&node, &(fx, fy)) in &model.loads {
        if let Some(i) = dof_map[2 * node] {
            f[i] = fx;
        }
        if let Some(i) = dof_map[2 * node + 1] {
            f[i] = fy;
        }
    }
    f
}

/// Direct symmetric solve of `K u = f`.
pub fn solve_static(k: &Matrix, loads: &[f64]) -> Result<Vec<f64>, FemError> {
    let chol = Cholesky::factor(k).map_err(FemError::UnstableStructure)?;
    Ok(chol.solve(loads))
}

/// Axial stress in one member from the full-length displacement vector
/// (supported DOFs zero): `σ = (E/ℓ)(−c·uxi − s·uyi + c·uxj + s·uyj)`,
/// tension positive.
pub fn member_stress(model: &TrussModel, member: usize, full_displacements: &[f64]) -> f64 {
    let (c, s, length) = model.member_geometry(member);
    let (i, j) = model.members[member];
    let elongation = -c * full_displacements[2 * i] - s * full_displacements[2 * i + 1]
        + c * full_displacements[2 * j]
        + s * full_displacements[2 * j + 1];
    model.youngs_modulus / length * elongation
}

/// Total mass `ρ Σ Aᵢ ℓᵢ`.
pub fn total_mass(model: &TrussModel, areas: &DesignVector) -> f64 {
    model.density
        * areas
            .values()
            .iter()
            .enumerate()
            .map(|(i, &a)| a * model.member_length(i))
            .sum::<f64>()
}

/// Smallest natural frequency ω₁ (rad/s): the smallest root of
/// `det(K − ω²M) = 0`, via reduction to a standard symmetric
/// eigenproblem through the Cholesky factor of `M`.
pub fn fundamental_frequency(k: &Matrix, m: &Matrix) -> Result<f64, FemError> {
    let eig = generalized_eigenvalues(k, m).map_err(FemError::DegenerateMass)?;
    let smallest = eig.first().copied().unwrap_or(0.0);
    Ok(smallest.max(0.0).sqrt())
}

/// Sum of the resultant displacement over the free nodes.
pub fn total_displacement(displacements: &[(usize, f64, f64)]) -> f64 {
    displacements
        .iter()
        .map(|&(_, dx, dy)| dx.hypot(dy))
        .sum()
}

/// Full pipeline: assemble, solve the static system, recover stresses,
/// mass, the fundamental frequency and the displacement total.
pub fn analyze(
    model: &TrussModel,
    areas: &DesignVector,
    mass_kind: MassMatrix,
) -> Result<AnalysisResult, FemError> {
    let (k, m) = assemble(model, areas, mass_kind)?;
    let f = load_vector(model);
    let u = solve_static(&k, &f)?;

    let residual = {
        let ku = k.mul_vec(&u);
        let norm_f = f.iter().map(|v| v * v).sum::<f64>().sqrt();
        let norm_r = ku
            .iter()
            .zip(&f)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt();
        if norm_f > 0.0 {
            norm_r / norm_f
        } else {
            norm_r
        }
    };

    let dof_map = model.free_dof_map();
    let mut full = vec![0.0; 2 * model.nodes.len()];
    for (global, reduced) in dof_map.iter().enumerate() {
        if let Some(r) = reduced {
            full[global] = u[*r];
        }
    }
    let displacements: Vec<(usize, f64, f64)> = model
        .free_nodes()
        .iter()
        .map(|&n| (n, full[2 * n], full[2 * n + 1]))
        .collect();
    let stresses: Vec<f64> = (0..model.member_count())
        .map(|i| member_stress(model, i, &full))
        .collect();
    let omega1 = fundamental_frequency(&k, &m)?;

    Ok(AnalysisResult {
        total_displacement: total_displacement(&displacements),
        displacements,
        stresses,
        mass: total_mass(model, areas),
        omega1,
        frequency_hz: omega1 / (2.0 * std::f64::consts::PI),
        residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fem::model::standard_ten_bar_model;
    use approx::assert_relative_eq;
    use std::collections::BTreeMap;

    /// Two-node model along an arbitrary direction, node 0 fixed.
    fn bar(dx: f64, dy: f64) -> TrussModel {
        TrussModel {
            nodes: vec![(0.0, 0.0), (dx, dy)],
            members: vec![(0, 1)],
            supports: vec![0],
            loads: BTreeMap::new(),
            youngs_modulus: 1.0,
            density: 1.0,
            dynamic_density: 1.0,
        }
    }

    #[test]
    fn horizontal_bar_stiffness() {
        let model = bar(1.0, 0.0);
        let ke = element_stiffness(&model, 0, 1.0).unwrap();
        let expected = [
            [1.0, 0.0, -1.0, 0.0],
            [0.0, 0.0, 0.0, 0.0],
            [-1.0, 0.0, 1.0, 0.0],
            [0.0, 0.0, 0.0, 0.0],
        ];
        assert_eq!(ke, expected);
    }

    #[test]
    fn vertical_bar_stiffness() {
        let model = bar(0.0, 1.0);
        let ke = element_stiffness(&model, 0, 1.0).unwrap();
        for (i, row) in ke.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                let expect = match (i % 2, j % 2) {
                    (1, 1) => {
                        if i == j {
                            1.0
                        } else {
                            -1.0
                        }
                    }
                    _ => 0.0,
                };
                assert_relative_eq!(v, expect);
            }
        }
    }

    #[test]
    fn diagonal_bar_stiffness_entries() {
        // 45° bar of length √2: every entry is ±1/(2√2)
        let model = bar(1.0, 1.0);
        let ke = element_stiffness(&model, 0, 1.0).unwrap();
        let magnitude = 1.0 / (2.0 * 2.0_f64.sqrt());
        for row in &ke {
            for &v in row {
                assert_relative_eq!(v.abs(), magnitude, max_relative = 1e-14);
            }
        }
        assert!(ke[0][0] > 0.0 && ke[0][2] < 0.0);
    }

    #[test]
    fn consistent_mass_entries_and_row_sums() {
        let model = bar(1.0, 0.0);
        let me = element_mass(&model, 0, 1.0, MassMatrix::Consistent).unwrap();
        assert_relative_eq!(me[0][0], 1.0 / 3.0);
        assert_relative_eq!(me[0][2], 1.0 / 6.0);
        // mass conservation: entries per direction sum to ρAℓ
        let x_total: f64 = [0, 2]
            .iter()
            .flat_map(|&i| [0, 2].iter().map(move |&j| me[i][j]))
            .sum();
        assert_relative_eq!(x_total, 1.0);
    }

    #[test]
    fn consistent_mass_is_rotation_invariant() {
        let horizontal = element_mass(&bar(2.0, 0.0), 0, 1.0, MassMatrix::Consistent).unwrap();
        let diagonal = element_mass(
            &bar(2.0 / 2.0_f64.sqrt(), 2.0 / 2.0_f64.sqrt()),
            0,
            1.0,
            MassMatrix::Consistent,
        )
        .unwrap();
        for i in 0..4 {
            for j in 0..4 {
                assert_relative_eq!(horizontal[i][j], diagonal[i][j], max_relative = 1e-12);
            }
        }
    }

    #[test]
    fn zero_or_negative_area_is_rejected() {
        let model = bar(1.0, 0.0);
        assert!(matches!(
            element_stiffness(&model, 0, 0.0),
            Err(FemError::NonPositiveArea { .. })
        ));
        assert!(matches!(
            element_mass(&model, 0, -1.0, MassMatrix::Consistent),
            Err(FemError::NonPositiveArea { .. })
        ));
    }

    fn unit_ten_bar() -> TrussModel {
        standard_ten_bar_model(1.0, 1.0, 1.0, 1.0)
    }

    #[test]
    fn assembled_matrices_are_symmetric() {
        let model = unit_ten_bar();
        let areas = DesignVector::uniform(1.0, 10);
        let (k, m) = assemble(&model, &areas, MassMatrix::Consistent).unwrap();
        assert_eq!(k.max_asymmetry(), 0.0);
        assert_eq!(m.max_asymmetry(), 0.0);
    }

    #[test]
    fn doubling_areas_doubles_the_matrices() {
        let model = unit_ten_bar();
        let (k1, m1) = assemble(&model, &DesignVector::uniform(1.0, 10), MassMatrix::Consistent).unwrap();
        let (k2, m2) = assemble(&model, &DesignVector::uniform(2.0, 10), MassMatrix::Consistent).unwrap();
        for i in 0..8 {
            for j in 0..8 {
                assert_relative_eq!(k2[(i, j)], 2.0 * k1[(i, j)], max_relative = 1e-14);
                assert_relative_eq!(m2[(i, j)], 2.0 * m1[(i, j)], max_relative = 1e-14);
            }
        }
    }

    #[test]
    fn hand_assembled_row_for_unit_properties() {
        // Row of DOF n1x (reduced index 0) for E = A = L = 1. Members
        // at n1: m2 (n3→n1, horizontal), m6 (n1→n2, vertical),
        // m10 (n4→n1, 45° up, length √2). With r = 1/(2√2):
        //   K[n1x, n1x] = 1 + r,   K[n1x, n1y] = r,
        //   K[n1x, n2x] = 0,       K[n1x, n3x] = -1,
        //   K[n1x, n4x] = -r,      K[n1x, n4y] = -r.
        let model = unit_ten_bar();
        let (k, _) = assemble(&model, &DesignVector::uniform(1.0, 10), MassMatrix::Consistent).unwrap();
        let r = 1.0 / (2.0 * 2.0_f64.sqrt());
        let expected = [1.0 + r, r, 0.0, 0.0, -1.0, 0.0, -r, -r];
        for (j, &e) in expected.iter().enumerate() {
            assert_relative_eq!(k[(0, j)], e, max_relative = 1e-14, epsilon = 1e-15);
        }
    }

    #[test]
    fn zero_load_means_zero_displacement() {
        let mut model = unit_ten_bar();
        model.loads.clear();
        let result = analyze(&model, &DesignVector::uniform(1.0, 10), MassMatrix::Consistent).unwrap();
        for (_, dx, dy) in result.displacements {
            assert_eq!(dx, 0.0);
            assert_eq!(dy, 0.0);
        }
    }

    #[test]
    fn diagonal_system_solves_exactly() {
        let k = Matrix::from_rows(&[&[2.0, 0.0], &[0.0, 2.0]]);
        let u = solve_static(&k, &[4.0, 4.0]).unwrap();
        assert_relative_eq!(u[0], 2.0, max_relative = 1e-15);
        assert_relative_eq!(u[1], 2.0, max_relative = 1e-15);
    }

    #[test]
    fn rigid_translation_produces_zero_stress() {
        let model = bar(1.0, 1.0);
        // both ends displaced identically
        let full = vec![0.3, -0.2, 0.3, -0.2];
        assert_relative_eq!(member_stress(&model, 0, &full), 0.0);
    }

    #[test]
    fn stress_is_youngs_modulus_times_strain() {
        let model = bar(1.0, 0.0);
        let full = vec![0.0, 0.0, 0.001, 0.0];
        assert_relative_eq!(member_stress(&model, 0, &full), 0.001);
    }

    #[test]
    fn one_dof_frequency() {
        let k = Matrix::from_rows(&[&[2.0]]);
        let m = Matrix::from_rows(&[&[0.5]]);
        assert_relative_eq!(fundamental_frequency(&k, &m).unwrap(), 2.0, max_relative = 1e-12);
    }

    #[test]
    fn two_dof_frequency_from_hand_spectrum() {
        let k = Matrix::from_rows(&[&[2.0, -1.0], &[-1.0, 2.0]]);
        let m = Matrix::identity(2);
        assert_relative_eq!(fundamental_frequency(&k, &m).unwrap(), 1.0, max_relative = 1e-12);
    }

    #[test]
    fn displacement_total_is_sum_of_norms() {
        assert_eq!(total_displacement(&[]), 0.0);
        let d = vec![(0, 3.0, 4.0), (1, 0.0, 0.0)];
        assert_relative_eq!(total_displacement(&d), 5.0);
    }

    #[test]
    fn uniform_area_scaling_preserves_frequency() {
        let model = standard_ten_bar_model(3.0, 2.07e11, 7850.0, 5.0e5);
        let a = DesignVector::uniform(0.00761, 10);
        let b = DesignVector::uniform(2.0 * 0.00761, 10);
        let ra = analyze(&model, &a, MassMatrix::Consistent).unwrap();
        let rb = analyze(&model, &b, MassMatrix::Consistent).unwrap();
        assert_relative_eq!(ra.omega1, rb.omega1, max_relative = 1e-8);
    }

    #[test]
    fn equilibrium_residual_is_tiny() {
        let model = standard_ten_bar_model(3.0, 2.07e11, 7850.0, 5.0e5);
        let result = analyze(&model, &DesignVector::uniform(0.00761, 10), MassMatrix::Consistent).unwrap();
        assert!(result.residual <= 1e-10, "residual {}", result.residual);
    }

    #[test]
    fn closed_form_mass_for_uniform_areas() {
        // six length-L members and four length-L√2 members
        let model = standard_ten_bar_model(3.0, 2.07e11, 7850.0, 5.0e5);
        let areas = DesignVector::uniform(0.00761, 10);
        let expected = 7850.0 * 3.0 * 0.00761 * (6.0 + 4.0 * 2.0_f64.sqrt());
        assert_relative_eq!(total_mass(&model, &areas), expected, max_relative = 1e-13);
        assert_relative_eq!(expected, 2089.09, max_relative = 1e-5);
    }

    #[test]
    fn mass_scales_linearly_with_areas() {
        let model = unit_ten_bar();
        let a = DesignVector::new((1..=10).map(|i| i as f64 * 0.1).collect());
        let scaled = DesignVector::new(a.values().iter().map(|v| v * 3.0).collect());
        assert_relative_eq!(
            total_mass(&model, &scaled),
            3.0 * total_mass(&model, &a),
            max_relative = 1e-14
        );
    }
}
