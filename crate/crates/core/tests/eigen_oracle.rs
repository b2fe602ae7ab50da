//! The production frequency path (own Cholesky reduction + Jacobi
//! sweep) checked against two independent routes on randomized
//! benchmark instances: a dense full-spectrum reference from nalgebra
//! and an inertia-bisection root finder.

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tabutruss_core::design::DesignVector;
use tabutruss_core::fem::{
    assemble, fundamental_frequency, smallest_eigenvalue_by_inertia, standard_ten_bar_model,
    MassMatrix, Matrix, TrussModel,
};

fn to_nalgebra(m: &Matrix) -> DMatrix<f64> {
    let n = m.size();
    DMatrix::from_fn(n, n, |i, j| m[(i, j)])
}

/// Reference route: nalgebra's own Cholesky and symmetric eigensolver.
fn reference_omega1(k: &Matrix, m: &Matrix) -> f64 {
    let mk = to_nalgebra(k);
    let mm = to_nalgebra(m);
    let chol = mm.cholesky().expect("mass matrix must be positive definite");
    let l_inv = chol.l().try_inverse().expect("triangular inverse");
    let reduced = &l_inv * mk * l_inv.transpose();
    let sym = (&reduced + reduced.transpose()) * 0.5;
    let eig = sym.symmetric_eigen();
    eig.eigenvalues
        .iter()
        .cloned()
        .fold(f64::INFINITY, f64::min)
        .max(0.0)
        .sqrt()
}

fn random_instance(rng: &mut ChaCha8Rng) -> (TrussModel, DesignVector) {
    let mut model = standard_ten_bar_model(360.0, 1.0e7, 0.1, 1.0e5);
    model.dynamic_density = model.density / 386.088;
    // log-uniform areas across the benchmark's admissible range
    let areas: Vec<f64> = (0..10)
        .map(|_| {
            let t: f64 = rng.gen_range(0.0..1.0);
            0.1 * (33.5_f64 / 0.1).powf(t)
        })
        .collect();
    (model, DesignVector::new(areas))
}

#[test]
fn production_frequency_matches_dense_reference_on_randomized_instances() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for case in 0..100 {
        let (model, areas) = random_instance(&mut rng);
        let (k, m) = assemble(&model, &areas, MassMatrix::Consistent).unwrap();
        let ours = fundamental_frequency(&k, &m).unwrap();
        let reference = reference_omega1(&k, &m);
        let rel = (ours - reference).abs() / reference;
        assert!(
            rel <= 1e-6,
            "case {case}: omega1 {ours} vs reference {reference} (rel {rel:.3e}) at {areas}"
        );
    }
}

#[test]
fn inertia_bisection_agrees_with_production_on_randomized_instances() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for case in 0..25 {
        let (model, areas) = random_instance(&mut rng);
        let (k, m) = assemble(&model, &areas, MassMatrix::Consistent).unwrap();
        let ours = fundamental_frequency(&k, &m).unwrap();
        let lambda = smallest_eigenvalue_by_inertia(&k, &m, 1e-12).unwrap();
        let bisected = lambda.max(0.0).sqrt();
        let rel = (ours - bisected).abs() / bisected;
        assert!(
            rel <= 1e-5,
            "case {case}: omega1 {ours} vs bisection {bisected} (rel {rel:.3e})"
        );
    }
}

#[test]
fn lumped_mass_instances_also_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..20 {
        let (model, areas) = random_instance(&mut rng);
        let (k, m) = assemble(&model, &areas, MassMatrix::Lumped).unwrap();
        let ours = fundamental_frequency(&k, &m).unwrap();
        let reference = reference_omega1(&k, &m);
        assert!((ours - reference).abs() / reference <= 1e-6);
    }
}
