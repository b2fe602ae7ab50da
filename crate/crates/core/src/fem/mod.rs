//! From-scratch planar truss finite elements and the small dense
//! linear-algebra kernels behind them.

pub mod analysis;
pub mod linalg;
pub mod model;

pub use analysis::{
    analyze, assemble, element_mass, element_stiffness, fundamental_frequency, load_vector,
    member_stress, solve_static, total_displacement, total_mass, AnalysisResult, FemError,
    MassMatrix,
};
pub use linalg::{
    generalized_eigenvalues, jacobi_eigenvalues, smallest_eigenvalue_by_inertia, Cholesky,
    LinalgError, Matrix,
};
pub use model::{standard_ten_bar_model, ModelError, TrussModel};
