//! Variable-step-size tabu search over bounded parameter lattices, with
//! a from-scratch pin-jointed truss finite-element evaluator and the
//! objective layer tying the two together.
//!
//! The crate splits into four parts:
//!
//! * [`engine`] — the search itself: short-term (recency) and
//!   intermediate-term (elite) memory, counter-driven intensification,
//!   diversification and step reduction;
//! * [`neighborhood`] — coordinate move generation, best-non-tabu
//!   selection and pattern extension;
//! * [`fem`] — the ten-bar-truss analysis: stiffness/mass assembly,
//!   static solve, member stresses, total mass and the fundamental
//!   natural frequency;
//! * [`objectives`] — constraint checking, the single objectives (mass,
//!   negated frequency, total displacement) and their game-theoretic
//!   compound.

pub mod design;
pub mod engine;
pub mod fem;
pub mod grid;
pub mod neighborhood;
pub mod objectives;
pub mod problem;
pub mod synthetic;

pub use design::DesignVector;
pub use engine::{run_search, SearchConfig, SearchResult};
pub use grid::Grid;
pub use problem::{Evaluation, Problem};
