//! Higher-order Beverton–Holt recurrences
//! `z_{n+k} = z_n / (A_n + B_n z_n)`: direct iteration, closed-form
//! solutions, Lie point symmetries and their canonical coordinate,
//! periodic orbits, and equilibrium stability.
//!
//! All algorithms are generic over [`Scalar`], so the same code runs on
//! exact rationals, `f64` and complex numbers.

pub mod analysis;
pub mod error;
pub mod figures;
pub mod formula;
pub mod model;
pub mod scalar;
pub mod sequence;
pub mod solver;
pub mod symmetry;
pub mod trajectory;

pub use error::{Error, Result, SingularReason};
pub use formula::Formula;
pub use model::{coefficients_from_ecology, Ecology, Mode, Model};
pub use num_complex::Complex64;
pub use scalar::{Backend, Rational, Scalar};
pub use sequence::CoefficientSequence;
pub use solver::{
    closed_form_constant, closed_form_ecological, closed_form_general, closed_form_k_periodic,
    compare_methods, iterate, Comparison, InitialConditions, Method, MethodComparison,
};
pub use trajectory::{Status, Trajectory};
pub use symmetry::{
    build_alpha, build_beta, build_gamma, build_lambda, canonical_coordinate,
    characteristic_value, linearized_trajectory, symmetry_residual, zeta1_obstruction,
    FamilyKind, InfinitesimalFamily, Linearization,
};
pub use analysis::{
    characteristic_roots, classify, classify_all, detect_period, equilibria,
    periodic_initial_conditions, predict_period, sufficient_stability, Certificate,
    EquilibriumReport, PeriodReport, Stability,
};
