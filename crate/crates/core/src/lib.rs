//! Weighted seminorms on the matrix algebra `M_n(C)`.
//!
//! For a positive invertible weight `a`, this crate computes the a-operator
//! seminorm `|x|_a`, the a-numerical radius `v_a(x)` and range `V_a(x)`, and
//! the interpolating family
//!
//! ```text
//! |x|_{a,lambda}^2 = sup { lambda phi(x* a x) + (1 - lambda) |phi(a x)|^2 : phi in S_a }
//! ```
//!
//! where `S_a` is the set of positive functionals with `phi(a) = 1`. On top
//! of these it decides (a,lambda)-norm parallelism and (a,lambda)-Birkhoff-James
//! orthogonality and returns witness states certifying each decision.

pub mod acceptance;
pub mod error;
pub mod geometry;
pub mod linalg;
pub mod oracle;
pub mod seminorm;
pub mod weight;

pub use error::{Error, Result};
pub use linalg::{herm_eig, herm_inverse, psd_sqrt, ComplexMatrix, HermEig};
pub use seminorm::{
    a_norm, a_numradius, a_numradius_with_angle, a_numrange_boundary, al_norm, al_norm_of_sum, NormResult, RangeBoundary,
    SolverConfig,
};
pub use weight::{validate_weight, StateWitness, Weight};

pub use num_complex::Complex64;
