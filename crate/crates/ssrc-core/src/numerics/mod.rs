//! Dense complex linear algebra substrate shared by every other module:
//! Hermitian eigendecomposition, unitary matrix exponentials, log-space
//! combinatorics, Clebsch–Gordan coefficients, and quadrature weights.

pub mod cg;
pub mod eig;
pub mod factorial;
pub mod matrix;
pub mod quadrature;

pub use cg::{clebsch_gordan, clebsch_gordan_with, HalfInt};
pub use eig::{expi_hermitian, expi_hermitian_apply, hermitian_eig, HermitianEigen};
pub use factorial::{log_binomial, LogFactorialTable};
pub use matrix::{OperatorMatrix, TriState};
pub use quadrature::gauss_legendre;

/// Tolerance for structural checks (Hermiticity of constructed operators).
pub const TOL_STRUCTURAL: f64 = 1e-12;
/// Tolerance for unitarity checks.
pub const TOL_UNITARY: f64 = 1e-10;
/// Per-dimension factor for spectral residuals: `‖AV − VΛ‖ ≤ TOL_SPECTRAL · dim`.
pub const TOL_SPECTRAL: f64 = 1e-9;
