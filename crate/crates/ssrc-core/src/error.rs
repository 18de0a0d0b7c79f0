//! Crate-wide error type.

use core::fmt;

/// Errors reported by constructors and operations.
#[derive(Debug, Clone, PartialEq)]
#[non_exhaustive]
pub enum Error {
    /// A matrix that must be Hermitian failed the symmetry check.
    NonHermitianInput { defect: f64 },
    /// Combinatorial argument outside the supported range.
    OutOfRange { what: &'static str },
    /// Angular momentum arguments violate |m| ≤ j, parity, or the triangle
    /// inequality.
    InvalidAngularMomenta,
    /// A state vector or density matrix failed its normalization invariant.
    NotNormalized { sum: f64 },
    /// Density matrix failed Hermiticity, trace, or positivity checks.
    InvalidDensityMatrix { what: &'static str },
    /// Operator and state dimensions do not match.
    DimensionMismatch { expected: usize, got: usize },
    /// Requested amplitude or grid extends beyond the truncation-safe disk.
    TruncationUnsafe { alpha_abs: f64, n_max: usize },
    /// Displacement amplitude too large for the requested photon number.
    AlphaTooLarge { alpha_sq: f64, n: usize },
    /// The double-sum basis change would overflow its log-space ceiling.
    OverflowRisk { n: usize, ceiling: usize },
    /// Discrete phase-space construction requires an odd dimension ≥ 3.
    EvenDimension { d: usize },
    /// Code dimension must be odd.
    EvenCodeDimension { k: usize },
    /// A transform supplied to an encoding is not unitary.
    NonUnitaryTransform { defect: f64 },
    /// The constructed encoding violates the Heisenberg–Weyl relation.
    HwRelationViolated { residual: f64 },
    /// Embedding columns are not orthonormal.
    NonIsometric { defect: f64 },
    /// The state is outside the continuous-variable regime required by the
    /// experiment.
    OutsideCvRegime { mean_na: f64, bound: f64 },
    /// No kernel prefactor convention satisfied the Stratonovich–Weyl axioms.
    ConventionCheckFailed { residual: f64 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NonHermitianInput { defect } => {
                write!(f, "input matrix is not Hermitian (defect {defect:.3e})")
            }
            Error::OutOfRange { what } => write!(f, "argument out of range: {what}"),
            Error::InvalidAngularMomenta => {
                write!(f, "invalid angular momentum arguments")
            }
            Error::NotNormalized { sum } => {
                write!(f, "state not normalized (Σ|c|² = {sum:.12})")
            }
            Error::InvalidDensityMatrix { what } => {
                write!(f, "invalid density matrix: {what}")
            }
            Error::DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {expected}, got {got}")
            }
            Error::TruncationUnsafe { alpha_abs, n_max } => write!(
                f,
                "|α| = {alpha_abs:.3} unsafe for Fock cutoff n_max = {n_max}"
            ),
            Error::AlphaTooLarge { alpha_sq, n } => {
                write!(f, "|α|² = {alpha_sq:.3} too large for N = {n}")
            }
            Error::OverflowRisk { n, ceiling } => {
                write!(f, "N = {n} exceeds the log-space ceiling {ceiling}")
            }
            Error::EvenDimension { d } => {
                write!(f, "dimension d = {d} must be odd and ≥ 3")
            }
            Error::EvenCodeDimension { k } => {
                write!(f, "code dimension k = {k} must be odd")
            }
            Error::NonUnitaryTransform { defect } => {
                write!(f, "transform is not unitary (defect {defect:.3e})")
            }
            Error::HwRelationViolated { residual } => write!(
                f,
                "Heisenberg–Weyl relation violated (residual {residual:.3e})"
            ),
            Error::NonIsometric { defect } => {
                write!(f, "embedding is not an isometry (defect {defect:.3e})")
            }
            Error::OutsideCvRegime { mean_na, bound } => write!(
                f,
                "state outside the CV regime (⟨n_a⟩ = {mean_na:.3} > {bound:.3})"
            ),
            Error::ConventionCheckFailed { residual } => write!(
                f,
                "no kernel convention satisfied the SW axioms (residual {residual:.3e})"
            ),
        }
    }
}

impl core::error::Error for Error {}
