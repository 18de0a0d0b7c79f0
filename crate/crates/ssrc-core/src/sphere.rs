//! Spherical Wigner function from multipole phase-point operators.
//!
//! The kernel at the pole is assembled from the irreducible tensor
//! (multipole) operators T^{(N)}_{l,k} built out of Clebsch–Gordan
//! coefficients; kernels elsewhere are unitary transports of it. The
//! defining axioms are normalization (the field integrates to Tr ρ under
//! the measure μ = (N+1)/4π), covariance under rotations, and traciality
//! (μ ∮ W_A W_B dΩ = Tr[AB]).

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64 as C64;

use crate::fock::{schwinger_operators, DensityMatrix};
use crate::math;
use crate::numerics::cg::{clebsch_gordan_with, HalfInt};
use crate::numerics::eig::hermitian_eig;
use crate::numerics::factorial::LogFactorialTable;
use crate::numerics::matrix::{OperatorMatrix, TriState};
use crate::numerics::quadrature::gauss_legendre;
use crate::{Error, Result};

/// Weight applied to the rank-l multipole in the pole kernel.
///
/// `TwoLPlusOne` is the Stratonovich–Weyl choice, (2l+1)/(N+1) composite
/// weight; it passes normalization, Hermiticity and traciality and is the
/// default. `LPlusOne` is the (l+1)/(N+1) variant kept for comparison: it
/// still has unit trace but fails traciality, so kernel sets built with it
/// carry `sw_verified = false`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelPrefactor {
    TwoLPlusOne,
    LPlusOne,
}

/// Axis convention for transporting the pole kernel to (θ, φ).
///
/// `XAxis` conjugates with e^{iJ_z φ} e^{iJ_x θ} as the kernel definition
/// prints it; `MatchedYAxis` conjugates with the mode-basis rotation
/// R(θ, φ) = e^{−iJ_z φ} e^{−iJ_y θ} so that the field of a spin-coherent
/// state built with the same R peaks at its (θ, φ). Both satisfy the SW
/// axioms; they differ by a rigid reparametrization of the sphere.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelRotation {
    XAxis,
    MatchedYAxis,
}

/// Multipole kernel data for one N.
#[derive(Debug, Clone)]
pub struct SphericalKernelSet {
    n_total: usize,
    /// Pole kernel Δ(0,0), diagonal in the canonical basis.
    delta0: OperatorMatrix,
    /// T^{(N)}_{l,k} indexed by (l, k), l ∈ [0, N], k ∈ [−l, l].
    multipoles: Vec<((usize, i32), OperatorMatrix)>,
    prefactor: KernelPrefactor,
    rotation: KernelRotation,
    /// Whether the built set passed the SW fingerprint checks.
    sw_verified: bool,
}

impl SphericalKernelSet {
    pub fn n_total(&self) -> usize {
        self.n_total
    }

    pub fn dim(&self) -> usize {
        self.n_total + 1
    }

    pub fn delta0(&self) -> &OperatorMatrix {
        &self.delta0
    }

    pub fn multipole(&self, l: usize, k: i32) -> Option<&OperatorMatrix> {
        self.multipoles
            .iter()
            .find(|((ll, kk), _)| *ll == l && *kk == k)
            .map(|(_, m)| m)
    }

    pub fn multipoles(&self) -> &[((usize, i32), OperatorMatrix)] {
        &self.multipoles
    }

    pub fn prefactor(&self) -> KernelPrefactor {
        self.prefactor
    }

    pub fn rotation_convention(&self) -> KernelRotation {
        self.rotation
    }

    pub fn sw_verified(&self) -> bool {
        self.sw_verified
    }

    /// Measure factor μ = (N+1)/4π making ∮ μ W dΩ = Tr ρ.
    pub fn measure_factor(&self) -> f64 {
        (self.n_total as f64 + 1.0) / (4.0 * core::f64::consts::PI)
    }
}

/// Irreducible tensor operator with composite weight `w`:
/// w · Σ_{n,n'} ⟨j m(n'); l k | j m(n)⟩ |n⟩⟨n'|, with m(n) = (N−2n)/2.
fn multipole_matrix(
    n_total: usize,
    l: usize,
    k: i32,
    weight: f64,
    table: &LogFactorialTable,
) -> OperatorMatrix {
    let d = n_total + 1;
    let two_j = n_total as i32;
    let mut t = OperatorMatrix::zeros(d);
    for n in 0..d {
        let two_m_row = two_j - 2 * n as i32;
        for np in 0..d {
            let two_m_col = two_j - 2 * np as i32;
            // selection: m_row = m_col + k
            if two_m_row != two_m_col + 2 * k {
                continue;
            }
            let cg = clebsch_gordan_with(
                table,
                HalfInt::new_doubled(two_j),
                HalfInt::new_doubled(2 * l as i32),
                HalfInt::new_doubled(two_m_col),
                HalfInt::new_doubled(2 * k),
                HalfInt::new_doubled(two_j),
                HalfInt::new_doubled(two_m_row),
            )
            .expect("validated CG arguments");
            t[(n, np)] = C64::new(weight * cg, 0.0);
        }
    }
    t
}

/// Build the kernel set for N with the default conventions: the prefactor
/// is auto-selected as the one passing the SW fingerprint (trace, Hermiticity
/// and the purity fingerprint Tr[Δ0²] = N+1); construction fails with
/// [`Error::ConventionCheckFailed`] if neither candidate passes.
pub fn build_kernel(n_total: usize) -> Result<SphericalKernelSet> {
    match build_kernel_with(n_total, KernelPrefactor::TwoLPlusOne, KernelRotation::XAxis) {
        Ok(set) if set.sw_verified => Ok(set),
        _ => {
            let alt = build_kernel_with(n_total, KernelPrefactor::LPlusOne, KernelRotation::XAxis)?;
            if alt.sw_verified {
                Ok(alt)
            } else {
                Err(Error::ConventionCheckFailed {
                    residual: alt.delta0.hermiticity_defect(),
                })
            }
        }
    }
}

/// Build with explicit conventions. The SW fingerprint is evaluated and
/// recorded, not enforced, so the comparison prefactor stays constructible.
pub fn build_kernel_with(
    n_total: usize,
    prefactor: KernelPrefactor,
    rotation: KernelRotation,
) -> Result<SphericalKernelSet> {
    let d = n_total + 1;
    let table = LogFactorialTable::new(2 * n_total + 2);
    let mut multipoles = Vec::new();
    let mut delta0 = OperatorMatrix::zeros(d);
    for l in 0..=n_total {
        let weight = match prefactor {
            KernelPrefactor::TwoLPlusOne => math::sqrt((2 * l + 1) as f64 / d as f64),
            KernelPrefactor::LPlusOne => math::sqrt((l + 1) as f64 / d as f64),
        };
        for k in -(l as i32)..=(l as i32) {
            let t = multipole_matrix(n_total, l, k, weight, &table);
            if k == 0 {
                // Only the axially symmetric multipoles survive at the pole:
                // k ≠ 0 terms would break both the J_z symmetry and the
                // Hermiticity the kernel axioms demand.
                delta0 = delta0.add(&t.scale(C64::new(weight, 0.0)));
            }
            multipoles.push(((l, k), t));
        }
    }

    // SW fingerprint: unit trace, Hermiticity, and Tr[Δ0²] = N+1 (the
    // δ-normalization that traciality requires of the composite weights).
    let trace_defect = math::abs(delta0.trace().re - 1.0) + math::abs(delta0.trace().im);
    let herm_defect = delta0.hermiticity_defect();
    let purity = delta0.mul(&delta0).trace().re;
    let purity_defect = math::abs(purity - d as f64);
    let sw_verified =
        trace_defect <= 1e-8 && herm_defect <= 1e-10 && purity_defect <= 1e-8 * d as f64;

    delta0.hermitian = if herm_defect <= 1e-10 {
        TriState::Yes
    } else {
        TriState::No
    };

    Ok(SphericalKernelSet {
        n_total,
        delta0,
        multipoles,
        prefactor,
        rotation,
        sw_verified,
    })
}

/// Unitary transporting the pole kernel to (θ, φ) under the set's axis
/// convention.
pub fn kernel_transport(set: &SphericalKernelSet, theta: f64, phi: f64) -> OperatorMatrix {
    let (jx, jy, jz) = schwinger_operators(set.n_total);
    let mut u = match set.rotation {
        KernelRotation::XAxis => {
            let ez = hermitian_eig(&jz).unwrap().expi(phi);
            let ex = hermitian_eig(&jx).unwrap().expi(theta);
            ez.mul(&ex)
        }
        KernelRotation::MatchedYAxis => {
            let ez = hermitian_eig(&jz).unwrap().expi(-phi);
            let ey = hermitian_eig(&jy).unwrap().expi(-theta);
            ez.mul(&ey)
        }
    };
    u.unitary = TriState::Yes;
    u
}

/// Phase-point operator Δ(θ, φ) = U Δ(0,0) U†.
pub fn kernel_at(set: &SphericalKernelSet, theta: f64, phi: f64) -> OperatorMatrix {
    let u = kernel_transport(set, theta, phi);
    let mut k = set.delta0.conjugate_by(&u);
    k.hermitian = set.delta0.hermitian;
    k
}

/// Unit direction on the sphere the kernel at (θ, φ) is symmetric about,
/// as coefficients of (J_x, J_y, J_z).
pub fn kernel_direction(set: &SphericalKernelSet, theta: f64, phi: f64) -> [f64; 3] {
    let (st, ct) = (math::sin(theta), math::cos(theta));
    let (sp, cp) = (math::sin(phi), math::cos(phi));
    match set.rotation {
        // e^{iJzφ} e^{iJxθ}: ẑ ↦ (sinθ sinφ, sinθ cosφ, cosθ) — a mirror
        // image of the standard parametrization
        KernelRotation::XAxis => [st * sp, st * cp, ct],
        // R(θ,φ) = e^{−iJzφ} e^{−iJyθ}: ẑ ↦ the standard direction
        KernelRotation::MatchedYAxis => [st * cp, st * sp, ct],
    }
}

/// Inverse of [`kernel_direction`]: the (θ, φ) whose kernel is symmetric
/// about the given unit direction.
pub fn direction_coordinates(set: &SphericalKernelSet, dir: [f64; 3]) -> (f64, f64) {
    let [x, y, z] = dir;
    let theta = math::acos(z.clamp(-1.0, 1.0));
    let phi = match set.rotation {
        KernelRotation::XAxis => math::atan2(x, y),
        KernelRotation::MatchedYAxis => math::atan2(y, x),
    };
    let phi = if phi < 0.0 {
        phi + 2.0 * core::f64::consts::PI
    } else {
        phi
    };
    (theta, phi)
}

/// Sampled spherical field with its quadrature.
#[derive(Debug, Clone)]
pub struct SphereGrid {
    pub thetas: Vec<f64>,
    pub phis: Vec<f64>,
    /// Gauss–Legendre weights along θ (cos θ nodes), in steradian units
    /// once multiplied by `phi_weight`.
    pub theta_weights: Vec<f64>,
    pub phi_weight: f64,
    /// values[i · nφ + j] = W(θ_i, φ_j).
    pub values: Vec<f64>,
    /// μ = (N+1)/4π carried with the grid so normalization is self-describing.
    pub measure_factor: f64,
    /// Largest imaginary residue seen while evaluating the trace formula.
    pub max_imag_residue: f64,
}

impl SphereGrid {
    pub fn value(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.phis.len() + j]
    }

    /// Σ_ij w_ij in steradians; 4π up to round-off.
    pub fn total_weight(&self) -> f64 {
        self.theta_weights.iter().sum::<f64>() * self.phi_weight * self.phis.len() as f64
    }

    /// μ ∮ W dΩ.
    pub fn integral(&self) -> f64 {
        let nphi = self.phis.len();
        let mut acc = 0.0;
        for (i, &wt) in self.theta_weights.iter().enumerate() {
            let mut row = 0.0;
            for j in 0..nphi {
                row += self.values[i * nphi + j];
            }
            acc += wt * row;
        }
        acc * self.phi_weight * self.measure_factor
    }

    /// μ ∮ max(0, −W) dΩ, treating magnitudes below 1e−12 as zero.
    pub fn negativity(&self) -> f64 {
        let nphi = self.phis.len();
        let mut acc = 0.0;
        for (i, &wt) in self.theta_weights.iter().enumerate() {
            for j in 0..nphi {
                let v = self.values[i * nphi + j];
                if v < -1e-12 {
                    acc += wt * (-v);
                }
            }
        }
        acc * self.phi_weight * self.measure_factor
    }

    /// (θ, φ, W) at the grid maximum.
    pub fn argmax(&self) -> (f64, f64, f64) {
        let nphi = self.phis.len();
        let mut best = (0usize, 0usize, f64::NEG_INFINITY);
        for i in 0..self.thetas.len() {
            for j in 0..nphi {
                let v = self.values[i * nphi + j];
                if v > best.2 {
                    best = (i, j, v);
                }
            }
        }
        (self.thetas[best.0], self.phis[best.1], best.2)
    }
}

/// Grid sizes; the defaults (2N+2 polar nodes, 4N+4 azimuthal) integrate
/// degree-2N fields exactly, which the traciality products need.
#[derive(Debug, Clone, Copy)]
pub struct SphereResolution {
    pub n_theta: usize,
    pub n_phi: usize,
}

impl SphereResolution {
    pub fn default_for(n_total: usize) -> Self {
        SphereResolution {
            n_theta: 2 * n_total + 2,
            n_phi: 4 * n_total + 4,
        }
    }
}

/// Evaluate the field of an arbitrary operator against the kernel family:
/// values[i][j] = Re Tr[A · Δ(θ_i, φ_j)].
///
/// The θ-grid is Gauss–Legendre in cos θ and the φ-grid uniform; per θ the
/// kernel is transported once and the φ sweep reduces to diagonal phase
/// conjugation, O(d²) per point.
pub fn evaluate_field(
    set: &SphericalKernelSet,
    op: &OperatorMatrix,
    res: SphereResolution,
) -> Result<SphereGrid> {
    let d = set.dim();
    if op.dim() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            got: op.dim(),
        });
    }
    let (nodes, wts) = gauss_legendre(res.n_theta);
    // cos θ descending ⇒ θ ascending
    let thetas: Vec<f64> = nodes.iter().rev().map(|&x| math::acos(x)).collect();
    let theta_weights: Vec<f64> = wts.iter().rev().copied().collect();
    let nphi = res.n_phi;
    let phi_weight = 2.0 * core::f64::consts::PI / nphi as f64;
    let phis: Vec<f64> = (0..nphi).map(|j| j as f64 * phi_weight).collect();

    let (jx, jy, jz) = schwinger_operators(set.n_total);
    let jx_eig = hermitian_eig(&jx).unwrap();
    let jy_eig = hermitian_eig(&jy).unwrap();
    let jz_diag: Vec<f64> = (0..d).map(|n| jz[(n, n)].re).collect();

    let mut values = vec![0.0f64; thetas.len() * nphi];
    let mut max_imag = 0.0f64;
    for (i, &theta) in thetas.iter().enumerate() {
        // kernel tilted in θ once per row
        let tilted = match set.rotation {
            KernelRotation::XAxis => set.delta0.conjugate_by(&jx_eig.expi(theta)),
            KernelRotation::MatchedYAxis => set.delta0.conjugate_by(&jy_eig.expi(-theta)),
        };
        for (j, &phi) in phis.iter().enumerate() {
            let sign = match set.rotation {
                KernelRotation::XAxis => phi,
                KernelRotation::MatchedYAxis => -phi,
            };
            // Tr[A · e^{iJz s} T e^{−iJz s}] = Σ_{m,m'} A_{m'm} e^{is(λ_m−λ_m')} T_{m m'}
            let mut acc = C64::new(0.0, 0.0);
            for m in 0..d {
                for mp in 0..d {
                    let phase = C64::from_polar(1.0, sign * (jz_diag[m] - jz_diag[mp]));
                    acc += op[(mp, m)] * phase * tilted[(m, mp)];
                }
            }
            let im = math::abs(acc.im);
            if im > max_imag {
                max_imag = im;
            }
            values[i * nphi + j] = acc.re;
        }
    }

    Ok(SphereGrid {
        thetas,
        phis,
        theta_weights,
        phi_weight,
        values,
        measure_factor: set.measure_factor(),
        max_imag_residue: max_imag,
    })
}

/// W_S over the grid for a density matrix; imaginary residues are asserted
/// below 1e−9.
pub fn wigner_sphere(
    rho: &DensityMatrix,
    set: &SphericalKernelSet,
    res: SphereResolution,
) -> Result<SphereGrid> {
    if rho.dim() != set.dim() {
        return Err(Error::DimensionMismatch {
            expected: set.dim(),
            got: rho.dim(),
        });
    }
    let grid = evaluate_field(set, rho.matrix(), res)?;
    debug_assert!(grid.max_imag_residue <= 1e-9);
    Ok(grid)
}

/// Negativity μ ∮ max(0, −W) dΩ of a sampled field.
pub fn sphere_negativity(grid: &SphereGrid) -> f64 {
    grid.negativity()
}
