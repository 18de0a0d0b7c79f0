//! Qudit encodings of the (N+1)-dimensional two-mode space.
//!
//! An encoding is a pair of unitaries (K, U): U defines the computational
//! basis |j⟩ ↦ U|j⟩_a|N−j⟩_b and transports the generalized Pauli operators
//! as Z_U = U†ZU, F_U = U†FU, X_U = U†XU; K transports the physical frame
//! (the su(2) generators and the continuous-variable tangent plane). The
//! classifier 𝒦 = U K† relates the two choices; 𝒦 ≅ R(π,0) is the case
//! where the code's Clifford gates contract to Gaussian operations.
//!
//! Logical bookkeeping: Z has eigenvalue ω^{(N−2n)/2} on basis index n, so
//! the computational label is j = (N/2 − n) mod d with the global phase
//! ω^{N/2} attached to X; both are stored, and the Heisenberg–Weyl checks
//! are phase-aware.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64 as C64;

use crate::fock::{
    jx_eigenbasis, phase_ladder, relative_phase_x, relative_phase_z, rotation,
    schwinger_operators, SSRCState,
};
use crate::math;
use crate::numerics::matrix::{phase_aligned_distance, vec_norm, OperatorMatrix, TriState};
use crate::numerics::TOL_UNITARY;
use crate::{Error, Result};

/// F with entries ω^{nm}/√(N+1) in the canonical basis.
pub fn fourier_operator(n_total: usize) -> OperatorMatrix {
    let d = n_total + 1;
    let mut f = OperatorMatrix::from_fn(d, |n, m| {
        C64::from_polar(
            1.0 / math::sqrt(d as f64),
            2.0 * core::f64::consts::PI * ((n * m) % d) as f64 / d as f64,
        )
    });
    f.unitary = TriState::Yes;
    f
}

/// Named transform presets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TransformPreset {
    /// The identity.
    Identity,
    /// R(π, 0) = e^{−iJ_y π}.
    RotPiY,
    /// (relative-phase ladder)^{N/2}, mapping |0⟩_a|N⟩_b to |N/2⟩_a|N/2⟩_b.
    /// Requires even N.
    ThetaZHalf,
}

impl TransformPreset {
    pub fn matrix(self, n_total: usize) -> Result<OperatorMatrix> {
        match self {
            TransformPreset::Identity => Ok(OperatorMatrix::identity(n_total + 1)),
            TransformPreset::RotPiY => Ok(rotation(n_total, core::f64::consts::PI, 0.0)),
            TransformPreset::ThetaZHalf => {
                if !n_total.is_multiple_of(2) {
                    return Err(Error::OutOfRange {
                        what: "the half-ladder preset needs even N",
                    });
                }
                let ladder = phase_ladder(n_total);
                let mut acc = OperatorMatrix::identity(n_total + 1);
                for _ in 0..n_total / 2 {
                    acc = ladder.mul(&acc);
                }
                acc.unitary = TriState::Yes;
                Ok(acc)
            }
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            TransformPreset::Identity => "identity",
            TransformPreset::RotPiY => "rot_pi_y",
            TransformPreset::ThetaZHalf => "theta_z_half",
        }
    }
}

/// Classification of 𝒦 = U K†, up to a global phase.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KappaClass {
    Identity,
    RotPiY,
    Other,
}

impl KappaClass {
    pub fn name(self) -> &'static str {
        match self {
            KappaClass::Identity => "identity",
            KappaClass::RotPiY => "rot_pi_y",
            KappaClass::Other => "other",
        }
    }
}

/// A constructed encoding with its derived operators and bookkeeping.
#[derive(Debug, Clone)]
pub struct EncodingSpec {
    n_total: usize,
    k: OperatorMatrix,
    u: OperatorMatrix,
    z_u: OperatorMatrix,
    x_u: OperatorMatrix,
    f_u: OperatorMatrix,
    /// Computational basis states, column j = U|j⟩_a|N−j⟩_b.
    basis: Vec<SSRCState>,
    kappa: OperatorMatrix,
    kappa_class: KappaClass,
    /// Worst max-entry residual of X^aZ^b − ω^{−ab}Z^bX^a over a, b < d.
    hw_residual: f64,
    /// Global phase ω^{N/2} carried by X in the j = (N/2 − n) relabeling.
    logical_phase: C64,
    /// X_U^d and Z_U^d equal these scalars times the identity (−1 for odd
    /// N, +1 for even).
    order_phase: C64,
    odd_n: bool,
}

impl EncodingSpec {
    pub fn n_total(&self) -> usize {
        self.n_total
    }

    pub fn dim(&self) -> usize {
        self.n_total + 1
    }

    pub fn z_u(&self) -> &OperatorMatrix {
        &self.z_u
    }

    pub fn x_u(&self) -> &OperatorMatrix {
        &self.x_u
    }

    pub fn f_u(&self) -> &OperatorMatrix {
        &self.f_u
    }

    pub fn k_transform(&self) -> &OperatorMatrix {
        &self.k
    }

    pub fn u_transform(&self) -> &OperatorMatrix {
        &self.u
    }

    pub fn basis(&self) -> &[SSRCState] {
        &self.basis
    }

    /// 𝒦 = U K† as defined. Under a common left unitary (K, U) → (VK, VU)
    /// this transforms by conjugation, 𝒦 → V𝒦V†.
    pub fn kappa(&self) -> &OperatorMatrix {
        &self.kappa
    }

    /// K†U: the frame-relative transform, strictly invariant under
    /// (K, U) → (VK, VU). Equal to 𝒦 whenever K is the identity.
    pub fn relative_transform(&self) -> OperatorMatrix {
        self.k.adjoint().mul(&self.u)
    }

    pub fn kappa_class(&self) -> KappaClass {
        self.kappa_class
    }

    pub fn hw_residual(&self) -> f64 {
        self.hw_residual
    }

    pub fn logical_phase(&self) -> C64 {
        self.logical_phase
    }

    pub fn order_phase(&self) -> C64 {
        self.order_phase
    }

    pub fn odd_n(&self) -> bool {
        self.odd_n
    }

    /// Coordinates of a physical state in the computational basis,
    /// amplitudes ⟨basis_j | ψ⟩.
    pub fn logical_amplitudes(&self, physical: &SSRCState) -> Result<Vec<C64>> {
        if physical.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: physical.dim(),
            });
        }
        Ok(self.u.adjoint_matvec(physical.coeffs()))
    }
}

/// Distance of `m` from `target` up to a global phase, in max-entry norm.
fn projective_distance(m: &OperatorMatrix, target: &OperatorMatrix) -> f64 {
    // align on the largest entry of the target
    let d = m.dim();
    let mut best = (0usize, 0usize, 0.0f64);
    for i in 0..d {
        for j in 0..d {
            let v = target[(i, j)].norm();
            if v > best.2 {
                best = (i, j, v);
            }
        }
    }
    let t = target[(best.0, best.1)];
    let g = m[(best.0, best.1)];
    if g.norm() == 0.0 {
        return m.max_abs_diff(target);
    }
    let phase = (t / t.norm()) * (g / g.norm()).conj();
    m.scale(phase).max_abs_diff(target)
}

fn classify_kappa(n_total: usize, kappa: &OperatorMatrix) -> KappaClass {
    let id = OperatorMatrix::identity(n_total + 1);
    if projective_distance(kappa, &id) <= 1e-9 {
        return KappaClass::Identity;
    }
    let rot = rotation(n_total, core::f64::consts::PI, 0.0);
    if projective_distance(kappa, &rot) <= 1e-9 {
        return KappaClass::RotPiY;
    }
    KappaClass::Other
}

/// Build the encoding defined by (K, U): derived operators by conjugation,
/// Heisenberg–Weyl relation verified at construction to 1e−9.
pub fn build_encoding(
    n_total: usize,
    k: OperatorMatrix,
    u: OperatorMatrix,
) -> Result<EncodingSpec> {
    let d = n_total + 1;
    for m in [&k, &u] {
        if m.dim() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: m.dim(),
            });
        }
        let defect = m.unitarity_defect();
        if defect > TOL_UNITARY {
            return Err(Error::NonUnitaryTransform { defect });
        }
    }
    let z = relative_phase_z(n_total);
    let x = relative_phase_x(n_total);
    let f = fourier_operator(n_total);
    let udag = u.adjoint();
    let z_u = udag.mul(&z).mul(&u);
    let x_u = udag.mul(&x).mul(&u);
    let f_u = udag.mul(&f).mul(&u);

    let hw_residual = heisenberg_weyl_residual(&x_u, &z_u);
    if hw_residual > 1e-9 {
        return Err(Error::HwRelationViolated {
            residual: hw_residual,
        });
    }

    let mut basis = Vec::with_capacity(d);
    for j in 0..d {
        let col = u.column(j);
        basis.push(SSRCState::new(n_total, col)?);
    }

    let kappa = u.mul(&k.adjoint());
    // classify the frame-relative transform K†U: it agrees with 𝒦 whenever
    // K = 1 and is invariant under a common left unitary on (K, U)
    let relative = k.adjoint().mul(&u);
    let kappa_class = classify_kappa(n_total, &relative);

    let order_phase = if n_total.is_multiple_of(2) {
        C64::new(1.0, 0.0)
    } else {
        C64::new(-1.0, 0.0)
    };
    let logical_phase = C64::from_polar(1.0, core::f64::consts::PI * n_total as f64 / d as f64);

    Ok(EncodingSpec {
        n_total,
        k,
        u,
        z_u,
        x_u,
        f_u,
        basis,
        kappa,
        kappa_class,
        hw_residual,
        logical_phase,
        order_phase,
        odd_n: n_total % 2 == 1,
    })
}

/// Worst max-entry residual of X^a Z^b − ω^{−ab} Z^b X^a over a, b < d.
pub fn heisenberg_weyl_residual(x: &OperatorMatrix, z: &OperatorMatrix) -> f64 {
    let d = x.dim();
    let mut x_pows = Vec::with_capacity(d);
    let mut z_pows = Vec::with_capacity(d);
    x_pows.push(OperatorMatrix::identity(d));
    z_pows.push(OperatorMatrix::identity(d));
    for a in 1..d {
        x_pows.push(x_pows[a - 1].mul(x));
        z_pows.push(z_pows[a - 1].mul(z));
    }
    let mut worst = 0.0f64;
    for a in 0..d {
        for b in 0..d {
            let lhs = x_pows[a].mul(&z_pows[b]);
            let phase = C64::from_polar(
                1.0,
                -2.0 * core::f64::consts::PI * ((a * b) % d) as f64 / d as f64,
            );
            let rhs = z_pows[b].mul(&x_pows[a]).scale(phase);
            let r = lhs.max_abs_diff(&rhs);
            if r > worst {
                worst = r;
            }
        }
    }
    worst
}

/// Test-state family for the continuous-variable correspondence checks.
#[derive(Debug, Clone)]
pub struct CvTestFamily {
    /// Coherent amplitudes; the vacuum is always included.
    pub alphas: Vec<C64>,
}

impl Default for CvTestFamily {
    fn default() -> Self {
        CvTestFamily {
            alphas: vec![C64::new(0.5, 0.0), C64::new(1.0, 0.0), C64::new(2.0, 0.0)],
        }
    }
}

/// Embed a truncated coherent state (or the vacuum for α = 0) into the
/// N-photon space, concentrated near |0⟩_a|N⟩_b.
pub fn embedded_coherent(n_total: usize, alpha: C64) -> SSRCState {
    let cutoff = n_total.min((math::sqrt(n_total as f64) as usize).max(12));
    let coherent = crate::plane::TruncatedModeState::coherent(cutoff, alpha);
    let mut coeffs = vec![C64::new(0.0, 0.0); n_total + 1];
    coeffs[..=cutoff].copy_from_slice(coherent.coeffs());
    SSRCState::new(n_total, coeffs).expect("renormalized coherent embedding")
}

/// Defect of the correspondence "logical Fourier ≡ quarter rotation about
/// z" on CV test states: max over the family of the phase-aligned distance
/// between e^{iJ_zπ/2}ψ and (U_x F U_x†)ψ, where U_x is the centered
/// x-basis encoding (logical 0 at the phase-space origin).
///
/// Requires even N.
pub fn logical_fourier_as_rotation(n_total: usize, family: &CvTestFamily) -> Result<f64> {
    if !n_total.is_multiple_of(2) {
        return Err(Error::OutOfRange {
            what: "the Fourier correspondence needs even N",
        });
    }
    let (_, _, jz) = schwinger_operators(n_total);
    let quarter = crate::numerics::eig::hermitian_eig(&jz)
        .unwrap()
        .expi(core::f64::consts::PI / 2.0);

    let u_x = centered_x_encoding(n_total);
    let f = fourier_operator(n_total);
    let gate = u_x.mul(&f).mul(&u_x.adjoint());

    let mut states: Vec<SSRCState> = vec![SSRCState::fock(n_total, 0)?];
    for &alpha in &family.alphas {
        if alpha.norm() > 0.0 {
            states.push(embedded_coherent(n_total, alpha));
        }
    }
    let mut worst = 0.0f64;
    for psi in &states {
        let lhs = quarter.matvec(psi.coeffs());
        let rhs = gate.matvec(psi.coeffs());
        let dist = phase_aligned_distance(&lhs, &rhs);
        if dist > worst {
            worst = dist;
        }
    }
    Ok(worst)
}

/// The x-basis encoding with the logical origin at the center of the
/// index range: column j = x-eigenvector with index (N/2 + j) mod (N+1),
/// so logical 0 sits at J_x ≈ 0 where the CV states live.
pub fn centered_x_encoding(n_total: usize) -> OperatorMatrix {
    let d = n_total + 1;
    let v = jx_eigenbasis(n_total);
    let mut u = OperatorMatrix::zeros(d);
    for j in 0..d {
        let src = (n_total / 2 + j) % d;
        let col = v.column(src);
        u.set_column(j, &col);
    }
    u.unitary = TriState::Yes;
    u
}

/// Rectangular isometry: orthonormal columns spanning the code space.
#[derive(Debug, Clone)]
pub struct Isometry {
    rows: usize,
    cols: usize,
    /// Row-major rows × cols.
    entries: Vec<C64>,
}

impl Isometry {
    pub fn new(rows: usize, cols: usize, entries: Vec<C64>) -> Result<Self> {
        if entries.len() != rows * cols || cols > rows {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                got: entries.len(),
            });
        }
        let iso = Isometry {
            rows,
            cols,
            entries,
        };
        let defect = iso.orthonormality_defect();
        if defect > 1e-10 {
            return Err(Error::NonIsometric { defect });
        }
        Ok(iso)
    }

    /// Columns |f(j)⟩ of the standard basis: |j⟩ ↦ |f(j)⟩.
    pub fn from_index_map(rows: usize, map: &[usize]) -> Result<Self> {
        let cols = map.len();
        let mut entries = vec![C64::new(0.0, 0.0); rows * cols];
        for (j, &target) in map.iter().enumerate() {
            if target >= rows {
                return Err(Error::OutOfRange {
                    what: "index map target out of range",
                });
            }
            entries[target * cols + j] = C64::new(1.0, 0.0);
        }
        Isometry::new(rows, cols, entries)
    }

    pub fn identity(dim: usize) -> Self {
        Isometry::from_index_map(dim, &(0..dim).collect::<Vec<_>>()).unwrap()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, i: usize, j: usize) -> C64 {
        self.entries[i * self.cols + j]
    }

    /// max |V†V − 1| entry.
    pub fn orthonormality_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for c1 in 0..self.cols {
            for c2 in 0..self.cols {
                let mut acc = C64::new(0.0, 0.0);
                for r in 0..self.rows {
                    acc += self.entry(r, c1).conj() * self.entry(r, c2);
                }
                let expect = if c1 == c2 { 1.0 } else { 0.0 };
                let d = (acc - C64::new(expect, 0.0)).norm();
                if d > worst {
                    worst = d;
                }
            }
        }
        worst
    }

    /// V χ for a logical vector χ.
    pub fn apply(&self, logical: &[C64]) -> Vec<C64> {
        assert_eq!(logical.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                (0..self.cols)
                    .map(|c| self.entry(r, c) * logical[c])
                    .sum()
            })
            .collect()
    }

    /// V† ψ for a physical vector ψ.
    pub fn project(&self, physical: &[C64]) -> Vec<C64> {
        assert_eq!(physical.len(), self.rows);
        (0..self.cols)
            .map(|c| {
                (0..self.rows)
                    .map(|r| self.entry(r, c).conj() * physical[r])
                    .sum()
            })
            .collect()
    }

    /// V O V† for a logical operator O (cols × cols).
    pub fn lift(&self, op: &OperatorMatrix) -> OperatorMatrix {
        assert_eq!(op.dim(), self.cols);
        let mut out = OperatorMatrix::zeros(self.rows);
        for i in 0..self.rows {
            for j in 0..self.rows {
                let mut acc = C64::new(0.0, 0.0);
                for a in 0..self.cols {
                    for b in 0..self.cols {
                        acc += self.entry(i, a) * op[(a, b)] * self.entry(j, b).conj();
                    }
                }
                out[(i, j)] = acc;
            }
        }
        out
    }
}

/// A k-dimensional code inside the (N+1)-dimensional space, with its
/// logical generalized Pauli algebra.
#[derive(Debug, Clone)]
pub struct CodeEmbedding {
    n_total: usize,
    k: usize,
    isometry: Isometry,
    z_bar: OperatorMatrix,
    x_bar: OperatorMatrix,
    f_bar: OperatorMatrix,
}

impl CodeEmbedding {
    pub fn code_dim(&self) -> usize {
        self.k
    }

    pub fn n_total(&self) -> usize {
        self.n_total
    }

    pub fn isometry(&self) -> &Isometry {
        &self.isometry
    }

    pub fn z_bar(&self) -> &OperatorMatrix {
        &self.z_bar
    }

    pub fn x_bar(&self) -> &OperatorMatrix {
        &self.x_bar
    }

    pub fn f_bar(&self) -> &OperatorMatrix {
        &self.f_bar
    }

    /// Physical lift V Ō V† of a logical operator.
    pub fn lift(&self, op: &OperatorMatrix) -> OperatorMatrix {
        self.isometry.lift(op)
    }

    /// Physical representative of the logical basis state |j̄⟩.
    pub fn encoded_basis(&self, j: usize) -> Result<Vec<C64>> {
        if j >= self.k {
            return Err(Error::OutOfRange {
                what: "logical index must be < k",
            });
        }
        let mut logical = vec![C64::new(0.0, 0.0); self.k];
        logical[j] = C64::new(1.0, 0.0);
        Ok(self.isometry.apply(&logical))
    }

    /// Discrete Wigner lattice of an encoded physical state, computed in
    /// dimension k after pulling back through the isometry.
    pub fn discrete_wigner(
        &self,
        physical: &[C64],
        convention: crate::discrete::WeylConvention,
    ) -> Result<crate::discrete::WignerLattice> {
        if physical.len() != self.n_total + 1 {
            return Err(Error::DimensionMismatch {
                expected: self.n_total + 1,
                got: physical.len(),
            });
        }
        let logical = self.isometry.project(physical);
        let norm = vec_norm(&logical);
        if norm < 1.0 - 1e-8 {
            return Err(Error::OutOfRange {
                what: "state has support outside the code space",
            });
        }
        let state = crate::discrete::QuditState::new(self.k, logical)?;
        let pps = crate::discrete::weyl_operators(self.k, convention)?;
        crate::discrete::wigner_discrete(&state, &pps)
    }
}

/// Embed a k-dimensional code with the given isometry; the logical algebra
/// is the k-point clock Z̄ = diag(ω_k^j), F̄ the k-point Fourier matrix,
/// X̄ = F̄†Z̄F̄.
pub fn embed_code(n_total: usize, k: usize, isometry: Isometry) -> Result<CodeEmbedding> {
    if k.is_multiple_of(2) {
        return Err(Error::EvenCodeDimension { k });
    }
    if k > n_total + 1 || isometry.rows() != n_total + 1 || isometry.cols() != k {
        return Err(Error::DimensionMismatch {
            expected: n_total + 1,
            got: isometry.rows(),
        });
    }
    let z_bar = crate::discrete::pauli_z(k);
    let f_bar = crate::discrete::fourier(k);
    let x_bar = f_bar.adjoint().mul(&z_bar).mul(&f_bar);
    Ok(CodeEmbedding {
        n_total,
        k,
        isometry,
        z_bar,
        x_bar,
        f_bar,
    })
}
