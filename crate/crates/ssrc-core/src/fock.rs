//! Two-mode states at fixed total photon number and the operators that act
//! on them.
//!
//! The canonical basis everywhere in this crate is `|n⟩_a |N−n⟩_b`, ordered
//! by `n` ascending (photon count in mode `a`). The states carry spin
//! j = N/2 under the Schwinger su(2) generators, with `J_z` eigenvalue
//! (N − 2n)/2 on basis index `n`; the angular-momentum label `m = n − N/2`
//! seen in spin notation refers to the same states up to that sign
//! relabeling.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64 as C64;

use crate::math;
use crate::numerics::eig::{expi_hermitian, hermitian_eig};
use crate::numerics::factorial::LogFactorialTable;
use crate::numerics::matrix::{vec_norm, OperatorMatrix, TriState};
use crate::numerics::{TOL_STRUCTURAL, TOL_UNITARY};
use crate::{Error, Result};

/// Default threshold κ in the continuous-variable test ⟨n_a⟩ ≤ κ·√N.
pub const DEFAULT_CV_KAPPA: f64 = 0.1;

/// Normalization tolerance for state vectors.
pub const TOL_NORM: f64 = 1e-10;

/// Pure two-mode state Σ_n c_n |n⟩_a |N−n⟩_b.
#[derive(Debug, Clone, PartialEq)]
pub struct SSRCState {
    n_total: usize,
    coeffs: Vec<C64>,
}

impl SSRCState {
    /// Validating constructor: the coefficient vector must have length N+1
    /// and unit norm to 1e−10.
    pub fn new(n_total: usize, coeffs: Vec<C64>) -> Result<Self> {
        if coeffs.len() != n_total + 1 {
            return Err(Error::DimensionMismatch {
                expected: n_total + 1,
                got: coeffs.len(),
            });
        }
        let sum: f64 = coeffs.iter().map(|c| c.norm_sqr()).sum();
        if math::abs(sum - 1.0) > TOL_NORM {
            return Err(Error::NotNormalized { sum });
        }
        Ok(SSRCState { n_total, coeffs })
    }

    /// Basis state |n⟩_a |N−n⟩_b.
    pub fn fock(n_total: usize, n: usize) -> Result<Self> {
        if n > n_total {
            return Err(Error::OutOfRange {
                what: "fock index must satisfy n ≤ N",
            });
        }
        let mut coeffs = vec![C64::new(0.0, 0.0); n_total + 1];
        coeffs[n] = C64::new(1.0, 0.0);
        Ok(SSRCState { n_total, coeffs })
    }

    pub fn n_total(&self) -> usize {
        self.n_total
    }

    pub fn dim(&self) -> usize {
        self.n_total + 1
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    /// Apply a unitary in the canonical basis.
    pub fn apply(&self, u: &OperatorMatrix) -> Result<Self> {
        if u.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: u.dim(),
            });
        }
        Ok(SSRCState {
            n_total: self.n_total,
            coeffs: u.matvec(&self.coeffs),
        })
    }

    /// Mean photon number in mode a, Σ n |c_n|².
    pub fn mean_photon_a(&self) -> f64 {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| n as f64 * c.norm_sqr())
            .sum()
    }

    pub fn density(&self) -> DensityMatrix {
        let d = self.dim();
        let mut rho = OperatorMatrix::zeros(d);
        for i in 0..d {
            for j in 0..d {
                rho[(i, j)] = self.coeffs[i] * self.coeffs[j].conj();
            }
        }
        rho.hermitian = TriState::Yes;
        DensityMatrix {
            n_total: self.n_total,
            rho,
        }
    }
}

/// Mixed state on the N-photon space.
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    n_total: usize,
    rho: OperatorMatrix,
}

impl DensityMatrix {
    /// Validating constructor: Hermitian to 1e−12, unit trace to 1e−10,
    /// eigenvalues ≥ −1e−9.
    pub fn new(n_total: usize, rho: OperatorMatrix) -> Result<Self> {
        if rho.dim() != n_total + 1 {
            return Err(Error::DimensionMismatch {
                expected: n_total + 1,
                got: rho.dim(),
            });
        }
        if rho.hermiticity_defect() > TOL_STRUCTURAL {
            return Err(Error::InvalidDensityMatrix {
                what: "not Hermitian",
            });
        }
        if math::abs(rho.trace().re - 1.0) > TOL_NORM || math::abs(rho.trace().im) > TOL_NORM {
            return Err(Error::InvalidDensityMatrix { what: "trace ≠ 1" });
        }
        let eig = hermitian_eig(&rho)?;
        if eig.values.iter().any(|&v| v < -1e-9) {
            return Err(Error::InvalidDensityMatrix {
                what: "negative eigenvalue",
            });
        }
        Ok(DensityMatrix { n_total, rho })
    }

    pub fn maximally_mixed(n_total: usize) -> Self {
        let d = n_total + 1;
        let mut rho = OperatorMatrix::zeros(d);
        for i in 0..d {
            rho[(i, i)] = C64::new(1.0 / d as f64, 0.0);
        }
        rho.hermitian = TriState::Yes;
        DensityMatrix { n_total, rho }
    }

    pub fn n_total(&self) -> usize {
        self.n_total
    }

    pub fn dim(&self) -> usize {
        self.n_total + 1
    }

    pub fn matrix(&self) -> &OperatorMatrix {
        &self.rho
    }
}

/// Which mode pair a coefficient vector refers to.
#[derive(Debug, Clone)]
pub enum ModeBasisLabel {
    /// The canonical pair (a, b).
    Z,
    /// The J_x eigenbasis pair (a_x, b_x).
    X,
    /// A K-transformed pair; the transform may be carried along.
    KTransformed(Option<OperatorMatrix>),
}

impl ModeBasisLabel {
    /// Validates the optional transform: it must be unitary to 1e−10.
    pub fn k_transformed(k: Option<OperatorMatrix>) -> Result<Self> {
        if let Some(ref m) = k {
            let defect = m.unitarity_defect();
            if defect > TOL_UNITARY {
                return Err(Error::NonUnitaryTransform { defect });
            }
        }
        Ok(ModeBasisLabel::KTransformed(k))
    }
}

/// The Schwinger su(2) generators on the N-photon space:
/// J_z = ½(b†b − a†a), J_x = ½(a†b + b†a), J_y = (i/2)(a†b − b†a),
/// as (N+1)×(N+1) Hermitian matrices in the canonical basis.
pub fn schwinger_operators(n_total: usize) -> (OperatorMatrix, OperatorMatrix, OperatorMatrix) {
    let d = n_total + 1;
    let mut jx = OperatorMatrix::zeros(d);
    let mut jy = OperatorMatrix::zeros(d);
    let mut jz = OperatorMatrix::zeros(d);
    for n in 0..d {
        jz[(n, n)] = C64::new((n_total as f64 - 2.0 * n as f64) / 2.0, 0.0);
        if n + 1 < d {
            // a†b: |n⟩|N−n⟩ → √((n+1)(N−n)) |n+1⟩|N−n−1⟩
            let t = 0.5 * math::sqrt(((n + 1) * (n_total - n)) as f64);
            jx[(n + 1, n)] = C64::new(t, 0.0);
            jx[(n, n + 1)] = C64::new(t, 0.0);
            jy[(n + 1, n)] = C64::new(0.0, t);
            jy[(n, n + 1)] = C64::new(0.0, -t);
        }
    }
    jx.hermitian = TriState::Yes;
    jy.hermitian = TriState::Yes;
    jz.hermitian = TriState::Yes;
    (jx, jy, jz)
}

/// The mode-basis rotation R(θ, φ) = e^{−iJ_z φ} e^{−iJ_y θ}.
pub fn rotation(n_total: usize, theta: f64, phi: f64) -> OperatorMatrix {
    let (_, jy, jz) = schwinger_operators(n_total);
    let rz = expi_hermitian(&jz, -phi).expect("J_z is Hermitian by construction");
    let ry = expi_hermitian(&jy, -theta).expect("J_y is Hermitian by construction");
    let mut r = rz.mul(&ry);
    r.unitary = TriState::Yes;
    r
}

/// Spin-coherent state from the closed-form binomial expansion, evaluated
/// in log-space:
///
/// c_n = √C(N,n) (cos θ/2)^{N−n} (e^{iφ} sin θ/2)^n.
///
/// Equal to R(θ, φ)|0⟩_a|N⟩_b up to the global phase e^{−iNφ/2} that the
/// half-integral J_z spectrum attaches to the matrix product; comparisons
/// against the operator path are projective.
pub fn spin_coherent(n_total: usize, theta: f64, phi: f64) -> SSRCState {
    let d = n_total + 1;
    let table = LogFactorialTable::new(n_total);
    let c = math::cos(theta / 2.0);
    let s = math::sin(theta / 2.0);
    let mut coeffs = vec![C64::new(0.0, 0.0); d];
    for n in 0..d {
        let nn = n_total - n;
        let mag = if (s == 0.0 && n > 0) || (c == 0.0 && nn > 0) {
            0.0
        } else {
            let ln_bin = table.log_binomial(n_total, n).unwrap();
            let ln_c = if nn > 0 {
                nn as f64 * math::ln(math::abs(c))
            } else {
                0.0
            };
            let ln_s = if n > 0 {
                n as f64 * math::ln(math::abs(s))
            } else {
                0.0
            };
            let sign = if c < 0.0 && nn % 2 == 1 { -1.0 } else { 1.0 }
                * if s < 0.0 && n % 2 == 1 { -1.0 } else { 1.0 };
            sign * math::exp(0.5 * ln_bin + ln_c + ln_s)
        };
        coeffs[n] = C64::from_polar(mag, n as f64 * phi);
    }
    // Σ C(N,n) cos^{2(N−n)} sin^{2n} = 1 analytically; divide out the
    // residual log-space rounding so normalization holds to 1e−12 even at
    // N ~ 10⁴. (At θ ∈ {0, π} the sum is exactly 1 and this is a no-op.)
    let norm = vec_norm(&coeffs);
    if norm != 1.0 {
        for c in &mut coeffs {
            *c /= norm;
        }
    }
    SSRCState { n_total, coeffs }
}

/// Z = e^{iJ_z 2π/(N+1)}: diagonal with entries ω^{(N−2n)/2}, ω = e^{2πi/(N+1)}.
///
/// For odd N the entries are half-integer powers of ω; the operators are
/// still constructed, callers track the parity caveat via [`odd_n_caveat`].
pub fn relative_phase_z(n_total: usize) -> OperatorMatrix {
    let d = n_total + 1;
    let mut z = OperatorMatrix::zeros(d);
    for n in 0..d {
        let exponent = (n_total as f64 - 2.0 * n as f64) / 2.0;
        z[(n, n)] = C64::from_polar(1.0, 2.0 * core::f64::consts::PI * exponent / d as f64);
    }
    z.unitary = TriState::Yes;
    z
}

/// X = F†ZF: the generalized-Pauli partner of [`relative_phase_z`].
///
/// Closed form ω^{N/2} Σ_p |p⟩⟨p+1 mod d|: in the physical index it lowers
/// n_a by one (cyclically); in the logical relabeling j = (N/2 − n) mod d,
/// where Z is the plain clock ω^j, it is the +1 shift times the recorded
/// global phase ω^{N/2}. The photon-exchange ladder itself (raising n_a) is
/// [`phase_ladder`], its adjoint up to that phase.
pub fn relative_phase_x(n_total: usize) -> OperatorMatrix {
    let d = n_total + 1;
    let phase = C64::from_polar(1.0, core::f64::consts::PI * n_total as f64 / d as f64);
    let mut x = OperatorMatrix::zeros(d);
    for p in 0..d {
        x[(p, (p + 1) % d)] = phase;
    }
    x.unitary = TriState::Yes;
    x
}

/// The unitary relative-phase ladder Σ_{n<N} |n+1⟩⟨n| + |0⟩⟨N|: raises the
/// photon number in mode a by one, cyclically. This is the direction that
/// contracts onto the truncated phase ladder in the CV limit.
pub fn phase_ladder(n_total: usize) -> OperatorMatrix {
    let d = n_total + 1;
    let mut x = OperatorMatrix::zeros(d);
    for n in 0..d {
        x[((n + 1) % d, n)] = C64::new(1.0, 0.0);
    }
    x.unitary = TriState::Yes;
    x
}

/// True when N is odd: d = N + 1 is even, outside the odd-d assumptions of
/// the discrete phase-space constructions. Operators are still built;
/// reports carry this caveat.
pub fn odd_n_caveat(n_total: usize) -> bool {
    n_total % 2 == 1
}

/// Unitary whose column n is the J_x eigenvector with eigenvalue (N−2n)/2
/// (descending), phase-fixed so the first non-negligible component is real
/// positive.
pub fn jx_eigenbasis(n_total: usize) -> OperatorMatrix {
    let (jx, _, _) = schwinger_operators(n_total);
    let eig = hermitian_eig(&jx).expect("J_x is Hermitian by construction");
    let d = n_total + 1;
    let mut v = OperatorMatrix::zeros(d);
    for col in 0..d {
        // eigenvalues come out ascending; column n wants the (d−1−n)-th
        let src = d - 1 - col;
        let mut column = eig.vectors.column(src);
        let maxabs = column.iter().fold(0.0_f64, |m, c| m.max(c.norm()));
        if let Some(first) = column.iter().find(|c| c.norm() > 1e-10 * maxabs) {
            let correct = (first / first.norm()).conj();
            for c in &mut column {
                *c *= correct;
            }
        }
        v.set_column(col, &column);
    }
    v.unitary = TriState::Yes;
    v
}

/// Ceiling for the log-space double-sum basis change.
pub const BASIS_CHANGE_CEILING: usize = 300;

/// Expansion of the J_x-basis ket with the double-sum label `n` in the
/// canonical z-basis, by the combinatorial double sum over (m, k) with
/// log-magnitude/sign evaluation per term and pairwise summation per target
/// index.
///
/// The returned vector is the J_x eigenvector with eigenvalue (2n − N)/2,
/// i.e. it matches column N − n of [`jx_eigenbasis`] up to a global sign:
/// the double-sum label counts quanta in the other x-mode.
pub fn basis_change_formula(n_total: usize, n: usize) -> Result<Vec<C64>> {
    if n > n_total {
        return Err(Error::OutOfRange {
            what: "basis index must satisfy n ≤ N",
        });
    }
    if n_total > BASIS_CHANGE_CEILING {
        return Err(Error::OverflowRisk {
            n: n_total,
            ceiling: BASIS_CHANGE_CEILING,
        });
    }
    let table = LogFactorialTable::new(n_total);
    let ln2 = core::f64::consts::LN_2;
    // ln of 1/√(n!(N−n)!2^N)
    let ln_pref =
        -0.5 * (table.ln_factorial(n) + table.ln_factorial(n_total - n) + n_total as f64 * ln2);

    // Collect the (m, k) terms by target index p = N − m − k, then compress
    // each bucket with pairwise summation: the alternating signs cancel
    // heavily and pairwise addition bounds the error growth.
    let mut buckets: Vec<Vec<f64>> = vec![Vec::new(); n_total + 1];
    for m in 0..=(n_total - n) {
        for k in 0..=n {
            let p = n_total - m - k;
            let ln_mag = ln_pref
                + table.ln_factorial(n_total - n)
                - table.ln_factorial(m)
                - table.ln_factorial(n_total - n - m)
                + table.ln_factorial(n)
                - table.ln_factorial(k)
                - table.ln_factorial(n - k)
                + 0.5 * (table.ln_factorial(n_total - m - k) + table.ln_factorial(m + k));
            let sign = if (n_total - n - m).is_multiple_of(2) { 1.0 } else { -1.0 };
            buckets[p].push(sign * math::exp(ln_mag));
        }
    }
    Ok(buckets
        .into_iter()
        .map(|b| C64::new(pairwise_sum(&b), 0.0))
        .collect())
}

/// Same expansion through exact integer inner sums (i128), usable for
/// N ≤ 60: for fixed target p the alternating sum over (m, k) with
/// m + k = N − p is an integer, and only the prefactor needs log-space.
pub fn basis_change_formula_exact(n_total: usize, n: usize) -> Result<Vec<C64>> {
    if n > n_total {
        return Err(Error::OutOfRange {
            what: "basis index must satisfy n ≤ N",
        });
    }
    if n_total > 60 {
        return Err(Error::OverflowRisk {
            n: n_total,
            ceiling: 60,
        });
    }
    fn binom_i128(n: usize, k: usize) -> i128 {
        if k > n {
            return 0;
        }
        let mut row = vec![0i128; k + 1];
        row[0] = 1;
        for _ in 0..n {
            for j in (1..=k).rev() {
                row[j] += row[j - 1];
            }
        }
        row[k]
    }
    let table = LogFactorialTable::new(n_total);
    let ln2 = core::f64::consts::LN_2;
    let mut out = vec![C64::new(0.0, 0.0); n_total + 1];
    for p in 0..=n_total {
        let mut inner: i128 = 0;
        for m in 0..=(n_total - n).min(n_total - p) {
            let k = n_total - p - m;
            if k > n {
                continue;
            }
            let sign: i128 = if (n_total - n - m).is_multiple_of(2) { 1 } else { -1 };
            inner += sign * binom_i128(n_total - n, m) * binom_i128(n, k);
        }
        let ln_mag = 0.5
            * (table.ln_factorial(p) + table.ln_factorial(n_total - p)
                - table.ln_factorial(n)
                - table.ln_factorial(n_total - n))
            - 0.5 * n_total as f64 * ln2;
        out[p] = C64::new(inner as f64 * math::exp(ln_mag), 0.0);
    }
    Ok(out)
}

fn pairwise_sum(xs: &[f64]) -> f64 {
    match xs.len() {
        0 => 0.0,
        1 => xs[0],
        2 => xs[0] + xs[1],
        n => pairwise_sum(&xs[..n / 2]) + pairwise_sum(&xs[n / 2..]),
    }
}

/// Fraction of the balanced binomial profile within the window
/// |m − N/2| ≤ √N (inclusive): Σ C(N,m)/2^N over that window.
///
/// Requires even N ≥ 4.
pub fn binomial_width_check(n_total: usize) -> f64 {
    assert!(n_total.is_multiple_of(2) && n_total >= 4, "requires even N ≥ 4");
    let table = LogFactorialTable::new(n_total);
    let ln2 = core::f64::consts::LN_2;
    let half = n_total as f64 / 2.0;
    let width = math::sqrt(n_total as f64);
    let mut sum = 0.0_f64;
    let mut comp = 0.0_f64;
    for m in 0..=n_total {
        if math::abs(m as f64 - half) <= width {
            let ln_p = table.log_binomial(n_total, m).unwrap() - n_total as f64 * ln2;
            let y = math::exp(ln_p) - comp;
            let t = sum + y;
            comp = (t - sum) - y;
            sum = t;
        }
    }
    sum
}

/// (⟨n_a⟩, within-CV-regime?) for a state: the regime test is
/// ⟨n_a⟩ ≤ κ·√N.
pub fn cv_limit_indicator(state: &SSRCState, kappa: f64) -> (f64, bool) {
    let mean = state.mean_photon_a();
    let bound = kappa * math::sqrt(state.n_total() as f64);
    (mean, mean <= bound)
}
