//! Discrete toric Wigner function for odd qudit dimensions.
//!
//! Weyl operators T_{n,m} = phase · X^n Z^m over Z_d × Z_d, phase-point
//! operators Δ_k = T_k Δ_0 T_k† with Δ_0 = (1/d) Σ_k T_k, and the lattice
//! W(k) = (1/d) Tr[Δ_k ρ]. With the symmetric phase ω^{2⁻¹nm} (2⁻¹ the
//! modular inverse, well defined for odd d) the Δ_k are Hermitian, marginals
//! reproduce Born probabilities, and stabilizer states are non-negative.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64 as C64;

use crate::math;
use crate::numerics::matrix::{OperatorMatrix, TriState};
use crate::{Error, Result};

/// Phase convention for the Weyl operators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeylConvention {
    /// ω^{nm} X^n Z^m as printed in the defining equation. Phase points are
    /// Hermitian only at d = 3; imaginary residues are reported, not
    /// asserted.
    PaperLiteral,
    /// ω^{2⁻¹ nm} X^n Z^m. Hermitian phase points, exact marginal and
    /// covariance properties; the default.
    SymmetricHalf,
}

/// Pure qudit state, Σ_j amps[j] |j⟩ with Σ|amps|² = 1 to 1e−10.
#[derive(Debug, Clone)]
pub struct QuditState {
    d: usize,
    amps: Vec<C64>,
}

impl QuditState {
    pub fn new(d: usize, amps: Vec<C64>) -> Result<Self> {
        if amps.len() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: amps.len(),
            });
        }
        let sum: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if math::abs(sum - 1.0) > 1e-10 {
            return Err(Error::NotNormalized { sum });
        }
        Ok(QuditState { d, amps })
    }

    pub fn basis(d: usize, j: usize) -> Result<Self> {
        if j >= d {
            return Err(Error::OutOfRange {
                what: "basis index must be < d",
            });
        }
        let mut amps = vec![C64::new(0.0, 0.0); d];
        amps[j] = C64::new(1.0, 0.0);
        Ok(QuditState { d, amps })
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn amps(&self) -> &[C64] {
        &self.amps
    }

    pub fn apply(&self, u: &OperatorMatrix) -> Result<Self> {
        if u.dim() != self.d {
            return Err(Error::DimensionMismatch {
                expected: self.d,
                got: u.dim(),
            });
        }
        Ok(QuditState {
            d: self.d,
            amps: u.matvec(&self.amps),
        })
    }
}

/// X|j⟩ = |j+1 mod d⟩.
pub fn pauli_x(d: usize) -> OperatorMatrix {
    let mut x = OperatorMatrix::zeros(d);
    for j in 0..d {
        x[((j + 1) % d, j)] = C64::new(1.0, 0.0);
    }
    x.unitary = TriState::Yes;
    x
}

/// Z|j⟩ = ω^j |j⟩.
pub fn pauli_z(d: usize) -> OperatorMatrix {
    let mut z = OperatorMatrix::zeros(d);
    for j in 0..d {
        z[(j, j)] = C64::from_polar(1.0, 2.0 * core::f64::consts::PI * j as f64 / d as f64);
    }
    z.unitary = TriState::Yes;
    z
}

/// F[j,k] = ω^{jk}/√d.
pub fn fourier(d: usize) -> OperatorMatrix {
    let mut f = OperatorMatrix::from_fn(d, |j, k| {
        C64::from_polar(
            1.0 / math::sqrt(d as f64),
            2.0 * core::f64::consts::PI * ((j * k) % d) as f64 / d as f64,
        )
    });
    f.unitary = TriState::Yes;
    f
}

/// Diagonal quadratic-phase gate Q|j⟩ = ω^{2⁻¹ j²}|j⟩ (Clifford for odd d).
pub fn quadratic_phase(d: usize) -> OperatorMatrix {
    let inv2 = mod_inverse_2(d);
    let mut q = OperatorMatrix::zeros(d);
    for j in 0..d {
        let e = (inv2 * j * j) % d;
        q[(j, j)] = C64::from_polar(1.0, 2.0 * core::f64::consts::PI * e as f64 / d as f64);
    }
    q.unitary = TriState::Yes;
    q
}

/// (d+1)/2 = 2⁻¹ mod d for odd d.
fn mod_inverse_2(d: usize) -> usize {
    d.div_ceil(2)
}

/// Weyl operators and phase-point operators for one dimension/convention.
#[derive(Debug, Clone)]
pub struct PhasePointSet {
    d: usize,
    convention: WeylConvention,
    /// T_{n,m} indexed n·d + m.
    weyl: Vec<OperatorMatrix>,
    /// Δ_{n,m} indexed n·d + m.
    points: Vec<OperatorMatrix>,
}

impl PhasePointSet {
    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn convention(&self) -> WeylConvention {
        self.convention
    }

    pub fn weyl(&self, n: usize, m: usize) -> &OperatorMatrix {
        &self.weyl[n * self.d + m]
    }

    pub fn point(&self, n: usize, m: usize) -> &OperatorMatrix {
        &self.points[n * self.d + m]
    }
}

/// Build T_{n,m} and Δ_{n,m} for odd d ≥ 3.
pub fn weyl_operators(d: usize, convention: WeylConvention) -> Result<PhasePointSet> {
    if d < 3 || d.is_multiple_of(2) {
        return Err(Error::EvenDimension { d });
    }
    let omega = 2.0 * core::f64::consts::PI / d as f64;
    let inv2 = mod_inverse_2(d);
    let mut weyl = Vec::with_capacity(d * d);
    for n in 0..d {
        for m in 0..d {
            let phase_exp = match convention {
                WeylConvention::PaperLiteral => (n * m) % d,
                WeylConvention::SymmetricHalf => (inv2 * n * m) % d,
            };
            let phase = C64::from_polar(1.0, omega * phase_exp as f64);
            // (X^n Z^m)|j⟩ = ω^{jm} |j+n⟩
            let mut t = OperatorMatrix::zeros(d);
            for j in 0..d {
                t[((j + n) % d, j)] = phase * C64::from_polar(1.0, omega * ((j * m) % d) as f64);
            }
            t.unitary = TriState::Yes;
            weyl.push(t);
        }
    }

    let mut delta0 = OperatorMatrix::zeros(d);
    for t in &weyl {
        delta0 = delta0.add(t);
    }
    delta0 = delta0.scale(C64::new(1.0 / d as f64, 0.0));

    let mut points = Vec::with_capacity(d * d);
    for t in &weyl {
        points.push(delta0.conjugate_by(t));
    }

    Ok(PhasePointSet {
        d,
        convention,
        weyl,
        points,
    })
}

/// Discrete Wigner lattice with its convention and the largest imaginary
/// residue seen in the trace formula.
#[derive(Debug, Clone)]
pub struct WignerLattice {
    pub d: usize,
    pub convention: WeylConvention,
    /// values[n·d + m] = W(n, m); n is the shift (position) coordinate,
    /// m the phase coordinate.
    pub values: Vec<f64>,
    pub max_imag_residue: f64,
}

impl WignerLattice {
    pub fn value(&self, n: usize, m: usize) -> f64 {
        self.values[n * self.d + m]
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }

    /// Σ_k max(0, −W(k)); equals (Σ|W| − 1)/2 for normalized lattices.
    pub fn negativity(&self) -> f64 {
        self.values
            .iter()
            .map(|&v| if v < 0.0 { -v } else { 0.0 })
            .sum()
    }

    /// Σ_m W(n, m): the position-basis Born probability at n
    /// (symmetric-half convention).
    pub fn position_marginal(&self, n: usize) -> f64 {
        (0..self.d).map(|m| self.value(n, m)).sum()
    }

    /// Σ_n W(n, m): the conjugate-basis marginal at phase coordinate m.
    pub fn phase_marginal(&self, m: usize) -> f64 {
        (0..self.d).map(|n| self.value(n, m)).sum()
    }
}

/// W(k) = (1/d) Tr[Δ_k ρ] for a pure state.
pub fn wigner_discrete(state: &QuditState, pps: &PhasePointSet) -> Result<WignerLattice> {
    if state.dim() != pps.dim() {
        return Err(Error::DimensionMismatch {
            expected: pps.dim(),
            got: state.dim(),
        });
    }
    let d = pps.dim();
    let mut values = vec![0.0f64; d * d];
    let mut max_imag = 0.0f64;
    for n in 0..d {
        for m in 0..d {
            let delta = pps.point(n, m);
            let dv = delta.matvec(state.amps());
            let mut acc = C64::new(0.0, 0.0);
            for (a, b) in state.amps().iter().zip(dv.iter()) {
                acc += a.conj() * b;
            }
            acc /= d as f64;
            let im = math::abs(acc.im);
            if im > max_imag {
                max_imag = im;
            }
            if pps.convention() == WeylConvention::SymmetricHalf {
                debug_assert!(im <= 1e-9, "imaginary residue {im}");
            }
            values[n * d + m] = acc.re;
        }
    }
    Ok(WignerLattice {
        d,
        convention: pps.convention(),
        values,
        max_imag_residue: max_imag,
    })
}

/// W(k) for a density matrix.
pub fn wigner_discrete_density(rho: &OperatorMatrix, pps: &PhasePointSet) -> Result<WignerLattice> {
    if rho.dim() != pps.dim() {
        return Err(Error::DimensionMismatch {
            expected: pps.dim(),
            got: rho.dim(),
        });
    }
    let d = pps.dim();
    let mut values = vec![0.0f64; d * d];
    let mut max_imag = 0.0f64;
    for n in 0..d {
        for m in 0..d {
            let tr = rho.mul(pps.point(n, m)).trace() / d as f64;
            let im = math::abs(tr.im);
            if im > max_imag {
                max_imag = im;
            }
            values[n * d + m] = tr.re;
        }
    }
    Ok(WignerLattice {
        d,
        convention: pps.convention(),
        values,
        max_imag_residue: max_imag,
    })
}

/// Σ_k max(0, −W(k)).
pub fn discrete_negativity(lattice: &WignerLattice) -> f64 {
    lattice.negativity()
}

/// Generators accepted by the Clifford positivity scan.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CliffordGate {
    X,
    Z,
    F,
    QuadraticPhase,
}

/// One violation found by the scan.
#[derive(Debug, Clone)]
pub struct PositivityViolation {
    pub word: Vec<CliffordGate>,
    pub basis_state: usize,
    pub negativity: f64,
}

/// Scan report: every word over `gates` of length ≤ max_len applied to
/// every basis state, with the worst negativity seen.
#[derive(Debug, Clone)]
pub struct PositivityScan {
    pub d: usize,
    pub words_checked: usize,
    pub states_checked: usize,
    pub max_negativity: f64,
    pub violations: Vec<PositivityViolation>,
}

/// Apply each gate word of length ≤ `max_len` to each computational basis
/// state and record lattices with negativity > 1e−10. Under the
/// symmetric-half convention the discrete Hudson property predicts zero
/// violations.
pub fn clifford_positivity_scan(
    d: usize,
    gates: &[CliffordGate],
    max_len: usize,
    convention: WeylConvention,
) -> Result<PositivityScan> {
    let pps = weyl_operators(d, convention)?;
    let gate_matrix = |g: CliffordGate| -> OperatorMatrix {
        match g {
            CliffordGate::X => pauli_x(d),
            CliffordGate::Z => pauli_z(d),
            CliffordGate::F => fourier(d),
            CliffordGate::QuadraticPhase => quadratic_phase(d),
        }
    };
    let mats: Vec<OperatorMatrix> = gates.iter().map(|&g| gate_matrix(g)).collect();

    // Enumerate words breadth-first, carrying the product matrices.
    let mut words: Vec<(Vec<CliffordGate>, OperatorMatrix)> =
        vec![(Vec::new(), OperatorMatrix::identity(d))];
    let mut frontier = words.clone();
    for _ in 0..max_len {
        let mut next = Vec::new();
        for (word, u) in &frontier {
            for (gi, g) in gates.iter().enumerate() {
                let mut w = word.clone();
                w.push(*g);
                next.push((w, mats[gi].mul(u)));
            }
        }
        words.extend(next.iter().cloned());
        frontier = next;
    }

    let mut violations = Vec::new();
    let mut max_neg = 0.0f64;
    let mut states_checked = 0usize;
    for (word, u) in &words {
        for j in 0..d {
            let state = QuditState::basis(d, j)?.apply(u)?;
            let lattice = wigner_discrete(&state, &pps)?;
            let neg = lattice.negativity();
            states_checked += 1;
            if neg > max_neg {
                max_neg = neg;
            }
            if neg > 1e-10 {
                violations.push(PositivityViolation {
                    word: word.clone(),
                    basis_state: j,
                    negativity: neg,
                });
            }
        }
    }
    Ok(PositivityScan {
        d,
        words_checked: words.len(),
        states_checked,
        max_negativity: max_neg,
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn omega(d: usize) -> C64 {
        C64::from_polar(1.0, 2.0 * core::f64::consts::PI / d as f64)
    }

    fn random_pure(d: usize, rng: &mut impl Rng) -> QuditState {
        let mut amps: Vec<C64> = (0..d)
            .map(|_| C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
            .collect();
        let norm = math::sqrt(amps.iter().map(|a| a.norm_sqr()).sum());
        for a in &mut amps {
            *a /= norm;
        }
        QuditState::new(d, amps).unwrap()
    }

    #[test]
    fn rejects_even_dimension() {
        assert!(matches!(
            weyl_operators(4, WeylConvention::SymmetricHalf),
            Err(Error::EvenDimension { d: 4 })
        ));
        assert!(weyl_operators(1, WeylConvention::SymmetricHalf).is_err());
    }

    #[test]
    fn weyl_zero_is_identity() {
        for &d in &[3usize, 5, 7] {
            let pps = weyl_operators(d, WeylConvention::SymmetricHalf).unwrap();
            assert!(pps.weyl(0, 0).max_abs_diff(&OperatorMatrix::identity(d)) < 1e-14);
        }
    }

    #[test]
    fn paper_literal_t11_action() {
        // T_{1,1}|0⟩ = ω X Z |0⟩ = ω |1⟩ at d = 3
        let pps = weyl_operators(3, WeylConvention::PaperLiteral).unwrap();
        let t = pps.weyl(1, 1);
        let e0 = [C64::new(1.0, 0.0), C64::new(0.0, 0.0), C64::new(0.0, 0.0)];
        let out = t.matvec(&e0);
        assert!((out[1] - omega(3)).norm() < 1e-14);
        assert!(out[0].norm() < 1e-15 && out[2].norm() < 1e-15);
    }

    #[test]
    fn heisenberg_weyl_relation_d5() {
        let d = 5;
        let x = pauli_x(d);
        let z = pauli_z(d);
        // X^a Z^b = ω^{−ab} Z^b X^a
        let mut xp = OperatorMatrix::identity(d);
        for a in 0..d {
            let mut zp = OperatorMatrix::identity(d);
            for b in 0..d {
                let lhs = xp.mul(&zp);
                let phase = C64::from_polar(
                    1.0,
                    -2.0 * core::f64::consts::PI * ((a * b) % d) as f64 / d as f64,
                );
                let rhs = zp.mul(&xp).scale(phase);
                assert!(lhs.max_abs_diff(&rhs) < 1e-12, "HW failed at a={a} b={b}");
                zp = zp.mul(&z);
            }
            xp = xp.mul(&x);
        }
    }

    #[test]
    fn symmetric_half_points_are_hermitian_unit_trace() {
        for &d in &[3usize, 5, 7] {
            let pps = weyl_operators(d, WeylConvention::SymmetricHalf).unwrap();
            for n in 0..d {
                for m in 0..d {
                    let p = pps.point(n, m);
                    assert!(p.hermiticity_defect() < 1e-12, "Δ not Hermitian at d={d}");
                    assert!((p.trace().re - 1.0).abs() < 1e-12);
                    assert!(math::abs(p.trace().im) < 1e-12);
                }
            }
            // Tr[Δ_k Δ_k'] = d δ_kk'
            for k1 in 0..d * d {
                for k2 in k1..d * d {
                    let got = pps.points[k1].mul(&pps.points[k2]).trace().re;
                    let expect = if k1 == k2 { d as f64 } else { 0.0 };
                    assert!((got - expect).abs() < 1e-10);
                }
            }
        }
    }

    #[test]
    fn paper_literal_points_not_hermitian_but_unit_trace() {
        // With the product read as X^n Z^m (the order the T_{1,1} example
        // pins), Δ0 = Σ_j |0⟩⟨j|: trace 1, far from Hermitian — at every
        // odd d, including 3.
        for &d in &[3usize, 5] {
            let lit = weyl_operators(d, WeylConvention::PaperLiteral).unwrap();
            let worst = (0..d)
                .flat_map(|n| (0..d).map(move |m| (n, m)))
                .map(|(n, m)| lit.point(n, m).hermiticity_defect())
                .fold(0.0f64, f64::max);
            assert!(worst > 1e-1, "expected non-Hermitian points at d={d}");
            for n in 0..d {
                for m in 0..d {
                    let tr = lit.point(n, m).trace();
                    assert!((tr.re - 1.0).abs() < 1e-12 && math::abs(tr.im) < 1e-12);
                }
            }
        }
    }

    #[test]
    fn reversed_order_literal_phase_is_hermitian_exactly_at_d3() {
        // ω^{nm} Z^m X^n = ω^{2nm} X^n Z^m coincides with the symmetric
        // convention iff 2 ≡ 2⁻¹ (mod d), i.e. only at d = 3. This is the
        // sense in which the literal phase yields Hermitian phase points at
        // d = 3 and nowhere else.
        for &d in &[3usize, 5, 7] {
            let omega_d = 2.0 * core::f64::consts::PI / d as f64;
            let mut delta0 = OperatorMatrix::zeros(d);
            for n in 0..d {
                for m in 0..d {
                    let mut t = OperatorMatrix::zeros(d);
                    for j in 0..d {
                        // ω^{nm} Z^m X^n |j⟩ = ω^{nm + (j+n)m} |j+n⟩
                        let e = (n * m + (j + n) * m) % d;
                        t[((j + n) % d, j)] = C64::from_polar(1.0, omega_d * e as f64);
                    }
                    delta0 = delta0.add(&t);
                }
            }
            delta0 = delta0.scale(C64::new(1.0 / d as f64, 0.0));
            let defect = delta0.hermiticity_defect();
            if d == 3 {
                assert!(defect < 1e-12, "d=3 reversed-order Δ0 not Hermitian");
                let sym = weyl_operators(3, WeylConvention::SymmetricHalf).unwrap();
                assert!(delta0.max_abs_diff(sym.point(0, 0)) < 1e-12);
            } else {
                assert!(defect > 1e-1, "d={d} unexpectedly Hermitian");
            }
        }
    }

    #[test]
    fn delta0_is_parity_under_symmetric_half() {
        let d = 5;
        let pps = weyl_operators(d, WeylConvention::SymmetricHalf).unwrap();
        let mut parity = OperatorMatrix::zeros(d);
        for j in 0..d {
            parity[((d - j) % d, j)] = C64::new(1.0, 0.0);
        }
        assert!(pps.point(0, 0).max_abs_diff(&parity) < 1e-12);
    }

    #[test]
    fn maximally_mixed_is_flat() {
        for &d in &[3usize, 7] {
            let pps = weyl_operators(d, WeylConvention::SymmetricHalf).unwrap();
            let mut rho = OperatorMatrix::zeros(d);
            for j in 0..d {
                rho[(j, j)] = C64::new(1.0 / d as f64, 0.0);
            }
            let lattice = wigner_discrete_density(&rho, &pps).unwrap();
            for &v in &lattice.values {
                assert!((v - 1.0 / (d * d) as f64).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn basis_state_occupies_one_position_column() {
        let d = 3;
        let pps = weyl_operators(d, WeylConvention::SymmetricHalf).unwrap();
        let lattice = wigner_discrete(&QuditState::basis(d, 0).unwrap(), &pps).unwrap();
        for m in 0..d {
            assert!((lattice.value(0, m) - 1.0 / d as f64).abs() < 1e-13);
        }
        for n in 1..d {
            for m in 0..d {
                assert!(lattice.value(n, m).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn lattice_sums_to_one_random_states() {
        let d = 7;
        let pps = weyl_operators(d, WeylConvention::SymmetricHalf).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        for _ in 0..50 {
            let state = random_pure(d, &mut rng);
            let lattice = wigner_discrete(&state, &pps).unwrap();
            assert!((lattice.sum() - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn marginals_reproduce_born_probabilities() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(29);
        for &d in &[3usize, 5, 7, 11] {
            let pps = weyl_operators(d, WeylConvention::SymmetricHalf).unwrap();
            let state = random_pure(d, &mut rng);
            let lattice = wigner_discrete(&state, &pps).unwrap();
            for n in 0..d {
                assert!(
                    (lattice.position_marginal(n) - state.amps()[n].norm_sqr()).abs() < 1e-10,
                    "position marginal failed at d={d} n={n}"
                );
            }
            // the conjugate marginal set equals the Fourier-basis
            // probability set
            let famps = fourier(d).adjoint_matvec(state.amps());
            let mut matched = 0;
            for m in 0..d {
                let pm = lattice.phase_marginal(m);
                if (0..d).any(|j| (famps[j].norm_sqr() - pm).abs() < 1e-10) {
                    matched += 1;
                }
            }
            assert_eq!(matched, d, "phase marginals are not Fourier probabilities");
        }
    }

    #[test]
    fn traciality() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(31);
        for &d in &[3usize, 5, 9] {
            let pps = weyl_operators(d, WeylConvention::SymmetricHalf).unwrap();
            let mut rand_herm = || {
                let mut m = OperatorMatrix::zeros(d);
                for i in 0..d {
                    for j in 0..d {
                        m[(i, j)] =
                            C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
                    }
                }
                m.add(&m.adjoint()).scale(C64::new(0.5, 0.0))
            };
            let a = rand_herm();
            let b = rand_herm();
            let wa = wigner_discrete_density(&a, &pps).unwrap();
            let wb = wigner_discrete_density(&b, &pps).unwrap();
            let overlap: f64 = wa
                .values
                .iter()
                .zip(wb.values.iter())
                .map(|(x, y)| x * y)
                .sum::<f64>()
                * d as f64;
            let expect = a.mul(&b).trace().re;
            assert!(
                (overlap - expect).abs() < 1e-9 * expect.abs().max(1.0),
                "traciality failed at d={d}"
            );
        }
    }

    #[test]
    fn covariance_under_weyl_translations() {
        let d = 5;
        let pps = weyl_operators(d, WeylConvention::SymmetricHalf).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(37);
        let state = random_pure(d, &mut rng);
        let base = wigner_discrete(&state, &pps).unwrap();
        for a in 0..d {
            for b in 0..d {
                let shifted = state.apply(pps.weyl(a, b)).unwrap();
                let lattice = wigner_discrete(&shifted, &pps).unwrap();
                for n in 0..d {
                    for m in 0..d {
                        let expect = base.value((n + d - a) % d, (m + d - b) % d);
                        assert!(
                            (lattice.value(n, m) - expect).abs() < 1e-12,
                            "covariance failed at shift ({a},{b}) point ({n},{m})"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn purity_sum_of_squares() {
        let d = 7;
        let pps = weyl_operators(d, WeylConvention::SymmetricHalf).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(41);
        for _ in 0..10 {
            let lattice = wigner_discrete(&random_pure(d, &mut rng), &pps).unwrap();
            let ssq: f64 = lattice.values.iter().map(|v| v * v).sum();
            assert!((ssq - 1.0 / d as f64).abs() < 1e-10);
        }
    }

    #[test]
    fn stabilizer_states_are_positive() {
        for &d in &[3usize, 5, 7] {
            let pps = weyl_operators(d, WeylConvention::SymmetricHalf).unwrap();
            for j in 0..d {
                let basis = QuditState::basis(d, j).unwrap();
                let neg = wigner_discrete(&basis, &pps).unwrap().negativity();
                assert!(neg <= 1e-12, "basis |{j}⟩ negative at d={d}: {neg}");
            }
        }
        // Fourier-basis state at d = 5
        let d = 5;
        let pps = weyl_operators(d, WeylConvention::SymmetricHalf).unwrap();
        let f0 = QuditState::basis(d, 0).unwrap().apply(&fourier(d)).unwrap();
        let neg = wigner_discrete(&f0, &pps).unwrap().negativity();
        assert!(neg <= 1e-12, "F|0⟩ negativity {neg}");
    }

    #[test]
    fn generic_state_has_negativity() {
        let d = 3;
        let pps = weyl_operators(d, WeylConvention::SymmetricHalf).unwrap();
        let amps = [
            C64::new(1.0, 0.0),
            C64::from_polar(1.0, core::f64::consts::PI / 7.0),
            C64::from_polar(1.0, core::f64::consts::PI / 3.0),
        ];
        let s = 1.0 / math::sqrt(3.0);
        let state = QuditState::new(d, amps.iter().map(|a| a * s).collect()).unwrap();
        let neg = wigner_discrete(&state, &pps).unwrap().negativity();
        assert!(neg > 1e-3, "witness negativity {neg}");
    }

    #[test]
    fn clifford_scan_finds_no_violations() {
        use CliffordGate::*;
        let scan = clifford_positivity_scan(
            3,
            &[X, Z, F, QuadraticPhase],
            3,
            WeylConvention::SymmetricHalf,
        )
        .unwrap();
        assert!(
            scan.violations.is_empty(),
            "violations: {}",
            scan.violations.len()
        );
        assert!(scan.max_negativity <= 1e-10);

        let scan5 = clifford_positivity_scan(
            5,
            &[X, Z, F, QuadraticPhase],
            2,
            WeylConvention::SymmetricHalf,
        )
        .unwrap();
        assert!(scan5.violations.is_empty());
    }

    #[test]
    fn clifford_scan_empty_gate_list_checks_basis_only() {
        let scan = clifford_positivity_scan(3, &[], 4, WeylConvention::SymmetricHalf).unwrap();
        assert_eq!(scan.states_checked, 3);
        assert!(scan.violations.is_empty());
    }

    #[test]
    fn negativity_equals_half_l1_excess() {
        let d = 5;
        let pps = weyl_operators(d, WeylConvention::SymmetricHalf).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(43);
        let lattice = wigner_discrete(&random_pure(d, &mut rng), &pps).unwrap();
        let l1: f64 = lattice.values.iter().map(|v| v.abs()).sum();
        assert!((lattice.negativity() - (l1 - 1.0) / 2.0).abs() < 1e-12);
    }
}
