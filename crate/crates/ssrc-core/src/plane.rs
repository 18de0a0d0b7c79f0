//! Planar quadrature Wigner function on a truncated Fock space.
//!
//! Conventions: x̂ = (â + â†)/2, p̂ = (â − â†)/2i (vacuum variance ¼); a
//! grid point (x, p) is the displacement amplitude α = x + ip. The kernel
//! is the half-scaled parity P₀ = ½(−1)^n̂ that the defining integral
//! (1/4π)∫D̂(α) d²α produces, so the field of a normalized state integrates
//! to Z_W = π/4 rather than 1; negativities are reported normalized by Z_W
//! to stay convention-independent.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64 as C64;

use crate::math;
use crate::numerics::eig::{hermitian_eig, HermitianEigen};
use crate::numerics::matrix::{OperatorMatrix, TriState};
use crate::{Error, Result};

/// ∫ W_P d²α for a normalized state under the half-scaled parity kernel:
/// ½ · π/2. Pinned once against the defining integral (see the tests) and
/// the analytic vacuum field ½ e^{−2|α|²}.
pub const Z_W: f64 = core::f64::consts::PI / 4.0;

/// Single-mode state on the Fock space truncated at `n_max`.
#[derive(Debug, Clone)]
pub struct TruncatedModeState {
    n_max: usize,
    coeffs: Vec<C64>,
    tail_bound: f64,
}

impl TruncatedModeState {
    /// The coefficients must carry at least 1 − tail_bound of the norm.
    pub fn new(n_max: usize, coeffs: Vec<C64>, tail_bound: f64) -> Result<Self> {
        if coeffs.len() != n_max + 1 {
            return Err(Error::DimensionMismatch {
                expected: n_max + 1,
                got: coeffs.len(),
            });
        }
        let sum: f64 = coeffs.iter().map(|c| c.norm_sqr()).sum();
        if sum > 1.0 + 1e-10 || sum < 1.0 - tail_bound - 1e-10 {
            return Err(Error::NotNormalized { sum });
        }
        Ok(TruncatedModeState {
            n_max,
            coeffs,
            tail_bound,
        })
    }

    pub fn vacuum(n_max: usize) -> Self {
        let mut coeffs = vec![C64::new(0.0, 0.0); n_max + 1];
        coeffs[0] = C64::new(1.0, 0.0);
        TruncatedModeState {
            n_max,
            coeffs,
            tail_bound: 0.0,
        }
    }

    pub fn fock(n_max: usize, n: usize) -> Result<Self> {
        if n > n_max {
            return Err(Error::OutOfRange {
                what: "fock index exceeds the cutoff",
            });
        }
        let mut coeffs = vec![C64::new(0.0, 0.0); n_max + 1];
        coeffs[n] = C64::new(1.0, 0.0);
        Ok(TruncatedModeState {
            n_max,
            coeffs,
            tail_bound: 0.0,
        })
    }

    /// Coherent state coefficients e^{−|α|²/2} α^k/√k!, renormalized on the
    /// truncated space; the declared tail bound is the discarded mass.
    pub fn coherent(n_max: usize, alpha: C64) -> Self {
        let mut coeffs = vec![C64::new(0.0, 0.0); n_max + 1];
        let mut log_mag = -alpha.norm_sqr() / 2.0;
        let arg = alpha.arg();
        let mag = alpha.norm();
        let mut kept = 0.0f64;
        for (k, c) in coeffs.iter_mut().enumerate() {
            if k > 0 {
                log_mag += math::ln(mag.max(f64::MIN_POSITIVE)) - 0.5 * math::ln(k as f64);
            }
            let m = if mag == 0.0 && k > 0 {
                0.0
            } else {
                math::exp(log_mag)
            };
            *c = C64::from_polar(m, arg * k as f64);
            kept += m * m;
        }
        let tail = (1.0 - kept).max(0.0);
        let norm = math::sqrt(kept);
        for c in &mut coeffs {
            *c /= norm;
        }
        TruncatedModeState {
            n_max,
            coeffs,
            tail_bound: tail + 1e-15,
        }
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    pub fn tail_bound(&self) -> f64 {
        self.tail_bound
    }

    pub fn mean_photon(&self) -> f64 {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| n as f64 * c.norm_sqr())
            .sum()
    }

    /// Zero-pad (or reject) to a new cutoff.
    pub fn resized(&self, n_max: usize) -> Result<Self> {
        if n_max < self.n_max {
            return Err(Error::OutOfRange {
                what: "cannot shrink a truncated state",
            });
        }
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(n_max + 1, C64::new(0.0, 0.0));
        Ok(TruncatedModeState {
            n_max,
            coeffs,
            tail_bound: self.tail_bound,
        })
    }
}

/// Annihilation operator on the truncated space.
pub fn annihilation(n_max: usize) -> OperatorMatrix {
    let d = n_max + 1;
    let mut a = OperatorMatrix::zeros(d);
    for n in 1..d {
        a[(n - 1, n)] = C64::new(math::sqrt(n as f64), 0.0);
    }
    a
}

/// x̂ = (â + â†)/2 on the truncated space.
pub fn position_operator(n_max: usize) -> OperatorMatrix {
    let a = annihilation(n_max);
    let mut x = a.add(&a.adjoint()).scale(C64::new(0.5, 0.0));
    x.hermitian = TriState::Yes;
    x
}

/// p̂ = (â − â†)/2i on the truncated space.
pub fn momentum_operator(n_max: usize) -> OperatorMatrix {
    let a = annihilation(n_max);
    let mut p = a.sub(&a.adjoint()).scale(C64::new(0.0, -0.5));
    p.hermitian = TriState::Yes;
    p
}

/// Hermitian generator G = −i(â† − â), so that D(r) = e^{irG} for real r.
fn radial_generator(n_max: usize) -> OperatorMatrix {
    let a = annihilation(n_max);
    let mut g = a.adjoint().sub(&a).scale(C64::new(0.0, -1.0));
    g.hermitian = TriState::Yes;
    g
}

/// Eigendecomposition of the radial generator, reused across a grid: with
/// the phase rotation U_φ = e^{iφ n̂}, D(r e^{iφ}) = U_φ D(r) U_φ†.
pub struct DisplacementEngine {
    n_max: usize,
    radial: HermitianEigen,
}

impl DisplacementEngine {
    pub fn new(n_max: usize) -> Self {
        let radial = hermitian_eig(&radial_generator(n_max)).expect("G is Hermitian");
        DisplacementEngine { n_max, radial }
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// D(α) as a dense matrix.
    pub fn matrix(&self, alpha: C64) -> OperatorMatrix {
        let r = alpha.norm();
        let phi = alpha.arg();
        let mut d = self.radial.expi(r);
        let dim = self.n_max + 1;
        for i in 0..dim {
            for j in 0..dim {
                let phase = C64::from_polar(1.0, phi * (i as f64 - j as f64));
                d[(i, j)] *= phase;
            }
        }
        d.unitary = TriState::Yes;
        d
    }

    /// D†(α) ψ without forming the matrix.
    pub fn displace_adjoint(&self, alpha: C64, psi: &[C64]) -> Vec<C64> {
        let r = alpha.norm();
        let phi = alpha.arg();
        // D†(α) = U_φ D(−r) U_φ†
        let mut v: Vec<C64> = psi
            .iter()
            .enumerate()
            .map(|(n, c)| c * C64::from_polar(1.0, -phi * n as f64))
            .collect();
        v = self.radial.expi_apply(-r, &v);
        for (n, c) in v.iter_mut().enumerate() {
            *c *= C64::from_polar(1.0, phi * n as f64);
        }
        v
    }
}

/// D(α) = e^{α â† − α* â} on the truncated space.
///
/// Truncation-safety heuristic |α|² ≤ n_max/4; beyond it the operator is
/// refused rather than silently degraded.
pub fn displacement(n_max: usize, alpha: C64) -> Result<OperatorMatrix> {
    if alpha.norm_sqr() > n_max as f64 / 4.0 {
        return Err(Error::TruncationUnsafe {
            alpha_abs: alpha.norm(),
            n_max,
        });
    }
    Ok(DisplacementEngine::new(n_max).matrix(alpha))
}

/// Parity kernel P₀ = c_P diag((−1)^n) with c_P = ½, the closed form of
/// (1/4π)∫D̂(α)d²α (the tests evaluate the integral numerically).
pub fn parity_kernel(n_max: usize) -> OperatorMatrix {
    let mut p = OperatorMatrix::zeros(n_max + 1);
    for n in 0..=n_max {
        let v = if n % 2 == 0 { 0.5 } else { -0.5 };
        p[(n, n)] = C64::new(v, 0.0);
    }
    p.hermitian = TriState::Yes;
    p
}

/// Rectangular grid in the (x, p) plane.
#[derive(Debug, Clone)]
pub struct PlaneGridSpec {
    pub xs: Vec<f64>,
    pub ps: Vec<f64>,
    /// Fock cutoff for the displaced evaluations; chosen automatically from
    /// the grid corner when absent.
    pub working_n_max: Option<usize>,
}

impl PlaneGridSpec {
    /// Default grid: uniform 201×201 over ±(√n_max/2 + 3), the state's
    /// phase-space support plus a three-vacuum-width margin.
    pub fn default_for(state_n_max: usize) -> Self {
        Self::with_points(state_n_max, 201)
    }

    pub fn with_points(state_n_max: usize, points: usize) -> Self {
        let extent = math::sqrt(state_n_max as f64) / 2.0 + 3.0;
        let step = 2.0 * extent / (points as f64 - 1.0);
        let axis: Vec<f64> = (0..points).map(|i| -extent + i as f64 * step).collect();
        PlaneGridSpec {
            xs: axis.clone(),
            ps: axis,
            working_n_max: None,
        }
    }

    pub fn cell_area(&self) -> f64 {
        let dx = if self.xs.len() > 1 {
            self.xs[1] - self.xs[0]
        } else {
            1.0
        };
        let dp = if self.ps.len() > 1 {
            self.ps[1] - self.ps[0]
        } else {
            1.0
        };
        dx * dp
    }

    /// Largest |α| on the grid.
    pub fn max_radius(&self) -> f64 {
        let mx = self.xs.iter().fold(0.0f64, |m, &x| m.max(math::abs(x)));
        let mp = self.ps.iter().fold(0.0f64, |m, &p| m.max(math::abs(p)));
        math::hypot(mx, mp)
    }
}

/// Sampled planar field.
#[derive(Debug, Clone)]
pub struct PlaneGrid {
    pub xs: Vec<f64>,
    pub ps: Vec<f64>,
    pub cell_area: f64,
    /// values[i · nₚ + j] = W(x_i, p_j).
    pub values: Vec<f64>,
    /// Cutoff actually used for the evaluation.
    pub working_n_max: usize,
}

impl PlaneGrid {
    pub fn value(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.ps.len() + j]
    }

    /// Σ values · cell_area; ≈ Z_W for a normalized state.
    pub fn integral(&self) -> f64 {
        self.values.iter().sum::<f64>() * self.cell_area
    }

    /// Σ cell_area · max(0, −W) / Z_W.
    pub fn negativity(&self) -> f64 {
        self.values
            .iter()
            .map(|&v| if v < 0.0 { -v } else { 0.0 })
            .sum::<f64>()
            * self.cell_area
            / Z_W
    }

    pub fn max_value(&self) -> (f64, f64, f64) {
        let np = self.ps.len();
        let mut best = (0usize, 0usize, f64::NEG_INFINITY);
        for i in 0..self.xs.len() {
            for j in 0..np {
                let v = self.values[i * np + j];
                if v > best.2 {
                    best = (i, j, v);
                }
            }
        }
        (self.xs[best.0], self.ps[best.1], best.2)
    }
}

/// W_P(α) = Tr[ρ D(α) P₀ D†(α)] over the grid: for a pure state,
/// W_P(α) = ½ Σ_n (−1)^n |⟨n|D†(α)|ψ⟩|².
///
/// The evaluation cutoff must satisfy the safety bound (max |α|)² ≤ n_w/4;
/// it is enlarged automatically unless the caller pins `working_n_max`, in
/// which case an unsafe pin is refused.
pub fn wigner_plane(state: &TruncatedModeState, spec: &PlaneGridSpec) -> Result<PlaneGrid> {
    let r_max = spec.max_radius();
    let needed = (4.0 * r_max * r_max) as usize + 8;
    let working = match spec.working_n_max {
        Some(n) => {
            if (r_max * r_max) > n as f64 / 4.0 {
                return Err(Error::TruncationUnsafe {
                    alpha_abs: r_max,
                    n_max: n,
                });
            }
            n.max(state.n_max())
        }
        None => needed.max(state.n_max()),
    };
    let psi = state.resized(working)?;
    let engine = DisplacementEngine::new(working);

    let np = spec.ps.len();
    let mut values = vec![0.0f64; spec.xs.len() * np];
    for (i, &x) in spec.xs.iter().enumerate() {
        for (j, &p) in spec.ps.iter().enumerate() {
            let alpha = C64::new(x, p);
            let displaced = engine.displace_adjoint(alpha, psi.coeffs());
            let mut w = 0.0;
            for (n, c) in displaced.iter().enumerate() {
                let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
                w += 0.5 * sign * c.norm_sqr();
            }
            values[i * np + j] = w;
        }
    }
    Ok(PlaneGrid {
        xs: spec.xs.clone(),
        ps: spec.ps.clone(),
        cell_area: spec.cell_area(),
        values,
        working_n_max: working,
    })
}

/// Σ cell_area · max(0, −W)/Z_W ≥ 0.
pub fn plane_negativity(grid: &PlaneGrid) -> f64 {
    grid.negativity()
}

/// W_P at a single point: ½ Σ_n (−1)^n |⟨n|D†(α)|ψ⟩|². The state must
/// already live on the engine's cutoff.
pub fn wigner_plane_point(engine: &DisplacementEngine, psi: &[C64], alpha: C64) -> f64 {
    let displaced = engine.displace_adjoint(alpha, psi);
    displaced
        .iter()
        .enumerate()
        .map(|(n, c)| {
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            0.5 * sign * c.norm_sqr()
        })
        .sum()
}

/// Squeezed vacuum e^{it(â†² + â²)}|0⟩ on a truncated space, with the tail
/// measured against a double-size computation.
pub fn squeezed_vacuum(n_max: usize, t: f64) -> TruncatedModeState {
    let big = 2 * n_max + 2;
    let a = annihilation(big);
    let a2 = a.mul(&a);
    let mut gen = a2.add(&a2.adjoint());
    gen.hermitian = TriState::Yes;
    let eig = hermitian_eig(&gen).expect("a² + a†² is Hermitian");
    let mut vac = vec![C64::new(0.0, 0.0); big + 1];
    vac[0] = C64::new(1.0, 0.0);
    let full = eig.expi_apply(t, &vac);
    let kept: f64 = full[..=n_max].iter().map(|c| c.norm_sqr()).sum();
    let tail = (1.0 - kept).max(0.0);
    let norm = math::sqrt(kept);
    let coeffs: Vec<C64> = full[..=n_max].iter().map(|c| c / norm).collect();
    TruncatedModeState {
        n_max,
        coeffs,
        tail_bound: tail + 1e-15,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::quadrature::gauss_legendre;

    #[test]
    fn displacement_zero_is_identity() {
        let d = displacement(12, C64::new(0.0, 0.0)).unwrap();
        assert!(d.max_abs_diff(&OperatorMatrix::identity(13)) < 1e-12);
    }

    #[test]
    fn displaced_vacuum_has_coherent_coefficients() {
        let n_max = 40;
        let alpha = C64::new(1.0, 0.0);
        let d = displacement(n_max, alpha).unwrap();
        let mut vac = vec![C64::new(0.0, 0.0); n_max + 1];
        vac[0] = C64::new(1.0, 0.0);
        let out = d.matvec(&vac);
        let mut expect_mag = math::exp(-0.5);
        for k in 0..=12 {
            if k > 0 {
                expect_mag /= math::sqrt(k as f64);
            }
            assert!(
                (out[k] - C64::new(expect_mag, 0.0)).norm() < 1e-10,
                "coefficient {k}: {:?} vs {expect_mag}",
                out[k]
            );
        }
    }

    #[test]
    fn displacement_inverse_on_safe_block() {
        let n_max = 30;
        let alpha = C64::new(0.7, 0.3);
        let d1 = displacement(n_max, alpha).unwrap();
        let d2 = displacement(n_max, -alpha).unwrap();
        let prod = d1.mul(&d2);
        // exactly unitary on the truncated space, so the product is the
        // identity everywhere, not only on the safe block
        assert!(prod.max_abs_diff(&OperatorMatrix::identity(n_max + 1)) < 1e-10);
    }

    #[test]
    fn displacement_truncation_guard() {
        assert!(matches!(
            displacement(10, C64::new(2.0, 0.0)),
            Err(Error::TruncationUnsafe { .. })
        ));
    }

    #[test]
    fn displacement_phase_factorization_matches_generator() {
        // D(α) from the engine vs e^{αa†−α*a} assembled directly as
        // expi of the Hermitian −i(αa†−α*a)
        let n_max = 24;
        let alpha = C64::new(0.4, -0.6);
        let got = DisplacementEngine::new(n_max).matrix(alpha);
        let a = annihilation(n_max);
        let gen = a
            .adjoint()
            .scale(alpha)
            .sub(&a.scale(alpha.conj()))
            .scale(C64::new(0.0, -1.0));
        let expect = hermitian_eig(&gen).unwrap().expi(1.0);
        assert!(got.max_abs_diff(&expect) < 1e-11);
    }

    #[test]
    fn parity_kernel_matches_defining_integral() {
        // (1/4π) ∫ D(α) d²α with Gauss–Legendre radius × uniform angle:
        // the low-n block converges to ½ diag(+,−,+,…). The radius cap must
        // respect the truncation-safety bound r² ≤ n_max/4, so r ≤ 9 with
        // n_max = 330: the Laguerre-weighted tails r^{2n+1}e^{−r²/2} of the
        // asserted block (n ≤ 7) are below 1e−6 at that cap.
        let n_max = 330;
        let dim = n_max + 1;
        let radial = hermitian_eig(&radial_generator(n_max)).unwrap();
        let block = 8usize;
        let (rn, rw) = gauss_legendre(128);
        let nphi = 32;
        let rmax = 9.0;
        let mut acc = OperatorMatrix::zeros(block);
        // block entries of D(re^{iφ}): e^{iφ(i−j)} Σ_k V[i,k] e^{irλ_k} V*[j,k]
        for (node, w) in rn.iter().zip(rw.iter()) {
            let r = (node + 1.0) / 2.0 * rmax;
            let wr = w * rmax / 2.0;
            let mut d_block = OperatorMatrix::zeros(block);
            for i in 0..block {
                for j in 0..block {
                    let mut s = C64::new(0.0, 0.0);
                    for k in 0..dim {
                        s += radial.vectors[(i, k)]
                            * C64::from_polar(1.0, r * radial.values[k])
                            * radial.vectors[(j, k)].conj();
                    }
                    d_block[(i, j)] = s;
                }
            }
            for k in 0..nphi {
                let phi = 2.0 * core::f64::consts::PI * k as f64 / nphi as f64;
                let scale = wr * r * (2.0 * core::f64::consts::PI / nphi as f64);
                for i in 0..block {
                    for j in 0..block {
                        let ph = C64::from_polar(scale, phi * (i as f64 - j as f64));
                        acc[(i, j)] += ph * d_block[(i, j)];
                    }
                }
            }
        }
        acc = acc.scale(C64::new(1.0 / (4.0 * core::f64::consts::PI), 0.0));
        let p = parity_kernel(block - 1);
        for i in 0..block {
            for j in 0..block {
                assert!(
                    (acc[(i, j)] - p[(i, j)]).norm() < 1e-4,
                    "integral mismatch at ({i},{j}): {:?} vs {:?}",
                    acc[(i, j)],
                    p[(i, j)]
                );
            }
        }
        // structural zeros and the square
        let p_full = parity_kernel(n_max);
        assert!(p_full[(0, 1)].norm() == 0.0);
        let p2 = p_full.mul(&p_full);
        assert!(p2.max_abs_diff(&OperatorMatrix::identity(dim).scale(C64::new(0.25, 0.0))) < 1e-14);
        assert!((p_full[(0, 0)].re - 0.5).abs() < 1e-15);
    }

    #[test]
    fn vacuum_field_is_half_gaussian() {
        let state = TruncatedModeState::vacuum(10);
        let spec = PlaneGridSpec::with_points(10, 41);
        let grid = wigner_plane(&state, &spec).unwrap();
        for (i, &x) in grid.xs.iter().enumerate() {
            for (j, &p) in grid.ps.iter().enumerate() {
                let expect = 0.5 * math::exp(-2.0 * (x * x + p * p));
                assert!(
                    (grid.value(i, j) - expect).abs() < 1e-9,
                    "vacuum field at ({x},{p})"
                );
            }
        }
        let (xm, pm, vm) = grid.max_value();
        assert!(math::abs(xm) < 1e-12 && math::abs(pm) < 1e-12);
        assert!((vm - 0.5).abs() < 1e-12);
        // non-negative up to round-off in the deep Gaussian tail
        assert!(grid.values.iter().all(|&v| v >= -1e-15));
    }

    #[test]
    fn field_integral_matches_pinned_normalization() {
        let state = TruncatedModeState::vacuum(10);
        let spec = PlaneGridSpec::default_for(10);
        let grid = wigner_plane(&state, &spec).unwrap();
        assert!(
            (grid.integral() - Z_W).abs() < 1e-3,
            "∫W = {} vs Z_W = {Z_W}",
            grid.integral()
        );
        // analytic cross-check: ∫ ½e^{−2|α|²} d²α = π/4
        assert!((Z_W - core::f64::consts::PI / 4.0).abs() < 1e-15);
    }

    #[test]
    fn fock_one_is_negative_at_origin() {
        let state = TruncatedModeState::fock(12, 1).unwrap();
        let spec = PlaneGridSpec::with_points(12, 81);
        let grid = wigner_plane(&state, &spec).unwrap();
        // W(0) = ⟨1|P₀|1⟩ = −½
        let i0 = grid.xs.len() / 2;
        let j0 = grid.ps.len() / 2;
        assert!((grid.value(i0, j0) + 0.5).abs() < 1e-9);
        assert!(plane_negativity(&grid) > 0.01);
    }

    #[test]
    fn displaced_vacuum_field_is_translated_vacuum_field() {
        let n_state = 40;
        let beta = C64::new(1.0, 0.0);
        let d = displacement(n_state, beta).unwrap();
        let mut vac = vec![C64::new(0.0, 0.0); n_state + 1];
        vac[0] = C64::new(1.0, 0.0);
        let coeffs = d.matvec(&vac);
        let displaced = TruncatedModeState::new(n_state, coeffs, 1e-12).unwrap();

        // evaluate both fields on the same axis, one shifted by Re β
        let axis: Vec<f64> = (0..41).map(|i| -2.0 + i as f64 * 0.1).collect();
        let spec_shifted = PlaneGridSpec {
            xs: axis.iter().map(|x| x + 1.0).collect(),
            ps: axis.clone(),
            working_n_max: None,
        };
        let spec_base = PlaneGridSpec {
            xs: axis.clone(),
            ps: axis.clone(),
            working_n_max: None,
        };
        let g_disp = wigner_plane(&displaced, &spec_shifted).unwrap();
        let g_vac = wigner_plane(&TruncatedModeState::vacuum(n_state), &spec_base).unwrap();
        for i in 0..axis.len() {
            for j in 0..axis.len() {
                assert!(
                    (g_disp.value(i, j) - g_vac.value(i, j)).abs() < 1e-6,
                    "translation covariance failed at ({i},{j})"
                );
            }
        }
    }

    #[test]
    fn hudson_family_negativities() {
        // Gaussian family: negativity ≤ 1e−6
        let vac = TruncatedModeState::vacuum(20);
        let coh = TruncatedModeState::coherent(40, C64::new(1.0, 0.0));
        let sq = squeezed_vacuum(60, 0.25);
        for (name, st) in [("vacuum", &vac), ("coherent", &coh), ("squeezed", &sq)] {
            let spec = PlaneGridSpec::with_points(st.n_max(), 101);
            let grid = wigner_plane(st, &spec).unwrap();
            assert!(
                plane_negativity(&grid) <= 1e-6,
                "{name} negativity {}",
                plane_negativity(&grid)
            );
        }
        // Fock |1⟩, |2⟩: genuinely negative, > 0.01·Z_W under the
        // Z_W-normalized measure, stable to 10% under 2× refinement
        for n in [1usize, 2] {
            let st = TruncatedModeState::fock(16, n).unwrap();
            let spec = PlaneGridSpec::with_points(16, 101);
            let coarse = plane_negativity(&wigner_plane(&st, &spec).unwrap());
            let spec_fine = PlaneGridSpec::with_points(16, 201);
            let fine = plane_negativity(&wigner_plane(&st, &spec_fine).unwrap());
            assert!(coarse > 0.01 * Z_W, "|{n}⟩ negativity {coarse}");
            assert!(
                (coarse - fine).abs() <= 0.1 * fine,
                "|{n}⟩ negativity unstable: {coarse} vs {fine}"
            );
        }
    }

    #[test]
    fn truncation_robustness() {
        let spec = PlaneGridSpec::with_points(10, 41);
        for st_pair in [
            (
                TruncatedModeState::vacuum(30),
                TruncatedModeState::vacuum(60),
            ),
            (
                TruncatedModeState::fock(30, 1).unwrap(),
                TruncatedModeState::fock(60, 1).unwrap(),
            ),
        ] {
            let g1 = wigner_plane(&st_pair.0, &spec).unwrap();
            let g2 = wigner_plane(&st_pair.1, &spec).unwrap();
            for (a, b) in g1.values.iter().zip(g2.values.iter()) {
                assert!((a - b).abs() < 1e-6);
            }
        }
    }

    #[test]
    fn pinned_working_cutoff_is_validated() {
        let state = TruncatedModeState::vacuum(10);
        let spec = PlaneGridSpec {
            xs: alloc::vec![-4.0, 0.0, 4.0],
            ps: alloc::vec![-4.0, 0.0, 4.0],
            working_n_max: Some(20),
        };
        assert!(matches!(
            wigner_plane(&state, &spec),
            Err(Error::TruncationUnsafe { .. })
        ));
    }

    #[test]
    fn squeezed_vacuum_is_gaussian_shaped() {
        let sq = squeezed_vacuum(60, 0.25);
        assert!(sq.tail_bound() < 1e-10, "tail {}", sq.tail_bound());
        // only even Fock components
        for (n, c) in sq.coeffs().iter().enumerate() {
            if n % 2 == 1 {
                assert!(c.norm() < 1e-13);
            }
        }
        assert!(sq.mean_photon() > 0.01);
    }
}
