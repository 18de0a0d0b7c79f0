//! Property-based checks over randomized inputs: unitary-exponential group
//! structure, rotation isometry, and the discrete phase-space identities.

use num_complex::Complex64 as C64;
use proptest::prelude::*;

use ssrc_core::discrete::{weyl_operators, wigner_discrete, QuditState, WeylConvention};
use ssrc_core::fock::{rotation, SSRCState};
use ssrc_core::numerics::{expi_hermitian, hermitian_eig, OperatorMatrix};

fn complex_entry() -> impl Strategy<Value = (f64, f64)> {
    ((-1.0..1.0f64), (-1.0..1.0f64))
}

/// Random Hermitian matrix of the given dimension.
fn hermitian(dim: usize) -> impl Strategy<Value = OperatorMatrix> {
    prop::collection::vec(complex_entry(), dim * dim).prop_map(move |raw| {
        let mut m = OperatorMatrix::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                let (re, im) = raw[i * dim + j];
                m[(i, j)] = C64::new(re, im);
            }
        }
        m.add(&m.adjoint()).scale(C64::new(0.5, 0.0))
    })
}

/// Random normalized state vector of the given length.
fn state_vector(len: usize) -> impl Strategy<Value = Vec<C64>> {
    prop::collection::vec(complex_entry(), len).prop_filter_map("norm too small", |raw| {
        let mut v: Vec<C64> = raw.iter().map(|&(re, im)| C64::new(re, im)).collect();
        let norm: f64 = v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-3 {
            return None;
        }
        for c in &mut v {
            *c /= norm;
        }
        Some(v)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn expi_round_trip(m in (1usize..=64).prop_flat_map(hermitian), t in -4.0..4.0f64) {
        let dim = m.dim();
        let forward = expi_hermitian(&m, t).unwrap();
        let back = expi_hermitian(&m, -t).unwrap();
        let prod = forward.mul(&back);
        prop_assert!(prod.max_abs_diff(&OperatorMatrix::identity(dim)) < 1e-10);
    }

    #[test]
    fn expi_group_law(h in hermitian(16), s in -3.0..3.0f64, t in -3.0..3.0f64) {
        let eig = hermitian_eig(&h).unwrap();
        let a = eig.expi(s);
        let b = eig.expi(t);
        let ab = a.mul(&b);
        let direct = eig.expi(s + t);
        prop_assert!(ab.max_abs_diff(&direct) < 1e-10);
    }

    #[test]
    fn expi_is_unitary(h in hermitian(24), t in -5.0..5.0f64) {
        let u = expi_hermitian(&h, t).unwrap();
        prop_assert!(u.unitarity_defect() < 1e-10);
    }

    #[test]
    fn rotations_preserve_every_state(
        coeffs in state_vector(12),
        theta in 0.0..core::f64::consts::PI,
        phi in 0.0..(2.0 * core::f64::consts::PI),
    ) {
        let state = SSRCState::new(11, coeffs).unwrap();
        let rotated = state.apply(&rotation(11, theta, phi)).unwrap();
        let norm: f64 = rotated.coeffs().iter().map(|c| c.norm_sqr()).sum();
        prop_assert!((norm - 1.0).abs() < 1e-12);
    }

    #[test]
    fn discrete_lattice_sums_to_one_and_bounds_purity(amps in state_vector(7)) {
        let pps = weyl_operators(7, WeylConvention::SymmetricHalf).unwrap();
        let state = QuditState::new(7, amps).unwrap();
        let lattice = wigner_discrete(&state, &pps).unwrap();
        prop_assert!((lattice.sum() - 1.0).abs() < 1e-10);
        let ssq: f64 = lattice.values.iter().map(|v| v * v).sum();
        prop_assert!((ssq - 1.0 / 7.0).abs() < 1e-10);
        prop_assert!(lattice.max_imag_residue < 1e-9);
    }

    #[test]
    fn discrete_negativity_identity(amps in state_vector(5)) {
        let pps = weyl_operators(5, WeylConvention::SymmetricHalf).unwrap();
        let lattice = wigner_discrete(&QuditState::new(5, amps).unwrap(), &pps).unwrap();
        let l1: f64 = lattice.values.iter().map(|v| v.abs()).sum();
        prop_assert!((lattice.negativity() - (l1 - 1.0) / 2.0).abs() < 1e-12);
    }
}
