//! Dense complex square matrices with cached structural flags.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Index, IndexMut};

use num_complex::Complex64 as C64;

use crate::math;

/// Tri-state answer for a cached structural property.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TriState {
    Yes,
    No,
    Unknown,
}

/// Dense complex `dim × dim` matrix, row major.
///
/// The `hermitian` / `unitary` flags are caches: `TriState::Yes` is only set
/// by constructors that verified (or guarantee by construction) the property
/// at the crate tolerances, 1e−12 for Hermiticity and 1e−10 for unitarity.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix {
    dim: usize,
    entries: Vec<C64>,
    pub hermitian: TriState,
    pub unitary: TriState,
}

impl OperatorMatrix {
    pub fn zeros(dim: usize) -> Self {
        assert!(dim > 0, "matrix dimension must be positive");
        OperatorMatrix {
            dim,
            entries: vec![C64::new(0.0, 0.0); dim * dim],
            hermitian: TriState::Unknown,
            unitary: TriState::Unknown,
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = C64::new(1.0, 0.0);
        }
        m.hermitian = TriState::Yes;
        m.unitary = TriState::Yes;
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    /// Diagonal matrix from real entries.
    pub fn diag_real(values: &[f64]) -> Self {
        let mut m = Self::zeros(values.len());
        for (i, &v) in values.iter().enumerate() {
            m[(i, i)] = C64::new(v, 0.0);
        }
        m.hermitian = TriState::Yes;
        m
    }

    /// Diagonal matrix from complex entries.
    pub fn diag(values: &[C64]) -> Self {
        let mut m = Self::zeros(values.len());
        for (i, &v) in values.iter().enumerate() {
            m[(i, i)] = v;
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[C64] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[C64] {
        &self.entries[i * self.dim..(i + 1) * self.dim]
    }

    pub fn column(&self, j: usize) -> Vec<C64> {
        (0..self.dim).map(|i| self[(i, j)]).collect()
    }

    pub fn set_column(&mut self, j: usize, col: &[C64]) {
        assert_eq!(col.len(), self.dim);
        for (i, &v) in col.iter().enumerate() {
            self[(i, j)] = v;
        }
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                out[(i, j)] = self[(j, i)].conj();
            }
        }
        out.hermitian = self.hermitian;
        out.unitary = self.unitary;
        out
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                out[(i, j)] = self[(j, i)];
            }
        }
        out
    }

    pub fn conj(&self) -> Self {
        let mut out = self.clone();
        for v in &mut out.entries {
            *v = v.conj();
        }
        out.hermitian = TriState::Unknown;
        out.unitary = self.unitary;
        out
    }

    pub fn scale(&self, s: C64) -> Self {
        let mut out = self.clone();
        for v in &mut out.entries {
            *v *= s;
        }
        out.hermitian = TriState::Unknown;
        out.unitary = TriState::Unknown;
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let mut out = self.clone();
        for (v, w) in out.entries.iter_mut().zip(other.entries.iter()) {
            *v += *w;
        }
        out.hermitian = TriState::Unknown;
        out.unitary = TriState::Unknown;
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let mut out = self.clone();
        for (v, w) in out.entries.iter_mut().zip(other.entries.iter()) {
            *v -= *w;
        }
        out.hermitian = TriState::Unknown;
        out.unitary = TriState::Unknown;
        out
    }

    /// Matrix product `self · other`. The inner loop runs over a transposed
    /// copy of `other` so both operands are walked contiguously.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "matrix dimensions must match");
        let n = self.dim;
        let bt = other.transpose();
        let mut out = Self::zeros(n);
        for i in 0..n {
            let arow = self.row(i);
            for j in 0..n {
                let brow = bt.row(j);
                let mut acc = C64::new(0.0, 0.0);
                for k in 0..n {
                    acc += arow[k] * brow[k];
                }
                out[(i, j)] = acc;
            }
        }
        out
    }

    /// `self · v` for a complex vector.
    pub fn matvec(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(v.len(), self.dim);
        (0..self.dim)
            .map(|i| {
                let row = self.row(i);
                let mut acc = C64::new(0.0, 0.0);
                for k in 0..self.dim {
                    acc += row[k] * v[k];
                }
                acc
            })
            .collect()
    }

    /// `self† · v` without forming the adjoint.
    pub fn adjoint_matvec(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(v.len(), self.dim);
        let mut out = vec![C64::new(0.0, 0.0); self.dim];
        for k in 0..self.dim {
            let row = self.row(k);
            let vk = v[k];
            for (o, &r) in out.iter_mut().zip(row.iter()) {
                *o += r.conj() * vk;
            }
        }
        out
    }

    /// Conjugation `U · self · U†`.
    pub fn conjugate_by(&self, u: &Self) -> Self {
        u.mul(self).mul(&u.adjoint())
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.entries
            .iter()
            .fold(0.0_f64, |m, v| if v.norm() > m { v.norm() } else { m })
    }

    /// Largest entry modulus of `self − other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim);
        self.entries
            .iter()
            .zip(other.entries.iter())
            .fold(0.0_f64, |m, (a, b)| {
                let d = (a - b).norm();
                if d > m {
                    d
                } else {
                    m
                }
            })
    }

    /// max |A − A†| over entries.
    pub fn hermiticity_defect(&self) -> f64 {
        let mut worst = 0.0_f64;
        for i in 0..self.dim {
            for j in i..self.dim {
                let d = (self[(i, j)] - self[(j, i)].conj()).norm();
                if d > worst {
                    worst = d;
                }
            }
        }
        worst
    }

    /// max |A†A − 1| over entries.
    pub fn unitarity_defect(&self) -> f64 {
        let prod = self.adjoint().mul(self);
        prod.max_abs_diff(&Self::identity(self.dim))
    }

    /// Verify Hermiticity within `tol`, caching the result.
    pub fn check_hermitian(&mut self, tol: f64) -> bool {
        let ok = self.hermiticity_defect() <= tol;
        self.hermitian = if ok { TriState::Yes } else { TriState::No };
        ok
    }

    /// Verify unitarity within `tol`, caching the result.
    pub fn check_unitary(&mut self, tol: f64) -> bool {
        let ok = self.unitarity_defect() <= tol;
        self.unitary = if ok { TriState::Yes } else { TriState::No };
        ok
    }

    /// True when every entry off the tridiagonal band is exactly zero.
    pub(crate) fn is_exactly_tridiagonal(&self) -> bool {
        for i in 0..self.dim {
            for j in 0..self.dim {
                if i.abs_diff(j) > 1 && self[(i, j)] != C64::new(0.0, 0.0) {
                    return false;
                }
            }
        }
        true
    }

    /// True when every off-diagonal entry is exactly zero.
    pub(crate) fn is_exactly_diagonal(&self) -> bool {
        for i in 0..self.dim {
            for j in 0..self.dim {
                if i != j && self[(i, j)] != C64::new(0.0, 0.0) {
                    return false;
                }
            }
        }
        true
    }
}

impl Index<(usize, usize)> for OperatorMatrix {
    type Output = C64;

    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.entries[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for OperatorMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.entries[i * self.dim + j]
    }
}

/// 2-norm of a complex vector.
pub fn vec_norm(v: &[C64]) -> f64 {
    math::sqrt(v.iter().map(|c| c.norm_sqr()).sum())
}

/// ⟨u|v⟩ with the left argument conjugated.
pub fn vec_inner(u: &[C64], v: &[C64]) -> C64 {
    u.iter().zip(v.iter()).map(|(a, b)| a.conj() * b).sum()
}

/// 2-norm distance after optimal global phase alignment:
/// `min_φ ‖u − e^{iφ} v‖`, with the optimum e^{iφ} = ⟨u|v⟩*/|⟨u|v⟩|.
///
/// The difference is formed explicitly after rotating `v`, so the result
/// resolves distances all the way down to round-off instead of flooring at
/// √eps the way the inner-product identity would.
pub fn phase_aligned_distance(u: &[C64], v: &[C64]) -> f64 {
    assert_eq!(u.len(), v.len());
    let overlap = vec_inner(u, v);
    let phase = if overlap.norm() == 0.0 {
        C64::new(1.0, 0.0)
    } else {
        (overlap / overlap.norm()).conj()
    };
    math::sqrt(
        u.iter()
            .zip(v.iter())
            .map(|(a, b)| (a - phase * b).norm_sqr())
            .sum(),
    )
}
