//! Numerics for two-mode bosonic states with an explicit phase reference.
//!
//! A pure state of two modes `a` and `b` with fixed total photon number `N`
//! lives in the `N + 1`-dimensional span of `|n⟩_a |N−n⟩_b`. This crate builds
//! that space and everything the toolkit needs on top of it:
//!
//! - [`numerics`]: dense complex matrices, Hermitian eigendecomposition,
//!   unitary matrix exponentials, log-space combinatorics, Clebsch–Gordan
//!   coefficients, and Gauss–Legendre quadrature;
//! - [`fock`]: the two-mode state type, Schwinger su(2) operators, rotations,
//!   spin-coherent states, relative-phase operators, and the x-basis change;
//! - [`sphere`]: the spherical Wigner function from multipole phase-point
//!   operators, with grid evaluation and negativity;
//! - [`plane`]: the planar quadrature Wigner function on a truncated Fock
//!   space, via displacement operators and the parity kernel;
//! - [`discrete`]: the discrete toric Wigner function for odd qudit
//!   dimensions, with stabilizer-positivity scans;
//! - [`encoding`]: qudit encodings of the bosonic space (Z, F, X and their
//!   unitary transports) and redundant code embeddings;
//! - [`cvlimit`]: convergence experiments for the continuous-variable limit.
//!
//! Everything here is a pure function of its inputs; constructed values are
//! immutable and safe to share across threads. The crate is `no_std`
//! (allocation required); IO and file formats live in the companion CLI
//! crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;


pub mod cvlimit;
pub mod discrete;
pub mod encoding;

pub mod error;
pub mod fock;
pub(crate) mod math;
pub mod numerics;
pub mod plane;
pub mod sphere;

pub use error::Error;
pub use numerics::matrix::OperatorMatrix;

/// Result alias used across the crate.
pub type Result<T> = core::result::Result<T, Error>;
