//! Generalized Bergman spaces `H(B^d, λ)` on the complex unit ball and the
//! Toeplitz operators that live on them.
//!
//! For every `λ > 0` the space is the reproducing-kernel Hilbert space with
//! kernel `(1 − z·w̄)^{−λ}`. When `λ > d` it is the weighted Bergman space
//! `HL²(B^d, μ_λ)`; below that threshold the inner product is realized by a
//! Sobolev-type form at the shifted level `λ + 2n`.
//!
//! The crate is `no_std` and only needs `alloc`. Everything here is a pure
//! function of immutable inputs; Monte Carlo routines take explicit seeds.
//!
//! Layout:
//! - [`special`], [`multi_index`], [`poly`], [`ball`], [`space`]: the spaces
//!   themselves (inner products, kernel, the operators `N`, `A`, `B`, `C`).
//! - [`quadrature`]: exact and stochastic integration over the ball.
//! - [`toeplitz`]: polynomial-symbol, Sobolev-form and Hilbert–Schmidt
//!   Toeplitz operators, the Berezin kernel and transform.
//! - [`verify`]: executable identity checks with structured reports.
//! - [`linalg`]: the small dense Hermitian eigen-solver the above needs.

#![no_std]
// `!(x > a)` is the NaN-rejecting form used for argument checks.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod ball;
pub mod error;
pub mod linalg;
pub mod multi_index;
pub mod poly;
pub mod quadrature;
pub mod space;
pub mod special;
pub mod toeplitz;
pub mod verify;

pub use ball::{mobius, reproducing_kernel, BallPoint};
pub use error::{Error, Result};
pub use multi_index::{enumerate_basis, Basis, MultiIndex};
pub use poly::{HoloPoly, MixedPoly};
pub use space::SpaceParams;

/// Complex scalar used throughout.
pub type C64 = num_complex::Complex64;
