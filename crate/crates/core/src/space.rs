//! The spaces `H(B^d, λ)`: parameters, the monomial inner product and the
//! diagonal operators `A`, `B`, `C` of the Sobolev-form construction.

use crate::ball::BallPoint;
use crate::error::{Error, Result};
use crate::multi_index::MultiIndex;
use crate::poly::{HoloPoly, MixedPoly};
use crate::special::{c_lambda, gamma_ratio};
use crate::C64;

/// Dimension `d`, parameter `λ` and Sobolev order `n` of `H(B^d, λ)`.
///
/// Invariants: `d ≥ 1`, `λ > 0` finite, `λ + 2n > d`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpaceParams {
    d: usize,
    lambda: f64,
    n: usize,
}

impl SpaceParams {
    /// Parameters with the smallest admissible Sobolev order.
    pub fn new(d: usize, lambda: f64) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidDimension(d));
        }
        if !(lambda.is_finite() && lambda > 0.0) {
            return Err(Error::InvalidLambda(lambda));
        }
        Ok(SpaceParams {
            d,
            lambda,
            n: Self::minimal_order(d, lambda),
        })
    }

    /// Override the Sobolev order. Any `n` with `λ + 2n > d` gives the same
    /// space with the same inner product.
    pub fn with_order(self, n: usize) -> Result<Self> {
        if !(self.lambda + 2.0 * n as f64 > self.d as f64) {
            return Err(Error::InvalidOrder {
                lambda: self.lambda,
                d: self.d,
                n,
            });
        }
        Ok(SpaceParams { n, ..self })
    }

    /// Smallest `n ≥ 0` with `λ + 2n > d`.
    pub fn minimal_order(d: usize, lambda: f64) -> usize {
        let mut n = 0;
        while !(lambda + 2.0 * n as f64 > d as f64) {
            n += 1;
        }
        n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// The shifted level `λ + 2n` at which the Sobolev form is an honest
    /// weighted Bergman inner product.
    pub fn sobolev_level(&self) -> f64 {
        self.lambda + 2.0 * self.n as f64
    }

    /// Same `d` and `n`, different `λ` (used for level shifts `λ → λ + k`).
    pub fn at_level(&self, lambda: f64) -> Result<Self> {
        let p = SpaceParams::new(self.d, lambda)?;
        Ok(p.with_order(self.n.max(p.n)).unwrap_or(p))
    }

    /// `c_λ = Γ(λ)/(π^d Γ(λ−d))`, zero at integers `λ ≤ d`.
    pub fn c_lambda(&self) -> f64 {
        c_lambda(self.d, self.lambda)
    }

    /// `‖z^m‖²_λ = m! Γ(λ)/Γ(λ+|m|)`.
    pub fn monomial_norm_sq(&self, m: &MultiIndex) -> f64 {
        m.factorial() * gamma_ratio(self.lambda, m.degree() as usize)
    }

    /// `⟨z^l, z^m⟩_λ = δ_{lm} m! Γ(λ)/Γ(λ+|m|)`.
    pub fn monomial_inner_product(&self, l: &MultiIndex, m: &MultiIndex) -> f64 {
        if l == m {
            self.monomial_norm_sq(m)
        } else {
            0.0
        }
    }

    /// `⟨f, g⟩_λ`, conjugate-linear in `f`.
    pub fn inner_product(&self, f: &HoloPoly, g: &HoloPoly) -> C64 {
        assert_eq!(f.dim(), self.d, "polynomial dimension");
        assert_eq!(g.dim(), self.d, "polynomial dimension");
        f.terms()
            .map(|(m, a)| a.conj() * g.coeff(m) * self.monomial_norm_sq(m))
            .sum()
    }

    /// `‖f‖²_λ`.
    pub fn norm_sq(&self, f: &HoloPoly) -> f64 {
        f.terms()
            .map(|(m, a)| a.norm_sqr() * self.monomial_norm_sq(m))
            .sum()
    }

    /// Eigenvalue of `A = Π_{j=n}^{2n−1} (I + N/(λ+j))` on degree `k`.
    pub fn a_factor(&self, k: u32) -> f64 {
        (self.n..2 * self.n).fold(1.0, |acc, j| acc * (1.0 + k as f64 / (self.lambda + j as f64)))
    }

    /// Eigenvalue of `B = Π_{j=0}^{n−1} (I + N/(λ+j))` on degree `k`.
    pub fn b_factor(&self, k: u32) -> f64 {
        (0..self.n).fold(1.0, |acc, j| acc * (1.0 + k as f64 / (self.lambda + j as f64)))
    }

    pub fn apply_a(&self, f: &HoloPoly) -> HoloPoly {
        f.map_by_degree(|k| self.a_factor(k))
    }

    pub fn apply_b(&self, f: &HoloPoly) -> HoloPoly {
        f.map_by_degree(|k| self.b_factor(k))
    }

    /// `C = Π_{j=n}^{2n−1}(I + N̄/(λ+j)) · Π_{j=0}^{n−1}(I + N/(λ+j))`; on
    /// `z^a z̄^b` it multiplies by `A(|b|)·B(|a|)`.
    pub fn apply_c(&self, p: &MixedPoly) -> MixedPoly {
        p.map_by_degrees(|a, b| self.a_factor(b) * self.b_factor(a))
    }

    /// `⟨Af, Bg⟩` in `HL²(B^d, μ_{λ+2n})`, evaluated with the closed-form
    /// monomial inner product at level `λ + 2n`.
    pub fn sobolev_inner_product(&self, f: &HoloPoly, g: &HoloPoly) -> C64 {
        let shifted = SpaceParams {
            d: self.d,
            lambda: self.sobolev_level(),
            n: 0,
        };
        shifted.inner_product(&self.apply_a(f), &self.apply_b(g))
    }

    /// `(|f(z)|², ‖f‖²_λ (1−|z|²)^{−λ})`; the first never exceeds the second.
    pub fn pointwise_bound_check(&self, f: &HoloPoly, z: &BallPoint) -> (f64, f64) {
        let value = f.eval(z.coords()).norm_sqr();
        let bound = self.norm_sq(f) * libm::pow(1.0 - z.norm_sq(), -self.lambda);
        (value, bound)
    }
}
