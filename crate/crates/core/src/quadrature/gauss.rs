//! Gauss–Jacobi rules on `[0, 1]` via the Golub–Welsch eigenproblem.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::tridiagonal_eigen;
use crate::special::ln_gamma;

/// An `n`-point rule for `∫_0^1 (1−t)^α t^β f(t) dt`, exact when `f` is a
/// polynomial of degree `≤ 2n − 1`.
#[derive(Clone, Debug)]
pub struct GaussJacobi {
    alpha: f64,
    beta: f64,
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussJacobi {
    pub fn new(n: usize, alpha: f64, beta: f64) -> Result<Self> {
        if !(alpha > -1.0) {
            return Err(Error::DivergentWeight { exponent: alpha });
        }
        if !(beta > -1.0) {
            return Err(Error::DivergentWeight { exponent: beta });
        }
        if n == 0 {
            return Err(Error::InvalidArgument("quadrature needs at least one node".into()));
        }
        let ab = alpha + beta;
        // Jacobi matrix of the monic recurrence on [−1, 1].
        let mut diag = vec![0.0; n];
        let mut off = vec![0.0; n - 1];
        diag[0] = (beta - alpha) / (ab + 2.0);
        for (k, dk) in diag.iter_mut().enumerate().skip(1) {
            let s = 2.0 * k as f64 + ab;
            *dk = (beta * beta - alpha * alpha) / (s * (s + 2.0));
        }
        for k in 1..n {
            let kf = k as f64;
            let s = 2.0 * kf + ab;
            let b = if k == 1 {
                4.0 * (1.0 + alpha) * (1.0 + beta) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab))
            } else {
                4.0 * kf * (kf + alpha) * (kf + beta) * (kf + ab) / (s * s * (s + 1.0) * (s - 1.0))
            };
            off[k - 1] = libm::sqrt(b);
        }
        let mut first = vec![0.0; n];
        first[0] = 1.0;
        let x = tridiagonal_eigen(&diag, &off, Some(&mut first))?;
        // μ0 = ∫_{−1}^{1} (1−x)^α (1+x)^β dx; mapping to [0, 1] multiplies by 2^{−α−β−1}.
        let mu0_unit = libm::exp(ln_gamma(alpha + 1.0) + ln_gamma(beta + 1.0) - ln_gamma(ab + 2.0));
        let nodes = x.iter().map(|&xi| 0.5 * (1.0 + xi)).collect();
        let weights = first.iter().map(|&z| mu0_unit * z * z).collect();
        Ok(GaussJacobi {
            alpha,
            beta,
            nodes,
            weights,
        })
    }

    /// Gauss–Legendre on `[0, 1]`.
    pub fn legendre(n: usize) -> Result<Self> {
        Self::new(n, 0.0, 0.0)
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn pairs(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.nodes.iter().copied().zip(self.weights.iter().copied())
    }

    /// `Σ w_i f(t_i) ≈ ∫_0^1 (1−t)^α t^β f(t) dt`.
    pub fn integrate<T>(&self, mut f: impl FnMut(f64) -> T) -> T
    where
        T: core::ops::Mul<f64, Output = T> + core::iter::Sum<T>,
    {
        self.pairs().map(|(t, w)| f(t) * w).sum()
    }
}
