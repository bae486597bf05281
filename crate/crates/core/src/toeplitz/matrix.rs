//! Dense operator matrices in the normalized monomial basis.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::hermitian_eigenvalues;
use crate::multi_index::{enumerate_basis, MultiIndex};
use crate::space::SpaceParams;
use crate::C64;

/// Matrix of an operator on the span of `{e_m : |m| ≤ M}`, where
/// `e_m = z^m/‖z^m‖_λ`. Entry `(l, m)` is `⟨e_l, T e_m⟩_λ`, stored row-major.
///
/// The basis is graded, so the leading `C(M'+d, d)` rows and columns are the
/// truncation at any `M' ≤ M`.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorMatrix {
    params: SpaceParams,
    degree: usize,
    basis: Vec<MultiIndex>,
    entries: Vec<C64>,
}

/// A truncated quantity at degree `M` next to its value at `M − 1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TruncationReport {
    pub degree: usize,
    pub value: f64,
    pub previous: f64,
    pub converged: bool,
}

impl OperatorMatrix {
    pub fn zeros(params: SpaceParams, degree: usize) -> Self {
        let basis = enumerate_basis(params.d(), degree);
        let n = basis.len();
        OperatorMatrix {
            params,
            degree,
            basis,
            entries: vec![C64::new(0.0, 0.0); n * n],
        }
    }

    pub fn identity(params: SpaceParams, degree: usize) -> Self {
        let mut m = Self::zeros(params, degree);
        for i in 0..m.dim() {
            m.set(i, i, C64::new(1.0, 0.0));
        }
        m
    }

    /// Rebuild from parts; the basis must be the graded basis of `degree`.
    pub fn from_parts(params: SpaceParams, degree: usize, basis: Vec<MultiIndex>, entries: Vec<C64>) -> Result<Self> {
        let expected = enumerate_basis(params.d(), degree);
        if basis != expected {
            return Err(Error::InvalidArgument(
                "basis is not the graded basis of the stated degree".into(),
            ));
        }
        if entries.len() != basis.len() * basis.len() {
            return Err(Error::DimensionMismatch {
                expected: basis.len() * basis.len(),
                found: entries.len(),
            });
        }
        Ok(OperatorMatrix {
            params,
            degree,
            basis,
            entries,
        })
    }

    pub fn params(&self) -> &SpaceParams {
        &self.params
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn basis(&self) -> &[MultiIndex] {
        &self.basis
    }

    pub fn entries(&self) -> &[C64] {
        &self.entries
    }

    /// Side length `C(M+d, d)`.
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn get(&self, row: usize, col: usize) -> C64 {
        self.entries[row * self.dim() + col]
    }

    pub fn set(&mut self, row: usize, col: usize, v: C64) {
        let n = self.dim();
        self.entries[row * n + col] = v;
    }

    pub(crate) fn add_at(&mut self, row: usize, col: usize, v: C64) {
        let n = self.dim();
        self.entries[row * n + col] += v;
    }

    pub fn diagonal(&self) -> Vec<C64> {
        (0..self.dim()).map(|i| self.get(i, i)).collect()
    }

    /// Leading block for degree `m ≤ M`.
    pub fn truncate(&self, m: usize) -> OperatorMatrix {
        let m = m.min(self.degree);
        let basis = enumerate_basis(self.params.d(), m);
        let k = basis.len();
        let n = self.dim();
        let mut entries = Vec::with_capacity(k * k);
        for i in 0..k {
            entries.extend_from_slice(&self.entries[i * n..i * n + k]);
        }
        OperatorMatrix {
            params: self.params,
            degree: m,
            basis,
            entries,
        }
    }

    pub fn conj_transpose(&self) -> OperatorMatrix {
        let n = self.dim();
        let mut out = self.clone();
        for i in 0..n {
            for j in 0..n {
                out.entries[i * n + j] = self.entries[j * n + i].conj();
            }
        }
        out
    }

    /// `self · other` on the same truncated basis.
    pub fn matmul(&self, other: &OperatorMatrix) -> Result<OperatorMatrix> {
        if self.basis != other.basis {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        let n = self.dim();
        let mut out = OperatorMatrix {
            params: self.params,
            degree: self.degree,
            basis: self.basis.clone(),
            entries: vec![C64::new(0.0, 0.0); n * n],
        };
        for i in 0..n {
            for k in 0..n {
                let a = self.entries[i * n + k];
                if a == C64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    out.entries[i * n + j] += a * other.entries[k * n + j];
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, s: C64) -> OperatorMatrix {
        let mut out = self.clone();
        for e in out.entries.iter_mut() {
            *e *= s;
        }
        out
    }

    /// Largest entrywise modulus of `self − other`.
    pub fn max_abs_diff(&self, other: &OperatorMatrix) -> f64 {
        assert_eq!(self.dim(), other.dim(), "matrix size");
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        let n = self.dim();
        (0..n).all(|i| (0..=i).all(|j| (self.get(i, j) - self.get(j, i).conj()).norm() <= tol))
    }

    /// All off-diagonal entries have modulus `≤ tol`.
    pub fn is_diagonal(&self, tol: f64) -> bool {
        let n = self.dim();
        (0..n).all(|i| (0..n).all(|j| i == j || self.get(i, j).norm() <= tol))
    }

    /// Frobenius norm `√Σ|a_lm|²`, the Hilbert–Schmidt norm of the truncation.
    pub fn frobenius_norm(&self) -> f64 {
        libm::sqrt(self.entries.iter().map(|c| c.norm_sqr()).sum())
    }

    /// Eigenvalues (ascending) of a Hermitian matrix; the lower triangle is read.
    pub fn hermitian_eigenvalues(&self) -> Result<Vec<f64>> {
        hermitian_eigenvalues(self.dim(), &self.entries)
    }

    /// Largest eigenvalue of `T*T`, i.e. the squared spectral norm.
    pub fn operator_norm_sq(&self) -> Result<f64> {
        let gram = self.conj_transpose().matmul(self)?;
        let ev = gram.hermitian_eigenvalues()?;
        Ok(ev.last().copied().unwrap_or(0.0).max(0.0))
    }

    /// Spectral norm `‖T‖`.
    pub fn operator_norm(&self) -> Result<f64> {
        Ok(libm::sqrt(self.operator_norm_sq()?))
    }

    /// Spectral norm at `M` and `M − 1`; converged when they agree to `tol`
    /// relative.
    pub fn operator_norm_report(&self, tol: f64) -> Result<TruncationReport> {
        let value = self.operator_norm()?;
        let previous = if self.degree == 0 {
            value
        } else {
            self.truncate(self.degree - 1).operator_norm()?
        };
        Ok(report(self.degree, value, previous, tol))
    }

    /// Frobenius norm at `M` and `M − 1`.
    pub fn hs_norm_report(&self, tol: f64) -> TruncationReport {
        let value = self.frobenius_norm();
        let previous = if self.degree == 0 {
            value
        } else {
            self.truncate(self.degree - 1).frobenius_norm()
        };
        report(self.degree, value, previous, tol)
    }
}

fn report(degree: usize, value: f64, previous: f64, tol: f64) -> TruncationReport {
    let converged = (value - previous).abs() <= tol * value.abs().max(f64::MIN_POSITIVE);
    TruncationReport {
        degree,
        value,
        previous,
        converged,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_norms() {
        let p = SpaceParams::new(1, 1.5).unwrap();
        let id = OperatorMatrix::identity(p, 4);
        assert_eq!(id.dim(), 5);
        assert!((id.frobenius_norm() - libm::sqrt(5.0)).abs() < 1e-15);
        assert!((id.operator_norm().unwrap() - 1.0).abs() < 1e-14);
        assert_eq!(OperatorMatrix::zeros(p, 3).frobenius_norm(), 0.0);
        assert!(id.is_hermitian(0.0) && id.is_diagonal(0.0));
    }

    #[test]
    fn truncation_is_a_prefix() {
        let p = SpaceParams::new(2, 0.7).unwrap();
        let mut m = OperatorMatrix::zeros(p, 3);
        for i in 0..m.dim() {
            for j in 0..m.dim() {
                m.set(i, j, C64::new(i as f64, j as f64));
            }
        }
        let t = m.truncate(1);
        assert_eq!(t.dim(), 3);
        assert_eq!(t.get(2, 1), C64::new(2.0, 1.0));
        assert_eq!(t.basis(), &enumerate_basis(2, 1)[..]);
    }

    #[test]
    fn from_parts_validates() {
        let p = SpaceParams::new(1, 1.0).unwrap();
        let z = OperatorMatrix::zeros(p, 2);
        assert!(OperatorMatrix::from_parts(p, 2, z.basis().to_vec(), z.entries().to_vec()).is_ok());
        assert!(OperatorMatrix::from_parts(p, 3, z.basis().to_vec(), z.entries().to_vec()).is_err());
        assert!(OperatorMatrix::from_parts(p, 2, z.basis().to_vec(), vec![]).is_err());
    }
}
