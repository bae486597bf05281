//! Phenomena that separate `λ < d` from the weighted Bergman range.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::multi_index::MultiIndex;
use crate::poly::MixedPoly;
use crate::space::SpaceParams;
use crate::toeplitz::{mult_norm_sq_formula, multiplication_matrix, toeplitz_poly_matrix};
use crate::C64;

use super::report::{TolerancePolicy, VerificationReport};

fn real(x: f64) -> C64 {
    C64::new(x, 0.0)
}

fn needs_below_d(lambda: f64, d: usize) -> Result<()> {
    if lambda > 0.0 && lambda < d as f64 {
        Ok(())
    } else {
        Err(Error::InvalidArgument(alloc::format!("needs 0 < lambda < d (lambda = {lambda}, d = {d})")))
    }
}

/// `Π_{j<k} (d+j)/(λ+j)`.
pub fn growth_product(lambda: f64, d: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, j| acc * (d as f64 + j as f64) / (lambda + j as f64))
}

/// Eigenvalue of `T_{φ_k}` on the constant function for `φ_k = (|z|²)^k`,
/// `k = 1..=k_max`, read off the matrix assembled from the multinomial
/// expansion of `φ_k`.
pub fn counterexample_norm_growth(lambda: f64, d: usize, k_max: usize) -> Result<Vec<f64>> {
    needs_below_d(lambda, d)?;
    let params = SpaceParams::new(d, lambda)?;
    Ok((1..=k_max)
        .map(|k| toeplitz_poly_matrix(&MixedPoly::abs2_pow(d, k as u32), &params, 0).get(0, 0).re)
        .collect())
}

/// The matrix values agree with the closed product, grow strictly, and end
/// above `threshold` while `sup|φ_k| = 1`.
pub fn check_norm_growth(lambda: f64, d: usize, k_max: usize, threshold: f64) -> Result<VerificationReport> {
    let values = counterexample_norm_growth(lambda, d, k_max)?;
    let mut worst: Option<VerificationReport> = None;
    for (i, &v) in values.iter().enumerate() {
        let r = VerificationReport::compare("norm-growth", real(v), real(growth_product(lambda, d, i + 1)), 1e-10, TolerancePolicy::Either)
            .with_param("k", i + 1);
        if worst.as_ref().is_none_or(|w| r.severity() > w.severity()) {
            worst = Some(r);
        }
    }
    let Some(mut r) = worst else {
        return Err(Error::InvalidArgument("k_max must be at least 1".into()));
    };
    let last = *values.last().unwrap_or(&0.0);
    if values.windows(2).any(|w| w[1] <= w[0]) {
        r = r.fail("values not strictly increasing");
    }
    if last <= threshold {
        r = r.fail("final value does not exceed the threshold");
    }
    Ok(r.with_param("d", d)
        .with_param("lambda", lambda)
        .with_param("k_max", k_max)
        .with_param("threshold", threshold)
        .with_param("sup_phi", 1.0)
        .with_param("last", last)
        .with_series(values))
}

/// `T_{1−|z|²}` is diagonal with entries `(λ−d)/(λ+|m|) < 0`, and
/// `T_{(1−|z|²)/(λ−d)} = (λI + N)^{−1}`.
pub fn counterexample_negativity(lambda: f64, d: usize, degree: usize) -> Result<VerificationReport> {
    needs_below_d(lambda, d)?;
    let params = SpaceParams::new(d, lambda)?;
    let w = MixedPoly::one(d).sub(&MixedPoly::abs2(d));
    let t = toeplitz_poly_matrix(&w, &params, degree);
    let inv = toeplitz_poly_matrix(&w.scale(real(1.0 / (lambda - d as f64))), &params, degree);
    let mut worst = (0.0f64, real(0.0), real(0.0), "");
    let mut max_entry = f64::NEG_INFINITY;
    for (row, m) in t.basis().iter().enumerate() {
        let k = m.degree() as f64;
        for col in 0..t.dim() {
            let (e1, e2) = if row == col {
                max_entry = max_entry.max(t.get(row, col).re);
                ((lambda - d as f64) / (lambda + k), 1.0 / (lambda + k))
            } else {
                (0.0, 0.0)
            };
            for (got, expect, which) in [(t.get(row, col), real(e1), "weight"), (inv.get(row, col), real(e2), "resolvent")] {
                let e = (got - expect).norm();
                if e > worst.0 || worst.3.is_empty() {
                    worst = (e, got, expect, which);
                }
            }
        }
    }
    let mut r = VerificationReport::compare("negativity", worst.1, worst.2, 1e-12, TolerancePolicy::Either)
        .with_param("d", d)
        .with_param("lambda", lambda)
        .with_param("degree", degree)
        .with_param("worst_matrix", worst.3)
        .with_param("max_diagonal", max_entry);
    if !(max_entry < 0.0) {
        r = r.fail("a diagonal entry is not negative");
    }
    Ok(r)
}

/// `‖M_{z_j}‖²` on the degree-`M` truncation, from the spectrum of
/// `M*M`, equals `max_{|m|≤M−1}(m_j+1)/(|m|+λ)`.
pub fn check_mult_norm(j: usize, lambda: f64, d: usize, degree: usize) -> Result<VerificationReport> {
    if j >= d {
        return Err(Error::InvalidArgument(alloc::format!("coordinate index {} out of range for d = {d}", j + 1)));
    }
    let params = SpaceParams::new(d, lambda)?;
    let m = multiplication_matrix(&MultiIndex::unit(d, j), &params, degree);
    let norm_sq = m.operator_norm_sq()?;
    let formula = mult_norm_sq_formula(lambda, degree);
    let limit = if lambda >= 1.0 { 1.0 } else { 1.0 / lambda };
    let top = if degree > 0 { degree as f64 / (degree as f64 - 1.0 + lambda) } else { 0.0 };
    Ok(VerificationReport::compare("mult-norm", real(norm_sq), real(formula), 1e-12, TolerancePolicy::Either)
        .with_param("d", d)
        .with_param("lambda", lambda)
        .with_param("j", j + 1)
        .with_param("degree", degree)
        .with_param("norm", libm::sqrt(norm_sq))
        .with_param("limit_norm_sq", limit)
        .with_param("gap", limit - norm_sq)
        .with_param("top_shell_ratio", top)
        .note("values are squared norms"))
}
