//! Exact matrices for multiplication operators and polynomial symbols.

use crate::multi_index::{Basis, MultiIndex};
use crate::poly::MixedPoly;
use crate::space::SpaceParams;
use crate::C64;

use super::OperatorMatrix;

/// `M_{z^a}` on the degree-`M` truncation: column `m` maps to row `m + a`
/// with entry `‖z^{m+a}‖/‖z^m‖`; columns whose image has degree above `M`
/// are dropped.
pub fn multiplication_matrix(a: &MultiIndex, params: &SpaceParams, degree: usize) -> OperatorMatrix {
    let mut out = OperatorMatrix::zeros(*params, degree);
    let basis = Basis::new(params.d(), degree);
    for (col, m) in basis.indices().iter().enumerate() {
        let target = m.add(a);
        if let Some(row) = basis.position(&target) {
            let v = libm::sqrt(params.monomial_norm_sq(&target) / params.monomial_norm_sq(m));
            out.set(row, col, C64::new(v, 0.0));
        }
    }
    out
}

/// `T_φ = Σ c_{a,b} (M_{z^b})* M_{z^a}` for `φ = Σ c_{a,b} z^a z̄^b`.
///
/// In the raw monomial basis `⟨z^l, T_{z^a z̄^b} z^m⟩ = δ_{l+b, m+a}
/// ‖z^{m+a}‖²`; the intermediate degree `|m+a|` may exceed `M`, which the
/// compression keeps exactly.
pub fn toeplitz_poly_matrix(phi: &MixedPoly, params: &SpaceParams, degree: usize) -> OperatorMatrix {
    assert_eq!(phi.dim(), params.d(), "symbol dimension");
    let mut out = OperatorMatrix::zeros(*params, degree);
    let basis = Basis::new(params.d(), degree);
    let norms: alloc::vec::Vec<f64> = basis.indices().iter().map(|m| params.monomial_norm_sq(m)).collect();
    for (col, m) in basis.indices().iter().enumerate() {
        for ((a, b), c) in phi.terms() {
            let top = m.add(a);
            let Some(l) = top.checked_sub(b) else { continue };
            let Some(row) = basis.position(&l) else { continue };
            let raw = params.monomial_norm_sq(&top);
            let v = raw / libm::sqrt(norms[row] * norms[col]);
            out.add_at(row, col, c * v);
        }
    }
    out
}

/// `‖M_{z_j}‖²` on the degree-`M` truncation:
/// `max_{|m| ≤ M−1} (m_j + 1)/(|m| + λ)`, zero when `M = 0`.
///
/// `M_{z_j}^* M_{z_j}` is diagonal with these entries, so this is exact.
///
/// The value does not depend on `j` or `d`: on the shell `|m| = k` the
/// ratio is largest at `m = k e_j`.
pub fn mult_norm_sq_formula(lambda: f64, degree: usize) -> f64 {
    if degree == 0 {
        return 0.0;
    }
    let mut best: f64 = 0.0;
    for k in 0..degree {
        best = best.max((k as f64 + 1.0) / (k as f64 + lambda));
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multi_index::enumerate_basis;
    use crate::quadrature::integrate_ball_exact;
    use crate::special::c_lambda;
    use alloc::vec;

    fn mi(e: &[u32]) -> MultiIndex {
        MultiIndex::new(e.to_vec())
    }

    #[test]
    fn multiplication_examples() {
        let p = SpaceParams::new(1, 2.0).unwrap();
        let id = multiplication_matrix(&mi(&[0]), &p, 3);
        assert_eq!(id, OperatorMatrix::identity(p, 3));
        let mz = multiplication_matrix(&mi(&[1]), &p, 1);
        assert!((mz.get(1, 0).re - libm::sqrt(0.5)).abs() < 1e-15);
        assert_eq!(mz.get(0, 1), C64::new(0.0, 0.0));
    }

    #[test]
    fn tzm_diagonal() {
        for &lambda in &[0.5, 1.0, 2.5, 3.5] {
            let p = SpaceParams::new(2, lambda).unwrap();
            for j in 0..2 {
                let phi = MixedPoly::zbar(2, j).mul(&MixedPoly::z(2, j));
                let t = toeplitz_poly_matrix(&phi, &p, 6);
                assert!(t.is_diagonal(0.0));
                for (i, m) in t.basis().iter().enumerate() {
                    let expect = (1.0 + m.entries()[j] as f64) / (lambda + m.degree() as f64);
                    assert!((t.get(i, i).re - expect).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn abs2_and_constant() {
        let p = SpaceParams::new(3, 1.2).unwrap();
        let t = toeplitz_poly_matrix(&MixedPoly::abs2(3), &p, 4);
        for (i, m) in t.basis().iter().enumerate() {
            let k = m.degree() as f64;
            assert!((t.get(i, i).re - (3.0 + k) / (1.2 + k)).abs() < 1e-13);
        }
        assert!(t.is_diagonal(1e-15));
        let one = toeplitz_poly_matrix(&MixedPoly::one(3), &p, 4);
        assert!(one.max_abs_diff(&OperatorMatrix::identity(p, 4)) < 1e-15);
    }

    #[test]
    fn equals_product_of_multiplication_matrices_when_no_overflow() {
        // T_{z̄^b z^a} = M_b* M_a on entries whose column degree leaves room.
        let p = SpaceParams::new(2, 0.6).unwrap();
        let (a, b) = (mi(&[1, 0]), mi(&[0, 1]));
        let deg = 5;
        let t = toeplitz_poly_matrix(&MixedPoly::monomial(a.clone(), b.clone(), C64::new(1.0, 0.0)), &p, deg);
        let ma = multiplication_matrix(&a, &p, deg);
        let mb = multiplication_matrix(&b, &p, deg);
        let prod = mb.conj_transpose().matmul(&ma).unwrap();
        for (col, m) in t.basis().iter().enumerate() {
            if (m.degree() as usize) < deg {
                for row in 0..t.dim() {
                    assert!((t.get(row, col) - prod.get(row, col)).norm() < 1e-14);
                }
            }
        }
    }

    #[test]
    fn projection_consistency_for_large_lambda() {
        // a_lm = c_λ ∫ z̄^l φ z^m (1−|z|²)^{λ−d−1} dz / (‖z^l‖‖z^m‖).
        for d in 1..=2usize {
            let lambda = d as f64 + 1.3;
            let p = SpaceParams::new(d, lambda).unwrap();
            let mut phi = MixedPoly::abs2(d).scale(C64::new(0.5, 0.0));
            phi.add_term(MultiIndex::unit(d, 0), MultiIndex::zero(d), C64::new(0.2, -0.3));
            phi.add_term(MultiIndex::zero(d), MultiIndex::unit(d, d - 1), C64::new(1.1, 0.0));
            let deg = 5;
            let t = toeplitz_poly_matrix(&phi, &p, deg);
            let basis = enumerate_basis(d, deg);
            let c = c_lambda(d, lambda);
            for (r, l) in basis.iter().enumerate() {
                for (s, m) in basis.iter().enumerate() {
                    let integrand = MixedPoly::monomial(MultiIndex::zero(d), l.clone(), C64::new(1.0, 0.0))
                        .mul(&phi)
                        .mul(&MixedPoly::monomial(m.clone(), MultiIndex::zero(d), C64::new(1.0, 0.0)));
                    let v = integrate_ball_exact(&integrand, lambda, d).unwrap() * c
                        / libm::sqrt(p.monomial_norm_sq(l) * p.monomial_norm_sq(m));
                    assert!((v - t.get(r, s)).norm() <= 1e-10 * (1.0 + v.norm()));
                }
            }
        }
    }

    #[test]
    fn adjoint_law() {
        let p = SpaceParams::new(2, 0.9).unwrap();
        let phi = MixedPoly::from_terms(
            2,
            vec![
                ((mi(&[2, 0]), mi(&[0, 1])), C64::new(0.3, 0.7)),
                ((mi(&[0, 0]), mi(&[1, 1])), C64::new(-1.0, 0.2)),
            ],
        );
        let a = toeplitz_poly_matrix(&phi.conj(), &p, 5);
        let b = toeplitz_poly_matrix(&phi, &p, 5).conj_transpose();
        assert_eq!(a, b);
    }

    #[test]
    fn mult_norm_formula_examples() {
        assert_eq!(mult_norm_sq_formula(0.5, 10), 2.0);
        assert!((mult_norm_sq_formula(2.0, 10) - 10.0 / 11.0).abs() < 1e-15);
        assert_eq!(mult_norm_sq_formula(1.0, 7), 1.0);
    }
}
