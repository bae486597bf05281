//! Property tests for the invariants of the spaces and operators.

use bergman::toeplitz::{berezin_kernel, multiplication_matrix, toeplitz_poly_matrix};
use bergman::{mobius, reproducing_kernel, BallPoint, HoloPoly, MixedPoly, MultiIndex, SpaceParams, C64};
use proptest::prelude::*;

fn complex() -> impl Strategy<Value = C64> {
    (-2.0..2.0f64, -2.0..2.0f64).prop_map(|(re, im)| C64::new(re, im))
}

fn index(d: usize, max_degree: u32) -> impl Strategy<Value = MultiIndex> {
    prop::collection::vec(0..=max_degree, d).prop_map(MultiIndex::new)
}

fn holo(d: usize, max_degree: u32) -> impl Strategy<Value = HoloPoly> {
    prop::collection::vec((index(d, max_degree), complex()), 1..6).prop_map(move |terms| HoloPoly::from_terms(d, terms))
}

fn mixed(d: usize, max_degree: u32) -> impl Strategy<Value = MixedPoly> {
    prop::collection::vec((index(d, max_degree), index(d, max_degree), complex()), 1..5)
        .prop_map(move |terms| MixedPoly::from_terms(d, terms.into_iter().map(|(a, b, c)| ((a, b), c))))
}

/// A point with `|z| ≤ radius`: raw coordinates scaled into the ball.
fn point(d: usize, radius: f64) -> impl Strategy<Value = BallPoint> {
    (prop::collection::vec(complex(), d), 0.0..1.0f64).prop_map(move |(c, s)| {
        let n = c.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt().max(1e-300);
        BallPoint::new(c.iter().map(|x| x * (radius * s / n)).collect()).unwrap()
    })
}

fn close(a: C64, b: C64, tol: f64) -> bool {
    (a - b).norm() <= tol * (1.0 + a.norm().max(b.norm()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn norm_is_positive(f in (1usize..=3).prop_flat_map(|d| holo(d, 5)), lambda in 0.05..6.0f64) {
        let p = SpaceParams::new(f.dim(), lambda).unwrap();
        if !f.is_zero() {
            prop_assert!(p.norm_sq(&f) > 0.0);
            prop_assert!(p.inner_product(&f, &f).re > 0.0);
        }
    }

    #[test]
    fn inner_product_is_hermitian_and_conjugate_linear(
        (f, g) in (1usize..=3).prop_flat_map(|d| (holo(d, 4), holo(d, 4))),
        lambda in 0.05..6.0f64,
        s in complex(),
    ) {
        let p = SpaceParams::new(f.dim(), lambda).unwrap();
        let fg = p.inner_product(&f, &g);
        prop_assert!(close(fg, p.inner_product(&g, &f).conj(), 1e-12));
        prop_assert!(close(p.inner_product(&f.scale(s), &g), s.conj() * fg, 1e-12));
        prop_assert!(close(p.inner_product(&f, &g.scale(s)), s * fg, 1e-12));
    }

    #[test]
    fn monomials_are_orthogonal_and_d_stable(d in 1usize..=3, lambda in 0.05..6.0f64, l in index(3, 5), m in index(3, 5)) {
        let (l, m) = (MultiIndex::new(l.entries()[..d].to_vec()), MultiIndex::new(m.entries()[..d].to_vec()));
        let p = SpaceParams::new(d, lambda).unwrap();
        if l != m {
            prop_assert_eq!(p.monomial_inner_product(&l, &m), 0.0);
        }
        let wider = SpaceParams::new(d + 1, lambda).unwrap();
        let a = p.monomial_norm_sq(&m);
        let b = wider.monomial_norm_sq(&m.extend_to(d + 1));
        prop_assert!((a - b).abs() <= 1e-14 * a);
    }

    #[test]
    fn pointwise_bound(
        (f, z) in (1usize..=3).prop_flat_map(|d| (holo(d, 5), point(d, 0.99))),
        lambda in 0.05..6.0f64,
    ) {
        let p = SpaceParams::new(f.dim(), lambda).unwrap();
        let (value, bound) = p.pointwise_bound_check(&f, &z);
        prop_assert!(value <= bound * (1.0 + 1e-12), "{} > {}", value, bound);
    }

    #[test]
    fn mobius_is_an_involution((w, z) in (1usize..=3).prop_flat_map(|d| (point(d, 0.95), point(d, 0.95)))) {
        let back = mobius(&w, &mobius(&w, &z));
        for (a, b) in back.coords().iter().zip(z.coords()) {
            prop_assert!((a - b).norm() <= 1e-12);
        }
        let origin = mobius(&w, &w);
        prop_assert!(origin.norm_sq() <= 1e-24);
    }

    #[test]
    fn kernel_is_hermitian_and_bounded(
        (z, w) in (1usize..=3).prop_flat_map(|d| (point(d, 0.999), point(d, 0.999))),
        lambda in 0.05..6.0f64,
    ) {
        let k = reproducing_kernel(&z, &w, lambda);
        prop_assert!(close(k, reproducing_kernel(&w, &z, lambda).conj(), 1e-12));
        let p = SpaceParams::new(z.dim(), lambda).unwrap();
        let f = berezin_kernel(&z, &w, &p);
        let c = p.c_lambda();
        prop_assert!(f.abs() <= c * c * (1.0 + 1e-12));
    }

    #[test]
    fn adjoint_law(phi in (1usize..=2).prop_flat_map(|d| mixed(d, 2)), lambda in 0.05..5.0f64) {
        let p = SpaceParams::new(phi.dim(), lambda).unwrap();
        let t = toeplitz_poly_matrix(&phi, &p, 4);
        let t_bar = toeplitz_poly_matrix(&phi.conj(), &p, 4);
        let adjoint = t.conj_transpose();
        prop_assert_eq!(t_bar.entries(), adjoint.entries());
    }

    #[test]
    fn holomorphic_factor_law(
        (phi, psi) in (1usize..=2).prop_flat_map(|d| (mixed(d, 2), index(d, 2))),
        lambda in 0.05..5.0f64,
    ) {
        let d = phi.dim();
        let p = SpaceParams::new(d, lambda).unwrap();
        let degree = 5;
        let psi_poly = MixedPoly::monomial(psi.clone(), MultiIndex::zero(d), C64::new(1.0, 0.0));
        let lhs = toeplitz_poly_matrix(&phi.mul(&psi_poly), &p, degree);
        let rhs = toeplitz_poly_matrix(&phi, &p, degree).matmul(&multiplication_matrix(&psi, &p, degree)).unwrap();
        for (col, m) in lhs.basis().iter().enumerate() {
            if m.degree() + psi.degree() > degree as u32 {
                continue;
            }
            for row in 0..lhs.dim() {
                prop_assert!(close(lhs.get(row, col), rhs.get(row, col), 1e-12));
            }
        }
    }

    #[test]
    fn shift_identities_on_random_polynomials(
        (f, g) in (1usize..=3).prop_flat_map(|d| (holo(d, 4), holo(d, 4))),
        offset in 0.05..3.0f64,
        n in 1usize..=3,
    ) {
        let d = f.dim();
        let lambda = d as f64 + offset;
        for r in [
            bergman::verify::check_shift1(&f, &g, lambda).unwrap(),
            bergman::verify::check_shift2n(&f, &g, lambda, n).unwrap(),
        ] {
            prop_assert!(r.pass, "{:?}", r);
        }
    }

    #[test]
    fn sobolev_form_is_independent_of_order(
        (f, g) in (1usize..=3).prop_flat_map(|d| (holo(d, 4), holo(d, 4))),
        lambda in 0.05..4.0f64,
        extra in 0usize..=2,
    ) {
        let base = SpaceParams::new(f.dim(), lambda).unwrap();
        let raised = base.with_order(base.n() + extra).unwrap();
        let a = base.sobolev_inner_product(&f, &g);
        let b = raised.sobolev_inner_product(&f, &g);
        prop_assert!(close(a, b, 1e-12));
        prop_assert!(close(a, base.inner_product(&f, &g), 1e-12));
    }
}
