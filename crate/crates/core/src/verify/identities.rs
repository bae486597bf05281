//! Closed-form identities and inequalities of the spaces themselves.

use alloc::vec::Vec;

use crate::ball::{mobius, reproducing_kernel, BallPoint};
use crate::error::{Error, Result};
use crate::multi_index::{enumerate_shell, MultiIndex};
use crate::poly::{HoloPoly, MixedPoly};
use crate::quadrature::{integrate_ball_exact, QuadratureRule, RadialProfile};
use crate::space::SpaceParams;
use crate::toeplitz::{berezin_kernel, berezin_transform, toeplitz_poly_matrix, SymbolSpec};
use crate::C64;

use super::report::{TolerancePolicy, VerificationReport};

fn real(x: f64) -> C64 {
    C64::new(x, 0.0)
}

fn needs_above_d(lambda: f64, d: usize) -> Result<()> {
    if lambda > d as f64 {
        Ok(())
    } else {
        Err(Error::InvalidArgument(alloc::format!("needs lambda > d (lambda = {lambda}, d = {d})")))
    }
}

/// `(I + N/λ)f`.
fn shift_op(f: &HoloPoly, lambda: f64) -> HoloPoly {
    f.add(&f.number_operator().scale(real(1.0 / lambda)))
}

/// `(1−|z|²)^α = (I − N/(α+1))(1−|z|²)^{α+1}`, with
/// `N(1−|z|²)^{α+1} = −(α+1)|z|²(1−|z|²)^α`.
pub fn check_weight_recursion(alpha: f64, z: &BallPoint) -> VerificationReport {
    let t = z.norm_sq();
    let lhs = libm::pow(1.0 - t, alpha);
    let n_applied = -(alpha + 1.0) * t * libm::pow(1.0 - t, alpha);
    let rhs = libm::pow(1.0 - t, alpha + 1.0) - n_applied / (alpha + 1.0);
    VerificationReport::compare("weight-recursion", real(lhs), real(rhs), 1e-12, TolerancePolicy::Either)
        .with_param("alpha", alpha)
        .with_param("d", z.dim())
        .with_param("norm_sq", t)
}

/// Which number operator the integration-by-parts identity uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PartsVariant {
    Holomorphic,
    AntiHolomorphic,
}

/// `c_λ∫ψ(1−|z|²)^{λ−d−1}dz = c_{λ+1}∫(I + N/λ)ψ(1−|z|²)^{λ−d}dz`, or the
/// same with `N̄`. Both sides are exact.
pub fn check_parts_lemma(psi: &MixedPoly, lambda: f64, d: usize, variant: PartsVariant) -> Result<VerificationReport> {
    needs_above_d(lambda, d)?;
    let p0 = SpaceParams::new(d, lambda)?;
    let p1 = SpaceParams::new(d, lambda + 1.0)?;
    let shifted = match variant {
        PartsVariant::Holomorphic => psi.number_operator(),
        PartsVariant::AntiHolomorphic => psi.number_operator_bar(),
    };
    let shifted = psi.add(&shifted.scale(real(1.0 / lambda)));
    let lhs = integrate_ball_exact(psi, lambda, d)? * p0.c_lambda();
    let rhs = integrate_ball_exact(&shifted, lambda + 1.0, d)? * p1.c_lambda();
    let id = match variant {
        PartsVariant::Holomorphic => "parts-lemma",
        PartsVariant::AntiHolomorphic => "parts-lemma-bar",
    };
    Ok(VerificationReport::compare(id, lhs, rhs, 1e-10, TolerancePolicy::Either)
        .with_param("d", d)
        .with_param("lambda", lambda)
        .with_param("psi", alloc::format!("{psi}")))
}

/// `⟨f,g⟩_λ = ⟨f,(I+N/λ)g⟩_{λ+1} = ⟨(I+N/λ)f,g⟩_{λ+1}` by closed forms.
/// The report carries the larger of the two discrepancies.
pub fn check_shift1(f: &HoloPoly, g: &HoloPoly, lambda: f64) -> Result<VerificationReport> {
    let d = f.dim();
    needs_above_d(lambda, d)?;
    let p0 = SpaceParams::new(d, lambda)?;
    let p1 = SpaceParams::new(d, lambda + 1.0)?;
    let base = p0.inner_product(f, g);
    let right = p1.inner_product(f, &shift_op(g, lambda));
    let left = p1.inner_product(&shift_op(f, lambda), g);
    let a = VerificationReport::compare("shift1", right, base, 1e-12, TolerancePolicy::Either);
    let b = VerificationReport::compare("shift1", left, base, 1e-12, TolerancePolicy::Either);
    let (r, which) = if b.severity() > a.severity() { (b, "left") } else { (a, "right") };
    Ok(r.with_param("d", d)
        .with_param("lambda", lambda)
        .with_param("worst_side", which)
        .with_param("f", alloc::format!("{f}"))
        .with_param("g", alloc::format!("{g}")))
}

/// `⟨Af, Bg⟩` in `HL²(μ_{λ+2n})`, integrated exactly over the ball.
fn sobolev_by_integration(f: &HoloPoly, g: &HoloPoly, params: &SpaceParams) -> Result<C64> {
    let sigma = params.sobolev_level();
    let integrand = params.apply_a(f).conj_mixed().mul(&params.apply_b(g).to_mixed());
    let c = crate::special::c_lambda(params.d(), sigma);
    Ok(integrate_ball_exact(&integrand, sigma, params.d())? * c)
}

/// For `λ > d`: `⟨f,g⟩_λ = ⟨Af, Bg⟩_{λ+2n}` with the right side integrated
/// exactly. For `λ ≤ d`: the integrated form does not depend on `n`
/// (compared at `n` and `n+1`) and equals the closed-form monomial product.
pub fn check_shift2n(f: &HoloPoly, g: &HoloPoly, lambda: f64, n: usize) -> Result<VerificationReport> {
    let d = f.dim();
    let params = SpaceParams::new(d, lambda)?.with_order(n)?;
    let closed = params.inner_product(f, g);
    let at_n = sobolev_by_integration(f, g, &params)?;
    let r = if lambda > d as f64 {
        VerificationReport::compare("shift2n", at_n, closed, 1e-12, TolerancePolicy::Either).note("theorem form")
    } else {
        let next = sobolev_by_integration(f, g, &params.with_order(n + 1)?)?;
        let a = VerificationReport::compare("shift2n", next, at_n, 1e-12, TolerancePolicy::Either)
            .note("n-independence: n vs n+1");
        let b = VerificationReport::compare("shift2n", at_n, closed, 1e-12, TolerancePolicy::Either)
            .note("n-independence: form vs closed monomial norms");
        if b.severity() > a.severity() {
            b
        } else {
            a
        }
    };
    Ok(r.with_param("d", d)
        .with_param("lambda", lambda)
        .with_param("n", n)
        .with_param("f", alloc::format!("{f}"))
        .with_param("g", alloc::format!("{g}")))
}

/// Applying the one-step shift twice agrees with the `n = 1` form:
/// `⟨f, (I+N/(λ+1))(I+N/λ)g⟩_{λ+2} = ⟨Af, Bg⟩_{λ+2}`.
pub fn check_shift_chain(f: &HoloPoly, g: &HoloPoly, lambda: f64) -> Result<VerificationReport> {
    let d = f.dim();
    needs_above_d(lambda, d)?;
    let p2 = SpaceParams::new(d, lambda + 2.0)?;
    let twice = p2.inner_product(f, &shift_op(&shift_op(g, lambda), lambda + 1.0));
    let form = SpaceParams::new(d, lambda)?.with_order(1)?.sobolev_inner_product(f, g);
    Ok(VerificationReport::compare("shift-chain", twice, form, 1e-12, TolerancePolicy::Either)
        .with_param("d", d)
        .with_param("lambda", lambda))
}

/// `‖fg‖²_{l1+l2} ≤ (c_{l1+l2}/c_{l1}) ‖f‖²_{l1} ‖g‖²_{l2}` for `l1 > d`.
pub fn check_product_bound(f: &HoloPoly, g: &HoloPoly, l1: f64, l2: f64) -> Result<VerificationReport> {
    let d = f.dim();
    needs_above_d(l1, d)?;
    let p1 = SpaceParams::new(d, l1)?;
    let p2 = SpaceParams::new(d, l2)?;
    let p12 = SpaceParams::new(d, l1 + l2)?;
    let lhs = p12.norm_sq(&f.mul(g));
    let rhs = p12.c_lambda() / p1.c_lambda() * p1.norm_sq(f) * p2.norm_sq(g);
    Ok(VerificationReport::compare("product-bound", real(lhs), real(rhs), 1e-12, TolerancePolicy::AtMost)
        .with_param("d", d)
        .with_param("l1", l1)
        .with_param("l2", l2)
        .with_param("ratio", lhs / rhs))
}

/// Closed-form `‖z^m‖²` against `c_λ ∫|z^m|²(1−|z|²)^{λ−d−1}dz`, `λ > d`.
pub fn check_monomial_quadrature(m: &MultiIndex, params: &SpaceParams) -> Result<VerificationReport> {
    let d = params.d();
    needs_above_d(params.lambda(), d)?;
    let integrand = MixedPoly::monomial(m.clone(), m.clone(), real(1.0));
    let quad = integrate_ball_exact(&integrand, params.lambda(), d)? * params.c_lambda();
    Ok(VerificationReport::compare(
        "monomial-quadrature",
        real(params.monomial_norm_sq(m)),
        quad,
        1e-10,
        TolerancePolicy::Relative,
    )
    .with_param("d", d)
    .with_param("lambda", params.lambda())
    .with_param("m", alloc::format!("{m:?}")))
}

/// `T_{z̄_j z_j}` is diagonal with entries `(1+m_j)/(λ+|m|)`.
pub fn check_tzm(j: usize, params: &SpaceParams, degree: usize) -> VerificationReport {
    let d = params.d();
    let phi = MixedPoly::zbar(d, j).mul(&MixedPoly::z(d, j));
    let t = toeplitz_poly_matrix(&phi, params, degree);
    let mut worst = (0.0f64, real(0.0), real(0.0));
    for (row, l) in t.basis().iter().enumerate() {
        for col in 0..t.dim() {
            let expect = if row == col {
                real((1.0 + l.entries()[j] as f64) / (params.lambda() + l.degree() as f64))
            } else {
                real(0.0)
            };
            let got = t.get(row, col);
            let e = (got - expect).norm();
            if e > worst.0 || (worst.0 == 0.0 && row == 0 && col == 0) {
                worst = (e, got, expect);
            }
        }
    }
    VerificationReport::compare("tzm", worst.1, worst.2, 1e-12, TolerancePolicy::Either)
        .with_param("d", d)
        .with_param("lambda", params.lambda())
        .with_param("j", j + 1)
        .with_param("degree", degree)
}

/// Partial sums `Σ_{|m|≤K} z^m w̄^m/‖z^m‖²_λ` against `(1 − z·w̄)^{−λ}`.
pub fn check_kernel_series(z: &BallPoint, w: &BallPoint, lambda: f64, degree: u32) -> Result<VerificationReport> {
    let d = z.dim();
    let params = SpaceParams::new(d, lambda)?;
    let mut sum = real(0.0);
    let mut shell = Vec::new();
    for k in 0..=degree {
        shell.clear();
        enumerate_shell(d, k, &mut shell);
        for m in &shell {
            let zm = monomial(m, z.coords());
            let wm = monomial(m, w.coords());
            sum += zm * wm.conj() / params.monomial_norm_sq(m);
        }
    }
    let closed = reproducing_kernel(z, w, lambda);
    Ok(VerificationReport::compare("kernel-series", sum, closed, 1e-8, TolerancePolicy::Relative)
        .with_param("d", d)
        .with_param("lambda", lambda)
        .with_param("degree", degree))
}

fn monomial(m: &MultiIndex, z: &[C64]) -> C64 {
    m.entries()
        .iter()
        .zip(z)
        .fold(real(1.0), |acc, (&k, zj)| acc * zj.powu(k))
}

/// `|F_λ(z, w)| ≤ c_λ²`.
pub fn check_kernel_bound(z: &BallPoint, w: &BallPoint, params: &SpaceParams) -> VerificationReport {
    let c = params.c_lambda();
    VerificationReport::compare(
        "kernel-bound",
        real(berezin_kernel(z, w, params).abs()),
        real(c * c),
        1e-12,
        TolerancePolicy::AtMost,
    )
    .with_param("d", params.d())
    .with_param("lambda", params.lambda())
}

/// `F_λ(φ_u(z), φ_u(w)) = F_λ(z, w)`.
pub fn check_invariance(u: &BallPoint, z: &BallPoint, w: &BallPoint, lambda: f64) -> Result<VerificationReport> {
    let params = SpaceParams::new(z.dim(), lambda)?;
    let lhs = berezin_kernel(&mobius(u, z), &mobius(u, w), &params);
    let rhs = berezin_kernel(z, w, &params);
    Ok(VerificationReport::compare("invariance", real(lhs), real(rhs), 1e-10, TolerancePolicy::Relative)
        .with_param("d", z.dim())
        .with_param("lambda", lambda))
}

/// `A_λ1(z) = c_λ` at `|z| = r`, for `λ > d`.
pub fn check_berezin_constant(r: f64, params: &SpaceParams, rule: &QuadratureRule) -> Result<VerificationReport> {
    let d = params.d();
    needs_above_d(params.lambda(), d)?;
    let mut coords = alloc::vec![real(0.0); d];
    coords[0] = real(r);
    let z = BallPoint::new(coords)?;
    let v = berezin_transform(&SymbolSpec::Radial(RadialProfile::constant()), &z, params, rule)?;
    Ok(VerificationReport::compare("berezin-constant", v, real(params.c_lambda()), 1e-6, TolerancePolicy::Relative)
        .with_param("d", d)
        .with_param("lambda", params.lambda())
        .with_param("r", r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn holo(d: usize, terms: &[(&[u32], f64, f64)]) -> HoloPoly {
        HoloPoly::from_terms(d, terms.iter().map(|(m, re, im)| (MultiIndex::new(m.to_vec()), C64::new(*re, *im))))
    }

    fn pt(c: &[(f64, f64)]) -> BallPoint {
        BallPoint::new(c.iter().map(|&(a, b)| C64::new(a, b)).collect()).unwrap()
    }

    #[test]
    fn weight_recursion_examples() {
        let r = check_weight_recursion(1.7, &BallPoint::origin(2));
        assert!(r.pass && r.lhs == real(1.0) && r.rhs == real(1.0));
        // α = 0: (1−t)^0 = 1 = (1−t) + t.
        let r = check_weight_recursion(0.0, &pt(&[(libm::sqrt(0.5), 0.0)]));
        assert!((r.lhs.re - 1.0).abs() < 1e-15 && (r.rhs.re - 1.0).abs() < 1e-15);
    }

    #[test]
    fn parts_lemma_examples() {
        let r = check_parts_lemma(&MixedPoly::one(2), 3.5, 2, PartsVariant::Holomorphic).unwrap();
        assert!((r.lhs.re - 1.0).abs() < 1e-14 && (r.rhs.re - 1.0).abs() < 1e-14);
        // ψ = |z|², d = 1, λ = 2: c_2 = 1/π and ∫_D |z|² dz = π/2.
        let psi = MixedPoly::abs2(1);
        let r = check_parts_lemma(&psi, 2.0, 1, PartsVariant::AntiHolomorphic).unwrap();
        assert!((r.lhs.re - 0.5).abs() < 1e-14, "{}", r.lhs);
        assert!(r.pass);
        assert!(check_parts_lemma(&psi, 1.0, 1, PartsVariant::Holomorphic).is_err());
    }

    #[test]
    fn shift1_examples() {
        let one = HoloPoly::one(2);
        let r = check_shift1(&one, &one, 2.5).unwrap();
        assert!(r.pass && (r.lhs.re - 1.0).abs() < 1e-15);
        let f = holo(2, &[(&[2, 1], 1.0, 0.0)]);
        assert!(check_shift1(&f, &f, 3.3).unwrap().pass);
    }

    #[test]
    fn shift2n_examples() {
        let z = holo(1, &[(&[1], 1.0, 0.0)]);
        let r = check_shift2n(&z, &z, 2.0, 1).unwrap();
        assert!((r.lhs.re - 0.5).abs() < 1e-14 && r.pass);
        let r0 = check_shift2n(&z, &z, 2.0, 0).unwrap();
        assert!(r0.pass);
        let f = holo(2, &[(&[1, 1], 0.5, -1.0), (&[0, 0], 2.0, 0.0)]);
        let g = holo(2, &[(&[1, 1], 1.0, 1.0), (&[2, 0], 1.0, 0.0)]);
        for n in 1..=2 {
            assert!(check_shift2n(&f, &g, 0.7, n).unwrap().pass);
        }
    }

    #[test]
    fn shift_chain_and_product_bound() {
        let f = holo(2, &[(&[1, 0], 1.0, 0.5), (&[0, 3], -0.2, 0.0)]);
        let g = holo(2, &[(&[2, 1], 0.3, 0.0), (&[0, 0], 1.0, -1.0)]);
        assert!(check_shift_chain(&f, &g, 2.3).unwrap().pass);
        let one = HoloPoly::one(1);
        let r = check_product_bound(&one, &one, 2.5, 0.8).unwrap();
        assert!(r.pass && r.rhs.re >= 1.0);
        let zm = holo(1, &[(&[4], 1.0, 0.0)]);
        assert!(check_product_bound(&zm, &one, 2.5, 0.8).unwrap().pass);
    }

    #[test]
    fn kernel_checks() {
        let z = pt(&[(0.3, 0.0), (0.0, 0.0)]);
        let r = check_kernel_series(&z, &z, 1.5, 60).unwrap();
        assert!(r.pass, "{r:?}");
        let p = SpaceParams::new(2, 0.9).unwrap();
        let w = pt(&[(-0.4, 0.3), (0.1, 0.2)]);
        assert!(check_kernel_bound(&z, &w, &p).pass);
        let u = pt(&[(0.1, -0.5), (0.3, 0.0)]);
        assert!(check_invariance(&u, &z, &w, 0.9).unwrap().pass);
        assert!(check_invariance(&BallPoint::origin(2), &z, &w, 0.9).unwrap().pass);
    }

    #[test]
    fn monomial_and_tzm() {
        let p = SpaceParams::new(2, 2.5).unwrap();
        assert!(check_monomial_quadrature(&MultiIndex::new(vec![3, 2]), &p).unwrap().pass);
        let r = check_tzm(1, &SpaceParams::new(2, 0.5).unwrap(), 6);
        assert!(r.pass);
    }

    #[test]
    fn berezin_constant_examples() {
        let p = SpaceParams::new(1, 1.7).unwrap();
        for r in [0.0, 0.5, 0.9] {
            assert!(check_berezin_constant(r, &p, &QuadratureRule::default()).unwrap().pass);
        }
    }
}
