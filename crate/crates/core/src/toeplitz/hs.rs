//! Hilbert–Schmidt Toeplitz operators for `L¹(τ)` and `L²(τ)` symbols:
//! `a_lm = c_λ ∫ ē_l φ e_m (1−|z|²)^λ dτ`, and the two ways of measuring
//! `‖T_φ‖_HS`.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::multi_index::{Basis, MultiIndex};
use crate::poly::MixedPoly;
use crate::quadrature::GaussJacobi;
use crate::quadrature::mc::{mc_mean, sub_seed, BallSampler};
use crate::special::{binomial, ln_gamma};
use crate::quadrature::{
    integrate_ball_exact, integrate_ball_mc, polar_factor, QuadratureRule, RadialProfile,
    SymbolClass,
};
use crate::space::SpaceParams;
use crate::C64;

use super::berezin::sphere_kernel_average;
use super::{OperatorMatrix, SymbolSpec};

/// The matrix `a_lm` on the normalized basis up to degree `M`.
///
/// Identically zero when `c_λ = 0`. Radial symbols give a diagonal matrix
/// (sphere orthogonality) computed on the Gauss–Jacobi rule; mixed
/// polynomials (bounded, so `λ > d` is required) are exact; generic symbols
/// use Monte Carlo with a sub-seed per entry derived from `(seed, l, m)`.
pub fn hs_matrix(phi: &SymbolSpec, params: &SpaceParams, degree: usize, rule: &QuadratureRule) -> Result<OperatorMatrix> {
    let d = params.d();
    let lambda = params.lambda();
    phi.check_hs_lambda(d, lambda)?;
    let mut out = OperatorMatrix::zeros(*params, degree);
    let c = params.c_lambda();
    if c == 0.0 {
        return Ok(out);
    }
    let basis = Basis::new(d, degree);
    let norms: Vec<f64> = basis.indices().iter().map(|m| params.monomial_norm_sq(m)).collect();
    match phi {
        SymbolSpec::Radial(g) => {
            for (i, v) in radial_diagonal(g, params, basis.indices(), rule)?.into_iter().enumerate() {
                out.set(i, i, v);
            }
        }
        SymbolSpec::Mixed(p) => {
            for (col, m) in basis.indices().iter().enumerate() {
                for ((a, b), coeff) in p.terms() {
                    let top = m.add(a);
                    let Some(l) = top.checked_sub(b) else { continue };
                    let Some(row) = basis.position(&l) else { continue };
                    let integrand = MixedPoly::monomial(top.clone(), top.clone(), *coeff);
                    let v = integrate_ball_exact(&integrand, lambda, d)? * c / libm::sqrt(norms[row] * norms[col]);
                    out.add_at(row, col, v);
                }
            }
        }
        SymbolSpec::Generic(g) => {
            let (samples, seed) = rule.mc_settings();
            for (row, l) in basis.indices().iter().enumerate() {
                for (col, m) in basis.indices().iter().enumerate() {
                    let (l, m) = (l.clone(), m.clone());
                    let f = |z: &[C64]| mono(&l, z).conj() * g.eval(z) * mono(&m, z);
                    let (v, _) = integrate_ball_mc(&f, lambda, d, samples, sub_seed(seed, row as u64, col as u64))?;
                    out.set(row, col, v * c / libm::sqrt(norms[row] * norms[col]));
                }
            }
        }
    }
    Ok(out)
}

/// Diagonal entries `a_mm` of a radial symbol.
fn radial_diagonal(g: &RadialProfile, params: &SpaceParams, indices: &[MultiIndex], rule: &QuadratureRule) -> Result<Vec<C64>> {
    let max_deg = indices.iter().map(|m| m.degree()).max().unwrap_or(0) as usize;
    let shells = radial_shell_values(g, params, max_deg, rule)?;
    Ok(indices.iter().map(|m| shells[m.degree() as usize]).collect())
}

/// Eigenvalue of a radial-symbol `T_φ` on each shell `|m| = k`, `k ≤ K`:
/// `a_k = c_λ π^d/(d−1)! · (d−1)!Γ(λ+k)/((d−1+k)!Γ(λ)) · ∫ t^{k+d−1}(1−t)^{λ−d−1+S} h(t) dt`.
///
/// Zero when `c_λ = 0`. The Gauss–Jacobi rule is enlarged with `K` so that
/// `t^k` stays within its exactness degree.
pub fn radial_shell_values(g: &RadialProfile, params: &SpaceParams, max_shell: usize, rule: &QuadratureRule) -> Result<Vec<C64>> {
    let d = params.d();
    let lambda = params.lambda();
    let c = params.c_lambda();
    if c == 0.0 {
        return Ok(alloc::vec![C64::new(0.0, 0.0); max_shell + 1]);
    }
    let alpha = lambda - d as f64 - 1.0 + g.decay();
    let nodes = rule.radial_nodes.max(max_shell / 2 + 32);
    let gj = GaussJacobi::new(nodes, alpha, d as f64 - 1.0)?;
    let hv: Vec<C64> = gj.nodes().iter().map(|&t| g.smooth_part(t)).collect();
    let polar = polar_factor(d);
    let df = d as f64;
    Ok((0..=max_shell)
        .map(|k| {
            let kf = k as f64;
            let moment: C64 = gj
                .pairs()
                .zip(&hv)
                .map(|((t, w), h)| h * (w * libm::pow(t, kf)))
                .sum();
            let ratio = libm::exp(ln_gamma(lambda + kf) - ln_gamma(lambda) - ln_gamma(df + kf) + ln_gamma(df));
            moment * (c * polar * ratio)
        })
        .collect())
}

/// `Σ_k dim(shell k) |a_k|²` over `k ≤ K`; the squared HS norm of a radial
/// symbol's operator truncated at degree `K`.
pub fn radial_hs_norm_sq(shells: &[C64], d: usize) -> f64 {
    shells
        .iter()
        .enumerate()
        .map(|(k, a)| binomial((k + d - 1) as u64, (d - 1) as u64) * a.norm_sqr())
        .sum()
}

fn mono(m: &MultiIndex, z: &[C64]) -> C64 {
    m.entries()
        .iter()
        .zip(z)
        .fold(C64::new(1.0, 0.0), |acc, (&k, zj)| acc * zj.powu(k))
}

/// Frobenius norm of the truncated matrix.
pub fn hs_norm_via_entries(matrix: &OperatorMatrix) -> f64 {
    matrix.frobenius_norm()
}

/// `‖T_φ‖_HS = ⟨φ, A_λφ⟩^{1/2}_{L²(τ)}`.
///
/// Radial profiles use nested Gauss–Jacobi rules in `s = |z|²` and
/// `t = |w|²` with the sphere-averaged kernel `₂F₁(λ, λ; d; st)`:
/// `⟨φ, A_λφ⟩ = c_λ² (π^d/(d−1)!)² ∫∫ (st)^{d−1} ((1−s)(1−t))^{λ−d−1}
/// ḡ(s) g(t) ₂F₁(λ,λ;d;st) ds dt`. Generic symbols sample `(z, w)` pairs.
pub fn hs_norm_via_berezin(phi: &SymbolSpec, params: &SpaceParams, rule: &QuadratureRule) -> Result<f64> {
    let d = params.d();
    let lambda = params.lambda();
    if !(lambda > d as f64 / 2.0) {
        return Err(Error::SymbolClass(alloc::format!(
            "the Berezin form needs lambda > d/2 (got {lambda})"
        )));
    }
    if let SymbolSpec::Radial(g) = phi {
        g.check_class(d)?;
    }
    if phi.class() != SymbolClass::L2Tau {
        return Err(Error::SymbolClass(alloc::format!(
            "the Berezin form needs an L2(tau) symbol (got {})",
            phi.class()
        )));
    }
    let c = params.c_lambda();
    if c == 0.0 {
        return Ok(0.0);
    }
    let q = match phi {
        SymbolSpec::Radial(g) => {
            let alpha = lambda - d as f64 - 1.0 + g.decay();
            let gj = rule.radial_rule(alpha, d)?;
            let hv: Vec<C64> = gj.nodes().iter().map(|&t| g.smooth_part(t)).collect();
            let mut acc = C64::new(0.0, 0.0);
            for (i, (s, ws)) in gj.pairs().enumerate() {
                let mut inner = C64::new(0.0, 0.0);
                for (j, (t, wt)) in gj.pairs().enumerate() {
                    inner += hv[j] * (wt * sphere_kernel_average(lambda, d, s * t)?);
                }
                acc += hv[i].conj() * inner * ws;
            }
            let polar = polar_factor(d);
            acc * (c * c * polar * polar)
        }
        SymbolSpec::Generic(g) => {
            let (samples, seed) = rule.mc_settings();
            let df = d as f64;
            // Pairs from μ_{d+1} ⊗ μ_{d+1}, reweighted to (1−|z|²)^{λ−d−1}(1−|w|²)^{λ−d−1}.
            let sampler = BallSampler::new(d, df + 1.0)?;
            let cd = crate::special::c_lambda(d, df + 1.0);
            let (m, _) = mc_mean(samples, seed, |rng| {
                let z = sampler.sample(rng);
                let w = sampler.sample(rng);
                let num = (1.0 - z.norm_sq()) * (1.0 - w.norm_sq());
                let den = (C64::new(1.0, 0.0) - z.dot_conj(&w)).norm_sqr();
                let v = g.eval(z.coords()).conj()
                    * g.eval(w.coords())
                    * (libm::pow(num, lambda - df - 1.0) * libm::pow(den, -lambda));
                if !(v.re.is_finite() && v.im.is_finite()) {
                    return Err(Error::NonFiniteSample {
                        point: z.coords().to_vec(),
                    });
                }
                Ok(v)
            })?;
            m * (c * c / (cd * cd))
        }
        SymbolSpec::Mixed(_) => unreachable!("mixed symbols are not L2(tau)"),
    };
    Ok(libm::sqrt(q.re.max(0.0)))
}

/// `‖φ‖_{L¹(τ)} = ∫ |φ| (1−|z|²)^{−d−1} dz`.
pub fn l1_tau_norm(phi: &SymbolSpec, d: usize, rule: &QuadratureRule) -> Result<f64> {
    match phi {
        SymbolSpec::Radial(g) => {
            let alpha = g.decay() - d as f64 - 1.0;
            let gj = rule.radial_rule(alpha, d)?;
            let v: f64 = gj.integrate(|t| g.smooth_part(t).norm());
            Ok(v * polar_factor(d))
        }
        SymbolSpec::Generic(g) => {
            let (samples, seed) = rule.mc_settings();
            let (v, _) = integrate_ball_mc(&|z| C64::new(g.eval(z).norm(), 0.0), 0.0, d, samples, seed)?;
            Ok(v.re)
        }
        SymbolSpec::Mixed(p) if p.is_zero() => Ok(0.0),
        SymbolSpec::Mixed(_) => Err(Error::SymbolClass("nonzero polynomials are not in L1(tau)".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::toeplitz::toeplitz_poly_matrix;

    #[test]
    fn integer_lambda_at_or_below_d_is_zero() {
        let rule = QuadratureRule::default();
        for d in 1..=3usize {
            for k in 1..=d {
                let p = SpaceParams::new(d, k as f64).unwrap();
                let g = SymbolSpec::Radial(RadialProfile::power(d as f64 + 0.5, SymbolClass::L1Tau));
                let m = hs_matrix(&g, &p, 4, &rule).unwrap();
                assert!(m.entries().iter().all(|c| *c == C64::new(0.0, 0.0)));
            }
        }
    }

    #[test]
    fn radial_example_d1_lambda2() {
        // a_00 = c_2/c_3 = 1/2 for g(t) = 1−t.
        let p = SpaceParams::new(1, 2.0).unwrap();
        let g = SymbolSpec::Radial(RadialProfile::power(1.0, SymbolClass::L2Tau));
        let m = hs_matrix(&g, &p, 3, &QuadratureRule::default()).unwrap();
        assert!((m.get(0, 0).re - 0.5).abs() < 1e-14);
        assert!(m.is_diagonal(0.0));
    }

    #[test]
    fn negative_operator_between_d_minus_one_and_d() {
        let p = SpaceParams::new(2, 1.5).unwrap();
        let g = SymbolSpec::Radial(RadialProfile::power(2.5, SymbolClass::L1Tau));
        let m = hs_matrix(&g, &p, 6, &QuadratureRule::default()).unwrap();
        assert!(m.diagonal().iter().all(|v| v.re < 0.0));
    }

    #[test]
    fn mixed_symbol_agrees_with_poly_matrix_for_large_lambda() {
        let p = SpaceParams::new(2, 3.4).unwrap();
        let phi = MixedPoly::abs2(2).add(&MixedPoly::z(2, 1).mul(&MixedPoly::zbar(2, 0)));
        let a = hs_matrix(&SymbolSpec::Mixed(phi.clone()), &p, 4, &QuadratureRule::default()).unwrap();
        let b = toeplitz_poly_matrix(&phi, &p, 4);
        assert!(a.max_abs_diff(&b) < 1e-12);
    }

    #[test]
    fn radial_diagonal_matches_exact_polynomial_path() {
        // g(t) = (1−t)²·(1 + t) against the mixed polynomial (1−|z|²)²(1+|z|²), λ > d.
        let d = 2;
        let p = SpaceParams::new(d, 2.6).unwrap();
        let prof = RadialProfile::new("q", 2.0, SymbolClass::L2Tau, |t| C64::new(1.0 + t, 0.0));
        let one = MixedPoly::one(d);
        let w = one.sub(&MixedPoly::abs2(d));
        let poly = w.mul(&w).mul(&one.add(&MixedPoly::abs2(d)));
        let a = hs_matrix(&SymbolSpec::Radial(prof), &p, 5, &QuadratureRule::default()).unwrap();
        let b = toeplitz_poly_matrix(&poly, &p, 5);
        assert!(a.max_abs_diff(&b) < 1e-12);
    }

    #[test]
    fn dual_path_radial_d1() {
        let rule = QuadratureRule::default();
        for &lambda in &[0.8, 1.6] {
            let p = SpaceParams::new(1, lambda).unwrap();
            let g = SymbolSpec::Radial(RadialProfile::power(2.0, SymbolClass::L2Tau));
            let entries = hs_norm_via_entries(&hs_matrix(&g, &p, 40, &rule).unwrap());
            let berezin = hs_norm_via_berezin(&g, &p, &rule).unwrap();
            assert!((entries - berezin).abs() <= 0.01 * berezin, "lambda={lambda}: {entries} vs {berezin}");
        }
    }

    #[test]
    fn shell_sum_matches_dense_frobenius() {
        let p = SpaceParams::new(2, 1.3).unwrap();
        let prof = RadialProfile::power(2.0, SymbolClass::L2Tau);
        let rule = QuadratureRule::default();
        let dense = hs_matrix(&SymbolSpec::Radial(prof.clone()), &p, 12, &rule).unwrap();
        let shells = radial_shell_values(&prof, &p, 12, &rule).unwrap();
        let a = radial_hs_norm_sq(&shells, 2);
        let b = dense.frobenius_norm();
        assert!((a.sqrt() - b).abs() < 1e-13 * b);
    }

    #[test]
    fn large_shells_against_beta_closed_form() {
        // h ≡ 1, d = 1: a_k = c_λ π Γ(λ+k)Γ(λ−1+S)/(Γ(λ)Γ(λ+k+S)).
        let p = SpaceParams::new(1, 0.8).unwrap();
        let s = 2.0;
        let shells = radial_shell_values(&RadialProfile::power(s, SymbolClass::L2Tau), &p, 600, &QuadratureRule::default()).unwrap();
        for k in [0usize, 10, 100, 599] {
            let kf = k as f64;
            let lnv = ln_gamma(0.8 + kf) + ln_gamma(0.8 - 1.0 + s) - ln_gamma(0.8) - ln_gamma(kf + 0.8 + s);
            let expect = p.c_lambda() * core::f64::consts::PI * libm::exp(lnv);
            assert!((shells[k].re - expect).abs() < 1e-11 * expect.abs(), "k={k}");
        }
    }

    #[test]
    fn l1_norm_of_power_profile() {
        // d = 1: π ∫ (1−t)^{S−2} dt = π/(S−1).
        let g = SymbolSpec::Radial(RadialProfile::power(2.0, SymbolClass::L1Tau));
        let v = l1_tau_norm(&g, 1, &QuadratureRule::default()).unwrap();
        assert!((v - core::f64::consts::PI).abs() < 1e-13);
    }

    #[test]
    fn generic_hs_matrix_matches_radial() {
        let p = SpaceParams::new(1, 1.6).unwrap();
        let rad = hs_matrix(
            &SymbolSpec::Radial(RadialProfile::power(2.0, SymbolClass::L2Tau)),
            &p,
            2,
            &QuadratureRule::default(),
        )
        .unwrap();
        let gen = super::super::GenericSymbol::new("g", SymbolClass::L2Tau, |z: &[C64]| {
            let t = z[0].norm_sqr();
            C64::new((1.0 - t) * (1.0 - t), 0.0)
        });
        let mc = hs_matrix(&SymbolSpec::Generic(gen), &p, 2, &QuadratureRule::monte_carlo(50_000, 9)).unwrap();
        for i in 0..3 {
            assert!((mc.get(i, i) - rad.get(i, i)).norm() < 0.02 * rad.get(i, i).norm());
        }
    }
}
