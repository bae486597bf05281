//! Toeplitz operators through the Sobolev-type form at level `λ + 2n`:
//! `⟨f, T_φ g⟩_λ = c_{λ+2n} ∫ C[f̄ φ g] (1−|z|²)^{λ+2n−d−1} dz`.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::multi_index::Basis;
use crate::poly::{HoloPoly, MixedPoly};
use crate::quadrature::{integrate_ball_exact, integrate_ball_mc, QuadratureRule};
use crate::space::SpaceParams;
use crate::special::{binomial, c_lambda};
use crate::C64;

use super::{GenericSymbol, OperatorMatrix, SymbolSpec};

/// One term `A_{jklm} conj(N^j f) (N̄^k N^l φ) N^m g` of the expansion of
/// `C[f̄ φ g]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SobolevTerm {
    pub j: usize,
    pub k: usize,
    pub l: usize,
    pub m: usize,
    pub coeff: f64,
}

/// The expansion of `C = P_A(N̄) P_B(N)` acting on `f̄ φ g`, where
/// `P_A(x) = Π_{i=n}^{2n−1}(1 + x/(λ+i))` and `P_B(x) = Π_{i<n}(1 + x/(λ+i))`.
///
/// `N̄` and `N` are derivations that commute, `N f̄ = 0` and
/// `N̄ g = 0`, so `N̄^p N^q (f̄ φ g)` splits by Leibniz and
/// `A_{jklm} = α_{j+k} C(j+k, j) β_{l+m} C(l+m, l)`.
#[derive(Clone, Debug)]
pub struct SobolevExpansion {
    n: usize,
    alpha: Vec<f64>,
    beta: Vec<f64>,
    terms: Vec<SobolevTerm>,
}

impl SobolevExpansion {
    pub fn new(params: &SpaceParams) -> Self {
        let n = params.n();
        let lambda = params.lambda();
        let alpha = poly_product((n..2 * n).map(|i| 1.0 / (lambda + i as f64)));
        let beta = poly_product((0..n).map(|i| 1.0 / (lambda + i as f64)));
        let mut terms = Vec::new();
        for (p, &ap) in alpha.iter().enumerate().take(n + 1) {
            for (q, &bq) in beta.iter().enumerate().take(n + 1) {
                for j in 0..=p {
                    for l in 0..=q {
                        let coeff = ap * binomial(p as u64, j as u64) * bq * binomial(q as u64, l as u64);
                        if coeff != 0.0 {
                            terms.push(SobolevTerm {
                                j,
                                k: p - j,
                                l,
                                m: q - l,
                                coeff,
                            });
                        }
                    }
                }
            }
        }
        SobolevExpansion { n, alpha, beta, terms }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// Coefficients of `P_A`, lowest degree first.
    pub fn alpha(&self) -> &[f64] {
        &self.alpha
    }

    /// Coefficients of `P_B`, lowest degree first.
    pub fn beta(&self) -> &[f64] {
        &self.beta
    }

    pub fn terms(&self) -> &[SobolevTerm] {
        &self.terms
    }
}

/// Coefficients of `Π (1 + r_i x)`.
fn poly_product(roots: impl Iterator<Item = f64>) -> Vec<f64> {
    let mut c = vec![1.0];
    for r in roots {
        let mut next = vec![0.0; c.len() + 1];
        for (i, &v) in c.iter().enumerate() {
            next[i] += v;
            next[i + 1] += v * r;
        }
        c = next;
    }
    c
}

/// `⟨f, T_φ g⟩_λ` by the Sobolev-type form.
///
/// Mixed polynomials are exact (`C` applied to `f̄ φ g`, then exact ball
/// integration). Generic symbols use the expansion with the caller's
/// `N̄^k N^l φ` evaluables and one Monte Carlo integral driven by `rule`.
/// Radial profiles carry no derivative data and are rejected.
pub fn toeplitz_sobolev_entry(
    f: &HoloPoly,
    g: &HoloPoly,
    phi: &SymbolSpec,
    params: &SpaceParams,
    rule: &QuadratureRule,
) -> Result<C64> {
    let d = params.d();
    let level = params.sobolev_level();
    match phi {
        SymbolSpec::Mixed(p) => {
            let integrand = f.conj_mixed().mul(p).mul(&g.to_mixed());
            let c = params.apply_c(&integrand);
            Ok(integrate_ball_exact(&c, level, d)? * c_lambda(d, level))
        }
        SymbolSpec::Radial(_) => Err(Error::MissingDerivatives { needed: params.n() }),
        SymbolSpec::Generic(s) => {
            let (samples, seed) = rule.mc_settings();
            generic_entry(f, g, s, params, samples, seed).map(|(v, _)| v)
        }
    }
}

/// Generic-symbol entry with its Monte Carlo standard error.
pub fn generic_entry(
    f: &HoloPoly,
    g: &HoloPoly,
    phi: &GenericSymbol,
    params: &SpaceParams,
    samples: usize,
    seed: u64,
) -> Result<(C64, f64)> {
    let n = params.n();
    match phi.derivative_order() {
        Some(order) if order >= n => {}
        _ => return Err(Error::MissingDerivatives { needed: n }),
    }
    let d = params.d();
    let level = params.sobolev_level();
    let expansion = SobolevExpansion::new(params);
    let nf: Vec<HoloPoly> = (0..=n as u32).map(|p| f.number_operator_pow(p)).collect();
    let ng: Vec<HoloPoly> = (0..=n as u32).map(|p| g.number_operator_pow(p)).collect();
    let integrand = move |z: &[C64]| -> C64 {
        let fz: Vec<C64> = nf.iter().map(|h| h.eval(z).conj()).collect();
        let gz: Vec<C64> = ng.iter().map(|h| h.eval(z)).collect();
        let mut acc = C64::new(0.0, 0.0);
        for t in expansion.terms() {
            let dphi = phi.derivative(t.k, t.l).expect("derivative table checked");
            acc += fz[t.j] * dphi(z) * gz[t.m] * t.coeff;
        }
        acc
    };
    let (v, se) = integrate_ball_mc(&integrand, level, d, samples, seed)?;
    let c = c_lambda(d, level);
    Ok((v * c, se * c))
}

/// The Sobolev-form matrix on the normalized basis up to degree `M`.
///
/// Generic symbols draw an independent sub-seed per entry from
/// `(seed, l, m)`, so the matrix does not depend on evaluation order.
pub fn toeplitz_sobolev_matrix(
    phi: &SymbolSpec,
    params: &SpaceParams,
    degree: usize,
    rule: &QuadratureRule,
) -> Result<OperatorMatrix> {
    let d = params.d();
    let basis = Basis::new(d, degree);
    let mut out = OperatorMatrix::zeros(*params, degree);
    let (samples, seed) = rule.mc_settings();
    for (row, l) in basis.indices().iter().enumerate() {
        let fl = HoloPoly::monomial(l.clone(), C64::new(1.0, 0.0));
        let nl = params.monomial_norm_sq(l);
        for (col, m) in basis.indices().iter().enumerate() {
            let gm = HoloPoly::monomial(m.clone(), C64::new(1.0, 0.0));
            let raw = match phi {
                SymbolSpec::Generic(s) => {
                    let sub = crate::quadrature::mc::sub_seed(seed, row as u64, col as u64);
                    generic_entry(&fl, &gm, s, params, samples, sub)?.0
                }
                _ => toeplitz_sobolev_entry(&fl, &gm, phi, params, rule)?,
            };
            out.set(row, col, raw / libm::sqrt(nl * params.monomial_norm_sq(m)));
        }
    }
    Ok(out)
}

/// Exact value of the expansion for a mixed polynomial symbol: each term is
/// integrated in closed form. Agrees with the `C`-operator path.
pub fn expanded_entry_exact(f: &HoloPoly, g: &HoloPoly, phi: &MixedPoly, params: &SpaceParams) -> Result<C64> {
    let d = params.d();
    let level = params.sobolev_level();
    let expansion = SobolevExpansion::new(params);
    let mut acc = C64::new(0.0, 0.0);
    for t in expansion.terms() {
        let fj = f.number_operator_pow(t.j as u32).conj_mixed();
        let mut dphi = phi.clone();
        for _ in 0..t.k {
            dphi = dphi.number_operator_bar();
        }
        for _ in 0..t.l {
            dphi = dphi.number_operator();
        }
        let gm = g.number_operator_pow(t.m as u32).to_mixed();
        acc += integrate_ball_exact(&fj.mul(&dphi).mul(&gm), level, d)? * t.coeff;
    }
    Ok(acc * c_lambda(d, level))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multi_index::MultiIndex;
    use crate::toeplitz::toeplitz_poly_matrix;

    fn mi(e: &[u32]) -> MultiIndex {
        MultiIndex::new(e.to_vec())
    }

    fn mono(e: &[u32]) -> HoloPoly {
        HoloPoly::monomial(mi(e), C64::new(1.0, 0.0))
    }

    #[test]
    fn constant_symbol_gives_inner_product() {
        let rule = QuadratureRule::default();
        for &lambda in &[0.4, 1.3, 2.0, 2.8] {
            let p = SpaceParams::new(2, lambda).unwrap();
            let f = mono(&[1, 2]).add(&mono(&[0, 1]).scale(C64::new(0.5, -1.0)));
            let g = mono(&[1, 2]).add(&mono(&[0, 0]));
            let v = toeplitz_sobolev_entry(&f, &g, &SymbolSpec::Mixed(MixedPoly::one(2)), &p, &rule).unwrap();
            let ip = p.inner_product(&f, &g);
            assert!((v - ip).norm() <= 1e-12 * ip.norm());
        }
    }

    #[test]
    fn cross_construction_example() {
        // f = g = 1, φ = |z|², d = 2, λ = 1: d/λ = 2.
        let p = SpaceParams::new(2, 1.0).unwrap();
        assert_eq!(p.n(), 1);
        let v = toeplitz_sobolev_entry(
            &HoloPoly::one(2),
            &HoloPoly::one(2),
            &SymbolSpec::Mixed(MixedPoly::abs2(2)),
            &p,
            &QuadratureRule::default(),
        )
        .unwrap();
        assert!((v.re - 2.0).abs() < 1e-13 && v.im.abs() < 1e-15);
    }

    #[test]
    fn expansion_coefficients_small_order() {
        // n = 1: P_A(x) = 1 + x/(λ+1), P_B(x) = 1 + x/λ.
        let p = SpaceParams::new(2, 1.5).unwrap();
        let e = SobolevExpansion::new(&p);
        assert_eq!(e.alpha(), &[1.0, 1.0 / 2.5]);
        assert_eq!(e.beta(), &[1.0, 1.0 / 1.5]);
        assert_eq!(e.terms().len(), 9);
        let p0 = SpaceParams::new(1, 2.0).unwrap();
        assert_eq!(SobolevExpansion::new(&p0).terms().len(), 1);
    }

    #[test]
    fn expansion_matches_c_operator() {
        let rule = QuadratureRule::default();
        let phi = MixedPoly::from_terms(
            2,
            [
                ((mi(&[1, 0]), mi(&[1, 0])), C64::new(1.0, 0.0)),
                ((mi(&[2, 1]), mi(&[0, 1])), C64::new(0.3, -0.2)),
                ((mi(&[0, 0]), mi(&[1, 0])), C64::new(0.0, 0.7)),
            ],
        );
        for &lambda in &[0.3, 0.9, 1.7] {
            for n_extra in 0..2 {
                let p0 = SpaceParams::new(2, lambda).unwrap();
                let p = p0.with_order(p0.n() + n_extra).unwrap();
                for (f, g) in [(mono(&[1, 0]), mono(&[2, 1])), (mono(&[0, 2]), mono(&[1, 1]))] {
                    let a = toeplitz_sobolev_entry(&f, &g, &SymbolSpec::Mixed(phi.clone()), &p, &rule).unwrap();
                    let b = expanded_entry_exact(&f, &g, &phi, &p).unwrap();
                    assert!((a - b).norm() <= 1e-12 * (1.0 + a.norm()), "lambda={lambda}");
                }
            }
        }
    }

    #[test]
    fn agrees_with_polynomial_matrix_and_is_n_independent() {
        let rule = QuadratureRule::default();
        let phi = MixedPoly::zbar(2, 0)
            .pow(2)
            .mul(&MixedPoly::z(2, 0).pow(2))
            .add(&MixedPoly::z(2, 1).mul(&MixedPoly::zbar(2, 0)));
        for &lambda in &[0.7, 1.5] {
            let p = SpaceParams::new(2, lambda).unwrap();
            let spec = SymbolSpec::Mixed(phi.clone());
            let s = toeplitz_sobolev_matrix(&spec, &p, 3, &rule).unwrap();
            let t = toeplitz_poly_matrix(&phi, &p, 3);
            for i in 0..s.dim() {
                for j in 0..s.dim() {
                    assert!((s.get(i, j) - t.get(i, j)).norm() <= 1e-10 * (1.0 + t.get(i, j).norm()));
                }
            }
            let s2 = toeplitz_sobolev_matrix(&spec, &p.with_order(p.n() + 1).unwrap(), 3, &rule).unwrap();
            assert!(s.max_abs_diff(&s2) < 1e-10);
        }
    }

    #[test]
    fn generic_symbol_by_monte_carlo() {
        let p = SpaceParams::new(1, 0.6).unwrap();
        let phi = MixedPoly::abs2(1);
        let gsym = GenericSymbol::from_mixed(&phi, p.n());
        let f = mono(&[1]);
        let (v, se) = generic_entry(&f, &f, &gsym, &p, 40_000, 7).unwrap();
        let exact = toeplitz_sobolev_entry(&f, &f, &SymbolSpec::Mixed(phi), &p, &QuadratureRule::default()).unwrap();
        assert!((v - exact).norm() <= 5.0 * se + 1e-12, "v={v} exact={exact} se={se}");
    }

    #[test]
    fn missing_derivatives() {
        let p = SpaceParams::new(2, 0.5).unwrap();
        let gsym = GenericSymbol::new("plain", crate::quadrature::SymbolClass::SmoothBounded, |_| C64::new(1.0, 0.0));
        let r = toeplitz_sobolev_entry(
            &HoloPoly::one(2),
            &HoloPoly::one(2),
            &SymbolSpec::Generic(gsym),
            &p,
            &QuadratureRule::default(),
        );
        assert_eq!(r, Err(Error::MissingDerivatives { needed: 1 }));
    }
}
