//! The Berezin kernel `F_λ`, the integral operator `A_λ = c_λ B_λ`, and the
//! sphere-averaged kernel used by the radial fast path.

use crate::ball::BallPoint;
use crate::error::{Error, Result};
use crate::multi_index::{enumerate_shell, MultiIndex};
use crate::poly::MixedPoly;
use crate::quadrature::{integrate_ball_mc, integrate_radial_times, QuadratureRule, RadialProfile};
use crate::space::SpaceParams;
use crate::special::hypergeometric_2f1_equal;
use crate::C64;

use super::SymbolSpec;

const SERIES_MAX_TERMS: usize = 5_000_000;
const MAX_SHELLS: u32 = 4000;

/// `F_λ(z, w) = c_λ² [(1−|z|²)(1−|w|²)/|1 − z·w̄|²]^λ`.
pub fn berezin_kernel(z: &BallPoint, w: &BallPoint, params: &SpaceParams) -> f64 {
    let c = params.c_lambda();
    if c == 0.0 {
        return 0.0;
    }
    let num = (1.0 - z.norm_sq()) * (1.0 - w.norm_sq());
    let den = (C64::new(1.0, 0.0) - z.dot_conj(w)).norm_sqr();
    c * c * libm::pow(num / den, params.lambda())
}

/// Sphere average `∫_S |1 − √x ⟨ζ, e⟩|^{−2λ} dσ(ζ) = ₂F₁(λ, λ; d; x)`.
pub fn sphere_kernel_average(lambda: f64, d: usize, x: f64) -> Result<f64> {
    hypergeometric_2f1_equal(lambda, d as f64, x, SERIES_MAX_TERMS)
        .ok_or_else(|| Error::NoConvergence(alloc::format!("2F1({lambda}, {lambda}; {d}; {x})")))
}

/// `A_λφ(z) = ∫ F_λ(z, w) φ(w) dτ(w)`.
///
/// Radial profiles reduce to
/// `c_λ² (1−r²)^λ π^d/(d−1)! ∫_0^1 t^{d−1}(1−t)^{λ−d−1} g(t) ₂F₁(λ,λ;d;r²t) dt`
/// on a Gauss–Jacobi rule. Mixed polynomials use the continuation
/// `A_λ = c_λ B_λ` with the Berezin transform summed as a series (the
/// integral itself diverges for `λ ≤ d`). Generic symbols use Monte Carlo.
pub fn berezin_transform(phi: &SymbolSpec, z: &BallPoint, params: &SpaceParams, rule: &QuadratureRule) -> Result<C64> {
    let d = params.d();
    if z.dim() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: z.dim(),
        });
    }
    let lambda = params.lambda();
    match phi.class() {
        crate::quadrature::SymbolClass::L2Tau if !(lambda > d as f64 / 2.0) => {
            return Err(Error::SymbolClass(alloc::format!(
                "L2(tau) symbols need lambda > d/2 (got {lambda})"
            )))
        }
        _ => {}
    }
    let c = params.c_lambda();
    if c == 0.0 {
        return Ok(C64::new(0.0, 0.0));
    }
    match phi {
        SymbolSpec::Radial(g) => radial_berezin(g, z.norm_sq(), params, rule),
        SymbolSpec::Mixed(p) => Ok(berezin_series(p, z, params)? * c),
        SymbolSpec::Generic(g) => {
            let (samples, seed) = rule.mc_settings();
            let zz = z.clone();
            let f = move |w: &[C64]| {
                let dot: C64 = zz.coords().iter().zip(w).map(|(a, b)| a.conj() * b).sum();
                let den = (C64::new(1.0, 0.0) - dot).norm_sqr();
                g.eval(w) * libm::pow(den, -lambda)
            };
            let (v, _) = integrate_ball_mc(&f, lambda, d, samples, seed)?;
            Ok(v * (c * c * libm::pow(1.0 - z.norm_sq(), lambda)))
        }
    }
}

/// Radial fast path of [`berezin_transform`] at `|z|² = r2`.
pub fn radial_berezin(g: &RadialProfile, r2: f64, params: &SpaceParams, rule: &QuadratureRule) -> Result<C64> {
    let d = params.d();
    let lambda = params.lambda();
    let c = params.c_lambda();
    if c == 0.0 {
        return Ok(C64::new(0.0, 0.0));
    }
    let mut err = None;
    let v = integrate_radial_times(g, lambda, d, rule, |t| match sphere_kernel_average(lambda, d, r2 * t) {
        Ok(x) => C64::new(x, 0.0),
        Err(e) => {
            err = Some(e);
            C64::new(0.0, 0.0)
        }
    });
    if let Some(e) = err {
        return Err(e);
    }
    Ok(v? * (c * c * libm::pow(1.0 - r2, lambda)))
}

/// Berezin transform `B_λφ(z) = ⟨k_z, T_φ k_z⟩/⟨k_z, k_z⟩` of a mixed
/// polynomial, valid for every `λ > 0`:
/// `(1−|z|²)^λ Σ c_{a,b} Σ_m ‖z^{m+a}‖² z^{m+a−b} z̄^m / (‖z^{m+a−b}‖² ‖z^m‖²)`,
/// summed shell by shell in `|m|` until the shells stop contributing.
pub fn berezin_series(p: &MixedPoly, z: &BallPoint, params: &SpaceParams) -> Result<C64> {
    let d = params.d();
    let coords = z.coords();
    let mut total = C64::new(0.0, 0.0);
    let mut quiet = 0;
    let mut shell = alloc::vec::Vec::new();
    for k in 0..MAX_SHELLS {
        shell.clear();
        enumerate_shell(d, k, &mut shell);
        let mut s = C64::new(0.0, 0.0);
        let mut scale = 0.0f64;
        for m in &shell {
            let zbar_m = monomial(m, coords).conj();
            let nm = params.monomial_norm_sq(m);
            for ((a, b), c) in p.terms() {
                let top = m.add(a);
                let Some(low) = top.checked_sub(b) else { continue };
                let coef = params.monomial_norm_sq(&top) / (params.monomial_norm_sq(&low) * nm);
                let term = c * coef * monomial(&low, coords) * zbar_m;
                scale = scale.max(term.norm());
                s += term;
            }
        }
        total += s;
        if scale <= 1e-17 * total.norm().max(f64::MIN_POSITIVE) {
            quiet += 1;
            if quiet >= 3 {
                return Ok(total * libm::pow(1.0 - z.norm_sq(), params.lambda()));
            }
        } else {
            quiet = 0;
        }
    }
    Err(Error::NoConvergence("Berezin series".into()))
}

fn monomial(m: &MultiIndex, z: &[C64]) -> C64 {
    m.entries()
        .iter()
        .zip(z)
        .fold(C64::new(1.0, 0.0), |acc, (&k, zj)| acc * zj.powu(k))
}
