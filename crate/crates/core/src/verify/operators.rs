//! Agreement between the Toeplitz constructions, and the Hilbert–Schmidt
//! bounds.

use crate::error::{Error, Result};
use crate::poly::{HoloPoly, MixedPoly};
use crate::quadrature::{QuadratureRule, RadialProfile, SymbolClass};
use crate::space::SpaceParams;
use crate::toeplitz::{
    hs_matrix, hs_norm_via_berezin, l1_tau_norm, radial_hs_norm_sq, radial_shell_values, toeplitz_poly_matrix,
    toeplitz_sobolev_entry, SymbolSpec,
};
use crate::C64;

use super::report::{TolerancePolicy, VerificationReport};

fn real(x: f64) -> C64 {
    C64::new(x, 0.0)
}

/// Truncated `‖T_φ‖_HS` of a radial symbol from its shell eigenvalues.
pub fn radial_hs_norm(g: &RadialProfile, params: &SpaceParams, shells: usize, rule: &QuadratureRule) -> Result<f64> {
    let values = radial_shell_values(g, params, shells, rule)?;
    Ok(libm::sqrt(radial_hs_norm_sq(&values, params.d())))
}

/// `‖T_φ‖_HS` from matrix entries (summed over `shells` shells) against
/// `⟨φ, A_λφ⟩^{1/2}`; relative tolerance 1%.
pub fn check_hs_dual(g: &RadialProfile, params: &SpaceParams, shells: usize, rule: &QuadratureRule) -> Result<VerificationReport> {
    let spec = SymbolSpec::Radial(g.clone());
    let berezin = hs_norm_via_berezin(&spec, params, rule)?;
    let entries = radial_hs_norm(g, params, shells, rule)?;
    Ok(VerificationReport::compare("hs-dual", real(entries), real(berezin), 1e-2, TolerancePolicy::Relative)
        .with_param("d", params.d())
        .with_param("lambda", params.lambda())
        .with_param("symbol", g.label())
        .with_param("shells", shells))
}

/// `‖T_φ‖_HS ≤ |c_λ| ‖φ‖_{L¹(τ)}` for an `L¹(τ)` radial symbol.
pub fn check_hs_l1_bound(g: &RadialProfile, params: &SpaceParams, shells: usize, rule: &QuadratureRule) -> Result<VerificationReport> {
    g.check_class(params.d())?;
    if g.class() != SymbolClass::L1Tau {
        return Err(Error::SymbolClass("the L1 bound needs an L1(tau) symbol".into()));
    }
    let hs = radial_hs_norm(g, params, shells, rule)?;
    let bound = params.c_lambda().abs() * l1_tau_norm(&SymbolSpec::Radial(g.clone()), params.d(), rule)?;
    Ok(VerificationReport::compare("hs-l1-bound", real(hs), real(bound), 1e-12, TolerancePolicy::AtMost)
        .with_param("d", params.d())
        .with_param("lambda", params.lambda())
        .with_param("symbol", g.label())
        .with_param("shells", shells)
        .with_param("margin", bound - hs))
}

/// At integer `λ ≤ d` the HS operator of an `L¹(τ)` symbol is exactly zero.
pub fn check_hs_zero(g: &RadialProfile, params: &SpaceParams, degree: usize, rule: &QuadratureRule) -> Result<VerificationReport> {
    if params.c_lambda() != 0.0 {
        return Err(Error::InvalidArgument("needs an integer lambda in 1..=d".into()));
    }
    let m = hs_matrix(&SymbolSpec::Radial(g.clone()), params, degree, rule)?;
    let max = m.entries().iter().map(|c| c.norm()).fold(0.0, f64::max);
    Ok(VerificationReport::compare("hs-zero", real(max), real(0.0), 0.0, TolerancePolicy::Either)
        .with_param("d", params.d())
        .with_param("lambda", params.lambda())
        .with_param("degree", degree))
}

/// The Sobolev-form entries `⟨z^l, T_φ z^m⟩` reproduce the polynomial
/// construction on every basis pair up to `degree`.
pub fn check_sobolev_poly(phi: &MixedPoly, params: &SpaceParams, degree: usize) -> Result<VerificationReport> {
    let t = toeplitz_poly_matrix(phi, params, degree);
    let spec = SymbolSpec::Mixed(phi.clone());
    let rule = QuadratureRule::default();
    let mut worst: Option<VerificationReport> = None;
    for (row, l) in t.basis().iter().enumerate() {
        for (col, m) in t.basis().iter().enumerate() {
            let f = HoloPoly::monomial(l.clone(), real(1.0));
            let g = HoloPoly::monomial(m.clone(), real(1.0));
            let raw = toeplitz_sobolev_entry(&f, &g, &spec, params, &rule)?;
            let v = raw / libm::sqrt(params.monomial_norm_sq(l) * params.monomial_norm_sq(m));
            let r = VerificationReport::compare("sobolev-poly", v, t.get(row, col), 1e-10, TolerancePolicy::Either)
                .with_param("row", row)
                .with_param("col", col);
            if worst.as_ref().is_none_or(|w| r.severity() > w.severity()) {
                worst = Some(r);
            }
        }
    }
    let r = worst.ok_or_else(|| Error::InvalidArgument("empty basis".into()))?;
    Ok(r.with_param("d", params.d())
        .with_param("lambda", params.lambda())
        .with_param("n", params.n())
        .with_param("degree", degree)
        .with_param("symbol", alloc::format!("{phi}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hs_checks_d1() {
        let rule = QuadratureRule::default();
        let g = RadialProfile::power(2.0, SymbolClass::L2Tau);
        for &lambda in &[0.8, 1.6] {
            let p = SpaceParams::new(1, lambda).unwrap();
            let r = check_hs_dual(&g, &p, 400, &rule).unwrap();
            assert!(r.pass, "{r:?}");
        }
        let g1 = RadialProfile::power(2.0, SymbolClass::L1Tau);
        for &lambda in &[0.3, 0.8, 1.6] {
            let r = check_hs_l1_bound(&g1, &SpaceParams::new(1, lambda).unwrap(), 400, &rule).unwrap();
            assert!(r.pass, "{r:?}");
        }
        let r = check_hs_zero(&g1, &SpaceParams::new(1, 1.0).unwrap(), 6, &rule).unwrap();
        assert!(r.pass && r.lhs == real(0.0));
    }

    #[test]
    fn sobolev_poly_d2() {
        let p = SpaceParams::new(2, 0.7).unwrap();
        let phi = MixedPoly::zbar(2, 0).pow(2).mul(&MixedPoly::z(2, 0).pow(2));
        let r = check_sobolev_poly(&phi, &p, 3).unwrap();
        assert!(r.pass, "{r:?}");
    }
}
