//! Integration over `B^d` against `(1−|z|²)^{w−d−1} dz`.
//!
//! Polar coordinates with `t = |z|²` give
//! `∫_{B^d} F dz = π^d/(d−1)! ∫_0^1 t^{d−1} ⟨F⟩_{√t S} dt`, where `⟨·⟩` is
//! the normalized sphere average. Polynomials integrate exactly through
//! sphere moments and Beta integrals; radial profiles go through a
//! Gauss–Jacobi rule that absorbs the weight; everything else is Monte Carlo.

mod gauss;
pub mod mc;

use alloc::string::String;
use alloc::sync::Arc;
use core::fmt;

pub use gauss::GaussJacobi;
pub use mc::integrate_ball_mc;

use crate::error::{Error, Result};
use crate::multi_index::MultiIndex;
use crate::poly::MixedPoly;
use crate::special::{factorial, ln_gamma};
use crate::C64;

/// Default number of radial Gauss–Jacobi nodes.
pub const DEFAULT_RADIAL_NODES: usize = 64;

/// `π^d/(d−1)!`, the polar-coordinate factor in `t = |z|²`.
pub fn polar_factor(d: usize) -> f64 {
    libm::pow(core::f64::consts::PI, d as f64) / factorial(d as u32 - 1)
}

/// `∫_{S^{2d−1}} ζ^a ζ̄^b dσ(ζ)` for the normalized surface measure.
pub fn sphere_monomial_integral(a: &MultiIndex, b: &MultiIndex, d: usize) -> f64 {
    if a != b {
        return 0.0;
    }
    factorial(d as u32 - 1) * a.factorial() / factorial(d as u32 - 1 + a.degree())
}

/// `∫_0^1 t^{k+d−1} (1−t)^α dt = B(k+d, α+1)`, by log-gamma.
pub fn radial_moment(k: u32, alpha: f64, d: usize) -> Result<f64> {
    if !(alpha > -1.0) {
        return Err(Error::DivergentWeight { exponent: alpha });
    }
    let a = (k as usize + d) as f64;
    let b = alpha + 1.0;
    Ok(libm::exp(ln_gamma(a) + ln_gamma(b) - ln_gamma(a + b)))
}

/// `∫_{B^d} p(z) (1−|z|²)^{w−d−1} dz`, exact up to rounding.
///
/// Requires `w > d`: below that even the constant term diverges, and
/// the error reports the radial exponent `w − d − 1`.
pub fn integrate_ball_exact(p: &MixedPoly, weight_exponent: f64, d: usize) -> Result<C64> {
    if p.dim() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: p.dim(),
        });
    }
    let alpha = weight_exponent - d as f64 - 1.0;
    if p.is_zero() {
        return Ok(C64::new(0.0, 0.0));
    }
    if !(alpha > -1.0) {
        return Err(Error::DivergentWeight { exponent: alpha });
    }
    let polar = polar_factor(d);
    let mut acc = C64::new(0.0, 0.0);
    for ((a, b), c) in p.terms() {
        if a != b {
            continue;
        }
        acc += c * (polar * sphere_monomial_integral(a, b, d) * radial_moment(a.degree(), alpha, d)?);
    }
    Ok(acc)
}

/// Integrability class of a symbol, as declared by the caller.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SymbolClass {
    /// `φ ∈ L¹(B^d, τ)`.
    L1Tau,
    /// `φ ∈ L²(B^d, τ)`.
    L2Tau,
    /// `φ` bounded.
    Bounded,
    /// `N̄^k N^l φ` bounded for `0 ≤ k, l ≤ n`.
    SmoothBounded,
}

impl fmt::Display for SymbolClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SymbolClass::L1Tau => "L1(tau)",
            SymbolClass::L2Tau => "L2(tau)",
            SymbolClass::Bounded => "bounded",
            SymbolClass::SmoothBounded => "smooth-bounded",
        })
    }
}

/// A radial symbol `φ(z) = g(|z|²)` with `g(t) = (1−t)^S h(t)`.
///
/// `h` is taken to be smooth and non-vanishing at `t = 1`, so the decay
/// exponent `S` alone decides integrability: `L¹(τ)` iff `S > d`,
/// `L²(τ)` iff `2S > d`, bounded iff `S ≥ 0`. The Gauss–Jacobi weight
/// carries `(1−t)^S`, so only `h` is sampled.
#[derive(Clone)]
pub struct RadialProfile {
    decay: f64,
    class: SymbolClass,
    label: String,
    h: Arc<dyn Fn(f64) -> C64 + Send + Sync>,
}

impl RadialProfile {
    pub fn new(
        label: impl Into<String>,
        decay: f64,
        class: SymbolClass,
        h: impl Fn(f64) -> C64 + Send + Sync + 'static,
    ) -> Self {
        RadialProfile {
            decay,
            class,
            label: label.into(),
            h: Arc::new(h),
        }
    }

    /// `g(t) = (1−t)^S`.
    pub fn power(decay: f64, class: SymbolClass) -> Self {
        Self::new(alloc::format!("(1-t)^{decay}"), decay, class, |_| C64::new(1.0, 0.0))
    }

    /// `g ≡ 1`.
    pub fn constant() -> Self {
        Self::new("1", 0.0, SymbolClass::Bounded, |_| C64::new(1.0, 0.0))
    }

    pub fn decay(&self) -> f64 {
        self.decay
    }

    pub fn class(&self) -> SymbolClass {
        self.class
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// The smooth factor `h(t)`.
    pub fn smooth_part(&self, t: f64) -> C64 {
        (self.h)(t)
    }

    /// `g(t)`.
    pub fn eval(&self, t: f64) -> C64 {
        (self.h)(t) * libm::pow(1.0 - t, self.decay)
    }

    /// Whether the declared class is consistent with the decay exponent.
    pub fn check_class(&self, d: usize) -> Result<()> {
        let df = d as f64;
        let ok = match self.class {
            SymbolClass::L1Tau => self.decay > df,
            SymbolClass::L2Tau => 2.0 * self.decay > df,
            SymbolClass::Bounded | SymbolClass::SmoothBounded => self.decay >= 0.0,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::SymbolClass(alloc::format!(
                "profile {} with decay {} is not in {} for d = {}",
                self.label,
                self.decay,
                self.class,
                d
            )))
        }
    }
}

impl fmt::Debug for RadialProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RadialProfile")
            .field("label", &self.label)
            .field("decay", &self.decay)
            .field("class", &self.class)
            .finish()
    }
}

/// How the sphere part of an integral is handled.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SphereRule {
    /// Exact monomial moments (polynomial and radial integrands).
    ExactMonomial,
    /// Monte Carlo with `samples` antithetic pairs from `seed`.
    MonteCarlo { samples: usize, seed: u64 },
}

/// Quadrature settings shared by the integration routines.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuadratureRule {
    pub radial_nodes: usize,
    pub sphere: SphereRule,
}

impl Default for QuadratureRule {
    fn default() -> Self {
        QuadratureRule {
            radial_nodes: DEFAULT_RADIAL_NODES,
            sphere: SphereRule::ExactMonomial,
        }
    }
}

impl QuadratureRule {
    pub fn monte_carlo(samples: usize, seed: u64) -> Self {
        QuadratureRule {
            radial_nodes: DEFAULT_RADIAL_NODES,
            sphere: SphereRule::MonteCarlo { samples, seed },
        }
    }

    /// Polynomial degree in `t` integrated exactly against the Jacobi
    /// weight, when the sphere part is exact too.
    pub fn exact_degree(&self) -> Option<usize> {
        match self.sphere {
            SphereRule::ExactMonomial => Some(2 * self.radial_nodes - 1),
            SphereRule::MonteCarlo { .. } => None,
        }
    }

    /// Samples and seed for Monte Carlo paths (a default when exact).
    pub fn mc_settings(&self) -> (usize, u64) {
        match self.sphere {
            SphereRule::MonteCarlo { samples, seed } => (samples, seed),
            SphereRule::ExactMonomial => (20_000, 0),
        }
    }

    /// Gauss–Jacobi rule for `(1−t)^α t^{d−1}`.
    pub fn radial_rule(&self, alpha: f64, d: usize) -> Result<GaussJacobi> {
        GaussJacobi::new(self.radial_nodes, alpha, d as f64 - 1.0)
    }
}

/// `∫_{B^d} g(|z|²)(1−|z|²)^{w−d−1} dz
///  = π^d/(d−1)! ∫_0^1 g(t) t^{d−1} (1−t)^{w−d−1} dt`.
pub fn integrate_radial_symbol(
    g: &RadialProfile,
    weight_exponent: f64,
    d: usize,
    rule: &QuadratureRule,
) -> Result<C64> {
    integrate_radial_times(g, weight_exponent, d, rule, |_| C64::new(1.0, 0.0))
}

/// As [`integrate_radial_symbol`] with an extra smooth factor `k(t)`.
pub fn integrate_radial_times(
    g: &RadialProfile,
    weight_exponent: f64,
    d: usize,
    rule: &QuadratureRule,
    mut k: impl FnMut(f64) -> C64,
) -> Result<C64> {
    let alpha = weight_exponent - d as f64 - 1.0 + g.decay();
    let gj = rule.radial_rule(alpha, d)?;
    let v: C64 = gj.integrate(|t| g.smooth_part(t) * k(t));
    Ok(v * polar_factor(d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multi_index::enumerate_basis;
    use crate::special::{beta, c_lambda};

    fn mi(e: &[u32]) -> MultiIndex {
        MultiIndex::new(e.to_vec())
    }

    #[test]
    fn sphere_examples() {
        assert_eq!(sphere_monomial_integral(&mi(&[1, 0]), &mi(&[0, 1]), 2), 0.0);
        assert_eq!(sphere_monomial_integral(&mi(&[0, 0]), &mi(&[0, 0]), 2), 1.0);
        assert_eq!(sphere_monomial_integral(&mi(&[1, 0]), &mi(&[1, 0]), 2), 0.5);
    }

    #[test]
    fn sphere_moment_against_monte_carlo() {
        use mc::{mc_mean, BallSampler};
        let s = BallSampler::new(2, 3.0).unwrap();
        let (m, _) = mc_mean(1_000_000, 1, |rng| {
            let z = s.direction(rng);
            Ok(C64::new(z[0].norm_sqr(), 0.0))
        })
        .unwrap();
        assert!((m.re - 0.5).abs() / 0.5 < 1e-2);
    }

    #[test]
    fn radial_moment_examples() {
        assert!((radial_moment(0, 0.0, 1).unwrap() - 1.0).abs() < 1e-15);
        assert!((radial_moment(1, 1.0, 1).unwrap() - 1.0 / 6.0).abs() < 1e-15);
        assert!(radial_moment(0, -1.0, 1).is_err());
    }

    #[test]
    fn radial_moment_against_adaptive_simpson() {
        // ∫ t^3 (1−t)^{0.5} dt; substitute 1−t = u² to remove the endpoint
        // singularity, then adaptive Simpson.
        fn simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, eps: f64, whole: f64, depth: u32) -> f64 {
            let m = 0.5 * (a + b);
            let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
            let h = (b - a) / 12.0;
            let left = h * (f(a) + 4.0 * f(lm) + f(m));
            let right = h * (f(m) + 4.0 * f(rm) + f(b));
            if depth == 0 || (left + right - whole).abs() <= 15.0 * eps {
                left + right + (left + right - whole) / 15.0
            } else {
                simpson(f, a, m, eps / 2.0, left, depth - 1) + simpson(f, m, b, eps / 2.0, right, depth - 1)
            }
        }
        let f = |u: f64| {
            let t = 1.0 - u * u;
            2.0 * u * t.powi(3) * u
        };
        let whole = (f(0.0) + 4.0 * f(0.5) + f(1.0)) / 6.0;
        let oracle = simpson(&f, 0.0, 1.0, 1e-14, whole, 40);
        let v = radial_moment(2, 0.5, 2).unwrap();
        assert!((v - oracle).abs() / oracle < 1e-10);
        assert!((v - beta(4.0, 1.5)).abs() / v < 1e-14);
    }

    #[test]
    fn exact_integration_examples() {
        for d in 1..=3usize {
            let lambda = d as f64 + 0.8;
            let c = c_lambda(d, lambda);
            let one = integrate_ball_exact(&MixedPoly::one(d), lambda, d).unwrap();
            assert!((one * c - 1.0).norm() < 1e-13);
            let odd = integrate_ball_exact(&MixedPoly::z(d, 0), lambda, d).unwrap();
            assert_eq!(odd, C64::new(0.0, 0.0));
        }
        let v = integrate_ball_exact(&MixedPoly::abs2(1), 3.0, 1).unwrap() * c_lambda(1, 3.0);
        assert!((v.re - 1.0 / 3.0).abs() < 1e-15);
        assert!(matches!(
            integrate_ball_exact(&MixedPoly::one(2), 2.0, 2),
            Err(Error::DivergentWeight { .. })
        ));
    }

    #[test]
    fn radial_reduction_matches_exact_on_polynomials() {
        // g(t) = 1 + 2t − t³ as a profile and as a mixed polynomial.
        for d in 1..=3usize {
            let w = d as f64 + 1.3;
            let prof = RadialProfile::new("poly", 0.0, SymbolClass::Bounded, |t| {
                C64::new(1.0 + 2.0 * t - t * t * t, 0.0)
            });
            let p = MixedPoly::one(d)
                .add(&MixedPoly::abs2(d).scale(C64::new(2.0, 0.0)))
                .sub(&MixedPoly::abs2_pow(d, 3));
            let a = integrate_radial_symbol(&prof, w, d, &QuadratureRule::default()).unwrap();
            let b = integrate_ball_exact(&p, w, d).unwrap();
            assert!((a - b).norm() <= 1e-10 * b.norm(), "d={d}");
        }
    }

    #[test]
    fn radial_examples() {
        let rule = QuadratureRule::default();
        let lambda = 3.0;
        let one = integrate_radial_symbol(&RadialProfile::constant(), lambda, 1, &rule).unwrap();
        assert!((one.re - 1.0 / c_lambda(1, lambda)).abs() < 1e-13);
        // g(t) = (1−t)^s at weight λ equals the constant at weight λ+s.
        let s = 1.7;
        let g = RadialProfile::power(s, SymbolClass::Bounded);
        let v = integrate_radial_symbol(&g, lambda, 2, &rule).unwrap();
        assert!((v.re - 1.0 / c_lambda(2, lambda + s)).abs() < 1e-12 / c_lambda(2, lambda + s));
        let t = RadialProfile::new("t", 0.0, SymbolClass::Bounded, |t| C64::new(t, 0.0));
        let v = integrate_radial_symbol(&t, 3.0, 1, &rule).unwrap();
        assert!((v.re - (1.0 / 3.0) / c_lambda(1, 3.0)).abs() < 1e-13);
    }

    #[test]
    fn monomial_oracle_agreement() {
        for d in 1..=3usize {
            for &lambda in &[d as f64 + 0.5, d as f64 + 1.0, d as f64 + 2.7] {
                let c = c_lambda(d, lambda);
                for m in enumerate_basis(d, 8) {
                    let p = MixedPoly::monomial(m.clone(), m.clone(), C64::new(1.0, 0.0));
                    let q = integrate_ball_exact(&p, lambda, d).unwrap().re * c;
                    let closed = m.factorial() * crate::special::gamma_ratio(lambda, m.degree() as usize);
                    assert!((q - closed).abs() <= 1e-10 * closed);
                }
            }
        }
    }

    #[test]
    fn class_consistency() {
        assert!(RadialProfile::power(2.0, SymbolClass::L1Tau).check_class(1).is_ok());
        assert!(RadialProfile::power(1.0, SymbolClass::L1Tau).check_class(1).is_err());
        assert!(RadialProfile::power(0.6, SymbolClass::L2Tau).check_class(1).is_ok());
        assert!(RadialProfile::constant().check_class(3).is_ok());
    }
}
