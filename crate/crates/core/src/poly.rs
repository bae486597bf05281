//! Finite monomial expansions: holomorphic polynomials `Σ c_m z^m` and mixed
//! polynomials `Σ c_{a,b} z^a z̄^b`.

use alloc::collections::BTreeMap;
use core::fmt;
use alloc::vec::Vec;

use crate::multi_index::{enumerate_shell, MultiIndex};
use crate::C64;

fn zero() -> C64 {
    C64::new(0.0, 0.0)
}

fn monomial_value(m: &MultiIndex, z: &[C64]) -> C64 {
    m.entries()
        .iter()
        .zip(z)
        .fold(C64::new(1.0, 0.0), |acc, (&k, zj)| acc * zj.powu(k))
}

/// Holomorphic polynomial on `C^d`. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq)]
pub struct HoloPoly {
    d: usize,
    coeffs: BTreeMap<MultiIndex, C64>,
}

impl HoloPoly {
    pub fn zero(d: usize) -> Self {
        HoloPoly {
            d,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn constant(d: usize, c: C64) -> Self {
        Self::monomial(MultiIndex::zero(d), c)
    }

    pub fn one(d: usize) -> Self {
        Self::constant(d, C64::new(1.0, 0.0))
    }

    pub fn monomial(m: MultiIndex, c: C64) -> Self {
        let mut p = Self::zero(m.dim());
        p.add_term(m, c);
        p
    }

    /// The coordinate function `z_j` (zero-based `j`).
    pub fn coordinate(d: usize, j: usize) -> Self {
        Self::monomial(MultiIndex::unit(d, j), C64::new(1.0, 0.0))
    }

    pub fn from_terms<I: IntoIterator<Item = (MultiIndex, C64)>>(d: usize, terms: I) -> Self {
        let mut p = Self::zero(d);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: MultiIndex, c: C64) {
        assert_eq!(m.dim(), self.d, "multi-index dimension");
        let entry = self.coeffs.entry(m.clone()).or_insert_with(zero);
        *entry += c;
        if *entry == zero() {
            self.coeffs.remove(&m);
        }
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Highest total degree with a nonzero coefficient; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().map(MultiIndex::degree).max()
    }

    pub fn coeff(&self, m: &MultiIndex) -> C64 {
        self.coeffs.get(m).copied().unwrap_or_else(zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &C64)> {
        self.coeffs.iter()
    }

    pub fn eval(&self, z: &[C64]) -> C64 {
        self.coeffs
            .iter()
            .map(|(m, c)| c * monomial_value(m, z))
            .sum()
    }

    /// Apply a scalar function of `|m|` to every coefficient.
    pub fn map_by_degree(&self, f: impl Fn(u32) -> f64) -> HoloPoly {
        HoloPoly::from_terms(
            self.d,
            self.coeffs
                .iter()
                .map(|(m, c)| (m.clone(), c * f(m.degree()))),
        )
    }

    /// The number operator `N = Σ z_j ∂/∂z_j`: `c_m ↦ |m| c_m`.
    pub fn number_operator(&self) -> HoloPoly {
        self.map_by_degree(|k| k as f64)
    }

    /// `N^p` applied to the polynomial.
    pub fn number_operator_pow(&self, p: u32) -> HoloPoly {
        self.map_by_degree(|k| libm::pow(k as f64, p as f64))
    }

    pub fn scale(&self, s: C64) -> HoloPoly {
        HoloPoly::from_terms(self.d, self.coeffs.iter().map(|(m, c)| (m.clone(), c * s)))
    }

    pub fn add(&self, other: &HoloPoly) -> HoloPoly {
        let mut out = self.clone();
        for (m, c) in &other.coeffs {
            out.add_term(m.clone(), *c);
        }
        out
    }

    pub fn mul(&self, other: &HoloPoly) -> HoloPoly {
        let mut out = HoloPoly::zero(self.d);
        for (a, ca) in &self.coeffs {
            for (b, cb) in &other.coeffs {
                out.add_term(a.add(b), ca * cb);
            }
        }
        out
    }

    /// The polynomial viewed as a mixed polynomial (no `z̄` factors).
    pub fn to_mixed(&self) -> MixedPoly {
        MixedPoly::from_terms(
            self.d,
            self.coeffs
                .iter()
                .map(|(m, c)| ((m.clone(), MultiIndex::zero(self.d)), *c)),
        )
    }

    /// `conj(f)` as a mixed polynomial in `z̄`.
    pub fn conj_mixed(&self) -> MixedPoly {
        MixedPoly::from_terms(
            self.d,
            self.coeffs
                .iter()
                .map(|(m, c)| ((MultiIndex::zero(self.d), m.clone()), c.conj())),
        )
    }
}

/// Mixed polynomial `Σ c_{a,b} z^a z̄^b`, keyed by `(a, b)`.
#[derive(Clone, Debug, PartialEq)]
pub struct MixedPoly {
    d: usize,
    coeffs: BTreeMap<(MultiIndex, MultiIndex), C64>,
}

impl MixedPoly {
    pub fn zero(d: usize) -> Self {
        MixedPoly {
            d,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn constant(d: usize, c: C64) -> Self {
        Self::monomial(MultiIndex::zero(d), MultiIndex::zero(d), c)
    }

    pub fn one(d: usize) -> Self {
        Self::constant(d, C64::new(1.0, 0.0))
    }

    /// `c · z^a z̄^b`.
    pub fn monomial(a: MultiIndex, b: MultiIndex, c: C64) -> Self {
        let mut p = Self::zero(a.dim());
        p.add_term(a, b, c);
        p
    }

    /// `z_j` (zero-based).
    pub fn z(d: usize, j: usize) -> Self {
        Self::monomial(MultiIndex::unit(d, j), MultiIndex::zero(d), C64::new(1.0, 0.0))
    }

    /// `z̄_j` (zero-based).
    pub fn zbar(d: usize, j: usize) -> Self {
        Self::monomial(MultiIndex::zero(d), MultiIndex::unit(d, j), C64::new(1.0, 0.0))
    }

    /// `|z|² = Σ z_j z̄_j`.
    pub fn abs2(d: usize) -> Self {
        let mut p = Self::zero(d);
        for j in 0..d {
            p.add_term(MultiIndex::unit(d, j), MultiIndex::unit(d, j), C64::new(1.0, 0.0));
        }
        p
    }

    /// `(|z|²)^k` by the multinomial expansion `Σ_{|i|=k} k!/i! z̄^i z^i`.
    pub fn abs2_pow(d: usize, k: u32) -> Self {
        let mut shell = Vec::new();
        enumerate_shell(d, k, &mut shell);
        let kf = crate::special::factorial(k);
        MixedPoly::from_terms(
            d,
            shell
                .into_iter()
                .map(|i| ((i.clone(), i.clone()), C64::new(kf / i.factorial(), 0.0))),
        )
    }

    pub fn from_terms<I>(d: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = ((MultiIndex, MultiIndex), C64)>,
    {
        let mut p = Self::zero(d);
        for ((a, b), c) in terms {
            p.add_term(a, b, c);
        }
        p
    }

    pub fn add_term(&mut self, a: MultiIndex, b: MultiIndex, c: C64) {
        assert!(a.dim() == self.d && b.dim() == self.d, "multi-index dimension");
        let key = (a, b);
        let entry = self.coeffs.entry(key.clone()).or_insert_with(zero);
        *entry += c;
        if *entry == zero() {
            self.coeffs.remove(&key);
        }
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(MultiIndex, MultiIndex), &C64)> {
        self.coeffs.iter()
    }

    pub fn coeff(&self, a: &MultiIndex, b: &MultiIndex) -> C64 {
        self.coeffs
            .get(&(a.clone(), b.clone()))
            .copied()
            .unwrap_or_else(zero)
    }

    /// Largest `|a| + |b|`; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().map(|(a, b)| a.degree() + b.degree()).max()
    }

    /// True when no term carries a `z̄` factor.
    pub fn is_holomorphic(&self) -> bool {
        self.coeffs.keys().all(|(_, b)| b.degree() == 0)
    }

    /// The holomorphic part if the polynomial has no `z̄` factors.
    pub fn to_holo(&self) -> Option<HoloPoly> {
        if !self.is_holomorphic() {
            return None;
        }
        Some(HoloPoly::from_terms(
            self.d,
            self.coeffs.iter().map(|((a, _), c)| (a.clone(), *c)),
        ))
    }

    pub fn eval(&self, z: &[C64]) -> C64 {
        let zc: Vec<C64> = z.iter().map(|v| v.conj()).collect();
        self.coeffs
            .iter()
            .map(|((a, b), c)| c * monomial_value(a, z) * monomial_value(b, &zc))
            .sum()
    }

    /// Complex conjugate: `(a, b) ↦ (b, a)` with conjugated coefficients.
    pub fn conj(&self) -> MixedPoly {
        MixedPoly::from_terms(
            self.d,
            self.coeffs
                .iter()
                .map(|((a, b), c)| ((b.clone(), a.clone()), c.conj())),
        )
    }

    /// True when the polynomial is real-valued on `C^d`, i.e. its
    /// coefficients are Hermitian-symmetric under `(a, b) ↦ (b, a)`.
    pub fn is_real_valued(&self, tol: f64) -> bool {
        self.coeffs
            .iter()
            .all(|((a, b), c)| (self.coeff(b, a).conj() - c).norm() <= tol)
    }

    pub fn scale(&self, s: C64) -> MixedPoly {
        MixedPoly::from_terms(
            self.d,
            self.coeffs.iter().map(|(k, c)| (k.clone(), c * s)),
        )
    }

    pub fn add(&self, other: &MixedPoly) -> MixedPoly {
        let mut out = self.clone();
        for ((a, b), c) in &other.coeffs {
            out.add_term(a.clone(), b.clone(), *c);
        }
        out
    }

    pub fn sub(&self, other: &MixedPoly) -> MixedPoly {
        self.add(&other.scale(C64::new(-1.0, 0.0)))
    }

    pub fn mul(&self, other: &MixedPoly) -> MixedPoly {
        let mut out = MixedPoly::zero(self.d);
        for ((a1, b1), c1) in &self.coeffs {
            for ((a2, b2), c2) in &other.coeffs {
                out.add_term(a1.add(a2), b1.add(b2), c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> MixedPoly {
        (0..k).fold(MixedPoly::one(self.d), |acc, _| acc.mul(self))
    }

    /// Scale every coefficient by a function of `(|a|, |b|)`.
    pub fn map_by_degrees(&self, f: impl Fn(u32, u32) -> f64) -> MixedPoly {
        MixedPoly::from_terms(
            self.d,
            self.coeffs
                .iter()
                .map(|((a, b), c)| ((a.clone(), b.clone()), c * f(a.degree(), b.degree()))),
        )
    }

    /// `N` acting on `z^a z̄^b` scales by `|a|`.
    pub fn number_operator(&self) -> MixedPoly {
        self.map_by_degrees(|a, _| a as f64)
    }

    /// `N̄` acting on `z^a z̄^b` scales by `|b|`.
    pub fn number_operator_bar(&self) -> MixedPoly {
        self.map_by_degrees(|_, b| b as f64)
    }
}

/// Writes a coefficient so that it reads back as a single factor.
fn write_coeff(f: &mut fmt::Formatter<'_>, c: C64) -> fmt::Result {
    match (c.re, c.im) {
        (re, 0.0) => write!(f, "{re}"),
        (0.0, im) => write!(f, "{im}*i"),
        (re, im) => write!(f, "({re} + {im}*i)"),
    }
}

fn write_factors(f: &mut fmt::Formatter<'_>, m: &MultiIndex, conj: bool) -> fmt::Result {
    for (j, &k) in m.entries().iter().enumerate() {
        if k == 0 {
            continue;
        }
        if conj {
            write!(f, "*conj(z{})", j + 1)?;
        } else {
            write!(f, "*z{}", j + 1)?;
        }
        if k > 1 {
            write!(f, "^{k}")?;
        }
    }
    Ok(())
}

/// Symbol-grammar form: terms joined by ` + `, each `coeff*z1^2*conj(z2)`.
impl fmt::Display for MixedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        for (i, ((a, b), c)) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write_coeff(f, *c)?;
            write_factors(f, a, false)?;
            write_factors(f, b, true)?;
        }
        Ok(())
    }
}

impl fmt::Display for HoloPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.to_mixed(), f)
    }
}
