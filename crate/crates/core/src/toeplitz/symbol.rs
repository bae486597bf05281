//! Symbols: mixed polynomials, radial profiles and generic evaluables.

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::poly::MixedPoly;
use crate::quadrature::{RadialProfile, SymbolClass};
use crate::C64;

/// A function on the ball, shareable across threads.
pub type Evaluable = Arc<dyn Fn(&[C64]) -> C64 + Send + Sync>;

/// A symbol given only by point evaluation.
///
/// `derivatives[k][l]` evaluates `N̄^k N^l φ`; the Sobolev-form
/// construction of order `n` needs all `0 ≤ k, l ≤ n`.
#[derive(Clone)]
pub struct GenericSymbol {
    label: String,
    class: SymbolClass,
    eval: Evaluable,
    derivatives: Vec<Vec<Evaluable>>,
}

impl GenericSymbol {
    pub fn new(
        label: impl Into<String>,
        class: SymbolClass,
        eval: impl Fn(&[C64]) -> C64 + Send + Sync + 'static,
    ) -> Self {
        GenericSymbol {
            label: label.into(),
            class,
            eval: Arc::new(eval),
            derivatives: Vec::new(),
        }
    }

    /// Attach `N̄^k N^l φ` evaluables, `table[k][l]`, square of side `n + 1`.
    pub fn with_derivatives(mut self, table: Vec<Vec<Evaluable>>) -> Self {
        self.derivatives = table;
        self
    }

    /// A mixed polynomial seen only through evaluation, with exact
    /// derivative evaluables up to order `n`.
    pub fn from_mixed(p: &MixedPoly, n: usize) -> Self {
        let mut table = Vec::with_capacity(n + 1);
        let mut row_base = p.clone();
        for _k in 0..=n {
            let mut row: Vec<Evaluable> = Vec::with_capacity(n + 1);
            let mut q = row_base.clone();
            for _l in 0..=n {
                let qq = q.clone();
                row.push(Arc::new(move |z: &[C64]| qq.eval(z)));
                q = q.number_operator();
            }
            table.push(row);
            row_base = row_base.number_operator_bar();
        }
        let pp = p.clone();
        GenericSymbol::new("mixed", SymbolClass::SmoothBounded, move |z| pp.eval(z)).with_derivatives(table)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn class(&self) -> SymbolClass {
        self.class
    }

    pub fn eval(&self, z: &[C64]) -> C64 {
        (self.eval)(z)
    }

    /// `N̄^k N^l φ` at `z`.
    pub fn derivative(&self, k: usize, l: usize) -> Option<&Evaluable> {
        self.derivatives.get(k).and_then(|row| row.get(l))
    }

    /// Largest `n` with the full `(n+1) × (n+1)` derivative table present.
    pub fn derivative_order(&self) -> Option<usize> {
        let side = self.derivatives.len();
        if side == 0 || self.derivatives.iter().any(|r| r.len() < side) {
            return None;
        }
        Some(side - 1)
    }
}

impl fmt::Debug for GenericSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GenericSymbol")
            .field("label", &self.label)
            .field("class", &self.class)
            .field("derivative_order", &self.derivative_order())
            .finish()
    }
}

/// The symbol of a Toeplitz operator.
#[derive(Clone, Debug)]
pub enum SymbolSpec {
    Mixed(MixedPoly),
    Radial(RadialProfile),
    Generic(GenericSymbol),
}

impl SymbolSpec {
    pub fn class(&self) -> SymbolClass {
        match self {
            SymbolSpec::Mixed(_) => SymbolClass::SmoothBounded,
            SymbolSpec::Radial(g) => g.class(),
            SymbolSpec::Generic(g) => g.class(),
        }
    }

    pub fn eval(&self, z: &[C64]) -> C64 {
        match self {
            SymbolSpec::Mixed(p) => p.eval(z),
            SymbolSpec::Radial(g) => g.eval(z.iter().map(|c| c.norm_sqr()).sum()),
            SymbolSpec::Generic(g) => g.eval(z),
        }
    }

    /// Check that `λ` is admissible for the Hilbert–Schmidt construction:
    /// `λ > d/2` for `L²(τ)`, `λ > 0` for `L¹(τ)`, and `λ > d` for bounded
    /// symbols (where the integral is the ordinary Toeplitz operator).
    pub fn check_hs_lambda(&self, d: usize, lambda: f64) -> Result<()> {
        if let SymbolSpec::Radial(g) = self {
            g.check_class(d)?;
        }
        let df = d as f64;
        let ok = match self.class() {
            SymbolClass::L2Tau => lambda > df / 2.0,
            SymbolClass::L1Tau => lambda > 0.0,
            SymbolClass::Bounded | SymbolClass::SmoothBounded => lambda > df,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::SymbolClass(alloc::format!(
                "{} symbols need {} (got lambda = {lambda}, d = {d})",
                self.class(),
                match self.class() {
                    SymbolClass::L2Tau => "lambda > d/2",
                    SymbolClass::L1Tau => "lambda > 0",
                    _ => "lambda > d",
                }
            )))
        }
    }
}

impl From<MixedPoly> for SymbolSpec {
    fn from(p: MixedPoly) -> Self {
        SymbolSpec::Mixed(p)
    }
}

impl From<RadialProfile> for SymbolSpec {
    fn from(g: RadialProfile) -> Self {
        SymbolSpec::Radial(g)
    }
}

impl From<GenericSymbol> for SymbolSpec {
    fn from(g: GenericSymbol) -> Self {
        SymbolSpec::Generic(g)
    }
}
