use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::C64;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// `λ` must be a finite positive number.
    InvalidLambda(f64),
    /// `d` must be at least one.
    InvalidDimension(usize),
    /// The requested Sobolev order does not satisfy `λ + 2n > d`.
    InvalidOrder { lambda: f64, d: usize, n: usize },
    /// A point was not strictly inside the unit ball.
    OutsideBall { norm_sq: f64 },
    /// Two objects of different dimensions were combined.
    DimensionMismatch { expected: usize, found: usize },
    /// A radial Beta integral `∫ t^a (1−t)^b dt` with `b ≤ −1`.
    DivergentWeight { exponent: f64 },
    /// A Monte Carlo sample produced a non-finite value.
    NonFiniteSample { point: Vec<C64> },
    /// The symbol class is not admissible for the requested construction.
    SymbolClass(String),
    /// Derivative evaluables `N̄^k N^l φ` are required but were not supplied.
    MissingDerivatives { needed: usize },
    /// A series or iteration failed to converge.
    NoConvergence(String),
    /// Generic invalid argument.
    InvalidArgument(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidLambda(l) => write!(f, "lambda must be positive (got {l})"),
            Error::InvalidDimension(d) => write!(f, "dimension must be at least 1 (got {d})"),
            Error::InvalidOrder { lambda, d, n } => {
                write!(f, "Sobolev order n={n} does not satisfy lambda + 2n > d (lambda={lambda}, d={d})")
            }
            Error::OutsideBall { norm_sq } => {
                write!(f, "point is not inside the open unit ball (|z|^2 = {norm_sq})")
            }
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::DivergentWeight { exponent } => write!(
                f,
                "radial weight (1-t)^{exponent} is not integrable at the boundary"
            ),
            Error::NonFiniteSample { point } => {
                write!(f, "non-finite integrand value at point {point:?}")
            }
            Error::SymbolClass(msg) => write!(f, "inadmissible symbol: {msg}"),
            Error::MissingDerivatives { needed } => write!(
                f,
                "generic symbol needs derivative evaluables N̄^k N^l φ for 0 <= k,l <= {needed}"
            ),
            Error::NoConvergence(msg) => write!(f, "no convergence: {msg}"),
            Error::InvalidArgument(msg) => write!(f, "invalid argument: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
