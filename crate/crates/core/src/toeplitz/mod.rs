//! Toeplitz operators `T_φ` on `H(B^d, λ)` and the Berezin transform.
//!
//! Matrices are always expressed in the normalized monomial basis
//! `e_m = z^m/‖z^m‖` truncated at total degree `M`, in graded-lex order.

mod berezin;
mod exact;
mod hs;
mod matrix;
mod sobolev;
mod symbol;

pub use crate::quadrature::SymbolClass;
pub use berezin::{berezin_kernel, berezin_series, berezin_transform, radial_berezin, sphere_kernel_average};
pub use exact::{mult_norm_sq_formula, multiplication_matrix, toeplitz_poly_matrix};
pub use hs::{
    hs_matrix, hs_norm_via_berezin, hs_norm_via_entries, l1_tau_norm, radial_hs_norm_sq, radial_shell_values,
};
pub use matrix::{OperatorMatrix, TruncationReport};
pub use sobolev::{
    expanded_entry_exact, generic_entry, toeplitz_sobolev_entry, toeplitz_sobolev_matrix, SobolevExpansion,
    SobolevTerm,
};
pub use symbol::{Evaluable, GenericSymbol, SymbolSpec};
