//! Executable checks of the identities, inequalities and counterexamples
//! of the theory, each returning a [`VerificationReport`].
//!
//! Checks compare a left and right side under a per-identity
//! [`TolerancePolicy`]; the policy is recorded in the report notes. The
//! [`suite`] runs them over a `(d, λ)` grid.

mod counterexamples;
mod identities;
mod laplace;
mod operators;
mod report;
pub mod suite;

pub use counterexamples::{
    check_mult_norm, check_norm_growth, counterexample_negativity, counterexample_norm_growth, growth_product,
};
pub use identities::{
    check_berezin_constant, check_invariance, check_kernel_bound, check_kernel_series, check_monomial_quadrature,
    check_parts_lemma, check_product_bound, check_shift1, check_shift2n, check_shift_chain, check_tzm,
    check_weight_recursion, PartsVariant,
};
pub use laplace::{check_laplace_identity, fd_hyperbolic_laplacian, laplace_rhs, LaplaceForm, LAPLACE_TOLERANCE};
pub use operators::{check_hs_dual, check_hs_l1_bound, check_hs_zero, check_sobolev_poly, radial_hs_norm};
pub use report::{worst_of, Param, TolerancePolicy, VerificationReport};
pub use suite::{plan, run_job, run_suite, SuiteConfig, SuiteJob};
