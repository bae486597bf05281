//! The hyperbolic Laplacian of the Berezin kernel, by finite differences.
//!
//! `Δ = (1−|z|²) Σ_{j,k} (δ_jk − z̄_j z_k) ∂²/∂z̄_j∂z_k`, with
//! `∂²f/∂z̄_j∂z_k = ¼[f_{x_j x_k} + f_{y_j y_k} + i(f_{y_j x_k} − f_{x_j y_k})]`
//! in the real coordinates `z_j = x_j + i y_j`.

use alloc::vec::Vec;

use crate::ball::BallPoint;
use crate::error::{Error, Result};
use crate::space::SpaceParams;
use crate::toeplitz::berezin_kernel;
use crate::C64;

use super::report::{TolerancePolicy, VerificationReport};

/// Relative tolerance of the Laplacian identity.
pub const LAPLACE_TOLERANCE: f64 = 1e-3;

/// Right-hand side used for `Δ_z F_λ(z, w)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LaplaceForm {
    /// `λ(λ−d)(F_λ − F_{λ+1})`.
    Published,
    /// `λ(λ−d)F_λ − (λ−d)² F_{λ+1}`, which is what `F_λ = c_λ²[…]^λ` obeys.
    Corrected,
}

impl LaplaceForm {
    pub fn identity_id(self) -> &'static str {
        match self {
            LaplaceForm::Published => "laplace-published",
            LaplaceForm::Corrected => "laplace",
        }
    }
}

/// The chosen right-hand side at `(z, w)`.
pub fn laplace_rhs(z: &BallPoint, w: &BallPoint, lambda: f64, form: LaplaceForm) -> Result<f64> {
    let d = z.dim();
    let f0 = berezin_kernel(z, w, &SpaceParams::new(d, lambda)?);
    let f1 = berezin_kernel(z, w, &SpaceParams::new(d, lambda + 1.0)?);
    let s = lambda - d as f64;
    Ok(match form {
        LaplaceForm::Published => lambda * s * (f0 - f1),
        LaplaceForm::Corrected => lambda * s * f0 - s * s * f1,
    })
}

/// `Δf(z)` from central differences with step `h` in each real coordinate.
pub fn fd_hyperbolic_laplacian(f: &dyn Fn(&[C64]) -> f64, z: &[C64], h: f64) -> f64 {
    let d = z.len();
    // Real coordinates: index 2j is x_j, 2j+1 is y_j.
    let eval = |shifts: &[(usize, f64)]| {
        let mut p: Vec<C64> = z.to_vec();
        for &(i, s) in shifts {
            if i % 2 == 0 {
                p[i / 2].re += s;
            } else {
                p[i / 2].im += s;
            }
        }
        f(&p)
    };
    let f0 = f(z);
    let second = |a: usize, b: usize| -> f64 {
        if a == b {
            (eval(&[(a, h)]) - 2.0 * f0 + eval(&[(a, -h)])) / (h * h)
        } else {
            (eval(&[(a, h), (b, h)]) - eval(&[(a, h), (b, -h)]) - eval(&[(a, -h), (b, h)]) + eval(&[(a, -h), (b, -h)]))
                / (4.0 * h * h)
        }
    };
    let mut hess = alloc::vec![0.0; 4 * d * d];
    for a in 0..2 * d {
        for b in a..2 * d {
            let v = second(a, b);
            hess[a * 2 * d + b] = v;
            hess[b * 2 * d + a] = v;
        }
    }
    let hx = |a: usize, b: usize| hess[a * 2 * d + b];
    let norm_sq: f64 = z.iter().map(|c| c.norm_sqr()).sum();
    let mut acc = C64::new(0.0, 0.0);
    for j in 0..d {
        for k in 0..d {
            let (xj, yj, xk, yk) = (2 * j, 2 * j + 1, 2 * k, 2 * k + 1);
            let dbar_d = C64::new(hx(xj, xk) + hx(yj, yk), hx(yj, xk) - hx(xj, yk)) * 0.25;
            let delta = if j == k { 1.0 } else { 0.0 };
            acc += (C64::new(delta, 0.0) - z[j].conj() * z[k]) * dbar_d;
        }
    }
    (acc * (1.0 - norm_sq)).re
}

/// `Δ_z F_λ(z, w)` against the chosen right-hand side.
///
/// The Laplacian is Richardson-extrapolated from steps `h` and `h/2`. The
/// policy is relative only: `F_λ` carries `c_λ²`, which can be tiny, so an
/// absolute test would pass vacuously. When the step-change estimate
/// `|R − D(h/2)|` exceeds `tolerance·|rhs|` the report is inconclusive.
pub fn check_laplace_identity(
    z: &BallPoint,
    w: &BallPoint,
    lambda: f64,
    h: f64,
    form: LaplaceForm,
) -> Result<VerificationReport> {
    if !(h > 0.0 && h < 1e-2) {
        return Err(Error::InvalidArgument(alloc::format!("step must lie in (0, 1e-2), got {h}")));
    }
    if z.norm_sq() > 0.64 {
        return Err(Error::InvalidArgument("z must satisfy |z| <= 0.8".into()));
    }
    let d = z.dim();
    let params = SpaceParams::new(d, lambda)?;
    let f = |p: &[C64]| berezin_kernel(&BallPoint::new_unchecked(p.to_vec()), w, &params);
    let coarse = fd_hyperbolic_laplacian(&f, z.coords(), h);
    let fine = fd_hyperbolic_laplacian(&f, z.coords(), h / 2.0);
    let extrapolated = (4.0 * fine - coarse) / 3.0;
    let estimate = (extrapolated - fine).abs();
    let rhs = laplace_rhs(z, w, lambda, form)?;
    let r = VerificationReport::compare(
        form.identity_id(),
        C64::new(extrapolated, 0.0),
        C64::new(rhs, 0.0),
        LAPLACE_TOLERANCE,
        TolerancePolicy::Relative,
    )
    .with_param("d", d)
    .with_param("lambda", lambda)
    .with_param("h", h)
    .with_param("step_estimate", estimate)
    .with_param("norm_sq_z", z.norm_sq())
    .with_param("norm_sq_w", w.norm_sq());
    if estimate > LAPLACE_TOLERANCE * rhs.abs() && !(estimate == 0.0 && rhs == 0.0) {
        return Ok(r.mark_inconclusive("step error estimate exceeds tolerance"));
    }
    Ok(r)
}
