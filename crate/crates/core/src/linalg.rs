//! Dense eigenvalue routines: implicit QL on symmetric tridiagonal matrices
//! and Householder reduction of complex Hermitian matrices.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::C64;

const MAX_QL_SWEEPS: usize = 60;

/// Eigenvalues of the symmetric tridiagonal matrix with diagonal `diag` and
/// off-diagonal `off` (`off[i]` couples `i` and `i+1`, `off.len() + 1 ==
/// diag.len()`), in ascending order.
///
/// When `first` is given it must hold the first row of the accumulated
/// rotation (initially `e_0`); on return `first[i]` is the first component of
/// the normalized eigenvector for the `i`-th returned eigenvalue.
pub fn tridiagonal_eigen(diag: &[f64], off: &[f64], first: Option<&mut [f64]>) -> Result<Vec<f64>> {
    let n = diag.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    debug_assert_eq!(off.len() + 1, n);
    let mut d = diag.to_vec();
    let mut e = vec![0.0; n];
    e[..n - 1].copy_from_slice(off);
    let mut z = first;

    for l in 0..n {
        let mut sweeps = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            sweeps += 1;
            if sweeps > MAX_QL_SWEEPS {
                return Err(Error::NoConvergence("tridiagonal QL".into()));
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = libm::hypot(g, 1.0);
            g = d[m] - d[l] + e[l] / (g + if g >= 0.0 { r } else { -r });
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut deflated = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = libm::hypot(f, g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                if let Some(z) = z.as_deref_mut() {
                    let f = z[i + 1];
                    z[i + 1] = s * z[i] + c * f;
                    z[i] = c * z[i] - s * f;
                }
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| d[a].total_cmp(&d[b]));
    if let Some(z) = z {
        let zs: Vec<f64> = order.iter().map(|&i| z[i]).collect();
        z.copy_from_slice(&zs);
    }
    Ok(order.into_iter().map(|i| d[i]).collect())
}

/// Eigenvalues of a complex Hermitian `n × n` matrix stored row-major, in
/// ascending order. Only the lower triangle is read.
///
/// Householder reflections reduce the matrix to Hermitian tridiagonal form;
/// a diagonal unitary similarity then makes the off-diagonal real and
/// non-negative, so the spectrum is that of the real tridiagonal matrix with
/// off-diagonal moduli.
pub fn hermitian_eigenvalues(n: usize, entries: &[C64]) -> Result<Vec<f64>> {
    debug_assert_eq!(entries.len(), n * n);
    let zero = C64::new(0.0, 0.0);
    let mut a = entries.to_vec();
    // Symmetrize from the lower triangle.
    for i in 0..n {
        a[i * n + i] = C64::new(a[i * n + i].re, 0.0);
        for j in 0..i {
            a[j * n + i] = a[i * n + j].conj();
        }
    }
    let mut off = vec![0.0; n.saturating_sub(1)];
    for k in 0..n.saturating_sub(1) {
        let len = n - k - 1;
        let x: Vec<C64> = (0..len).map(|i| a[(k + 1 + i) * n + k]).collect();
        let xnorm = libm::sqrt(x.iter().map(|c| c.norm_sqr()).sum());
        if xnorm == 0.0 {
            off[k] = 0.0;
            continue;
        }
        let phase = if x[0].norm() > 0.0 { x[0] / x[0].norm() } else { C64::new(1.0, 0.0) };
        let alpha = -phase * xnorm;
        let mut v = x;
        v[0] -= alpha;
        let vnorm = libm::sqrt(v.iter().map(|c| c.norm_sqr()).sum());
        if vnorm == 0.0 {
            off[k] = xnorm;
            continue;
        }
        for c in v.iter_mut() {
            *c /= vnorm;
        }
        // Trailing block B = a[k+1.., k+1..]; B ← H B H with H = I − 2vv*.
        let base = k + 1;
        let p: Vec<C64> = (0..len)
            .map(|i| (0..len).map(|j| a[(base + i) * n + base + j] * v[j]).sum())
            .collect();
        let kappa: C64 = v.iter().zip(&p).map(|(vi, pi)| vi.conj() * pi).sum();
        let w: Vec<C64> = p.iter().zip(&v).map(|(pi, vi)| pi - vi * kappa).collect();
        for i in 0..len {
            for j in 0..len {
                let upd = v[i] * w[j].conj() + w[i] * v[j].conj();
                a[(base + i) * n + base + j] -= upd * 2.0;
            }
        }
        a[base * n + k] = alpha;
        a[k * n + base] = alpha.conj();
        for i in 1..len {
            a[(base + i) * n + k] = zero;
            a[k * n + base + i] = zero;
        }
        off[k] = xnorm;
    }
    let diag: Vec<f64> = (0..n).map(|i| a[i * n + i].re).collect();
    tridiagonal_eigen(&diag, &off, None)
}
