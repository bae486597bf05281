//! Points of the open unit ball, the reproducing kernel and the involutive
//! ball automorphisms `φ_w`.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::C64;

/// A point `z ∈ B^d`, i.e. `Σ |z_j|² < 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct BallPoint {
    coords: Vec<C64>,
}

impl BallPoint {
    pub fn new(coords: Vec<C64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::InvalidDimension(0));
        }
        let p = BallPoint { coords };
        let r2 = p.norm_sq();
        if !(r2 < 1.0) {
            return Err(Error::OutsideBall { norm_sq: r2 });
        }
        Ok(p)
    }

    /// Build from real coordinates (imaginary parts zero).
    pub fn from_real(coords: &[f64]) -> Result<Self> {
        Self::new(coords.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    pub fn origin(d: usize) -> Self {
        BallPoint {
            coords: alloc::vec![C64::new(0.0, 0.0); d],
        }
    }

    pub(crate) fn new_unchecked(coords: Vec<C64>) -> Self {
        BallPoint { coords }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[C64] {
        &self.coords
    }

    /// `|z|²`.
    pub fn norm_sq(&self) -> f64 {
        self.coords.iter().map(|c| c.norm_sqr()).sum()
    }

    /// `z·w̄ = Σ z_j conj(w_j)`.
    pub fn dot_conj(&self, w: &BallPoint) -> C64 {
        self.coords
            .iter()
            .zip(&w.coords)
            .map(|(a, b)| a * b.conj())
            .sum()
    }

    pub fn neg(&self) -> BallPoint {
        BallPoint::new_unchecked(self.coords.iter().map(|c| -c).collect())
    }
}

/// `K_λ(z, w) = (1 − z·w̄)^{−λ}` on the principal branch.
///
/// `|z·w̄| < 1`, so the base lies in the disc of radius one around `1` and
/// never touches the cut `(−∞, 0]`.
pub fn reproducing_kernel(z: &BallPoint, w: &BallPoint, lambda: f64) -> C64 {
    let base = C64::new(1.0, 0.0) - z.dot_conj(w);
    debug_assert!(base.re > 0.0);
    base.powf(-lambda)
}

/// The involutive automorphism `φ_w(z) = (w − P_w z − s_w Q_w z)/(1 − z·w̄)`
/// with `s_w = √(1 − |w|²)`, `P_w` the orthogonal projection onto `C·w` and
/// `Q_w = I − P_w`. It exchanges `0` and `w`; `φ_0(z) = −z`.
pub fn mobius(w: &BallPoint, z: &BallPoint) -> BallPoint {
    assert_eq!(w.dim(), z.dim(), "dimension mismatch");
    let w2 = w.norm_sq();
    let zw = z.dot_conj(w);
    let s = libm::sqrt(1.0 - w2);
    let denom = C64::new(1.0, 0.0) - zw;
    let coords = w
        .coords
        .iter()
        .zip(&z.coords)
        .map(|(wj, zj)| {
            let proj = if w2 > 0.0 { wj * (zw / w2) } else { C64::new(0.0, 0.0) };
            let perp = zj - proj;
            (wj - proj - perp * s) / denom
        })
        .collect();
    BallPoint::new_unchecked(coords)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[(f64, f64)]) -> BallPoint {
        BallPoint::new(c.iter().map(|&(a, b)| C64::new(a, b)).collect()).unwrap()
    }

    #[test]
    fn rejects_boundary_points() {
        assert!(BallPoint::from_real(&[1.0]).is_err());
        assert!(BallPoint::from_real(&[0.6, 0.8]).is_err());
        assert!(BallPoint::from_real(&[0.6, 0.79]).is_ok());
    }

    #[test]
    fn kernel_examples() {
        let z = p(&[(0.3, -0.2), (0.1, 0.4)]);
        let o = BallPoint::origin(2);
        assert_eq!(reproducing_kernel(&o, &z, 2.7), C64::new(1.0, 0.0));
        let diag = reproducing_kernel(&z, &z, 1.3);
        let expect = (1.0 - z.norm_sq()).powf(-1.3);
        assert!((diag - expect).norm() < 1e-14);
        assert!(diag.im.abs() < 1e-15);
    }

    #[test]
    fn mobius_one_dimensional_example() {
        let w = BallPoint::from_real(&[0.5]).unwrap();
        let z = BallPoint::from_real(&[0.25]).unwrap();
        let r = mobius(&w, &z);
        assert!((r.coords()[0] - C64::new(2.0 / 7.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn mobius_exchanges_zero_and_w() {
        let w = p(&[(0.2, 0.1), (-0.3, 0.4)]);
        let o = BallPoint::origin(2);
        let a = mobius(&w, &o);
        let b = mobius(&w, &w);
        for j in 0..2 {
            assert!((a.coords()[j] - w.coords()[j]).norm() < 1e-15);
            assert!(b.coords()[j].norm() < 1e-15);
        }
        let z = p(&[(0.1, 0.2), (0.3, 0.0)]);
        assert_eq!(mobius(&o, &z), z.neg());
    }

    #[test]
    fn mobius_is_involutive() {
        let w = p(&[(0.5, -0.1), (0.2, 0.3), (0.0, 0.1)]);
        let z = p(&[(-0.4, 0.2), (0.1, 0.1), (0.5, -0.2)]);
        let back = mobius(&w, &mobius(&w, &z));
        for j in 0..3 {
            assert!((back.coords()[j] - z.coords()[j]).norm() < 1e-12);
        }
        assert!(mobius(&w, &z).norm_sq() < 1.0);
    }
}
