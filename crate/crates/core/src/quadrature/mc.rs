//! Seeded Monte Carlo over the ball.
//!
//! Points are drawn from `μ_s` (density `c_s (1−|z|²)^{s−d−1}`) by sampling
//! `|z|² ~ Beta(d, s−d)` through bisection of the incomplete beta function
//! and an independent uniform direction on the sphere. Every draw is used
//! together with its antipode `−z`.
//!
//! The stream is split into fixed-size chunks, chunk `c` using ChaCha8 stream
//! `c` of the seed, so any partition of chunks across workers reproduces the
//! sequential result.

use alloc::vec::Vec;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ball::BallPoint;
use crate::error::{Error, Result};
use crate::special::{c_lambda, incomplete_beta};
use crate::C64;

/// Antithetic pairs drawn from one ChaCha stream.
pub const CHUNK_PAIRS: usize = 4096;

const BISECTION_STEPS: usize = 52;

/// Uniform double in `[0, 1)` with 53 random bits.
pub fn uniform(rng: &mut ChaCha8Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// A standard normal by Box–Muller (one of the pair is discarded).
pub fn normal(rng: &mut ChaCha8Rng) -> f64 {
    let u1 = 1.0 - uniform(rng);
    let u2 = uniform(rng);
    libm::sqrt(-2.0 * libm::log(u1)) * libm::cos(2.0 * core::f64::consts::PI * u2)
}

/// Mix `(seed, a, b)` into an independent sub-seed (SplitMix64 finalizer).
pub fn sub_seed(seed: u64, a: u64, b: u64) -> u64 {
    fn mix(mut z: u64) -> u64 {
        z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }
    mix(mix(mix(seed) ^ a) ^ b.rotate_left(17))
}

/// Sampler for `μ_s` on `B^d`, `s > d`.
#[derive(Clone, Debug)]
pub struct BallSampler {
    d: usize,
    shape_a: f64,
    shape_b: f64,
}

impl BallSampler {
    pub fn new(d: usize, s: f64) -> Result<Self> {
        if !(s > d as f64) {
            return Err(Error::DivergentWeight {
                exponent: s - d as f64 - 1.0,
            });
        }
        Ok(BallSampler {
            d,
            shape_a: d as f64,
            shape_b: s - d as f64,
        })
    }

    /// `t = |z|²` by inverse CDF.
    pub fn radius_sq(&self, rng: &mut ChaCha8Rng) -> f64 {
        let u = uniform(rng);
        let (mut lo, mut hi) = (0.0f64, 1.0f64);
        for _ in 0..BISECTION_STEPS {
            let mid = 0.5 * (lo + hi);
            if incomplete_beta(mid, self.shape_a, self.shape_b) < u {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    /// Uniform point of the unit sphere `S^{2d−1} ⊂ C^d`.
    pub fn direction(&self, rng: &mut ChaCha8Rng) -> Vec<C64> {
        loop {
            let v: Vec<C64> = (0..self.d).map(|_| C64::new(normal(rng), normal(rng))).collect();
            let n2: f64 = v.iter().map(|c| c.norm_sqr()).sum();
            if n2 > 0.0 {
                let s = 1.0 / libm::sqrt(n2);
                return v.into_iter().map(|c| c * s).collect();
            }
        }
    }

    pub fn sample(&self, rng: &mut ChaCha8Rng) -> BallPoint {
        let t = self.radius_sq(rng);
        let r = libm::sqrt(t);
        let coords = self.direction(rng).into_iter().map(|c| c * r).collect();
        BallPoint::new_unchecked(coords)
    }
}

/// Mean and standard error of `samples` i.i.d. observations produced by
/// `observe`, streamed chunk by chunk from `seed`.
///
/// The standard error is infinite for a single observation.
pub fn mc_mean(
    samples: usize,
    seed: u64,
    mut observe: impl FnMut(&mut ChaCha8Rng) -> Result<C64>,
) -> Result<(C64, f64)> {
    if samples == 0 {
        return Err(Error::InvalidArgument("Monte Carlo needs at least one sample".into()));
    }
    let mut sum = C64::new(0.0, 0.0);
    let mut sum_sq = 0.0;
    let mut done = 0usize;
    let mut chunk = 0u64;
    while done < samples {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(chunk);
        let take = CHUNK_PAIRS.min(samples - done);
        for _ in 0..take {
            let v = observe(&mut rng)?;
            sum += v;
            sum_sq += v.norm_sqr();
        }
        done += take;
        chunk += 1;
    }
    let n = samples as f64;
    let mean = sum / n;
    let stderr = if samples > 1 {
        let var = ((sum_sq - n * mean.norm_sqr()) / (n - 1.0)).max(0.0);
        libm::sqrt(var / n)
    } else {
        f64::INFINITY
    };
    Ok((mean, stderr))
}

/// `∫_{B^d} f(z) (1−|z|²)^{w−d−1} dz` by Monte Carlo with `samples`
/// antithetic pairs.
///
/// For `w > d` points come from `μ_w` and the estimate is `E[f]/c_w`. For
/// `w ≤ d` they come from `μ_{d+1}` with the likelihood ratio
/// `(1−|z|²)^{w−d−1}/c_{d+1}`; the variance is then finite only when the
/// integrand decays fast enough at the boundary, which the caller asserts.
pub fn integrate_ball_mc(
    f: &dyn Fn(&[C64]) -> C64,
    weight_exponent: f64,
    d: usize,
    samples: usize,
    seed: u64,
) -> Result<(C64, f64)> {
    let df = d as f64;
    let (level, reweight) = if weight_exponent > df {
        (weight_exponent, false)
    } else {
        (df + 1.0, true)
    };
    let sampler = BallSampler::new(d, level)?;
    let scale = 1.0 / c_lambda(d, level);
    let (mean, se) = mc_mean(samples, seed, |rng| {
        let z = sampler.sample(rng);
        let zn = z.neg();
        let mut v = (f(z.coords()) + f(zn.coords())) * 0.5;
        if reweight {
            v *= libm::pow(1.0 - z.norm_sq(), weight_exponent - df - 1.0);
        }
        if !(v.re.is_finite() && v.im.is_finite()) {
            return Err(Error::NonFiniteSample {
                point: z.coords().to_vec(),
            });
        }
        Ok(v)
    })?;
    Ok((mean * scale, se * scale))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uniform_in_unit_interval() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..10_000 {
            let u = uniform(&mut rng);
            assert!((0.0..1.0).contains(&u));
        }
    }

    #[test]
    fn radial_law_mean() {
        // E[|z|²] under μ_s is d/s.
        let s = BallSampler::new(2, 3.5).unwrap();
        let (m, se) = mc_mean(20_000, 11, |rng| Ok(C64::new(s.radius_sq(rng), 0.0))).unwrap();
        assert!((m.re - 2.0 / 3.5).abs() < 4.0 * se);
    }

    #[test]
    fn constant_integrand_is_normalized() {
        let lambda = 3.2;
        let d = 2;
        let (v, se) = integrate_ball_mc(&|_| C64::new(1.0, 0.0), lambda, d, 1000, 5).unwrap();
        let c = c_lambda(d, lambda);
        assert!(((v * c).re - 1.0).abs() <= 1e-12);
        assert!(se < 1e-12);
    }

    #[test]
    fn seeded_runs_are_identical() {
        let f = |z: &[C64]| z[0].norm_sqr().into();
        let a = integrate_ball_mc(&f, 2.5, 1, 9000, 42).unwrap();
        let b = integrate_ball_mc(&f, 2.5, 1, 9000, 42).unwrap();
        assert_eq!(a.0.re.to_bits(), b.0.re.to_bits());
        assert_eq!(a.1.to_bits(), b.1.to_bits());
    }

    #[test]
    fn single_sample_has_infinite_stderr() {
        let (_, se) = integrate_ball_mc(&|z| z[0] * z[0].conj(), 3.0, 1, 1, 0).unwrap();
        assert!(se.is_infinite());
    }

    #[test]
    fn non_finite_sample_is_reported() {
        let r = integrate_ball_mc(&|_| C64::new(f64::NAN, 0.0), 3.0, 1, 4, 0);
        assert!(matches!(r, Err(Error::NonFiniteSample { .. })));
    }

    #[test]
    fn sub_seeds_differ() {
        assert_ne!(sub_seed(1, 0, 1), sub_seed(1, 1, 0));
        assert_ne!(sub_seed(1, 2, 3), sub_seed(2, 2, 3));
        assert_eq!(sub_seed(9, 4, 5), sub_seed(9, 4, 5));
    }
}
