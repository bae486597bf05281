//! Gamma-function ratios, factorials and the normalization constant `c_λ`.

use core::f64::consts::PI;

/// Largest `k` for which [`gamma_ratio`] uses the explicit product.
pub const PRODUCT_CROSSOVER: usize = 64;

/// Tolerance used to decide that `λ` is an integer.
pub const INTEGER_TOLERANCE: f64 = 1e-12;

/// `ln Γ(x)` for `x > 0`.
pub fn ln_gamma(x: f64) -> f64 {
    libm::lgamma_r(x).0
}

/// `Γ(x)` (any real `x` that is not a non-positive integer).
pub fn gamma(x: f64) -> f64 {
    libm::tgamma(x)
}

/// `Γ(λ)/Γ(λ+k)` for `λ > 0`.
///
/// For `k ≤ 64` this is the product `Π_{j<k} 1/(λ+j)`; beyond that the
/// product over the first 64 factors is combined with a log-gamma difference
/// for the remainder.
pub fn gamma_ratio(lambda: f64, k: usize) -> f64 {
    if k <= PRODUCT_CROSSOVER {
        rising_product_inv(lambda, k)
    } else {
        let head = rising_product_inv(lambda, PRODUCT_CROSSOVER);
        let start = lambda + PRODUCT_CROSSOVER as f64;
        head * libm::exp(ln_gamma(start) - ln_gamma(lambda + k as f64))
    }
}

/// `ln(Γ(λ)/Γ(λ+k))`, finite even where [`gamma_ratio`] underflows.
pub fn ln_gamma_ratio(lambda: f64, k: usize) -> f64 {
    if k <= PRODUCT_CROSSOVER {
        -(0..k).map(|j| libm::log(lambda + j as f64)).sum::<f64>()
    } else {
        ln_gamma(lambda) - ln_gamma(lambda + k as f64)
    }
}

fn rising_product_inv(lambda: f64, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, j| acc / (lambda + j as f64))
}

/// `n!` as a float, by the product recurrence (exact for `n ≤ 22`).
pub fn factorial(n: u32) -> f64 {
    (2..=n).fold(1.0, |acc, j| acc * j as f64)
}

/// Binomial coefficient `C(n, k)` as a float.
pub fn binomial(n: u64, k: u64) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, j| acc * (n - j) as f64 / (j + 1) as f64)
}

/// Exact binomial coefficient for counting.
pub fn binomial_u64(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u64 = 1;
    for j in 0..k {
        acc = acc * (n - j) / (j + 1);
    }
    acc
}

/// True when `x` is within [`INTEGER_TOLERANCE`] of an integer.
pub fn is_integer(x: f64) -> bool {
    libm::fabs(x - libm::round(x)) < INTEGER_TOLERANCE
}

/// The constant `c_λ = Γ(λ)/(π^d Γ(λ−d))`.
///
/// Since `Γ(λ)/Γ(λ−d) = (λ−1)(λ−2)⋯(λ−d)`, the constant is a polynomial in
/// `λ`, which is its continuation to every `λ > 0`. It is exactly zero when
/// `λ` is an integer in `1..=d` and alternates sign on `(d−1, d)`,
/// `(d−2, d−1)`, … below that.
pub fn c_lambda(d: usize, lambda: f64) -> f64 {
    if is_integer(lambda) {
        let r = libm::round(lambda);
        if r >= 1.0 && r <= d as f64 {
            return 0.0;
        }
    }
    let mut acc = 1.0;
    for j in 1..=d {
        acc *= (lambda - j as f64) / PI;
    }
    acc
}

/// Beta function `B(a, b)` for `a, b > 0`, via log-gamma.
pub fn beta(a: f64, b: f64) -> f64 {
    libm::exp(ln_gamma(a) + ln_gamma(b) - ln_gamma(a + b))
}

/// Regularized incomplete beta function `I_x(a, b)`.
///
/// Continued fraction (modified Lentz) with the usual symmetry switch.
pub fn incomplete_beta(x: f64, a: f64, b: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    if x >= 1.0 {
        return 1.0;
    }
    let ln_front = ln_gamma(a + b) - ln_gamma(a) - ln_gamma(b)
        + a * libm::log(x)
        + b * libm::log1p(-x);
    let front = libm::exp(ln_front);
    if x < (a + 1.0) / (a + b + 2.0) {
        front * beta_continued_fraction(x, a, b) / a
    } else {
        1.0 - front * beta_continued_fraction(1.0 - x, b, a) / b
    }
}

fn beta_continued_fraction(x: f64, a: f64, b: f64) -> f64 {
    const TINY: f64 = 1e-300;
    const EPS: f64 = 1e-15;
    let qab = a + b;
    let qap = a + 1.0;
    let qam = a - 1.0;
    let mut c = 1.0;
    let mut d = 1.0 - qab * x / qap;
    if libm::fabs(d) < TINY {
        d = TINY;
    }
    d = 1.0 / d;
    let mut h = d;
    for m in 1..=400 {
        let m = m as f64;
        let m2 = 2.0 * m;
        let aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if libm::fabs(d) < TINY {
            d = TINY;
        }
        c = 1.0 + aa / c;
        if libm::fabs(c) < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        h *= d * c;
        let aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if libm::fabs(d) < TINY {
            d = TINY;
        }
        c = 1.0 + aa / c;
        if libm::fabs(c) < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let del = d * c;
        h *= del;
        if libm::fabs(del - 1.0) < EPS {
            break;
        }
    }
    h
}

/// `₂F₁(a, a; c; x)` for `0 ≤ x < 1` by direct summation of the series
/// `Σ (a)_k² / (k! (c)_k) x^k`.
///
/// Terms are accumulated until the geometric tail bound `|t_k| x/(1−x)`
/// (valid once the term ratio has dropped below one) is below `1e−17` of
/// the partial sum. Returns `None` if that takes more than `max_terms`.
pub fn hypergeometric_2f1_equal(a: f64, c: f64, x: f64, max_terms: usize) -> Option<f64> {
    if x == 0.0 {
        return Some(1.0);
    }
    debug_assert!((0.0..1.0).contains(&x));
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 0..max_terms {
        let kf = k as f64;
        let ratio = (a + kf) * (a + kf) / ((kf + 1.0) * (c + kf)) * x;
        term *= ratio;
        sum += term;
        if ratio < 1.0 && term.abs() * ratio / (1.0 - ratio) <= 1e-17 * sum.abs() {
            return Some(sum);
        }
    }
    None
}
