//! The verification suite: a grid of `(d, λ)` points times a catalog of
//! check families.
//!
//! Planning and running are split so that callers with threads can run
//! the jobs concurrently; [`run_suite`] runs them in order. Every job has
//! its own seed derived from the suite seed, the family and the grid point,
//! so a report reproduces regardless of which other jobs ran.

use alloc::string::String;
use alloc::vec::Vec;

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::ball::BallPoint;
use crate::error::{Error, Result};
use crate::multi_index::{enumerate_basis, Basis};
use crate::poly::{HoloPoly, MixedPoly};
use crate::quadrature::mc::{normal, sub_seed, uniform};
use crate::quadrature::{QuadratureRule, RadialProfile, SymbolClass};
use crate::space::SpaceParams;
use crate::C64;

use super::counterexamples::{check_mult_norm, check_norm_growth, counterexample_negativity};
use super::identities::{
    check_berezin_constant, check_invariance, check_kernel_bound, check_kernel_series, check_monomial_quadrature,
    check_parts_lemma, check_product_bound, check_shift1, check_shift2n, check_shift_chain, check_tzm,
    check_weight_recursion, PartsVariant,
};
use super::laplace::{check_laplace_identity, LaplaceForm};
use super::operators::{check_hs_dual, check_hs_l1_bound, check_hs_zero, check_sobolev_poly};
use super::report::{worst_of, TolerancePolicy, VerificationReport};

/// Suite seed used when none is given.
pub const DEFAULT_SEED: u64 = 0x5eed_1729;

/// Families run by default, in catalog order.
pub const DEFAULT_FAMILIES: &[&str] = &[
    "weight-recursion",
    "parts-lemma",
    "parts-lemma-bar",
    "shift1",
    "shift2n",
    "shift-chain",
    "product-bound",
    "monomial-quadrature",
    "tzm",
    "norm-growth",
    "negativity",
    "mult-norm",
    "sobolev-poly",
    "hs-dual",
    "hs-l1-bound",
    "hs-zero",
    "berezin-constant",
    "kernel-bound",
    "invariance",
    "kernel-series",
    "laplace",
];

/// Families that only run when selected by name. `laplace-published`
/// checks the identity with the right-hand side `λ(λ−d)(F_λ − F_{λ+1})`,
/// which `F_λ` does not satisfy.
pub const OPT_IN_FAMILIES: &[&str] = &["laplace-published"];

/// Suite configuration.
#[derive(Clone, Debug, PartialEq)]
pub struct SuiteConfig {
    /// `(d, λ)` grid points.
    pub grid: Vec<(usize, f64)>,
    /// Restrict to one family.
    pub only: Option<String>,
    pub seed: u64,
    /// Random instances per family and grid point.
    pub instances: usize,
    /// Last `k` of the growth witness.
    pub k_max: usize,
    /// Truncation degree for matrix families.
    pub degree: usize,
    /// Shells summed for Hilbert–Schmidt norms of radial symbols.
    pub hs_shells: usize,
    /// Finite-difference step of the Laplacian check.
    pub fd_step: f64,
    /// Lower bound the growth witness must exceed.
    pub growth_threshold: f64,
    pub rule: QuadratureRule,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            grid: default_grid(),
            only: None,
            seed: DEFAULT_SEED,
            instances: 20,
            k_max: 10,
            degree: 8,
            hs_shells: 2000,
            fd_step: 1e-3,
            growth_threshold: 1.1,
            rule: QuadratureRule::default(),
        }
    }
}

/// `d ∈ {1,2,3}` with `λ ∈ {d/2−0.1, d/2+0.3, d−0.5, d, d+0.5, d+1.7}`,
/// positive values only, deduplicated.
pub fn default_grid() -> Vec<(usize, f64)> {
    let mut grid = Vec::new();
    for d in 1..=3usize {
        let h = d as f64 / 2.0;
        let df = d as f64;
        for lambda in [h - 0.1, h + 0.3, df - 0.5, df, df + 0.5, df + 1.7] {
            if lambda > 0.0 && !grid.iter().any(|&(e, l): &(usize, f64)| e == d && l == lambda) {
                grid.push((d, lambda));
            }
        }
    }
    grid
}

/// One unit of work: a family at a grid point.
#[derive(Clone, Debug, PartialEq)]
pub struct SuiteJob {
    pub family: &'static str,
    pub d: usize,
    pub lambda: f64,
    pub seed: u64,
}

fn family_key(name: &str) -> u64 {
    // FNV-1a.
    name.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3))
}

fn applies(family: &str, d: usize, lambda: f64) -> bool {
    let df = d as f64;
    match family {
        "parts-lemma" | "parts-lemma-bar" | "shift1" | "shift-chain" | "product-bound" | "monomial-quadrature"
        | "berezin-constant" => lambda > df,
        "norm-growth" | "negativity" => lambda < df,
        "hs-dual" => lambda > df / 2.0,
        "hs-zero" => crate::special::is_integer(lambda) && lambda <= df,
        _ => true,
    }
}

/// Jobs for `config`, in grid-then-catalog order.
pub fn plan(config: &SuiteConfig) -> Result<Vec<SuiteJob>> {
    let families: Vec<&'static str> = match &config.only {
        None => DEFAULT_FAMILIES.to_vec(),
        Some(name) => {
            let found = DEFAULT_FAMILIES
                .iter()
                .chain(OPT_IN_FAMILIES)
                .find(|f| **f == name.as_str())
                .ok_or_else(|| Error::InvalidArgument(alloc::format!("unknown identity family '{name}'")))?;
            alloc::vec![*found]
        }
    };
    let mut jobs = Vec::new();
    for &(d, lambda) in &config.grid {
        if d == 0 || !(lambda > 0.0) {
            return Err(Error::InvalidArgument(alloc::format!("bad grid point (d = {d}, lambda = {lambda})")));
        }
        for &family in &families {
            if applies(family, d, lambda) {
                let point = ((d as u64) << 52) ^ lambda.to_bits();
                jobs.push(SuiteJob {
                    family,
                    d,
                    lambda,
                    seed: sub_seed(config.seed, family_key(family), point),
                });
            }
        }
    }
    Ok(jobs)
}

/// Runs the plan in order; reports are sorted by `identity_id` (stable).
pub fn run_suite(config: &SuiteConfig) -> Result<Vec<VerificationReport>> {
    let mut reports: Vec<VerificationReport> = plan(config)?.iter().map(|j| run_job(j, config)).collect();
    sort_reports(&mut reports);
    Ok(reports)
}

/// Stable sort by `identity_id`.
pub fn sort_reports(reports: &mut [VerificationReport]) {
    reports.sort_by(|a, b| a.identity_id.cmp(&b.identity_id));
}

/// Runs one job. Errors become failing reports carrying the message.
pub fn run_job(job: &SuiteJob, config: &SuiteConfig) -> VerificationReport {
    let r = match execute(job, config) {
        Ok(r) => r,
        Err(e) => VerificationReport::compare(job.family, C64::new(f64::NAN, 0.0), C64::new(0.0, 0.0), 0.0, TolerancePolicy::Either)
            .fail(&alloc::format!("error: {e}")),
    };
    r.with_param("d", job.d).with_param("lambda", job.lambda).with_seed(job.seed)
}

/// Uniform point in the ball of radius `radius`.
pub fn random_point(rng: &mut ChaCha8Rng, d: usize, radius: f64) -> BallPoint {
    let v: Vec<C64> = (0..d).map(|_| C64::new(normal(rng), normal(rng))).collect();
    let n = libm::sqrt(v.iter().map(|c| c.norm_sqr()).sum::<f64>());
    let r = radius * libm::pow(uniform(rng), 1.0 / (2.0 * d as f64));
    BallPoint::new_unchecked(v.into_iter().map(|c| c * (r / n)).collect())
}

fn random_coeff(rng: &mut ChaCha8Rng) -> C64 {
    C64::new(normal(rng), normal(rng))
}

/// Every monomial of degree `≤ degree` with a standard complex normal
/// coefficient.
pub fn random_holo(rng: &mut ChaCha8Rng, d: usize, degree: usize) -> HoloPoly {
    HoloPoly::from_terms(d, enumerate_basis(d, degree).into_iter().map(|m| (m, random_coeff(rng))).collect::<Vec<_>>())
}

/// Every `z^a z̄^b` with `|a| + |b| ≤ degree`, standard complex normal
/// coefficients.
pub fn random_mixed(rng: &mut ChaCha8Rng, d: usize, degree: usize) -> MixedPoly {
    let basis = enumerate_basis(d, degree);
    let mut terms = Vec::new();
    for a in &basis {
        for b in &basis {
            if (a.degree() + b.degree()) as usize <= degree {
                terms.push(((a.clone(), b.clone()), random_coeff(rng)));
            }
        }
    }
    MixedPoly::from_terms(d, terms)
}

/// Largest truncation degree whose basis keeps dense eigenproblems small.
fn dense_degree(d: usize) -> usize {
    match d {
        1 => 40,
        2 => 20,
        _ => 10,
    }
}

fn batch(reports: Result<Vec<VerificationReport>>) -> Result<VerificationReport> {
    worst_of(reports?).ok_or_else(|| Error::InvalidArgument("no instances configured".into()))
}

fn execute(job: &SuiteJob, config: &SuiteConfig) -> Result<VerificationReport> {
    let (d, lambda) = (job.d, job.lambda);
    let mut rng = ChaCha8Rng::seed_from_u64(job.seed);
    let params = SpaceParams::new(d, lambda)?;
    let count = config.instances;
    match job.family {
        "weight-recursion" => batch(Ok((0..count)
            .map(|_| check_weight_recursion(lambda - 1.0, &random_point(&mut rng, d, 1.0)))
            .collect())),
        "parts-lemma" | "parts-lemma-bar" => {
            let variant = if job.family == "parts-lemma" {
                PartsVariant::Holomorphic
            } else {
                PartsVariant::AntiHolomorphic
            };
            batch((0..count)
                .map(|_| check_parts_lemma(&random_mixed(&mut rng, d, 4), lambda, d, variant))
                .collect())
        }
        "shift1" => batch((0..count)
            .map(|_| {
                let f = random_holo(&mut rng, d, 5);
                let g = random_holo(&mut rng, d, 5);
                check_shift1(&f, &g, lambda)
            })
            .collect()),
        "shift2n" => {
            let n0 = params.n();
            let orders: Vec<usize> = if lambda > d as f64 { alloc::vec![1, 2] } else { alloc::vec![n0, n0 + 1] };
            let mut out = Vec::new();
            for _ in 0..count {
                let f = random_holo(&mut rng, d, 5);
                let g = random_holo(&mut rng, d, 5);
                for &n in &orders {
                    out.push(check_shift2n(&f, &g, lambda, n)?);
                }
            }
            batch(Ok(out))
        }
        "shift-chain" => batch((0..count)
            .map(|_| {
                let f = random_holo(&mut rng, d, 5);
                let g = random_holo(&mut rng, d, 5);
                check_shift_chain(&f, &g, lambda)
            })
            .collect()),
        "product-bound" => batch((0..count)
            .map(|_| {
                let f = random_holo(&mut rng, d, 4);
                let g = random_holo(&mut rng, d, 4);
                check_product_bound(&f, &g, lambda, 0.8)
            })
            .collect()),
        "monomial-quadrature" => batch(Basis::new(d, 8).indices().iter().map(|m| check_monomial_quadrature(m, &params)).collect()),
        "tzm" => batch(Ok((0..d).map(|j| check_tzm(j, &params, config.degree)).collect())),
        "norm-growth" => check_norm_growth(lambda, d, config.k_max, config.growth_threshold),
        "negativity" => counterexample_negativity(lambda, d, config.degree),
        "mult-norm" => {
            let m = dense_degree(d);
            batch((0..d).map(|j| check_mult_norm(j, lambda, d, m)).collect())
        }
        "sobolev-poly" => {
            let symbols = [
                MixedPoly::one(d),
                MixedPoly::zbar(d, 0).mul(&MixedPoly::z(d, 0)),
                MixedPoly::abs2(d),
                MixedPoly::zbar(d, 0).pow(2).mul(&MixedPoly::z(d, 0).pow(2)),
            ];
            let degree = if d <= 2 { 4 } else { 3 };
            batch(symbols.iter().map(|phi| check_sobolev_poly(phi, &params, degree)).collect())
        }
        "hs-dual" => check_hs_dual(&RadialProfile::power(2.0, SymbolClass::L2Tau), &params, config.hs_shells, &config.rule),
        "hs-l1-bound" => {
            let g = RadialProfile::power(d as f64 + 1.0, SymbolClass::L1Tau);
            check_hs_l1_bound(&g, &params, config.hs_shells, &config.rule)
        }
        "hs-zero" => {
            let g = RadialProfile::power(d as f64 + 1.0, SymbolClass::L1Tau);
            check_hs_zero(&g, &params, config.degree.min(dense_degree(d)), &config.rule)
        }
        "berezin-constant" => batch((0..10).map(|i| check_berezin_constant(0.09 * i as f64, &params, &config.rule)).collect()),
        "kernel-bound" => batch(Ok((0..count)
            .map(|_| {
                let z = random_point(&mut rng, d, 1.0);
                let w = random_point(&mut rng, d, 1.0);
                check_kernel_bound(&z, &w, &params)
            })
            .collect())),
        "invariance" => batch((0..count)
            .map(|_| {
                let u = random_point(&mut rng, d, 0.95);
                let z = random_point(&mut rng, d, 0.95);
                let w = random_point(&mut rng, d, 0.95);
                check_invariance(&u, &z, &w, lambda)
            })
            .collect()),
        "kernel-series" => batch((0..count)
            .map(|_| {
                let z = random_point(&mut rng, d, 0.5);
                let w = random_point(&mut rng, d, 0.5);
                check_kernel_series(&z, &w, lambda, 60)
            })
            .collect()),
        "laplace" | "laplace-published" => {
            let form = if job.family == "laplace" {
                LaplaceForm::Corrected
            } else {
                LaplaceForm::Published
            };
            batch((0..count)
                .map(|_| {
                    let z = random_point(&mut rng, d, 0.8);
                    let w = random_point(&mut rng, d, 0.8);
                    check_laplace_identity(&z, &w, lambda, config.fd_step, form)
                })
                .collect())
        }
        other => Err(Error::InvalidArgument(alloc::format!("unknown identity family '{other}'"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_grid_shape() {
        let g = default_grid();
        assert!(g.contains(&(1, 0.4)) && g.contains(&(3, 4.7)));
        assert!(g.iter().all(|&(_, l)| l > 0.0));
        assert_eq!(g.iter().filter(|p| p.0 == 1).count(), 6);
    }

    #[test]
    fn empty_grid_gives_empty_report() {
        let cfg = SuiteConfig {
            grid: Vec::new(),
            ..SuiteConfig::default()
        };
        assert!(run_suite(&cfg).unwrap().is_empty());
    }

    #[test]
    fn single_family_single_point() {
        let cfg = SuiteConfig {
            grid: alloc::vec![(2, 1.3)],
            only: Some("laplace".into()),
            ..SuiteConfig::default()
        };
        let r = run_suite(&cfg).unwrap();
        assert_eq!(r.len(), 1);
        assert!(r[0].pass, "{:?}", r[0]);
        assert_eq!(r[0].identity_id, "laplace");
    }

    #[test]
    fn growth_filter_reports_sequence() {
        let cfg = SuiteConfig {
            grid: alloc::vec![(2, 1.0)],
            only: Some("norm-growth".into()),
            ..SuiteConfig::default()
        };
        let r = run_suite(&cfg).unwrap();
        assert_eq!(r.len(), 1);
        assert!((r[0].series.last().unwrap() - 11.0).abs() < 1e-10);
    }

    #[test]
    fn unknown_family_is_an_error() {
        let cfg = SuiteConfig {
            only: Some("nope".into()),
            ..SuiteConfig::default()
        };
        assert!(run_suite(&cfg).is_err());
    }

    #[test]
    fn jobs_are_reproducible() {
        let cfg = SuiteConfig {
            grid: alloc::vec![(2, 0.9)],
            only: Some("invariance".into()),
            ..SuiteConfig::default()
        };
        let a = run_suite(&cfg).unwrap();
        let b = run_suite(&cfg).unwrap();
        assert_eq!(a, b);
        assert!(a[0].seed.is_some());
    }
}
