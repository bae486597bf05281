//! Command-line front end for the `bergman` crate.
//!
//! Data goes to standard output or `--out`; warnings and diagnostics go to
//! standard error. Exit codes: 0 success, 1 failed verification or runtime
//! error, 2 bad arguments (unparsable symbol, inadmissible `λ` or class).

pub mod grammar;
pub mod io;

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use bergman::quadrature::{QuadratureRule, RadialProfile, SymbolClass};
use bergman::toeplitz::{
    berezin_transform, hs_matrix, toeplitz_poly_matrix, toeplitz_sobolev_matrix, OperatorMatrix, SymbolSpec,
};
use bergman::verify::suite::{default_grid, plan, run_job, sort_reports, SuiteConfig};
use bergman::verify::VerificationReport;
use bergman::{BallPoint, SpaceParams, C64};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::grammar::{parse_holo, parse_mixed};
use crate::io::{write_matrix_csv, write_matrix_json, write_reports_jsonl, IoError};

#[derive(Parser, Debug)]
#[command(name = "bergman", version, about = "Toeplitz operators on generalized Bergman spaces of the unit ball")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug)]
pub struct GlobalArgs {
    /// Complex dimension d.
    #[arg(short = 'd', long = "d", global = true)]
    pub d: Option<usize>,
    /// Space parameter lambda > 0.
    #[arg(short = 'l', long = "lambda", global = true, allow_negative_numbers = true)]
    pub lambda: Option<f64>,
    /// Sobolev order n (defaults to the smallest with lambda + 2n > d).
    #[arg(long, global = true)]
    pub n: Option<usize>,
    /// Truncation degree M.
    #[arg(long, global = true)]
    pub degree: Option<usize>,
    /// Seed for every random choice.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Gauss-Jacobi nodes for radial integrals.
    #[arg(long, global = true)]
    pub nodes: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write data here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    /// Exact polynomial-symbol construction.
    Poly,
    /// Sobolev-type form, entry by entry.
    Sobolev,
    /// Hilbert-Schmidt operator of an L1(tau) symbol.
    HsL1,
    /// Hilbert-Schmidt operator of an L2(tau) symbol.
    HsL2,
}

#[derive(Args, Debug)]
pub struct SymbolArgs {
    /// Polynomial symbol, e.g. "1 - abs2(z)" or "conj(z1)*z1".
    #[arg(long, conflicts_with = "radial", allow_hyphen_values = true)]
    pub symbol: Option<String>,
    /// Radial profile g(|z|^2): one, power:S, gauss:A or gauss:A:S.
    #[arg(long)]
    pub radial: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Inner product <f, g> of two holomorphic polynomials.
    Inner {
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[arg(long, allow_hyphen_values = true)]
        g: String,
    },
    /// Matrix of a Toeplitz operator on the normalized monomial basis.
    Toeplitz {
        #[command(flatten)]
        symbol: SymbolArgs,
        #[arg(long, value_enum, default_value_t = Method::Poly)]
        method: Method,
    },
    /// Berezin transform along the radius (r, 0, ..., 0).
    Berezin {
        #[command(flatten)]
        symbol: SymbolArgs,
        /// Grid points in [0, rmax].
        #[arg(long, default_value_t = 11)]
        points: usize,
        #[arg(long, default_value_t = 0.9)]
        rmax: f64,
    },
    /// Run the verification suite and emit one report per line.
    Verify {
        /// Run a single identity family.
        #[arg(long)]
        only: Option<String>,
        /// Last k of the norm-growth witness.
        #[arg(long)]
        kmax: Option<usize>,
        /// Random instances per family and grid point.
        #[arg(long)]
        instances: Option<usize>,
    },
    /// Norm of a polynomial (--f) or of a truncated Toeplitz operator.
    Norm {
        #[arg(long, conflicts_with_all = ["symbol", "radial"], allow_hyphen_values = true)]
        f: Option<String>,
        #[command(flatten)]
        symbol: SymbolArgs,
        #[arg(long, value_enum, default_value_t = Method::Poly)]
        method: Method,
    },
}

/// A command failure with its exit code.
#[derive(Debug)]
pub enum CliError {
    /// Bad input: exit 2.
    Usage(String),
    /// Failure while running: exit 1.
    Runtime(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Runtime(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Runtime(m) => f.write_str(m),
        }
    }
}

impl From<bergman::Error> for CliError {
    fn from(e: bergman::Error) -> Self {
        match e {
            bergman::Error::NoConvergence(_) | bergman::Error::NonFiniteSample { .. } => CliError::Runtime(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<IoError> for CliError {
    fn from(e: IoError) -> Self {
        match e {
            IoError::Model(m) => m.into(),
            other => CliError::Runtime(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Runtime(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Runtime(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Runtime(e.to_string())
    }
}

type CliResult<T> = Result<T, CliError>;

/// Parses `args` and runs the command; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn execute(cli: &Cli) -> CliResult<i32> {
    let g = &cli.global;
    match &cli.command {
        Command::Inner { f, g: g_src } => cmd_inner(g, f, g_src),
        Command::Toeplitz { symbol, method } => cmd_toeplitz(g, symbol, *method),
        Command::Berezin { symbol, points, rmax } => cmd_berezin(g, symbol, *points, *rmax),
        Command::Verify { only, kmax, instances } => cmd_verify(g, only.clone(), *kmax, *instances),
        Command::Norm { f, symbol, method } => cmd_norm(g, f.as_deref(), symbol, *method),
    }
}

fn space(g: &GlobalArgs) -> CliResult<SpaceParams> {
    let d = g.d.ok_or_else(|| CliError::Usage("missing -d".into()))?;
    let lambda = g.lambda.ok_or_else(|| CliError::Usage("missing --lambda".into()))?;
    let p = SpaceParams::new(d, lambda)?;
    Ok(match g.n {
        Some(n) => p.with_order(n)?,
        None => p,
    })
}

fn rule(g: &GlobalArgs) -> QuadratureRule {
    let mut r = QuadratureRule::default();
    if let Some(n) = g.nodes {
        r.radial_nodes = n;
    }
    r
}

fn sink(g: &GlobalArgs) -> CliResult<Box<dyn Write>> {
    Ok(match &g.out {
        Some(path) => Box::new(BufWriter::new(
            File::create(path).map_err(|e| CliError::Runtime(format!("{}: {e}", path.display())))?,
        )),
        None => Box::new(BufWriter::new(std::io::stdout().lock())),
    })
}

fn warn(message: &str) {
    eprintln!("warning: {message}");
}

fn usage(e: grammar::ParseError) -> CliError {
    CliError::Usage(format!("cannot parse polynomial {e}"))
}

/// The class implied by the decay exponent `S`: the smallest of
/// `L¹(τ) ⊂ L²(τ) ⊂ bounded` (as far as the radial weight sees) that fits.
fn auto_class(decay: f64, d: usize) -> SymbolClass {
    let df = d as f64;
    if decay > df {
        SymbolClass::L1Tau
    } else if 2.0 * decay > df {
        SymbolClass::L2Tau
    } else {
        SymbolClass::Bounded
    }
}

/// `one`, `power:S`, `gauss:A` or `gauss:A:S`.
pub fn parse_radial(spec: &str, d: usize, class: Option<SymbolClass>) -> CliResult<RadialProfile> {
    let parts: Vec<&str> = spec.split(':').collect();
    let num = |s: &str| -> CliResult<f64> {
        s.trim()
            .parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .ok_or_else(|| CliError::Usage(format!("bad number '{s}' in radial profile '{spec}'")))
    };
    let (label, decay, a) = match parts.as_slice() {
        ["one"] => ("1".to_string(), 0.0, None),
        ["power", s] => (format!("(1-t)^{}", num(s)?), num(s)?, None),
        ["gauss", a] => (format!("exp(-{}t)", num(a)?), 0.0, Some(num(a)?)),
        ["gauss", a, s] => (format!("exp(-{}t)(1-t)^{}", num(a)?, num(s)?), num(s)?, Some(num(a)?)),
        _ => return Err(CliError::Usage(format!("unknown radial profile '{spec}' (one, power:S, gauss:A, gauss:A:S)"))),
    };
    let class = class.unwrap_or_else(|| auto_class(decay, d));
    Ok(match a {
        None => RadialProfile::new(label, decay, class, |_| C64::new(1.0, 0.0)),
        Some(a) => RadialProfile::new(label, decay, class, move |t| C64::new((-a * t).exp(), 0.0)),
    })
}

fn symbol(args: &SymbolArgs, d: usize, class: Option<SymbolClass>) -> CliResult<SymbolSpec> {
    match (&args.symbol, &args.radial) {
        (Some(s), None) => Ok(SymbolSpec::Mixed(parse_mixed(s, d).map_err(usage)?)),
        (None, Some(r)) => Ok(SymbolSpec::Radial(parse_radial(r, d, class)?)),
        _ => Err(CliError::Usage("give exactly one of --symbol and --radial".into())),
    }
}

fn build_matrix(g: &GlobalArgs, args: &SymbolArgs, method: Method) -> CliResult<OperatorMatrix> {
    let p = space(g)?;
    let degree = g.degree.unwrap_or(6);
    let r = rule(g);
    let class = match method {
        Method::HsL1 => Some(SymbolClass::L1Tau),
        Method::HsL2 => Some(SymbolClass::L2Tau),
        _ => None,
    };
    let phi = symbol(args, p.d(), class)?;
    match (method, &phi) {
        (Method::Poly, SymbolSpec::Mixed(poly)) => Ok(toeplitz_poly_matrix(poly, &p, degree)),
        (Method::Sobolev, SymbolSpec::Mixed(_)) => Ok(toeplitz_sobolev_matrix(&phi, &p, degree, &r)?),
        (Method::Poly | Method::Sobolev, _) => {
            Err(CliError::Usage("methods poly and sobolev need a polynomial --symbol".into()))
        }
        (Method::HsL1 | Method::HsL2, _) => {
            let m = hs_matrix(&phi, &p, degree, &r)?;
            if p.c_lambda() == 0.0 {
                warn(&format!(
                    "c_lambda = 0 at integer lambda = {} <= d = {}; the Hilbert-Schmidt operator is zero",
                    p.lambda(),
                    p.d()
                ));
            }
            Ok(m)
        }
    }
}

fn method_name(m: Method) -> &'static str {
    match m {
        Method::Poly => "poly",
        Method::Sobolev => "sobolev",
        Method::HsL1 => "hs-l1",
        Method::HsL2 => "hs-l2",
    }
}

/// Writes one JSON object, or a header row and a value row.
fn write_record(out: &mut dyn Write, format: Format, record: &Value) -> CliResult<()> {
    match format {
        Format::Json => {
            serde_json::to_writer(&mut *out, record)?;
            writeln!(out)?;
        }
        Format::Csv => {
            let obj = record.as_object().expect("records are objects");
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(obj.keys())?;
            w.write_record(obj.values().map(|v| match v {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            }))?;
            w.flush()?;
        }
    }
    Ok(())
}

fn cmd_inner(g: &GlobalArgs, f: &str, h: &str) -> CliResult<i32> {
    let p = space(g)?;
    let fp = parse_holo(f, p.d()).map_err(usage)?;
    let gp = parse_holo(h, p.d()).map_err(usage)?;
    let v = p.inner_product(&fp, &gp);
    let record = json!({
        "d": p.d(),
        "lambda": p.lambda(),
        "n": p.n(),
        "f": fp.to_string(),
        "g": gp.to_string(),
        "re": v.re,
        "im": v.im,
    });
    let mut out = sink(g)?;
    write_record(&mut *out, g.format, &record)?;
    out.flush()?;
    Ok(0)
}

fn spectrum_summary(m: &OperatorMatrix, method: Method) -> CliResult<Value> {
    let p = m.params();
    let mut s = json!({
        "method": method_name(method),
        "d": p.d(),
        "lambda": p.lambda(),
        "n": p.n(),
        "M": m.degree(),
        "dim": m.dim(),
    });
    let hermitian = m.is_hermitian(1e-12);
    s["hermitian"] = json!(hermitian);
    if hermitian {
        let eig = m.hermitian_eigenvalues()?;
        let min = eig.iter().copied().fold(f64::INFINITY, f64::min);
        let max = eig.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        s["min_eigenvalue"] = json!(min);
        s["max_eigenvalue"] = json!(max);
    }
    let op = m.operator_norm_report(1e-3)?;
    s["operator_norm"] = json!(op.value);
    s["operator_norm_previous"] = json!(op.previous);
    s["converged"] = json!(op.converged);
    s["hs_norm"] = json!(m.frobenius_norm());
    Ok(s)
}

fn cmd_toeplitz(g: &GlobalArgs, args: &SymbolArgs, method: Method) -> CliResult<i32> {
    let m = build_matrix(g, args, method)?;
    let summary = spectrum_summary(&m, method)?;
    let mut out = sink(g)?;
    match g.format {
        Format::Json => write_matrix_json(&m, &mut out)?,
        Format::Csv => write_matrix_csv(&m, &mut out)?,
    }
    out.flush()?;
    drop(out);
    // Without --out, JSON output is two lines (matrix, summary); a CSV
    // table cannot hold the summary, so it goes to standard error.
    match (g.out.is_some(), g.format) {
        (false, Format::Csv) => eprintln!("summary: {summary}"),
        _ => {
            let mut stdout = std::io::stdout().lock();
            write_record(&mut stdout, g.format, &summary)?;
        }
    }
    Ok(0)
}

fn cmd_berezin(g: &GlobalArgs, args: &SymbolArgs, points: usize, rmax: f64) -> CliResult<i32> {
    let p = space(g)?;
    if points < 2 || !(0.0..1.0).contains(&rmax) {
        return Err(CliError::Usage("need --points >= 2 and 0 <= --rmax < 1".into()));
    }
    let phi = symbol(args, p.d(), None)?;
    if p.c_lambda() == 0.0 {
        warn(&format!("c_lambda = 0 at integer lambda = {} <= d = {}; the transform is zero", p.lambda(), p.d()));
    }
    let r = rule(g);
    let mut rows = Vec::with_capacity(points);
    for i in 0..points {
        let radius = rmax * i as f64 / (points - 1) as f64;
        let mut coords = vec![C64::new(0.0, 0.0); p.d()];
        coords[0] = C64::new(radius, 0.0);
        let z = BallPoint::new(coords)?;
        rows.push((radius, berezin_transform(&phi, &z, &p, &r)?));
    }
    let mut out = sink(g)?;
    match g.format {
        Format::Json => {
            let doc = json!({
                "d": p.d(),
                "lambda": p.lambda(),
                "points": rows.iter().map(|(r, v)| json!({"r": r, "re": v.re, "im": v.im})).collect::<Vec<_>>(),
            });
            serde_json::to_writer(&mut out, &doc)?;
            writeln!(out)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut out);
            w.write_record(["r", "re", "im"])?;
            for (r, v) in &rows {
                w.write_record([r.to_string(), v.re.to_string(), v.im.to_string()])?;
            }
            w.flush()?;
        }
    }
    out.flush()?;
    Ok(0)
}

fn suite_config(g: &GlobalArgs, only: Option<String>, kmax: Option<usize>, instances: Option<usize>) -> CliResult<SuiteConfig> {
    let mut cfg = SuiteConfig { only, ..SuiteConfig::default() };
    cfg.grid = match (g.d, g.lambda) {
        (Some(d), Some(l)) => vec![(d, l)],
        (Some(d), None) => default_grid().into_iter().filter(|&(e, _)| e == d).collect(),
        (None, Some(l)) => (1..=3).map(|d| (d, l)).collect(),
        (None, None) => default_grid(),
    };
    if cfg.grid.is_empty() {
        return Err(CliError::Usage("the default grid only covers d = 1, 2, 3; pass --lambda as well".into()));
    }
    for &(d, l) in &cfg.grid {
        SpaceParams::new(d, l)?;
    }
    if let Some(seed) = g.seed {
        cfg.seed = seed;
    }
    if let Some(k) = kmax {
        cfg.k_max = k;
    }
    if let Some(i) = instances {
        cfg.instances = i;
    }
    if let Some(m) = g.degree {
        cfg.degree = m;
    }
    cfg.rule = rule(g);
    Ok(cfg)
}

fn write_reports_csv(reports: &[VerificationReport], out: &mut dyn Write) -> CliResult<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["identity_id", "d", "lambda", "lhs_re", "lhs_im", "rhs_re", "rhs_im", "abs_err", "rel_err", "tolerance", "policy", "pass", "inconclusive", "seed"])?;
    for r in reports {
        let param = |k: &str| io::report_json(r)["params"].get(k).map_or(String::new(), Value::to_string);
        w.write_record([
            r.identity_id.clone(),
            param("d"),
            param("lambda"),
            r.lhs.re.to_string(),
            r.lhs.im.to_string(),
            r.rhs.re.to_string(),
            r.rhs.im.to_string(),
            r.abs_err.to_string(),
            r.rel_err.to_string(),
            r.tolerance.to_string(),
            r.policy.to_string(),
            r.pass.to_string(),
            r.inconclusive.to_string(),
            r.seed.map_or(String::new(), |s| s.to_string()),
        ])?;
    }
    w.flush()?;
    Ok(())
}

fn cmd_verify(g: &GlobalArgs, only: Option<String>, kmax: Option<usize>, instances: Option<usize>) -> CliResult<i32> {
    let cfg = suite_config(g, only, kmax, instances)?;
    let jobs = plan(&cfg)?;
    // Each job carries its own seed, so the reports do not depend on scheduling.
    let mut reports: Vec<VerificationReport> = jobs.par_iter().map(|j| run_job(j, &cfg)).collect();
    sort_reports(&mut reports);
    let mut out = sink(g)?;
    match g.format {
        Format::Json => write_reports_jsonl(&reports, &mut out)?,
        Format::Csv => write_reports_csv(&reports, &mut out)?,
    }
    out.flush()?;
    let failed = reports.iter().filter(|r| r.failed()).count();
    let inconclusive = reports.iter().filter(|r| r.inconclusive).count();
    eprintln!("{} reports: {} failed, {} inconclusive", reports.len(), failed, inconclusive);
    Ok(if failed == 0 { 0 } else { 1 })
}

fn cmd_norm(g: &GlobalArgs, f: Option<&str>, args: &SymbolArgs, method: Method) -> CliResult<i32> {
    let record = match f {
        Some(src) => {
            let p = space(g)?;
            let fp = parse_holo(src, p.d()).map_err(usage)?;
            json!({
                "kind": "function",
                "d": p.d(),
                "lambda": p.lambda(),
                "f": fp.to_string(),
                "norm": p.norm_sq(&fp).sqrt(),
            })
        }
        None => {
            let m = build_matrix(g, args, method)?;
            let op = m.operator_norm_report(1e-3)?;
            let hs = m.hs_norm_report(1e-3);
            json!({
                "kind": "operator",
                "method": method_name(method),
                "d": m.params().d(),
                "lambda": m.params().lambda(),
                "M": m.degree(),
                "operator_norm": op.value,
                "operator_norm_previous": op.previous,
                "operator_converged": op.converged,
                "hs_norm": hs.value,
                "hs_norm_previous": hs.previous,
                "hs_converged": hs.converged,
            })
        }
    };
    let mut out = sink(g)?;
    write_record(&mut *out, g.format, &record)?;
    out.flush()?;
    Ok(0)
}
