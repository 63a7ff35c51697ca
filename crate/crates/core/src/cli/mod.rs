//! Command-line front end: configuration layering, verification suites and
//! JSON-lines reports.
//!
//! Exit codes: `0` when every record passes, `1` when some record fails,
//! `2` for usage and configuration errors.

pub mod config;
pub mod report;
pub mod suites;

use std::ffi::OsString;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub use config::{process_env, ConfigLayer, RunConfig};
pub use report::{Record, Report};
pub use suites::{run_suites, Suite};

use crate::classify::{invariants, LChoice, ReprSpec};
use crate::error::{Error, Result};
use crate::group::GroupElt;
use crate::induced::{apply_delta_theta, apply_hecke_t, apply_prime, apply_theta_prime, InducedCase, InducedFn};
use crate::padic::CycScalar;
use crate::symbolic::{divides, parse_param, whittaker_seq, zeta_closed, zeta_series, ParamScalar};

pub const EXIT_PASS: u8 = 0;
pub const EXIT_FAIL: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

#[derive(Parser, Debug)]
#[command(name = "u21", version, about = "Exact newform computations for unramified U(2,1)")]
struct Cli {
    #[command(flatten)]
    common: CommonArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct CommonArgs {
    /// Residue characteristic (an odd prime).
    #[arg(long, global = true)]
    p: Option<u64>,
    /// Absolute p-adic precision M.
    #[arg(long, global = true)]
    precision: Option<u32>,
    /// Number of series coefficients.
    #[arg(long, global = true)]
    terms: Option<usize>,
    /// Seed for the sampled checks.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Random samples per sampled check.
    #[arg(long, global = true)]
    samples: Option<usize>,
    /// Directory receiving the report.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// A `key=value` configuration file.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Conductor, L-factor, epsilon factor and divisibility bound of a case.
    Classify(ClassifyArgs),
    /// The zeta integral from Hecke eigenvalues.
    Zeta(ZetaArgs),
    /// Run verification suites.
    Verify(VerifyArgs),
    /// Evaluate a newform, or an operator applied to it, at a group element.
    Eval(EvalArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CaseTag {
    UnramifiedPs,
    IrreduciblePs,
    Steinberg,
    Ru2,
    Ru3,
    Ramified,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum LArg {
    One,
    Trivial,
}

#[derive(Args, Debug)]
struct ClassifyArgs {
    #[arg(long, value_enum)]
    case: CaseTag,
    /// `μ₁(ϖ)` for the principal series cases, e.g. `2` or `3/2`.
    #[arg(long, allow_hyphen_values = true)]
    a: Option<String>,
    /// Conductor of `μ₂`.
    #[arg(long, default_value_t = 0)]
    c: u32,
    /// Conductor of the representation, where it is an input.
    #[arg(long)]
    n: Option<u32>,
    #[arg(long, value_enum)]
    l: Option<LArg>,
    /// The residue field size; defaults to p, and may be the symbol `q`.
    #[arg(long, allow_hyphen_values = true)]
    q: Option<String>,
}

#[derive(Args, Debug)]
struct ZetaArgs {
    #[arg(long, allow_hyphen_values = true)]
    nu: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<String>,
    /// Residue field size; defaults to p.
    #[arg(long, allow_hyphen_values = true)]
    q: Option<String>,
    /// Keep unspecified parameters as symbols instead of requiring values.
    #[arg(long)]
    symbolic: bool,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Suites to run; all of them when omitted.
    #[arg(long = "suite")]
    suites: Vec<String>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum EvalCase {
    Ru2,
    Ru3,
    Steinberg,
    Irreducible,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum EvalOp {
    F,
    Theta,
    Prime,
    Hecke,
    Delta,
}

#[derive(Args, Debug)]
struct EvalArgs {
    #[arg(long, value_enum)]
    case: EvalCase,
    #[arg(long, default_value_t = 1)]
    c: u32,
    /// `μ₁(ϖ)` for the irreducible case, as `num/den`.
    #[arg(long, default_value = "2", allow_hyphen_values = true)]
    a: String,
    /// `e`, `zeta^k` or `gamma_i`.
    #[arg(long, default_value = "e")]
    at: String,
    #[arg(long, value_enum, default_value = "f")]
    op: EvalOp,
    /// Value of the unknown `U`, as `num/den` or `zeta_m^k`.
    #[arg(long, allow_hyphen_values = true)]
    gamma_value: Option<String>,
}

/// Runs the command line and returns the process exit code.
pub fn run<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with_env(args, &process_env())
}

/// As [`run`], with the `U21_*` variables given explicitly.
pub fn run_with_env<I, T>(args: I, env: &std::collections::BTreeMap<String, String>) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let _ = e.print();
            return code;
        }
    };
    let cfg = match resolve_config(&cli.common, env) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    let start = Instant::now();
    let (name, records) = match execute(&cli.command, &cfg) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    let report = Report::new(name, cfg, records, start.elapsed());
    for r in report.records() {
        println!("{} {}: {}", if r.pass { "PASS" } else { "FAIL" }, r.name, r.computed);
    }
    let failed = report.failures().count();
    println!("{} records, {} failed", report.records().len(), failed);
    match report.write() {
        Ok(path) => println!("report: {}", path.display()),
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    }
    if report.passed() {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}

fn resolve_config(common: &CommonArgs, env: &std::collections::BTreeMap<String, String>) -> Result<RunConfig> {
    let file = match &common.config {
        Some(path) => ConfigLayer::from_file(path)?,
        None => ConfigLayer::default(),
    };
    let flags = ConfigLayer {
        p: common.p,
        precision: common.precision,
        terms: common.terms,
        seed: common.seed,
        samples: common.samples,
        out_dir: common.out.clone(),
    };
    RunConfig::resolve(&file, &ConfigLayer::from_env(env)?, &flags)
}

/// Runs a subcommand, returning the report name and its records. Errors are
/// usage errors; failed checks are records.
fn execute(cmd: &Command, cfg: &RunConfig) -> Result<(&'static str, Vec<Record>)> {
    match cmd {
        Command::Verify(args) => {
            let suites = if args.suites.is_empty() {
                Suite::ALL.to_vec()
            } else {
                args.suites.iter().map(|s| s.parse()).collect::<Result<Vec<Suite>>>()?
            };
            Ok(("verify", run_suites(&suites, cfg)))
        }
        Command::Classify(args) => Ok(("classify", classify(args, cfg)?)),
        Command::Zeta(args) => Ok(("zeta", zeta(args, cfg)?)),
        Command::Eval(args) => Ok(("eval", eval(args, cfg)?)),
    }
}

fn q_value(given: &Option<String>, cfg: &RunConfig) -> Result<ParamScalar> {
    match given {
        Some(s) => parse_param(s),
        None => Ok(ParamScalar::from_i64(cfg.p as i64)),
    }
}

fn classify(args: &ClassifyArgs, cfg: &RunConfig) -> Result<Vec<Record>> {
    let q = q_value(&args.q, cfg)?;
    let a = || -> Result<ParamScalar> {
        parse_param(args.a.as_deref().ok_or_else(|| Error::InvalidParams("--a is required for this case".into()))?)
    };
    let spec = match args.case {
        CaseTag::UnramifiedPs => ReprSpec::UnramifiedPs { a: a()? },
        CaseTag::IrreduciblePs => ReprSpec::IrredPsUnramMu2 { a: a()?, c: args.c, n: args.n.unwrap_or(args.c) },
        CaseTag::Steinberg => ReprSpec::Steinberg,
        CaseTag::Ru2 => ReprSpec::Ru2 { c: args.c },
        CaseTag::Ru3 => ReprSpec::Ru3 { c: args.c },
        CaseTag::Ramified => ReprSpec::RamifiedOrSupercuspidal {
            l: match args.l.ok_or_else(|| Error::InvalidParams("--l is required for the ramified case".into()))? {
                LArg::One => LChoice::One,
                LArg::Trivial => LChoice::TrivialL,
            },
            n: args.n.ok_or_else(|| Error::InvalidParams("--n is required for the ramified case".into()))?,
        },
    };
    let inv = invariants(&spec, &q)?;
    let inputs = format!("{spec}, q={q}");
    let base = format!("classify/{}", spec.tag());
    let div = divides(&inv.l, &inv.bound)?;
    Ok(vec![
        Record::new(format!("{base}/conductor"), "conductor", inputs.clone(), inv.conductor, inv.conductor),
        Record::new(format!("{base}/l-factor"), "L-factor", inputs.clone(), &inv.l, &inv.l),
        Record::new(format!("{base}/epsilon"), "epsilon factor", inputs.clone(), &inv.epsilon, &inv.epsilon),
        Record::with_status(
            format!("{base}/bound"),
            format!("L divides the {:?} bound {}", inv.bound_kind, inv.bound),
            inputs,
            "divides",
            if div { "divides" } else { "does not divide" },
            div,
        ),
    ])
}

fn symbol_or(given: &Option<String>, symbol: ParamScalar, symbolic: bool, flag: &str) -> Result<ParamScalar> {
    match (given, symbolic) {
        (Some(s), _) => parse_param(s),
        (None, true) => Ok(symbol),
        (None, false) => Err(Error::InvalidParams(format!("--{flag} is required without --symbolic"))),
    }
}

fn zeta(args: &ZetaArgs, cfg: &RunConfig) -> Result<Vec<Record>> {
    let nu = symbol_or(&args.nu, ParamScalar::nu(), args.symbolic, "nu")?;
    let lambda = symbol_or(&args.lambda, ParamScalar::lambda(), args.symbolic, "lambda")?;
    let q = match (&args.q, args.symbolic) {
        (None, true) => ParamScalar::q(),
        _ => q_value(&args.q, cfg)?,
    };
    let inputs = format!("nu={nu}, lambda={lambda}, q={q}, terms={}", cfg.terms);
    let closed = zeta_closed(&nu, &lambda, &q)?;
    let expanded = closed.series_expand(cfg.terms)?;
    let series = zeta_series(&whittaker_seq(&nu, &lambda, &q, cfg.terms)?, &q)?;
    let direct: Vec<ParamScalar> = (0..=cfg.terms).map(|i| series.num().coeff(i as i32)).collect();
    let show = |v: &[ParamScalar]| v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", ");
    Ok(vec![
        Record::new("zeta/closed-form", "closed form of the zeta integral", inputs.clone(), &closed, &closed),
        Record::new(
            "zeta/series",
            "the closed form expands to sum c_i q^(2i) X^i",
            inputs,
            show(&direct),
            show(&expanded),
        ),
    ])
}

/// Parses `num/den`, an integer, or `zeta_m^k`.
pub fn parse_cyc(s: &str) -> Result<CycScalar> {
    let s = s.trim();
    if let Some(rest) = s.strip_prefix("zeta_") {
        let (m, k) = rest.split_once('^').unwrap_or((rest, "1"));
        let bad = || Error::Parse { pos: 0, msg: format!("bad root of unity {s:?}") };
        let m: u32 = m.parse().map_err(|_| bad())?;
        let k: i64 = k.parse().map_err(|_| bad())?;
        if m == 0 {
            return Err(bad());
        }
        return Ok(CycScalar::root_of_unity(m, k));
    }
    let v = parse_param(s)?;
    v.to_rational()
        .map(CycScalar::from_rational)
        .ok_or_else(|| Error::Parse { pos: 0, msg: format!("{s:?} is not a rational number") })
}

fn parse_point(s: &str, ctx: &crate::padic::PrecisionContext) -> Result<GroupElt> {
    let s = s.trim();
    let bad = || Error::Parse { pos: 0, msg: format!("expected e, zeta^k or gamma_i, got {s:?}") };
    if s == "e" {
        return Ok(GroupElt::identity(ctx));
    }
    if let Some(k) = s.strip_prefix("zeta^") {
        return Ok(GroupElt::zeta_pow(ctx, k.parse().map_err(|_| bad())?));
    }
    if s == "zeta" {
        return Ok(GroupElt::zeta(ctx));
    }
    if let Some(i) = s.strip_prefix("gamma_") {
        return Ok(GroupElt::gamma(ctx, i.parse().map_err(|_| bad())?));
    }
    Err(bad())
}

fn eval(args: &EvalArgs, cfg: &RunConfig) -> Result<Vec<Record>> {
    let ctx = cfg.context()?;
    let case = match args.case {
        EvalCase::Ru2 => InducedCase::Ru2Unramified,
        EvalCase::Ru3 => InducedCase::Ru3 { c: args.c },
        EvalCase::Steinberg => InducedCase::Steinberg,
        EvalCase::Irreducible => {
            let a = parse_param(&args.a)?
                .to_rational()
                .ok_or_else(|| Error::InvalidParams(format!("a = {} must be rational", args.a)))?;
            let conv = |x: &num_bigint::BigInt| {
                i64::try_from(x).map_err(|_| Error::UnsupportedRange(format!("a = {a}")))
            };
            InducedCase::Irreducible { a_num: conv(a.numer())?, a_den: conv(a.denom())?, c: args.c }
        }
    };
    let mut f = case.newform(&ctx)?;
    if let Some(u) = &args.gamma_value {
        f = f.with_gamma_value(parse_cyc(u)?);
    }
    let g = parse_point(&args.at, &ctx)?;
    let h: InducedFn = match args.op {
        EvalOp::F => f,
        EvalOp::Theta => apply_theta_prime(&f)?,
        EvalOp::Prime => apply_prime(&apply_theta_prime(&f)?)?,
        EvalOp::Hecke => apply_hecke_t(&apply_theta_prime(&f)?)?,
        EvalOp::Delta => apply_delta_theta(&f)?,
    };
    let op = format!("{:?}", args.op).to_lowercase();
    let name = format!("eval/{}/{op}/{}", case.name(), args.at);
    let inputs = format!("p={}, M={}, case={}, op={op}, at={}", ctx.p(), ctx.precision(), case.name(), args.at);
    Ok(vec![match h.eval(&g) {
        Ok(v) => match v.value() {
            Ok(form) => Record::new(name, "value of the evaluated function", inputs, &form, &form),
            Err(e) => Record::error(name, "value of the evaluated function", inputs, &e),
        },
        Err(e) => Record::error(name, "value of the evaluated function", inputs, &e),
    }])
}
