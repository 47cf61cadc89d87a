//! The `affine-mix` command line.
//!
//! CSV-producing subcommands write their table to `--out` and the JSON run summary to the
//! same path with a `.json` extension; without `--out` the table goes to standard output and
//! the summary to the diagnostic stream. JSON-only subcommands write their summary to `--out`
//! or standard output.

use super::output::{fmt_g12, RunSummary};
use super::verify::{run_verify, Level};
use crate::chebotarev::{identity_check_exact, identity_check_mc, weighted_prime_average};
use crate::dist::{
    cutoff_sweep, evolve_direct, konyagin_case, konyagin_survey, l2_distance, loglog_shape, mixing_time,
    support_evolution, total_variation, ASelection, Budget, MixingOptions, NGrid, OrderFloor, StepLaw, SweepConfig,
};
use crate::error::Error;
use crate::harness::SeededRng;
use crate::modfield::{PrimeModulus, Residue};
use crate::poly::{
    count_admissible_roots, count_roots_np, mahler_measure, mahler_suite, roots_mod_p, strip_cyclotomic, ZPoly,
};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INPUT: i32 = 3;
pub const EXIT_BUDGET: i32 = 4;

const DEFAULT_MU: &str = "-1:1/3,0:1/3,1:1/3";

#[derive(Debug, Parser)]
#[command(name = "affine-mix", version, about = "Exact mixing-time laboratory for x -> a x + b over F_p")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Law of x_n for one (p, a, n), one probability per residue.
    Evolve(Flags),
    /// Least n within delta of uniform (TV for q = 1, normalized l^q otherwise).
    MixingTime(Flags),
    /// Exact distances over a grid of primes, multipliers and step counts.
    CutoffSweep(Flags),
    /// Support sizes |S_n| and the diameter D_a(p).
    Support(Flags),
    /// Orbit energies sum [x0 a^i / p]^2 against 1 / (C log log p).
    Konyagin(Flags),
    /// Distinct roots of a polynomial mod p.
    RootCount(Flags),
    /// Log-weighted mean of N_p over a prime window.
    PrimeAverage(Flags),
    /// sum_a ||mu_a^(n)||^2 = E N_p(P1 - P2), exactly or by sampling.
    IdentityCheck(Flags),
    /// Mahler measure of a polynomial or of a product of factors.
    Mahler(Flags),
    /// Removal of monomial and cyclotomic factors.
    Strip(Flags),
    /// Runs the invariant suite; exits 1 on any failure.
    Verify(Flags),
}

/// Every subcommand accepts the same flags and reads the ones it needs.
#[derive(Debug, Clone, Args, Serialize)]
struct Flags {
    /// Step law as value:weight pairs, e.g. 0:1/2,1:1/2
    #[arg(long, allow_hyphen_values = true, default_value = DEFAULT_MU)]
    mu: String,
    #[arg(long)]
    p: Option<u64>,
    #[arg(long = "prime-lo")]
    prime_lo: Option<u64>,
    #[arg(long = "prime-hi")]
    prime_hi: Option<u64>,
    /// Number of primes drawn from the window (default: all of them)
    #[arg(long = "prime-sample")]
    prime_sample: Option<usize>,
    /// Comma-separated multipliers
    #[arg(long, value_delimiter = ',')]
    a: Option<Vec<u64>>,
    /// Number of multipliers drawn per prime
    #[arg(long = "a-sample")]
    a_sample: Option<usize>,
    /// Comma-separated step counts
    #[arg(long, value_delimiter = ',')]
    n: Option<Vec<u64>>,
    /// Step counts c log p / H: entries c, c:H, c:H2, c:H2:ceil, ...
    #[arg(long = "n-grid")]
    n_grid: Option<String>,
    /// Norm index, a real >= 1 or inf
    #[arg(long, value_parser = parse_q)]
    q: Option<f64>,
    #[arg(long)]
    delta: Option<f64>,
    #[arg(long)]
    theta: Option<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    workers: Option<usize>,
    #[arg(long = "budget-p")]
    budget_p: Option<u64>,
    #[arg(long = "budget-n")]
    budget_n: Option<u64>,
    #[arg(long, default_value = "quick")]
    level: String,
    /// Polynomial as comma-separated coefficients, low degree first; repeat for a factor list
    #[arg(long, allow_hyphen_values = true)]
    poly: Vec<String>,
    /// Starting state (default 0)
    #[arg(long)]
    x0: Option<u64>,
    /// Sample count for sampled checks and surveys
    #[arg(long)]
    samples: Option<u64>,
    /// Surveyed constant (Konyagin C, default 200; Dobrowolski c, default 1)
    #[arg(long)]
    constant: Option<f64>,
}

fn parse_q(s: &str) -> Result<f64, String> {
    let q = match s {
        "inf" | "infinity" | "∞" => f64::INFINITY,
        _ => s.parse::<f64>().map_err(|_| format!("'{s}' is not a number"))?,
    };
    if q >= 1.0 {
        Ok(q)
    } else {
        Err(format!("q must be >= 1, got {s}"))
    }
}

enum CliError {
    Usage(String),
    Lib(Error),
    Failed(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Lib(e.into())
    }
}

type CliResult = Result<(), CliError>;

struct Io<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

impl Flags {
    fn law(&self) -> Result<StepLaw, CliError> {
        Ok(StepLaw::parse(&self.mu)?)
    }

    fn budget(&self) -> Budget {
        let d = Budget::default();
        Budget { max_p: self.budget_p.unwrap_or(d.max_p), max_n: self.budget_n.unwrap_or(d.max_n) }
    }

    fn prime(&self) -> Result<PrimeModulus, CliError> {
        let p = self.p.ok_or_else(|| CliError::Usage("--p is required".into()))?;
        Ok(PrimeModulus::new(p)?)
    }

    fn single_a(&self, p: PrimeModulus) -> Result<Residue, CliError> {
        match self.a.as_deref() {
            Some([a]) => Ok(Residue::new(*a, p)?),
            Some(_) => Err(CliError::Usage("exactly one --a value is expected".into())),
            None => Err(CliError::Usage("--a is required".into())),
        }
    }

    fn single_n(&self) -> Result<u64, CliError> {
        match self.n.as_deref() {
            Some([n]) => Ok(*n),
            Some(_) => Err(CliError::Usage("exactly one --n value is expected".into())),
            None => Err(CliError::Usage("--n is required".into())),
        }
    }

    fn x0(&self, p: PrimeModulus) -> Result<Residue, CliError> {
        Ok(Residue::new(self.x0.unwrap_or(0), p)?)
    }

    fn window(&self) -> Result<(u64, u64), CliError> {
        match (self.prime_lo, self.prime_hi, self.p) {
            (Some(lo), Some(hi), _) => Ok((lo, hi)),
            (None, None, Some(p)) => Ok((p, p)),
            _ => Err(CliError::Usage("give --prime-lo and --prime-hi, or --p".into())),
        }
    }

    fn polys(&self) -> Result<Vec<ZPoly>, CliError> {
        if self.poly.is_empty() {
            return Err(CliError::Usage("--poly is required".into()));
        }
        Ok(self.poly.iter().map(|s| s.parse()).collect::<crate::Result<Vec<ZPoly>>>()?)
    }

    fn one_poly(&self) -> Result<ZPoly, CliError> {
        let mut v = self.polys()?;
        if v.len() != 1 {
            return Err(CliError::Usage("exactly one --poly is expected".into()));
        }
        Ok(v.remove(0))
    }

    fn config(&self, command: &str) -> serde_json::Value {
        let mut v = serde_json::to_value(self).unwrap_or_default();
        if let Some(o) = v.as_object_mut() {
            o.insert("command".into(), json!(command));
        }
        v
    }
}

/// Writes a CSV table and its summary (see the module docs for placement).
fn emit_table(io: &mut Io, out: Option<&Path>, table: &str, summary: &RunSummary) -> CliResult {
    match out {
        Some(path) => {
            std::fs::write(path, table)?;
            std::fs::write(path.with_extension("json"), summary.to_json())?;
        }
        None => {
            io.out.write_all(table.as_bytes())?;
            io.err.write_all(summary.to_json().as_bytes())?;
        }
    }
    Ok(())
}

fn emit_json(io: &mut Io, out: Option<&Path>, summary: &RunSummary) -> CliResult {
    match out {
        Some(path) => std::fs::write(path, summary.to_json())?,
        None => io.out.write_all(summary.to_json().as_bytes())?,
    }
    Ok(())
}

fn cmd_evolve(f: &Flags, io: &mut Io) -> CliResult {
    let mu = f.law()?;
    let p = f.prime()?;
    let a = f.single_a(p)?;
    let n = f.single_n()?;
    let d = evolve_direct(&mu, p, a, n, f.x0(p)?, &f.budget())?;
    let mut table = String::from("x,prob\n");
    for (x, w) in d.probs().iter().enumerate() {
        let _ = writeln!(table, "{x},{}", fmt_g12(*w));
    }
    let l2 = l2_distance(&d);
    let results = json!({
        "p": p.get(), "a": a.value(), "n": n,
        "tv": total_variation(&d), "l2_normalized": l2.normalized, "p_l2sq": l2.p_l2_sq,
        "support_size": d.support_size(),
    });
    emit_table(io, f.out.as_deref(), &table, &RunSummary::new(f.config("evolve"), results))
}

fn cmd_mixing_time(f: &Flags, io: &mut Io) -> CliResult {
    let mu = f.law()?;
    let p = f.prime()?;
    let q = f.q.unwrap_or(1.0);
    let delta = f.delta.unwrap_or(0.25);
    let multipliers = f.a.clone().ok_or_else(|| CliError::Usage("--a is required".into()))?;
    let budget = f.budget();
    let opts = MixingOptions { ceiling: budget.max_n, budget, x0: f.x0(p)? };
    let mut results = Vec::new();
    let mut failures = Vec::new();
    for a in multipliers {
        let a = Residue::new(a, p)?;
        match mixing_time(&mu, p, a, q, delta, &opts) {
            Ok(r) => {
                let mut v = serde_json::to_value(&r).unwrap_or_default();
                if q == 2.0 {
                    let shape = loglog_shape(&mu, p, delta);
                    v["loglog_shape"] = json!(shape);
                    v["fitted_constant"] = json!(r.t_mix as f64 / shape);
                }
                results.push(v);
            }
            Err(Error::Resource(msg)) => failures.push(json!({"a": a.value(), "reason": msg})),
            Err(e) => return Err(e.into()),
        }
    }
    let all_failed = results.is_empty() && !failures.is_empty();
    let summary = RunSummary::new(f.config("mixing-time"), results).with_failures(&failures);
    emit_json(io, f.out.as_deref(), &summary)?;
    if all_failed {
        return Err(CliError::Lib(Error::Resource("no mixing within budget".into())));
    }
    Ok(())
}

fn cmd_cutoff_sweep(f: &Flags, io: &mut Io) -> CliResult {
    let (lo, hi) = f.window()?;
    let mut cfg = SweepConfig::new(f.law()?, lo, hi);
    cfg.prime_sample = f.prime_sample;
    cfg.a = match (&f.a, f.a_sample) {
        (Some(_), Some(_)) => return Err(CliError::Usage("give --a or --a-sample, not both".into())),
        (Some(a), None) => ASelection::Explicit(a.clone()),
        (None, Some(0)) => ASelection::All,
        (None, Some(k)) => ASelection::Sample(k),
        (None, None) => ASelection::Sample(30),
    };
    cfg.grid = match (&f.n, &f.n_grid) {
        (Some(_), Some(_)) => return Err(CliError::Usage("give --n or --n-grid, not both".into())),
        (Some(n), None) => NGrid::Explicit(n.clone()),
        (None, Some(g)) => NGrid::parse_rules(g)?,
        (None, None) => NGrid::default(),
    };
    cfg.theta = f.theta.unwrap_or(1.0);
    cfg.seed = f.seed;
    cfg.budget = f.budget();
    cfg.workers = f.workers;
    let outcome = cutoff_sweep(&cfg)?;
    let results = json!({ "rows": outcome.records.len(), "cells_failed": outcome.failures.len(), "sweep": cfg });
    let summary = RunSummary::new(f.config("cutoff-sweep"), results).with_failures(&outcome.failures);
    emit_table(io, f.out.as_deref(), &outcome.to_csv(), &summary)
}

fn cmd_support(f: &Flags, io: &mut Io) -> CliResult {
    let mu = f.law()?;
    let p = f.prime()?;
    let a = f.single_a(p)?;
    let budget = f.budget();
    let n_max = match &f.n {
        Some(_) => f.single_n()?,
        None => budget.max_n,
    };
    let trace = support_evolution(&mu, p, a, n_max, &budget)?;
    let mut table = String::from("n,size\n");
    for (n, s) in trace.sizes.iter().enumerate() {
        let _ = writeln!(table, "{n},{s}");
    }
    let opts = MixingOptions { ceiling: budget.max_n, budget, x0: Residue::ZERO };
    let t2 = mixing_time(&mu, p, a, 2.0, 1.0, &opts).ok().map(|r| r.t_mix);
    let results = json!({
        "diameter": trace.diameter,
        "t2_at_1": t2,
        "diameter_bound": t2.map(|t| 2 * t + 1),
        "bound_holds": match (trace.diameter, t2) { (Some(d), Some(t)) => Some(d <= 2 * t + 1), _ => None },
    });
    emit_table(io, f.out.as_deref(), &table, &RunSummary::new(f.config("support"), results))
}

fn cmd_konyagin(f: &Flags, io: &mut Io) -> CliResult {
    let constant = f.constant.unwrap_or(200.0);
    let survey = if let (Some(_), Some(_)) = (f.p, &f.a) {
        let p = f.prime()?;
        let a = f.single_a(p)?;
        let x0 = Residue::new(f.x0.unwrap_or(1), p)?;
        let case = konyagin_case(p, x0, a, constant)?;
        crate::dist::KonyaginSurvey {
            constant,
            violations: usize::from(!case.holds),
            best_constant: case.implied_constant,
            cases: vec![case],
        }
    } else {
        let (lo, hi) = match (f.prime_lo, f.prime_hi) {
            (Some(lo), Some(hi)) => (lo, hi),
            _ => (10_000, 100_000),
        };
        konyagin_survey(lo, hi, f.samples.unwrap_or(100) as usize, constant, OrderFloor::LogSquared, f.seed)?
    };
    let mut table = String::from("p,x0,a,order_a,m,energy,threshold,holds\n");
    for c in &survey.cases {
        let _ = writeln!(
            table,
            "{},{},{},{},{},{},{},{}",
            c.p,
            c.x0,
            c.a,
            c.order_a,
            c.m,
            fmt_g12(c.energy),
            fmt_g12(c.threshold),
            c.holds
        );
    }
    let violations: Vec<_> = survey.cases.iter().filter(|c| !c.holds).collect();
    let results = json!({
        "constant": constant, "cases": survey.cases.len(),
        "violations": survey.violations, "best_constant": survey.best_constant,
    });
    let summary = RunSummary::new(f.config("konyagin"), results).with_failures(&violations);
    emit_table(io, f.out.as_deref(), &table, &summary)
}

fn cmd_root_count(f: &Flags, io: &mut Io) -> CliResult {
    let q = f.one_poly()?;
    let p = f.prime()?;
    let rc = count_roots_np(&q, p)?;
    let mut results = json!({ "p": p.get(), "polynomial": q.to_string(), "count": rc.count, "vanishing": rc.vanishing });
    if !rc.vanishing {
        results["roots"] = json!(roots_mod_p(&q, p)?);
    }
    if let Some(n) = &f.n {
        let n = n.first().copied().unwrap_or(0);
        results["n"] = json!(n);
        results["admissible"] = json!(count_admissible_roots(&q, p, n)?.count);
    }
    emit_json(io, f.out.as_deref(), &RunSummary::new(f.config("root-count"), results))
}

fn cmd_prime_average(f: &Flags, io: &mut Io) -> CliResult {
    let q = f.one_poly()?;
    let (lo, hi) = match (f.prime_lo, f.prime_hi) {
        (Some(lo), Some(hi)) => (lo, hi),
        _ => return Err(CliError::Usage("--prime-lo and --prime-hi are required".into())),
    };
    let avg = weighted_prime_average(&q, lo, hi)?;
    let failures: Vec<_> = avg.excluded.iter().map(|p| json!({"p": p, "reason": "vanishing reduction"})).collect();
    let summary = RunSummary::new(f.config("prime-average"), avg.summary()).with_failures(&failures);
    emit_table(io, f.out.as_deref(), &avg.to_csv(), &summary)
}

fn cmd_identity_check(f: &Flags, io: &mut Io) -> CliResult {
    let mu = f.law()?;
    let p = f.prime()?;
    let n = f.single_n()?;
    let budget = f.budget();
    let report = match f.samples {
        None => match identity_check_exact(&mu, p, n, &budget) {
            Err(Error::Resource(msg)) => {
                log::warn!("{msg}; falling back to 10000 samples");
                let mut rng = SeededRng::new(f.seed).labelled("identity", &[]);
                identity_check_mc(&mu, p, n, 10_000, &mut rng, &budget)?
            }
            other => other?,
        },
        Some(k) => {
            let mut rng = SeededRng::new(f.seed).labelled("identity", &[]);
            identity_check_mc(&mu, p, n, k, &mut rng, &budget)?
        }
    };
    let passed = report.passed;
    let failures = if passed { vec![] } else { vec![report.clone()] };
    let summary = RunSummary::new(f.config("identity-check"), &report).with_failures(&failures);
    emit_json(io, f.out.as_deref(), &summary)?;
    if passed {
        Ok(())
    } else {
        Err(CliError::Failed(format!("identity discrepancy {}", report.discrepancy)))
    }
}

fn cmd_mahler(f: &Flags, io: &mut Io) -> CliResult {
    let factors = f.polys()?;
    let product = ZPoly::product(&factors);
    let m = mahler_measure(&product)?;
    writeln!(io.out, "{}", fmt_g12(m))?;
    let n = match &f.n {
        Some(_) => f.single_n()?,
        None => product.degree().unwrap_or(0) as u64 + 1,
    };
    let report = mahler_suite(&factors, &f.law()?, n, f.constant.unwrap_or(1.0))?;
    if let Some(path) = f.out.as_deref() {
        std::fs::write(path, RunSummary::new(f.config("mahler"), &report).to_json())?;
    }
    Ok(())
}

fn cmd_strip(f: &Flags, io: &mut Io) -> CliResult {
    let q = f.one_poly()?;
    let s = strip_cyclotomic(&q)?;
    let results = json!({
        "polynomial": q.to_string(),
        "phi": s.phi.to_string(),
        "reduced": s.reduced.to_string(),
        "cyclotomic": s.cyclotomic,
        "monomial_power": s.monomial_power,
    });
    emit_json(io, f.out.as_deref(), &RunSummary::new(f.config("strip"), results))
}

fn cmd_verify(f: &Flags, io: &mut Io) -> CliResult {
    let level: Level = f.level.parse()?;
    let report = run_verify(level);
    for c in &report.checks {
        writeln!(io.out, "{} {}: {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.module, c.name, c.detail)?;
    }
    let failures: Vec<_> = report.checks.iter().filter(|c| !c.passed).collect();
    if let Some(path) = f.out.as_deref() {
        let summary = RunSummary::new(f.config("verify"), &report).with_failures(&failures);
        std::fs::write(path, summary.to_json())?;
    }
    if failures.is_empty() {
        Ok(())
    } else {
        Err(CliError::Failed(format!("{} checks failed", failures.len())))
    }
}

/// Parses `args` (program name first) and runs the subcommand, returning the exit status.
pub fn dispatch<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = out.write_all(text.as_bytes());
                EXIT_OK
            } else {
                let _ = err.write_all(text.as_bytes());
                EXIT_USAGE
            };
        }
    };
    let mut io = Io { out, err };
    let result = match &cli.command {
        Command::Evolve(f) => cmd_evolve(f, &mut io),
        Command::MixingTime(f) => cmd_mixing_time(f, &mut io),
        Command::CutoffSweep(f) => cmd_cutoff_sweep(f, &mut io),
        Command::Support(f) => cmd_support(f, &mut io),
        Command::Konyagin(f) => cmd_konyagin(f, &mut io),
        Command::RootCount(f) => cmd_root_count(f, &mut io),
        Command::PrimeAverage(f) => cmd_prime_average(f, &mut io),
        Command::IdentityCheck(f) => cmd_identity_check(f, &mut io),
        Command::Mahler(f) => cmd_mahler(f, &mut io),
        Command::Strip(f) => cmd_strip(f, &mut io),
        Command::Verify(f) => cmd_verify(f, &mut io),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let (code, msg) = match e {
                CliError::Usage(m) => (EXIT_USAGE, format!("usage error: {m}")),
                CliError::Lib(e @ (Error::Parse(_) | Error::Domain(_))) => (EXIT_INPUT, e.to_string()),
                CliError::Lib(e @ Error::Resource(_)) => (EXIT_BUDGET, e.to_string()),
                CliError::Lib(e) => (EXIT_FAILED, e.to_string()),
                CliError::Failed(m) => (EXIT_FAILED, m),
            };
            let _ = writeln!(io.err, "affine-mix: {msg}");
            code
        }
    }
}
