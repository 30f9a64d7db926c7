//! Command-line front end.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::Parser;

use crate::error::{Error, Result};
use crate::exchange::{global_relation_check, transfer_commutator};
use crate::models::{build, ModelId, RModel};
use crate::param::ParamPoint;
use crate::report::{write_report, Report};
use crate::sampling::{Sampler, SamplingConfig};
use crate::tensor::C64;
use crate::verifier::{run_check, CheckId, CheckReport, Tolerances};

/// Relative threshold below which a normal-ordered difference counts as zero.
pub const EXCHANGE_TOLERANCE: f64 = 1e-8;

/// Selectable check: a catalogue identity or an exchange-engine run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Check {
    Identity(CheckId),
    /// Transfer commutator with one monodromy letter.
    Exchange1,
    /// Transfer commutator on the open two-site chain.
    Exchange2,
    /// Global relation on the open two-site chain.
    Global2,
}

impl Check {
    pub fn all() -> Vec<Check> {
        CheckId::ALL
            .into_iter()
            .map(Check::Identity)
            .chain([Check::Exchange1, Check::Exchange2, Check::Global2])
            .collect()
    }

    pub fn name(self) -> &'static str {
        match self {
            Check::Identity(c) => c.name(),
            Check::Exchange1 => "exchange1",
            Check::Exchange2 => "exchange2",
            Check::Global2 => "global2",
        }
    }

    pub fn describe(self) -> &'static str {
        match self {
            Check::Identity(c) => c.describe(),
            Check::Exchange1 => "[t(l), t(m)] = 0 for one monodromy letter",
            Check::Exchange2 => "[t(l), t(m)] = 0 on the open two-site chain",
            Check::Global2 => "A T1 B T2 = T2 C T1 D on the open two-site chain",
        }
    }

    /// Two-site runs exceed the memory bound for the 8-dimensional model.
    fn excluded_for(self, id: ModelId) -> bool {
        id == ModelId::Gl44 && matches!(self, Check::Exchange2 | Check::Global2)
    }
}

impl std::str::FromStr for Check {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "exchange1" => Ok(Check::Exchange1),
            "exchange2" => Ok(Check::Exchange2),
            "global2" => Ok(Check::Global2),
            _ => s.parse().map(Check::Identity),
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "braided-verify", version, about = "Numerical verification of braided r-matrix identities")]
struct Args {
    /// Comma-separated models (csg, cp2, su3so3, gl44) or "all".
    #[arg(long, default_value = "all")]
    model: String,
    /// Comma-separated check ids or "all"; see --list-checks.
    #[arg(long, default_value = "all")]
    checks: String,
    /// Number of sampled parameter points.
    #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(u64).range(1..))]
    samples: u64,
    /// Seed of the ChaCha8 sample stream.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Relative tolerance of exact identities [default: 1e-10].
    #[arg(long)]
    tol_exact: Option<f64>,
    /// Tolerance of the λ → 0, ∞ limits [default: 1e-4].
    #[arg(long)]
    tol_limit: Option<f64>,
    /// Tolerance of the q → 1 slopes [default: 1e-5].
    #[arg(long)]
    tol_classical: Option<f64>,
    /// Path of the JSON report.
    #[arg(long)]
    report: Option<PathBuf>,
    /// Print the check ids and exit.
    #[arg(long)]
    list_checks: bool,
    /// Evaluate at one point instead of sampling: p, lambda, mu as "a+bi" literals.
    #[arg(long, num_args = 3, value_names = ["P", "LAMBDA", "MU"], allow_hyphen_values = true)]
    point: Option<Vec<String>>,
}

/// Validated run configuration.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub models: Vec<ModelId>,
    pub checks: Vec<Check>,
    pub samples: usize,
    pub seed: u64,
    pub tolerances: Tolerances,
    pub report_path: Option<PathBuf>,
    pub point: Option<ParamPoint>,
}

fn parse_list<T>(s: &str, all: impl FnOnce() -> Vec<T>, parse: impl Fn(&str) -> Result<T>) -> Result<Vec<T>>
where
    T: Ord + Copy,
{
    if s.trim().eq_ignore_ascii_case("all") {
        return Ok(all());
    }
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let v = parse(part)?;
        if !out.contains(&v) {
            out.push(v);
        }
    }
    if out.is_empty() {
        return Err(Error::Config(format!("empty selection {s:?}")));
    }
    Ok(out)
}

/// Parses a complex literal such as `0.3-1.2i`.
pub fn parse_complex(s: &str) -> Result<C64> {
    s.trim().parse::<C64>().map_err(|_| Error::Config(format!("invalid complex literal {s:?}")))
}

fn positive(name: &str, v: Option<f64>, default: f64) -> Result<f64> {
    match v {
        None => Ok(default),
        Some(t) if t.is_finite() && t > 0.0 => Ok(t),
        Some(t) => Err(Error::Config(format!("{name} must be positive, got {t}"))),
    }
}

impl RunConfig {
    fn from_args(a: Args) -> Result<Self> {
        let d = Tolerances::default();
        let point = match a.point {
            Some(v) => Some(ParamPoint::new(parse_complex(&v[0])?, parse_complex(&v[1])?, parse_complex(&v[2])?)),
            None => None,
        };
        Ok(Self {
            models: parse_list(&a.model, || ModelId::ALL.to_vec(), str::parse)?,
            checks: parse_list(&a.checks, Check::all, str::parse)?,
            samples: usize::try_from(a.samples).map_err(|_| Error::Config("sample count too large".into()))?,
            seed: a.seed,
            tolerances: Tolerances {
                exact: positive("--tol-exact", a.tol_exact, d.exact)?,
                limit: positive("--tol-limit", a.tol_limit, d.limit)?,
                classical: positive("--tol-classical", a.tol_classical, d.classical)?,
            },
            report_path: a.report,
            point,
        })
    }
}

fn exchange_report(model: &dyn RModel, check: Check, points: &[ParamPoint]) -> CheckReport {
    let rows = points
        .iter()
        .map(|pt| {
            let r = match check {
                Check::Exchange1 => transfer_commutator(model, pt, 1),
                Check::Exchange2 => transfer_commutator(model, pt, 2),
                _ => global_relation_check(model, pt),
            };
            (*pt, r.ok().map(|r| r.relative))
        })
        .collect();
    CheckReport::from_samples(model.id().name(), check.name(), EXCHANGE_TOLERANCE, None, rows)
}

/// Runs every selected (model, check) pair; samples are drawn per model from a fresh seeded stream.
pub fn run(cfg: &RunConfig) -> Report {
    let mut report = Report::new(cfg.seed, cfg.tolerances);
    for &id in &cfg.models {
        let model = build(id);
        let points = match cfg.point {
            Some(pt) => Ok(vec![pt]),
            None => Sampler::new(cfg.seed).points(model.as_ref(), cfg.samples, &SamplingConfig::for_model(id)),
        };
        let points = match points {
            Ok(p) => p,
            Err(e) => {
                report.warnings.push(format!("{id}: sampling failed: {e}"));
                for &check in &cfg.checks {
                    report.results.push(CheckReport::from_samples(id.name(), check.name(), f64::NAN, None, Vec::new()));
                    report.results.last_mut().expect("pushed").passed = false;
                }
                continue;
            }
        };
        for &check in &cfg.checks {
            if check.excluded_for(id) {
                report.warnings.push(format!(
                    "{id}: {} excluded (two-site coefficient tensors exceed the memory bound)",
                    check.name()
                ));
                continue;
            }
            match check {
                Check::Identity(c) => match run_check(model.as_ref(), c, &points, &cfg.tolerances) {
                    Some(r) => report.results.push(r),
                    None => report.warnings.push(format!("{id}: {c} is not a property of this model; skipped")),
                },
                _ => report.results.push(exchange_report(model.as_ref(), check, &points)),
            }
        }
    }
    report
}

fn list_checks(out: &mut dyn Write) -> std::io::Result<()> {
    for c in Check::all() {
        writeln!(out, "{:<16} {}", c.name(), c.describe())?;
    }
    Ok(())
}

fn summary(report: &Report, out: &mut dyn Write) -> std::io::Result<()> {
    for r in &report.results {
        writeln!(
            out,
            "{:<7} {:<16} max_relative={:<10.3e} tolerance={:<8.1e} {}",
            r.model,
            r.check,
            r.max_relative,
            r.tolerance,
            if r.passed { "PASS" } else { "FAIL" }
        )?;
    }
    for w in &report.warnings {
        writeln!(out, "warning: {w}")?;
    }
    Ok(())
}

/// Entry point; returns the process exit code (0 all passed, 1 failure, 2 configuration error).
pub fn main_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = match Args::try_parse_from(argv) {
        Ok(a) => a,
        Err(e) => {
            use clap::error::ErrorKind;
            return if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{}", e.render());
                0
            } else {
                let _ = write!(err, "{}", e.render());
                2
            };
        }
    };
    if args.list_checks {
        return if list_checks(out).is_ok() { 0 } else { 1 };
    }
    let cfg = match RunConfig::from_args(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = writeln!(err, "error: {e}\n\nFor more information, try '--help'.");
            return 2;
        }
    };
    let report = run(&cfg);
    let _ = summary(&report, out);
    if let Some(path) = &cfg.report_path {
        if let Err(e) = write_report(&report, path) {
            let _ = writeln!(err, "error: {e}");
            return 1;
        }
    }
    if report.passed() {
        0
    } else {
        1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_literals() {
        assert_eq!(parse_complex("0.3-1.5i").unwrap(), C64::new(0.3, -1.5));
        assert_eq!(parse_complex("2").unwrap(), C64::new(2.0, 0.0));
        assert_eq!(parse_complex("-i").unwrap(), C64::new(0.0, -1.0));
        assert!(parse_complex("1/2").is_err());
    }

    #[test]
    fn check_names_round_trip() {
        for c in Check::all() {
            assert_eq!(c.name().parse::<Check>().unwrap(), c);
        }
    }
}
