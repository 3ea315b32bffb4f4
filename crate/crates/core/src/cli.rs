//! Command-line front end. Exit status: 0 success, 1 when any report is
//! `FAIL`, 2 for usage and domain errors.

use std::ffi::OsString;
use std::io::Write;
use std::ops::RangeInclusive;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::approx::Value;
use crate::double_sum::{eval_double_sum, DoubleSumSpec};
use crate::error::{Error, Result};
use crate::hypergeom::{hyp_eval, HypSeriesSpec};
use crate::identities::{registry, sweep, verify, IdentityParams, ParamGrid, Status, VerifyReport};
use crate::rational::Rational;
use crate::report;
use crate::urn::{
    ehrenfest_expected_steps, mabinogion_expected_exact, simulate, SimConfig, UrnChain,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "binratio", version, about = "Double sums of binomial-coefficient ratios")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Plain, global = true)]
    format: Format,
    /// Tolerance added to carried error bounds (also the series stopping tolerance).
    #[arg(long, default_value_t = 1e-9, global = true)]
    tol: f64,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Evaluate Σ_{j≤n} Σ_{i≤j} C(top,i)/C(bottom,j) · weight exactly.
    EvalSum(EvalSumArgs),
    /// Evaluate a 2F1 or 3F2 at a rational argument.
    EvalHyp(EvalHypArgs),
    /// List registered identities.
    IdentityList,
    /// Check one identity at one parameter tuple.
    IdentityVerify(VerifyArgs),
    /// Check one identity over a range of n and a parameter grid.
    IdentitySweep(SweepArgs),
    /// Expected Ehrenfest steps from 0 to `target` white balls among M+1.
    UrnEhrenfest(EhrenfestArgs),
    /// Expected Mabinogion absorption time.
    UrnMabinogion(MabinogionArgs),
    /// Monte-Carlo estimate of a hitting or absorption time.
    UrnSimulate(SimulateArgs),
}

fn rational(s: &str) -> std::result::Result<Rational, String> {
    s.trim().parse::<Rational>().map_err(|e| e.to_string())
}

#[derive(Debug, Args)]
struct EvalSumArgs {
    #[arg(long)]
    n: u32,
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    top: Rational,
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    bottom: Rational,
    /// Weight c^(i−j).
    #[arg(long, value_parser = rational, allow_hyphen_values = true, conflicts_with = "weight")]
    c: Option<Rational>,
    /// Weight u^i·v^j, given as `u:v`.
    #[arg(long, allow_hyphen_values = true)]
    weight: Option<String>,
}

#[derive(Debug, Args)]
struct EvalHypArgs {
    /// Comma-separated upper parameters (2 or 3).
    #[arg(long, value_parser = rational, value_delimiter = ',', allow_hyphen_values = true, required = true)]
    upper: Vec<Rational>,
    /// Comma-separated lower parameters (1 or 2).
    #[arg(long, value_parser = rational, value_delimiter = ',', allow_hyphen_values = true, required = true)]
    lower: Vec<Rational>,
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    z: Rational,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long)]
    id: String,
    #[arg(long)]
    n: u32,
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    a: Option<Rational>,
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    b: Option<Rational>,
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    c: Option<Rational>,
    #[arg(long)]
    m: Option<u32>,
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[arg(long)]
    id: String,
    /// `lo..hi` (inclusive) or a single value.
    #[arg(long, value_parser = n_range, default_value = "0..10")]
    n: RangeInclusive<u32>,
    /// Comma-separated values; defaults to the built-in grid.
    #[arg(long, value_parser = rational, value_delimiter = ',', allow_hyphen_values = true)]
    a: Vec<Rational>,
    #[arg(long, value_parser = rational, value_delimiter = ',', allow_hyphen_values = true)]
    b: Vec<Rational>,
    #[arg(long, value_parser = rational, value_delimiter = ',', allow_hyphen_values = true)]
    c: Vec<Rational>,
    #[arg(long, value_delimiter = ',')]
    m: Vec<u32>,
}

fn n_range(s: &str) -> std::result::Result<RangeInclusive<u32>, String> {
    let parse = |t: &str| t.trim().parse::<u32>().map_err(|e| format!("`{t}`: {e}"));
    let range = match s.split_once("..") {
        Some((lo, hi)) => parse(lo)?..=parse(hi.trim_start_matches('='))?,
        None => {
            let v = parse(s)?;
            v..=v
        }
    };
    if range.is_empty() {
        return Err(format!("empty range `{s}`"));
    }
    Ok(range)
}

#[derive(Debug, Args)]
struct EhrenfestArgs {
    #[arg(long = "M")]
    m: u32,
    #[arg(long)]
    target: u32,
}

#[derive(Debug, Args)]
struct MabinogionArgs {
    #[arg(long)]
    total: u32,
    #[arg(long)]
    start: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Ehrenfest,
    Mabinogion,
}

#[derive(Debug, Args)]
struct SimulateArgs {
    #[arg(long, value_enum)]
    kind: Kind,
    /// Ehrenfest: M+1 balls in total.
    #[arg(long = "M")]
    m: Option<u32>,
    /// Mabinogion: number of balls.
    #[arg(long)]
    total: Option<u32>,
    /// Ehrenfest: stop at this many white balls.
    #[arg(long)]
    target: Option<u32>,
    /// Starting white count (default 0 for Ehrenfest, total/2 for Mabinogion).
    #[arg(long)]
    start: Option<u32>,
    #[arg(long, default_value_t = 100_000)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

/// Parse `argv` (program name first) and run. Output goes to `out`,
/// diagnostics to `err`.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    0
                }
                _ => {
                    let _ = write!(err, "{text}");
                    2
                }
            };
        }
    };
    match dispatch(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn io(e: std::io::Error) -> Error {
    Error::Parse(format!("write failed: {e}"))
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    match &cli.cmd {
        Cmd::EvalSum(a) => {
            let mut spec = DoubleSumSpec::new(a.n, a.top.clone(), a.bottom.clone());
            if let Some(c) = &a.c {
                spec = spec.with_power_weight(c)?;
            }
            if let Some(w) = &a.weight {
                let (u, v) = w
                    .split_once(':')
                    .ok_or_else(|| Error::Parse(format!("--weight expects u:v, got `{w}`")))?;
                spec = spec.with_weights(u.trim().parse()?, v.trim().parse()?);
            }
            let value = eval_double_sum(&spec)?;
            emit_value(cli.format, out, "value", &Value::Exact(value))?;
        }
        Cmd::EvalHyp(a) => {
            let spec = HypSeriesSpec {
                upper: a.upper.clone(),
                lower: a.lower.clone(),
                z: a.z.clone(),
                tol: cli.tol,
            };
            let value = hyp_eval(&spec)?;
            emit_value(cli.format, out, "value", &value)?;
        }
        Cmd::IdentityList => list(cli.format, out)?,
        Cmd::IdentityVerify(a) => {
            let params = IdentityParams {
                n: a.n,
                a: a.a.clone(),
                b: a.b.clone(),
                c: a.c.clone(),
                m: a.m,
                j: None,
            };
            let rep = verify(&a.id, &params, cli.tol)?;
            emit_reports(cli.format, out, std::slice::from_ref(&rep), false)?;
            return Ok(exit_for(std::slice::from_ref(&rep)));
        }
        Cmd::IdentitySweep(a) => {
            let mut grid = ParamGrid::default();
            if !a.a.is_empty() {
                grid.a = a.a.clone();
            }
            if !a.b.is_empty() {
                grid.b = a.b.clone();
            }
            if !a.c.is_empty() {
                grid.c = a.c.clone();
            }
            if !a.m.is_empty() {
                grid.m = a.m.clone();
            }
            let reps = sweep(&a.id, a.n.clone(), &grid, cli.tol)?;
            emit_reports(cli.format, out, &reps, true)?;
            return Ok(exit_for(&reps));
        }
        Cmd::UrnEhrenfest(a) => {
            let v = ehrenfest_expected_steps(a.m, a.target)?;
            emit_value(cli.format, out, "expected_steps", &Value::Exact(v))?;
        }
        Cmd::UrnMabinogion(a) => {
            let v = mabinogion_expected_exact(a.total, a.start)?;
            emit_value(cli.format, out, "expected_steps", &Value::Exact(v))?;
        }
        Cmd::UrnSimulate(a) => simulate_cmd(cli.format, a, out)?,
    }
    Ok(0)
}

fn exit_for(reps: &[VerifyReport]) -> i32 {
    i32::from(reps.iter().any(|r| r.status == Status::Fail))
}

fn emit_value(format: Format, out: &mut dyn Write, key: &str, v: &Value) -> Result<()> {
    let bound = match v {
        Value::Exact(_) => None,
        Value::Approx(a) => Some(a.error_bound),
    };
    match format {
        Format::Plain => writeln!(out, "{v}").map_err(io),
        Format::Json => {
            let mut obj = serde_json::Map::new();
            obj.insert(key.into(), v.render().into());
            obj.insert("exact".into(), v.is_exact().into());
            obj.insert("bound".into(), bound.into());
            writeln!(out, "{}", serde_json::Value::Object(obj)).map_err(io)
        }
        Format::Csv => {
            let b = bound.map(|b| b.to_string()).unwrap_or_default();
            writeln!(out, "{key},exact,bound\n{},{},{b}", v.render(), v.is_exact()).map_err(io)
        }
    }
}

fn emit_reports(format: Format, out: &mut dyn Write, reps: &[VerifyReport], summary: bool) -> Result<()> {
    match format {
        Format::Plain => {
            for r in reps {
                writeln!(out, "{}", report::plain_line(r)).map_err(io)?;
            }
            if summary {
                let count = |s: Status| reps.iter().filter(|r| r.status == s).count();
                writeln!(
                    out,
                    "{} reports: {} exact-equal, {} within-bounds, {} skipped, {} FAIL",
                    reps.len(),
                    count(Status::ExactEqual),
                    count(Status::WithinBounds),
                    count(Status::Skipped),
                    count(Status::Fail)
                )
                .map_err(io)?;
            }
            Ok(())
        }
        Format::Json if reps.len() == 1 && !summary => {
            writeln!(out, "{}", report::json_string(&reps[0])).map_err(io)
        }
        Format::Json => writeln!(out, "{}", report::json_array_string(reps)).map_err(io),
        Format::Csv => report::write_csv(reps, out),
    }
}

fn list(format: Format, out: &mut dyn Write) -> Result<()> {
    let reg = registry();
    match format {
        Format::Plain => {
            for r in reg {
                let params: Vec<_> = r.params.iter().map(|p| p.name()).collect();
                writeln!(
                    out,
                    "{:<20} {:<14} [{}] {}",
                    r.id,
                    r.exactness.to_string(),
                    params.join(","),
                    r.formula
                )
                .map_err(io)?;
            }
        }
        Format::Json => {
            let rows: Vec<_> = reg
                .iter()
                .map(|r| {
                    serde_json::json!({
                        "id": r.id,
                        "title": r.title,
                        "exactness": r.exactness.to_string(),
                        "params": r.params.iter().map(|p| p.name()).collect::<Vec<_>>(),
                        "domain": r.domain,
                        "formula": r.formula,
                    })
                })
                .collect();
            writeln!(out, "{}", serde_json::to_string_pretty(&rows).expect("json")).map_err(io)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            let fail = |e: csv::Error| Error::Parse(e.to_string());
            w.write_record(["id", "exactness", "params", "domain", "formula"])
                .map_err(fail)?;
            for r in reg {
                let params: Vec<_> = r.params.iter().map(|p| p.name()).collect();
                w.write_record([
                    r.id,
                    &r.exactness.to_string(),
                    &params.join(";"),
                    r.domain,
                    r.formula,
                ])
                .map_err(fail)?;
            }
            w.flush().map_err(|e| Error::Parse(e.to_string()))?;
        }
    }
    Ok(())
}

fn simulate_cmd(format: Format, a: &SimulateArgs, out: &mut dyn Write) -> Result<()> {
    let missing = |flag: &str| Error::domain(format!("--{flag} is required for this --kind"));
    let (chain, start, exact) = match a.kind {
        Kind::Ehrenfest => {
            let m = a.m.ok_or_else(|| missing("M"))?;
            let target = a.target.ok_or_else(|| missing("target"))?;
            let start = a.start.unwrap_or(0);
            let chain = UrnChain::ehrenfest(m + 1, target)?;
            let sol = chain.solve()?;
            let exact = sol
                .expectations
                .get(start as usize)
                .cloned()
                .ok_or_else(|| Error::domain(format!("start {start} outside [0, {}]", m + 1)))?;
            (chain, start, exact)
        }
        Kind::Mabinogion => {
            let total = a.total.ok_or_else(|| missing("total"))?;
            let start = a.start.unwrap_or(total / 2);
            let exact = mabinogion_expected_exact(total, start)?;
            (UrnChain::mabinogion(total)?, start, exact)
        }
    };
    let s = simulate(
        &chain,
        start,
        &SimConfig {
            trials: a.trials,
            seed: a.seed,
        },
    )?;
    let z = if s.stderr > 0.0 {
        (s.mean - exact.to_f64()).abs() / s.stderr
    } else {
        0.0
    };
    match format {
        Format::Plain => writeln!(
            out,
            "mean {} ± {} (stderr), exact {exact} ≈ {}, {z:.2} stderr apart",
            s.mean,
            s.stderr,
            exact.to_f64()
        )
        .map_err(io),
        Format::Json => writeln!(
            out,
            "{}",
            serde_json::json!({
                "mean": s.mean,
                "stderr": s.stderr,
                "exact": exact.to_string(),
                "z": z,
                "trials": a.trials,
                "seed": a.seed,
            })
        )
        .map_err(io),
        Format::Csv => writeln!(
            out,
            "mean,stderr,exact,z\n{},{},{exact},{z}",
            s.mean, s.stderr
        )
        .map_err(io),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("binratio").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn n_range_grammar() {
        assert_eq!(n_range("3").unwrap(), 3..=3);
        assert_eq!(n_range("0..50").unwrap(), 0..=50);
        assert_eq!(n_range("2..=4").unwrap(), 2..=4);
        assert!(n_range("5..2").is_err());
        assert!(n_range("x").is_err());
    }

    #[test]
    fn eval_sum_example() {
        let (code, out, _) = run_str(&["eval-sum", "--n", "1", "--top", "4", "--bottom", "3", "--c", "1"]);
        assert_eq!(code, 0);
        assert_eq!(out.trim(), "8/3");
    }

    #[test]
    fn negative_rationals_are_values() {
        let (code, out, err) = run_str(&[
            "eval-sum", "--n", "1", "--top", "2", "--bottom", "1", "--weight", "-1:1",
        ]);
        assert_eq!(code, 0, "{err}");
        assert_eq!(out.trim(), "0");
    }

    #[test]
    fn unknown_flag_is_usage_error() {
        let (code, _, err) = run_str(&["eval-sum", "--bogus", "1"]);
        assert_eq!(code, 2);
        assert!(err.contains("--bogus"), "{err}");
    }
}
