//! Command-line surface of the `weylsum` binary.
//!
//! Every command prints plain text by default and a JSON object with a
//! versioned `schema` field under `--json`. Exit codes: 0 ok, 1 verification
//! failure or refused computation, 2 bad input.

pub mod suites;

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_rational::BigRational;
use serde_json::{json, Value};

use crate::branching::{decompose_fundamental, Pair};
use crate::cache::OrbitCache;
use crate::charkit::{character, dimension_oracle, q_dimension};
use crate::error::Error;
use crate::field::{format_rational, parse_rational, Fp, DEFAULT_PRIME};
use crate::rootsys::{build_algebra, AlgebraKind, Weight};
use crate::schur::{schur_of_partition, EvalContext};
use crate::weyl::{orbit_size, orbit_with_cap, DEFAULT_ORBIT_CAP};

use suites::{run_suite, Status, SuiteOptions, SUITES};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "weylsum", version, about = "Alternating Weyl sums of E7/E8 via A7/A8 permutation weights")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Size or members of a Weyl orbit.
    Orbit(OrbitArgs),
    /// Split the orbit of a fundamental weight into subalgebra orbits.
    Decompose(DecomposeArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
    /// Evaluate a character, or its q-dimension with --q.
    Char(CharArgs),
    /// Dimension of an irreducible representation.
    Dim(DimArgs),
    /// Evaluate a Schur polynomial.
    Schur(SchurArgs),
}

#[derive(Debug, Args)]
pub struct OrbitArgs {
    #[arg(long)]
    pub algebra: AlgebraKind,
    /// Comma-separated Dynkin labels of a dominant weight.
    #[arg(long, allow_hyphen_values = true)]
    pub weight: String,
    #[arg(long)]
    pub size: bool,
    #[arg(long)]
    pub list: bool,
    /// Largest orbit --list will enumerate.
    #[arg(long, default_value_t = DEFAULT_ORBIT_CAP)]
    pub cap: u64,
    /// Reuse orbits stored under $WEYLSUM_CACHE.
    #[arg(long)]
    pub cache: bool,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct DecomposeArgs {
    #[arg(long)]
    pub pair: Pair,
    /// 1-based index of the fundamental weight.
    #[arg(short = 'i', long = "index")]
    pub index: usize,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value = "all")]
    pub suite: String,
    /// Also run the checkpointed E8 direct sum (hours).
    #[arg(long)]
    pub slow: bool,
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
    #[arg(long, default_value = "weylsum-e8.ckpt")]
    pub checkpoint: PathBuf,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct CharArgs {
    #[arg(long)]
    pub pair: Pair,
    /// Highest weight as Dynkin labels of the larger algebra.
    #[arg(long)]
    pub weight: String,
    /// Principal specialization as a polynomial in q.
    #[arg(long)]
    pub q: bool,
    /// Free u values as rationals; the last one follows from Π u = 1.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "q")]
    pub u: Option<String>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = DEFAULT_PRIME)]
    pub prime: u64,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct DimArgs {
    #[arg(long)]
    pub algebra: AlgebraKind,
    #[arg(long)]
    pub weight: String,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct SchurArgs {
    /// Rank of A(n); the alphabet has n+1 letters.
    #[arg(long)]
    pub n: usize,
    /// Comma-separated parts, largest first; empty for the trivial partition.
    #[arg(long, default_value = "")]
    pub partition: String,
    #[arg(long, allow_hyphen_values = true)]
    pub u: Option<String>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = DEFAULT_PRIME)]
    pub prime: u64,
    #[arg(long)]
    pub json: bool,
}

/// A command failure with its exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::OrbitCapExceeded { .. }
            | Error::ZeroDenominator(_)
            | Error::Io(_)
            | Error::Checkpoint(_) => EXIT_FAIL,
            _ => EXIT_USAGE,
        };
        let mut message = e.to_string();
        if matches!(e, Error::ZeroDenominator(_)) {
            message.push_str(" (try another --seed)");
        }
        Failure { code, message }
    }
}

type CmdResult = std::result::Result<i32, Failure>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return code;
        }
    };
    let result = match &cli.command {
        Command::Orbit(a) => cmd_orbit(a, out),
        Command::Decompose(a) => cmd_decompose(a, out),
        Command::Verify(a) => cmd_verify(a, out),
        Command::Char(a) => cmd_char(a, out),
        Command::Dim(a) => cmd_dim(a, out),
        Command::Schur(a) => cmd_schur(a, out),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn io(e: std::io::Error) -> Failure {
    Failure {
        code: EXIT_FAIL,
        message: e.to_string(),
    }
}

fn emit(out: &mut dyn Write, v: &Value) -> std::result::Result<(), Failure> {
    let s = serde_json::to_string_pretty(v).expect("json values serialize");
    writeln!(out, "{s}").map_err(io)
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

/// `2λ_2+λ_4` style name of an A-side weight; `0` for the zero weight.
pub fn lambda_name(w: &Weight) -> String {
    let symbol = if w.algebra.is_a() { "λ" } else { "Λ" };
    let terms: Vec<String> = w
        .labels
        .iter()
        .enumerate()
        .filter(|(_, &a)| a != 0)
        .map(|(i, &a)| match a {
            1 => format!("{symbol}_{}", i + 1),
            _ => format!("{a}{symbol}_{}", i + 1),
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join("+")
    }
}

fn cmd_orbit(a: &OrbitArgs, out: &mut dyn Write) -> CmdResult {
    let alg = build_algebra(a.algebra);
    let w = Weight::parse(a.algebra, &a.weight)?;
    alg.check_weight(&w)?;
    if !w.is_dominant() {
        return Err(Error::NotDominant(w.labels).into());
    }
    let size = orbit_size(&alg, &w)?;
    let members = if a.list {
        let o = if a.cache {
            OrbitCache::from_env().orbit(&alg, &w, a.cap)?
        } else {
            orbit_with_cap(&alg, &w, a.cap)?
        };
        Some(o.sorted())
    } else {
        None
    };
    if a.json {
        let mut v = json!({
            "schema": "weylsum.orbit/1",
            "algebra": a.algebra.to_string(),
            "weight": w.labels,
            "size": size.to_string(),
        });
        if let Some(m) = &members {
            v["members"] = json!(m.iter().map(|w| w.labels.clone()).collect::<Vec<_>>());
        }
        emit(out, &v)?;
    } else {
        writeln!(out, "{size}").map_err(io)?;
        for m in members.iter().flatten() {
            writeln!(out, "{m}").map_err(io)?;
        }
    }
    Ok(EXIT_OK)
}

fn cmd_decompose(a: &DecomposeArgs, out: &mut dyn Write) -> CmdResult {
    let d = decompose_fundamental(a.pair, a.index)?;
    let sizes = d.part_sizes()?;
    let total: num_bigint::BigUint = sizes.iter().sum();
    let source_size = orbit_size(&build_algebra(a.pair.source()), &d.source)?;
    if a.json {
        let parts: Vec<Value> = d
            .parts
            .iter()
            .zip(&sizes)
            .map(|(p, s)| {
                json!({
                    "name": lambda_name(p),
                    "labels": p.labels,
                    "orbit_size": s.to_string(),
                })
            })
            .collect();
        emit(
            out,
            &json!({
                "schema": "weylsum.decompose/1",
                "pair": a.pair.to_string(),
                "index": a.index,
                "parts": parts,
                "total": total.to_string(),
                "source_orbit_size": source_size.to_string(),
            }),
        )?;
    } else {
        writeln!(out, "{} {}: {} parts", a.pair, lambda_name(&d.source), d.parts.len())
            .map_err(io)?;
        for (p, s) in d.parts.iter().zip(&sizes) {
            writeln!(out, "  {:<24} {s}", lambda_name(p)).map_err(io)?;
        }
        writeln!(out, "total {total} of {source_size}").map_err(io)?;
    }
    Ok(EXIT_OK)
}

fn cmd_verify(a: &VerifyArgs, out: &mut dyn Write) -> CmdResult {
    let opts = SuiteOptions {
        seed: a.seed,
        slow: a.slow,
        checkpoint: a.checkpoint.clone(),
    };
    let report = run_suite(&a.suite, &opts).ok_or_else(|| {
        usage(format!("unknown suite {:?}; expected one of {}", a.suite, SUITES.join(", ")))
    })?;
    if a.json {
        emit(out, &serde_json::to_value(&report).expect("report serializes"))?;
    } else {
        for c in &report.checks {
            let tag = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skip => "SKIP",
            };
            writeln!(out, "{tag}  {}  {} ({} ms)", c.name, c.detail, c.elapsed_ms).map_err(io)?;
        }
        let verdict = if report.passed() { "PASS" } else { "FAIL" };
        writeln!(out, "suite {}: {verdict}", report.suite).map_err(io)?;
    }
    Ok(if report.passed() { EXIT_OK } else { EXIT_FAIL })
}

fn parse_rationals(s: &str) -> std::result::Result<Vec<BigRational>, Failure> {
    s.split(',')
        .map(|t| parse_rational(t.trim()).map_err(Failure::from))
        .collect()
}

fn cmd_char(a: &CharArgs, out: &mut dyn Write) -> CmdResult {
    let kind = a.pair.source();
    let w = Weight::parse(kind, &a.weight)?;
    build_algebra(kind).check_weight(&w)?;
    let free = a.pair.alphabet_size() - 1;
    let (mode, value, extra) = if a.q {
        let p = q_dimension(a.pair, &w)?;
        let coeffs: Vec<String> = p.coeffs.iter().map(ToString::to_string).collect();
        let at_one = p.eval_at_one().to_string();
        (
            "q",
            p.to_string(),
            json!({ "coefficients": coeffs, "value_at_one": at_one }),
        )
    } else if let Some(u) = &a.u {
        let vals = parse_rationals(u)?;
        if vals.len() != free {
            return Err(usage(format!("{} needs {free} u values, got {}", a.pair, vals.len())));
        }
        let ctx = EvalContext::from_free(vals)?;
        let v = character(a.pair, &w, &ctx)?;
        ("rational", format_rational(&v), json!({}))
    } else {
        let ctx = EvalContext::random(free, a.seed, a.prime)?;
        let v: Fp = character(a.pair, &w, &ctx)?;
        (
            "mod_p",
            v.value().to_string(),
            json!({ "prime": a.prime.to_string(), "seed": a.seed }),
        )
    };
    if a.json {
        let mut v = json!({
            "schema": "weylsum.char/1",
            "pair": a.pair.to_string(),
            "weight": w.labels,
            "mode": mode,
            "value": value,
        });
        if let (Some(obj), Some(more)) = (v.as_object_mut(), extra.as_object()) {
            obj.extend(more.clone());
        }
        emit(out, &v)?;
    } else {
        writeln!(out, "{value}").map_err(io)?;
        if mode == "q" {
            writeln!(out, "at q=1: {}", extra["value_at_one"].as_str().unwrap_or("")).map_err(io)?;
        }
    }
    Ok(EXIT_OK)
}

fn cmd_dim(a: &DimArgs, out: &mut dyn Write) -> CmdResult {
    let alg = build_algebra(a.algebra);
    let w = Weight::parse(a.algebra, &a.weight)?;
    let d = dimension_oracle(&alg, &w)?;
    if a.json {
        emit(
            out,
            &json!({
                "schema": "weylsum.dim/1",
                "algebra": a.algebra.to_string(),
                "weight": w.labels,
                "dimension": d.to_string(),
            }),
        )?;
    } else {
        writeln!(out, "{d}").map_err(io)?;
    }
    Ok(EXIT_OK)
}

fn cmd_schur(a: &SchurArgs, out: &mut dyn Write) -> CmdResult {
    AlgebraKind::a(a.n)?;
    let partition = crate::rootsys::parse_labels(&a.partition)?;
    let (mode, value) = match &a.u {
        Some(u) => {
            let vals = parse_rationals(u)?;
            if vals.len() != a.n {
                return Err(usage(format!("A{} needs {} u values, got {}", a.n, a.n, vals.len())));
            }
            let ctx = EvalContext::from_free(vals)?;
            ("rational", format_rational(&schur_of_partition(&partition, &ctx)?))
        }
        None => {
            let ctx = EvalContext::random(a.n, a.seed, a.prime)?;
            let v = schur_of_partition(&partition, &ctx)?;
            ("mod_p", v.value().to_string())
        }
    };
    if a.json {
        emit(
            out,
            &json!({
                "schema": "weylsum.schur/1",
                "n": a.n,
                "partition": partition,
                "mode": mode,
                "value": value,
            }),
        )?;
    } else {
        writeln!(out, "{value}").map_err(io)?;
    }
    Ok(EXIT_OK)
}

/// Entry point used by the binary: honours `WEYLSUM_THREADS`.
pub fn main_with_env() -> i32 {
    if let Some(n) = std::env::var("WEYLSUM_THREADS")
        .ok()
        .and_then(|s| s.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
    {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut argv = vec!["weylsum"];
        argv.extend_from_slice(args);
        let code = run(argv, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn schur_example() {
        let (code, out, _) = call(&["schur", "--n", "2", "--partition", "1", "--u", "2,3"]);
        assert_eq!(code, 0);
        assert_eq!(out.trim(), "31/6");
    }

    #[test]
    fn orbit_sizes() {
        assert_eq!(call(&["orbit", "--algebra", "E7", "--weight", "1,1,1,1,1,1,1", "--size"]).1.trim(), "2903040");
        assert_eq!(call(&["orbit", "--algebra", "A7", "--weight", "1,0,0,0,0,0,0", "--size"]).1.trim(), "8");
        let (_, out, _) = call(&["orbit", "--algebra", "A1", "--weight", "0", "--list"]);
        assert_eq!(out, "1\n(0)\n");
    }

    #[test]
    fn orbit_list_over_cap_fails() {
        let (code, _, err) = call(&["orbit", "--algebra", "E7", "--weight", "1,1,1,1,1,1,1", "--list", "--cap", "100"]);
        assert_eq!(code, EXIT_FAIL);
        assert!(err.contains("error"));
    }

    #[test]
    fn decompose_first_fundamental() {
        let (code, out, _) = call(&["decompose", "--pair", "E7:A7", "-i", "1"]);
        assert_eq!(code, 0);
        assert!(out.contains("λ_2") && out.contains("λ_6"), "{out}");
        assert!(out.contains("total 56 of 56"));
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(call(&["dim", "--algebra", "E9", "--weight", "0"]).0, EXIT_USAGE);
        assert_eq!(call(&["dim", "--algebra", "E7", "--weight", "1,2"]).0, EXIT_USAGE);
        assert_eq!(call(&["verify", "--suite", "nope"]).0, EXIT_USAGE);
        assert_eq!(call(&["frobnicate"]).0, EXIT_USAGE);
    }

    #[test]
    fn dim_and_char() {
        assert_eq!(call(&["dim", "--algebra", "E7", "--weight", "0,0,0,0,0,0,0"]).1.trim(), "1");
        let (code, out, _) = call(&["char", "--pair", "A3:A2", "--weight", "1,0,0", "--u", "2,3"]);
        assert_eq!(code, 0);
        // u = (2, 3, 1/6, 1)
        assert_eq!(out.trim(), "37/6");
        let (_, out, _) = call(&["char", "--pair", "E7:A7", "--weight", "1,0,0,0,0,0,0", "--q"]);
        assert!(out.contains("at q=1: 56"), "{out}");
    }

    #[test]
    fn lambda_names() {
        let w = Weight::new(AlgebraKind::A(7), vec![0, 2, 0, 1, 0, 0, 0]).unwrap();
        assert_eq!(lambda_name(&w), "2λ_2+λ_4");
        assert_eq!(lambda_name(&Weight::zero(AlgebraKind::A(2))), "0");
    }

    #[test]
    fn help_is_not_an_error() {
        assert_eq!(call(&["--help"]).0, EXIT_OK);
    }
}
