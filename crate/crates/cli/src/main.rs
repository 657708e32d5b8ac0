mod report;
mod values;

use std::path::Path;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use mahler_core::classify::classify_thm2;
use mahler_core::lattice::{find_integer_relation, find_integer_relation_with, independence_smoke, independence_smoke_with};
use mahler_core::lattice::{minimal_polynomial, minimal_polynomial_with};
use mahler_core::lucaspair::{eval_number_series, Family, LucasPairParams, NumberSeriesSpec};
use mahler_core::numerics::{AlgebraicInput, PrecisionContext};
use mahler_core::periodic::PeriodicSeq;
use mahler_core::radix::decompose_i64;
use mahler_core::series::{eval_at, SeriesSpec};
use mahler_core::suites::run_suite;
use mahler_core::{Error, Result};
use serde::Serialize;
use serde_json::{json, Value};

use report::{ball, envelope, error_object, render, Format};
use values::{Source, Sources};

#[derive(Parser, Serialize)]
#[command(name = "mahler", version, about = "Rigorous Mahler-type series, reciprocal sums and relation checks")]
struct Cli {
    /// Working precision in bits.
    #[arg(long, global = true, env = "MAHLER_DEFAULT_BITS", default_value_t = 256)]
    bits: u32,
    /// Seed for randomized sample points; recorded in every report.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    #[serde(skip)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Command {
    /// Evaluate a Mahler-type series given as JSON at a point.
    Eval {
        /// Series spec: a JSON file or inline JSON.
        #[arg(long)]
        spec: String,
        #[arg(long)]
        z: String,
    },
    /// Evaluate a reciprocal sum of Q, R (F) or S (L) type.
    EvalNumber {
        #[arg(long)]
        family: String,
        #[arg(long)]
        k: u64,
        #[arg(long)]
        r: u64,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        ell: i64,
        #[arg(long)]
        mu: Option<u64>,
        #[arg(long, default_value = "[1]")]
        coeffs: String,
        /// First summation index h0.
        #[arg(long, default_value_t = 0)]
        start: u64,
        #[arg(long, default_value = "fibonacci-lucas")]
        preset: String,
        /// Parameter file or inline JSON; overrides the preset.
        #[arg(long)]
        params: Option<String>,
    },
    /// Exceptional-case classification of a Lucas pair with coefficient sequences.
    Classify {
        #[arg(long, default_value = "fibonacci-lucas")]
        preset: String,
        #[arg(long)]
        params: Option<String>,
        #[arg(long, default_value = "[1]")]
        b: String,
        #[arg(long, default_value = "[1]")]
        c: String,
        /// Search bound for the shift exponent.
        #[arg(long, default_value_t = 64)]
        bound: u64,
    },
    /// Bounded-height integer relation search among values.
    Relations {
        #[arg(long)]
        values: String,
        #[arg(long, default_value_t = 1 << 20)]
        height: u64,
        /// Search over monomials up to this total degree instead of linear relations.
        #[arg(long)]
        degree: Option<usize>,
    },
    /// Lowest-degree integer polynomial of a value within height and degree bounds.
    Minpoly {
        #[arg(long)]
        value: String,
        #[arg(long, default_value_t = 8)]
        maxdeg: usize,
        #[arg(long, default_value_t = 1_000_000)]
        height: u64,
    },
    /// Write n = d^j with d not a perfect power.
    Radix {
        #[arg(allow_hyphen_values = true)]
        n: i64,
    },
    /// Run a bundled verification suite.
    Verify {
        #[arg(long)]
        suite: String,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Eval { .. } => "eval",
            Command::EvalNumber { .. } => "eval-number",
            Command::Classify { .. } => "classify",
            Command::Relations { .. } => "relations",
            Command::Minpoly { .. } => "minpoly",
            Command::Radix { .. } => "radix",
            Command::Verify { .. } => "verify",
        }
    }
}

/// File contents when `arg` names a file, else `arg` itself.
fn read_arg(arg: &str) -> Result<String> {
    if Path::new(arg).is_file() {
        std::fs::read_to_string(arg).map_err(|e| Error::InvalidInput(format!("{arg}: {e}")))
    } else {
        Ok(arg.to_string())
    }
}

fn parse_json<T: serde::de::DeserializeOwned>(arg: &str, what: &str) -> Result<T> {
    let text = read_arg(arg)?;
    serde_json::from_str(&text).map_err(|e| Error::InvalidInput(format!("{what}: {e}")))
}

fn parse_value(arg: &str) -> Result<AlgebraicInput> {
    match serde_json::from_str::<AlgebraicInput>(arg) {
        Ok(v) => Ok(v),
        Err(_) => AlgebraicInput::parse(arg),
    }
}

fn load_params(preset: &str, params: &Option<String>) -> Result<LucasPairParams> {
    match params {
        Some(p) => parse_json(p, "params"),
        None => LucasPairParams::preset(preset),
    }
}

fn to_json<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report serializes")
}

/// Runs the command; the flag says whether the outcome counts as success.
fn run(cmd: &Command, ctx: &PrecisionContext, seed: u64) -> Result<(Value, bool)> {
    match cmd {
        Command::Eval { spec, z } => {
            let spec: SeriesSpec = parse_json(spec, "spec")?;
            let r = eval_at(&spec, &parse_value(z)?, ctx)?;
            Ok((
                json!({
                    "value": ball(&r.value),
                    "err_exponent": ball(&r.value)["err_exponent"],
                    "terms_used": r.terms_used,
                    "truncation_log2": if r.truncation_log2.is_finite() { Some(r.truncation_log2) } else { None },
                }),
                true,
            ))
        }
        Command::EvalNumber { family, k, r, ell, mu, coeffs, start, preset, params } => {
            let p = load_params(preset, params)?;
            let coeffs = PeriodicSeq::parse_json(&read_arg(coeffs)?)?;
            let spec = match Family::parse(family)? {
                Family::Q => NumberSeriesSpec::q_family(*k, *r, mu.unwrap_or(1), coeffs),
                Family::R => NumberSeriesSpec::r_family(*k, *r, *ell, coeffs),
                Family::S => NumberSeriesSpec::s_family(*k, *r, *ell, coeffs),
            }
            .starting_at(*start);
            let res = eval_number_series(&p, &spec, ctx)?;
            let v = ball(&res.result.value);
            Ok((
                json!({
                    "spec": to_json(&spec),
                    "value": v,
                    "err_exponent": v["err_exponent"],
                    "terms": res.result.terms_used,
                    "skipped_terms": res.skipped_terms,
                }),
                true,
            ))
        }
        Command::Classify { preset, params, b, c, bound } => {
            let p = load_params(preset, params)?;
            let b = PeriodicSeq::parse_json(&read_arg(b)?)?;
            let c = PeriodicSeq::parse_json(&read_arg(c)?)?;
            Ok((to_json(&classify_thm2(&p, &b, &c, *bound, ctx)?), true))
        }
        Command::Relations { values, height, degree } => {
            let sources = parse_json::<Sources>(values, "values")?.into_vec();
            let names: Vec<String> = sources.iter().enumerate().map(|(i, s)| s.name(i)).collect();
            let eval = |c: &PrecisionContext| sources.iter().map(|s| s.eval(c)).collect::<Result<Vec<_>>>();
            let fixed = sources.iter().any(Source::is_fixed);
            let rep = match (degree, fixed) {
                (Some(d), false) => independence_smoke_with(&names, &eval, *d, *height, ctx)?,
                (Some(d), true) => {
                    let named: Vec<_> = names.iter().cloned().zip(eval(ctx)?).collect();
                    independence_smoke(&named, *d, *height, ctx)?
                }
                (None, false) => find_integer_relation_with(&eval, *height, ctx)?,
                (None, true) => find_integer_relation(&eval(ctx)?, *height, ctx)?,
            };
            let mut out = to_json(&rep);
            out["coefficients"] = to_json(&rep.coefficients.as_ref().map(|c| c.iter().map(|x| x.to_string()).collect::<Vec<_>>()));
            if rep.basis.is_empty() {
                out["basis"] = to_json(&names);
            }
            out["reverified"] = Value::Bool(!fixed);
            Ok((out, true))
        }
        Command::Minpoly { value, maxdeg, height } => {
            let mut sources = parse_json::<Sources>(value, "value")?.into_vec();
            if sources.len() != 1 {
                return Err(Error::InvalidInput(format!("expected one value, got {}", sources.len())));
            }
            let src = sources.remove(0);
            let poly = if src.is_fixed() {
                minimal_polynomial(&src.eval(ctx)?, *maxdeg, *height, ctx)?
            } else {
                minimal_polynomial_with(&|c: &PrecisionContext| src.eval(c), *maxdeg, *height, ctx)?
            };
            Ok((
                json!({
                    "found": poly.is_some(),
                    "polynomial": poly.as_ref().map(|p| p.to_string()),
                    "coefficients": poly.as_ref().map(|p| p.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>()),
                    "max_degree": maxdeg,
                    "height_bound": height,
                    "reverified": !src.is_fixed(),
                }),
                true,
            ))
        }
        Command::Radix { n } => Ok((to_json(&decompose_i64(*n)?), true)),
        Command::Verify { suite } => {
            let rep = run_suite(suite, ctx.bits(), seed)?;
            let ok = rep.all_pass();
            let mut out = to_json(&rep);
            out["failures"] = to_json(&rep.failures());
            Ok((out, ok))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let config = to_json(&cli.command);
    let outcome = PrecisionContext::new(cli.bits).and_then(|ctx| run(&cli.command, &ctx, cli.seed));
    let (result, code) = match outcome {
        Ok((v, true)) => (v, 0),
        Ok((v, false)) => (v, 1),
        Err(e) => {
            eprintln!("mahler: {e}");
            (json!({ "error": error_object(&e) }), if e.is_computational() { 1 } else { 2 })
        }
    };
    let rep = envelope(cli.command.name(), config, cli.seed, cli.bits, result);
    print!("{}", render(&rep, cli.format));
    ExitCode::from(code)
}
