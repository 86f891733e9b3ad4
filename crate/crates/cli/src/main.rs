//! Command-line front end for the hypratio library.

mod commands;
mod output;

use clap::{Args, Parser, Subcommand, ValueEnum};
use commands::{Failure, Job, Report, Suite};
use hypratio::representation::Strategy;
use hypratio::{Bank, CutPlanePoint, Params, Precision, QuadratureConfig, Shift};
use num_complex::Complex64;
use output::{render, Format, Record};
use std::process::ExitCode;

const DEFAULT_DIGITS: u32 = 16;

#[derive(Parser)]
#[command(
    name = "hypratio",
    version,
    about = "Ratios of Gauss hypergeometric functions with shifted parameters"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate R at points through its integral representation.
    Eval(Opts),
    /// Index data of a shift, plus growth exponents when a, b, c are given.
    Indices(Opts),
    /// Count and locate the zeros of 2F1(a, b; c; z) and the residues of R there.
    Zeros(Opts),
    /// Build a representation and print its ingredients.
    Represent(Opts),
    /// Compare the closed-form boundary imaginary part with direct evaluation.
    Boundary(Opts),
    /// Run self-checks against independent evaluations.
    Verify(Opts),
    /// Evaluate the two product representations.
    Product(Opts),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StrategyArg {
    Auto,
    PoleFree,
    Q,
    T,
}

#[derive(Args)]
struct Opts {
    #[arg(long, allow_negative_numbers = true)]
    a: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    b: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    c: Option<f64>,
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    n1: i32,
    #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
    n2: i32,
    #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
    m: i32,
    /// A point `re,im`; repeatable. On (1, ∞) the sign of a zero imaginary
    /// part picks the bank: `2,0` is the upper bank, `2,-0` the lower.
    #[arg(long, allow_hyphen_values = true)]
    z: Vec<String>,
    /// Real-axis sample `re0,re1,n`; points beyond 1 lie on the upper bank.
    #[arg(long, allow_hyphen_values = true)]
    grid: Option<String>,
    #[arg(long, value_enum, default_value_t = StrategyArg::Auto)]
    strategy: StrategyArg,
    /// Absolute and relative quadrature tolerance.
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    /// Working digits; defaults to HYPRATIO_DIGITS, then 16.
    #[arg(long)]
    digits: Option<u32>,
    #[arg(long, value_enum, default_value_t = Suite::All)]
    suite: Suite,
    #[arg(long, value_enum, default_value_t = Format::Kv)]
    format: Format,
}

fn parse_point(text: &str) -> Result<CutPlanePoint, Failure> {
    let bad = || Failure::usage(format!("expected `re,im`, got `{text}`"));
    let (re, im) = text.split_once(',').ok_or_else(bad)?;
    let re: f64 = re.trim().parse().map_err(|_| bad())?;
    let im: f64 = im.trim().parse().map_err(|_| bad())?;
    if im == 0.0 && re > 1.0 {
        let bank = if im.is_sign_negative() {
            Bank::Lower
        } else {
            Bank::Upper
        };
        return Ok(CutPlanePoint::on_cut(re, bank)?);
    }
    Ok(CutPlanePoint::new(Complex64::new(re, im))?)
}

fn parse_grid(text: &str) -> Result<Vec<CutPlanePoint>, Failure> {
    let bad = || Failure::usage(format!("expected `re0,re1,n` with n ≥ 2, got `{text}`"));
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    let [r0, r1, n] = parts[..] else {
        return Err(bad());
    };
    let (r0, r1): (f64, f64) = (
        r0.parse().map_err(|_| bad())?,
        r1.parse().map_err(|_| bad())?,
    );
    let n: usize = n.parse().map_err(|_| bad())?;
    if n < 2 {
        return Err(bad());
    }
    (0..n)
        .map(|k| {
            let x = r0 + (r1 - r0) * k as f64 / (n - 1) as f64;
            if x > 1.0 {
                Ok(CutPlanePoint::on_cut(x, Bank::Upper)?)
            } else {
                Ok(CutPlanePoint::real(x)?)
            }
        })
        .collect()
}

fn digits(flag: Option<u32>) -> Result<u32, Failure> {
    if let Some(d) = flag {
        return Ok(d);
    }
    match std::env::var("HYPRATIO_DIGITS") {
        Ok(v) => v.trim().parse().map_err(|_| {
            Failure::usage(format!(
                "HYPRATIO_DIGITS must be a positive integer, got `{v}`"
            ))
        }),
        Err(_) => Ok(DEFAULT_DIGITS),
    }
}

fn job(opts: &Opts) -> Result<Job, Failure> {
    let params = match (opts.a, opts.b, opts.c) {
        (Some(a), Some(b), Some(c)) => Some(Params::new(a, b, c)?),
        (None, None, None) => None,
        _ => return Err(Failure::usage("--a, --b and --c must be given together")),
    };
    let mut points = opts
        .z
        .iter()
        .map(|s| parse_point(s))
        .collect::<Result<Vec<_>, _>>()?;
    if let Some(g) = &opts.grid {
        points.extend(parse_grid(g)?);
    }
    let quad = QuadratureConfig {
        abs_tol: opts.tol,
        rel_tol: opts.tol,
        ..QuadratureConfig::default()
    };
    quad.validate()?;
    let digits = digits(opts.digits)?;
    if digits == 0 {
        return Err(Failure::usage("digits must be positive"));
    }
    Ok(Job {
        params,
        shift: Shift::new(opts.n1, opts.n2, opts.m),
        points,
        strategy: match opts.strategy {
            StrategyArg::Auto => Strategy::Auto,
            StrategyArg::PoleFree => Strategy::PoleFree,
            StrategyArg::Q => Strategy::QCorrection,
            StrategyArg::T => Strategy::TMultiplier,
        },
        suite: opts.suite,
        quad,
        prec: Precision::with_digits(digits),
    })
}

fn error_record(f: &Failure) -> Record {
    Record::new("error")
        .int("exit_code", f.code as i64)
        .str("kind", f.kind.clone())
        .str("message", f.message.clone())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => e.exit(),
        Err(e) => {
            let f = Failure::usage(
                e.to_string()
                    .lines()
                    .next()
                    .unwrap_or_default()
                    .trim_start_matches("error: "),
            );
            print!("{}", render("parse", &[error_record(&f)], Format::Kv));
            return ExitCode::from(2);
        }
    };
    let (name, opts, run): (&str, &Opts, fn(&Job) -> Result<Report, Failure>) = match &cli.command {
        Command::Eval(o) => ("eval", o, commands::eval),
        Command::Indices(o) => ("indices", o, commands::indices),
        Command::Zeros(o) => ("zeros", o, commands::zeros),
        Command::Represent(o) => ("represent", o, commands::represent),
        Command::Boundary(o) => ("boundary", o, commands::boundary),
        Command::Verify(o) => ("verify", o, commands::verify),
        Command::Product(o) => ("product", o, commands::product),
    };
    let format = if opts.format == Format::Csv && name != "eval" {
        Format::Kv
    } else {
        opts.format
    };
    let outcome = job(opts).and_then(|j| run(&j).map(|r| j.stamp(r)));
    match outcome {
        Ok(report) => {
            print!("{}", render(name, &report.records, format));
            ExitCode::from(if report.failed { 3 } else { 0 })
        }
        Err(f) => {
            let format = if format == Format::Csv {
                Format::Kv
            } else {
                format
            };
            print!("{}", render(name, &[error_record(&f)], format));
            ExitCode::from(f.code as u8)
        }
    }
}
