//! `bicount`: count common zeros of bivariate polynomial systems and check
//! the Jacobian degree bound. Reports are JSON on stdout, logs go to stderr.

mod commands;
mod error;
mod file;

use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use bicount::acceptance::Scale;
use bicount::oracle::Family;
use bicount::puiseux::ZeuthenConfig;
use clap::{Parser, Subcommand};
use serde::Serialize;

use commands::{Method, Report, Timer};
use error::CliError;
use file::SystemFile;

#[derive(Parser)]
#[command(name = "bicount", version, about = "Count common zeros of bivariate polynomial systems")]
struct Cli {
    /// Seed for every random choice (overrides the file's `seed`).
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Numeric tolerance for root tracking (overrides the file's `precision`).
    #[arg(long, global = true)]
    precision: Option<f64>,
    /// Lower bound for the tracking radius (overrides the file's `radius`).
    #[arg(long, global = true)]
    radius: Option<f64>,
    /// Add wall-clock phase timings to the report.
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Number of common zeros, with multiplicity.
    Count {
        /// System file, or `-` for stdin.
        file: PathBuf,
        #[arg(long, value_enum, default_value = "all")]
        method: Method,
    },
    /// The full K_i dimension chain with monotonicity and concavity verdicts.
    Trace { file: PathBuf },
    /// Count via branches at infinity and the Zeuthen sum.
    Zeuthen { file: PathBuf },
    /// Compare the number of points in generic fibers with min(n1, n2)(deg J + 1).
    BoundCheck {
        file: PathBuf,
        #[arg(long, default_value_t = 5)]
        trials: usize,
    },
    /// Draw a system from a generator family.
    Gen {
        #[arg(long, value_parser = parse_family)]
        family: Family,
        #[arg(long)]
        n1: u32,
        #[arg(long)]
        n2: u32,
        /// Coefficient magnitude bound.
        #[arg(long, default_value_t = 5)]
        bound: i64,
        /// Also write the system file here.
        #[arg(long)]
        write: Option<PathBuf>,
    },
    /// Run the acceptance suite.
    Selftest {
        #[arg(long, value_parser = parse_scale, default_value = "small")]
        scale: Scale,
    },
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse().map_err(|e: bicount::Error| e.to_string())
}

fn parse_scale(s: &str) -> Result<Scale, String> {
    s.parse().map_err(|e: bicount::Error| e.to_string())
}

fn load(path: &PathBuf) -> Result<(String, SystemFile), CliError> {
    let source = path.display().to_string();
    let io = |source_err| CliError::Io { path: source.clone(), source: source_err };
    let text = if source == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf).map_err(io)?;
        buf
    } else {
        std::fs::read_to_string(path).map_err(io)?
    };
    Ok((source.clone(), text.parse()?))
}

fn emit<T: Serialize>(report: &T) {
    let text = serde_json::to_string_pretty(report).expect("reports serialize");
    if let Err(e) = writeln!(std::io::stdout().lock(), "{text}") {
        log::warn!("writing report: {e}");
    }
}

fn ok<T: Serialize>(command: &'static str, passed: bool, body: T, timer: Timer) -> Result<u8, CliError> {
    let mut report: Report<T> = commands::finish(command, body, timer);
    if !passed {
        report.status = "failed";
    }
    emit(&report);
    Ok(if passed { 0 } else { 1 })
}

fn run(cli: Cli) -> Result<u8, CliError> {
    let mut timer = Timer::new(cli.timings);
    match &cli.command {
        Command::Count { file, method } => {
            let (source, f) = load(file)?;
            let body = commands::count(&source, &f, *method, &mut timer)?;
            ok("count", true, body, timer)
        }
        Command::Trace { file } => {
            let (source, f) = load(file)?;
            let body = commands::trace(&source, &f, &mut timer)?;
            ok("trace", true, body, timer)
        }
        Command::Zeuthen { file } => {
            let (source, f) = load(file)?;
            let defaults = ZeuthenConfig::default();
            let config = ZeuthenConfig {
                tolerance: cli.precision.or(f.precision).unwrap_or(defaults.tolerance),
                radius_floor: cli.radius.or(f.radius).unwrap_or(defaults.radius_floor),
                ..defaults
            };
            for (name, x) in [("precision", config.tolerance), ("radius", config.radius_floor)] {
                if !(x.is_finite() && x > 0.0) {
                    return Err(CliError::Argument(format!("--{name} must be positive")));
                }
            }
            let body = commands::zeuthen(&source, &f, &config, &mut timer)?;
            ok("zeuthen", true, body, timer)
        }
        Command::BoundCheck { file, trials } => {
            let (source, f) = load(file)?;
            let seed = cli.seed.or(f.seed).unwrap_or(0);
            let body = commands::bound_check(&source, &f, *trials, seed, &mut timer)?;
            ok("bound-check", body.satisfied(), body, timer)
        }
        Command::Gen { family, n1, n2, bound, write } => {
            let body = commands::gen(*family, *n1, *n2, *bound, cli.seed.unwrap_or(0), &mut timer)?;
            if let Some(path) = write {
                std::fs::write(path, body.file())
                    .map_err(|e| CliError::Io { path: path.display().to_string(), source: e })?;
            }
            ok("gen", true, body, timer)
        }
        Command::Selftest { scale } => {
            let body = commands::selftest(*scale, cli.seed.unwrap_or(0), cli.timings);
            ok("selftest", body.passed(), body, Timer::new(false))
        }
    }
}

#[derive(Serialize)]
struct ErrorOut {
    kind: &'static str,
    message: String,
}

#[derive(Serialize)]
struct ErrorReport<'a> {
    command: &'static str,
    status: &'static str,
    exit_code: u8,
    error: ErrorOut,
    #[serde(skip_serializing_if = "Option::is_none")]
    diagnostics: Option<&'a serde_json::Value>,
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Count { .. } => "count",
        Command::Trace { .. } => "trace",
        Command::Zeuthen { .. } => "zeuthen",
        Command::BoundCheck { .. } => "bound-check",
        Command::Gen { .. } => "gen",
        Command::Selftest { .. } => "selftest",
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let name = command_name(&cli.command);
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            log::error!("{e}");
            let code = e.exit_code();
            emit(&ErrorReport {
                command: name,
                status: "error",
                exit_code: code,
                error: ErrorOut { kind: e.kind(), message: e.to_string() },
                diagnostics: e.diagnostics(),
            });
            ExitCode::from(code)
        }
    }
}
