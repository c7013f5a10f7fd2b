//! Command-line front end: `norm`, `transform` and `suite`.
//!
//! Exit codes: 0 success, 1 failed checks, 2 configuration or parse
//! error, 3 numerical-integrity error.

pub mod spec;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde::Serialize;

use crate::config::RunConfig;
use crate::error::{Error, Result};
use crate::exponent::ExponentPair;
use crate::grid::GridSpec;
use crate::intervals::SetOfIntervals;
use crate::norms::{restricted_star_norm, star_norm, NormResult};
use crate::suites::{run_suites, Suite, SuiteOutput};
use crate::transforms::fourier_stieltjes;

pub use spec::parse_measure;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURES: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_INTEGRITY: i32 = 3;

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Integrity(_) => EXIT_INTEGRITY,
        _ => EXIT_CONFIG,
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "measlp",
    version,
    about = "Dual Lp norms of measures, Fourier-Stieltjes transforms and inequality suites"
)]
struct Cli {
    /// Flat `key = value` run configuration.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// ‖μ‖ₚ* as JSON.
    Norm {
        #[arg(long)]
        measure: String,
        #[arg(long, default_value = "1")]
        p: f64,
        /// `a,b`: restrict to [a, b) first.
        #[arg(long, value_parser = parse_pair, allow_hyphen_values = true)]
        restrict: Option<(f64, f64)>,
    },
    /// μ̂ sampled on [-T, T] as CSV `y,re,im,abs`.
    Transform {
        #[arg(long)]
        measure: String,
        #[arg(long)]
        window: Option<f64>,
        #[arg(long)]
        points: Option<usize>,
    },
    /// Run a suite (holder, hy, young, sets, sinc, embeddings, uncertainty, bv, all).
    Suite {
        name: String,
        #[arg(long)]
        cases: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
    },
}

fn parse_pair(s: &str) -> std::result::Result<(f64, f64), String> {
    let (a, b) = s.split_once(',').ok_or("expected a,b")?;
    let a: f64 = a.trim().parse().map_err(|_| format!("bad number {a:?}"))?;
    let b: f64 = b.trim().parse().map_err(|_| format!("bad number {b:?}"))?;
    Ok((a, b))
}

#[derive(Debug, Serialize)]
pub struct NormOutput {
    pub command: &'static str,
    pub measure: String,
    pub p: ExponentPair,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub restrict: Option<(f64, f64)>,
    pub config_digest: String,
    pub seed: u64,
    pub result: NormResult,
}

pub fn cmd_norm(measure: &str, p: f64, restrict: Option<(f64, f64)>, cfg: &RunConfig) -> Result<NormOutput> {
    let mu = parse_measure(measure)?.with_depth(cfg.depth);
    let pair = ExponentPair::new(p)?;
    let result = match restrict {
        Some((a, b)) => restricted_star_norm(&mu, pair, &SetOfIntervals::interval(a, b)?)?,
        None => star_norm(&mu, pair)?,
    };
    Ok(NormOutput {
        command: "norm",
        measure: measure.to_string(),
        p: pair,
        restrict,
        config_digest: cfg.digest(),
        seed: cfg.seed,
        result,
    })
}

/// CSV with `#` header lines carrying the config digest and seed.
pub fn cmd_transform(measure: &str, window: f64, points: usize, cfg: &RunConfig) -> Result<String> {
    let mu = parse_measure(measure)?.with_depth(cfg.depth);
    let t = fourier_stieltjes(&mu, GridSpec::linspace(-window, window, points)?)?;
    let mut out = format!(
        "# measure={measure}\n# config_digest={}\n# seed={}\n# method={:?} certified_error={:e}\n",
        cfg.digest(),
        cfg.seed,
        t.method,
        t.certified_error
    );
    out.push_str(&t.to_csv());
    Ok(out)
}

pub fn cmd_suite(name: &str, cfg: &RunConfig) -> Result<SuiteOutput> {
    run_suites(&Suite::selection(name)?, cfg)
}

fn emit(cfg: &RunConfig, file: &str, body: &str, out: &mut dyn Write) -> Result<()> {
    let io = |e: std::io::Error| Error::Config(e.to_string());
    match &cfg.output_dir {
        Some(dir) => {
            fs::create_dir_all(dir).map_err(io)?;
            let path = dir.join(file);
            fs::write(&path, body).map_err(io)?;
            writeln!(out, "{}", path.display()).map_err(io)
        }
        None => out.write_all(body.as_bytes()).map_err(io),
    }
}

fn execute(cli: Cli, out: &mut dyn Write) -> Result<i32> {
    let mut cfg = match &cli.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    }
    .with_env();
    match cli.command {
        Command::Norm { measure, p, restrict } => {
            let r = cmd_norm(&measure, p, restrict, &cfg)?;
            let json = serde_json::to_string_pretty(&r).expect("serializable") + "\n";
            emit(&cfg, "norm.json", &json, out)?;
            Ok(EXIT_OK)
        }
        Command::Transform { measure, window, points } => {
            let csv = cmd_transform(&measure, window.unwrap_or(cfg.window), points.unwrap_or(cfg.grid_points), &cfg)?;
            emit(&cfg, "transform.csv", &csv, out)?;
            Ok(EXIT_OK)
        }
        Command::Suite { name, cases, seed } => {
            if let Some(c) = cases {
                cfg.cases = c;
            }
            if let Some(s) = seed {
                cfg.seed = s;
            }
            let r = cmd_suite(&name, &cfg)?;
            emit(&cfg, &format!("suite-{name}.json"), &(r.to_json() + "\n"), out)?;
            Ok(if r.fail > 0 { EXIT_FAILURES } else { EXIT_OK })
        }
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// exit code; results go to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
        }
    };
    match execute(cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}
