//! Command-line frontend: per-pair computation of the polynomial family,
//! reproduction of the worked examples, and exhaustive verification scans
//! over all covexillary pairs of a given rank.

mod compute;
mod examples;
mod scan;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use driftkl::Permutation;
use serde::Deserialize;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "driftkl",
    about = "Kazhdan-Lusztig and h-polynomials for covexillary permutations",
    version
)]
struct Cli {
    /// Optional TOML config file with default values for jobs, format,
    /// and checks (command-line flags take precedence).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute polynomials and combinatorial data for one pair (v, w).
    Compute {
        /// Permutation v in one-line notation, e.g. 1,2,3,4,5
        #[arg(long)]
        v: String,
        /// Permutation w in one-line notation, e.g. 5,2,3,4,1
        #[arg(long)]
        w: String,
        /// Comma-separated subset of P,Q,H,Horacle,Htilde,mult,complex,tree
        /// (default: P,Q,H,Horacle,Htilde,mult)
        #[arg(long)]
        quantities: Option<String>,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Verify the polynomial identities on every covexillary pair of rank n.
    Scan {
        /// Rank of the symmetric group, 2 <= n <= 7
        #[arg(long)]
        n: usize,
        /// Comma-separated subset of the available checks (default: all):
        /// PeqQ,PleqH,degEq,semicontinuity,HoracleEq,HtildeEq,multEq,
        /// specialBoxAgree,psiBijection,complexFacets,coeffBound,symmetry,
        /// unimodalityReport
        #[arg(long)]
        checks: Option<String>,
        /// Worker threads (default: DRIFTKL_JOBS, then all cores)
        #[arg(long)]
        jobs: Option<usize>,
        /// Write the JSON report to this file as well as stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Reproduce every worked example and diff against expected values.
    Examples,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Latex,
}

/// Optional config file: plain TOML key = value pairs.
#[derive(Debug, Default, Deserialize)]
struct Config {
    jobs: Option<usize>,
    format: Option<String>,
    checks: Option<String>,
}

fn load_config(path: &Option<PathBuf>) -> Result<Config> {
    match path {
        None => Ok(Config::default()),
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .with_context(|| format!("reading config file {}", p.display()))?;
            toml::from_str(&text).with_context(|| format!("parsing config file {}", p.display()))
        }
    }
}

fn parse_perm(text: &str, name: &str) -> Result<Permutation> {
    text.parse::<Permutation>()
        .map_err(|e| anyhow::anyhow!("invalid permutation for --{name}: {e}"))
}

fn main() -> ExitCode {
    match run() {
        Ok(ok) => {
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

/// Returns Ok(false) for a clean run that found violations.
fn run() -> Result<bool> {
    let cli = Cli::parse();
    let config = load_config(&cli.config)?;
    match cli.command {
        Command::Compute { v, w, quantities, format } => {
            let v = parse_perm(&v, "v")?;
            let w = parse_perm(&w, "w")?;
            let quantities = compute::parse_quantities(quantities.as_deref())?;
            let format = format.unwrap_or(match config.format.as_deref() {
                Some("csv") => Format::Csv,
                Some("latex") => Format::Latex,
                _ => Format::Json,
            });
            let report = compute::compute(&v, &w, &quantities)?;
            println!("{}", compute::render(&report, format)?);
            Ok(true)
        }
        Command::Scan { n, checks, jobs, out } => {
            if !(2..=7).contains(&n) {
                bail!("rank too large or too small: n = {n} is outside 2..=7");
            }
            let checks = scan::parse_checks(
                checks.as_deref().or(config.checks.as_deref()),
            )?;
            let jobs = jobs
                .or(config.jobs)
                .or_else(|| {
                    std::env::var("DRIFTKL_JOBS").ok().and_then(|j| j.parse().ok())
                })
                .unwrap_or_else(num_threads);
            let report = scan::run_scan(n, &checks, jobs)?;
            let json = serde_json::to_string_pretty(&report)?;
            if let Some(path) = out {
                std::fs::write(&path, &json)
                    .with_context(|| format!("writing report to {}", path.display()))?;
            }
            println!("{json}");
            Ok(report.total_violations() == 0)
        }
        Command::Examples => Ok(examples::run()),
    }
}

fn num_threads() -> usize {
    std::thread::available_parallelism().map_or(1, |p| p.get())
}
