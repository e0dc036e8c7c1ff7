//! Command-line front end: quiver ingestion, verification runs, reports.

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};

use sdhall::config::{load_lambda_file, load_quiver_file, parse_charge_list, RunConfig};
use sdhall::driver;
use sdhall::error::Result;
use sdhall::report::Report;

/// Exact-arithmetic engine for semi-derived Hall algebras of quivers with
/// loops: builds the algebra over small prime fields and machine-checks the
/// defining relations of the layered and charged quantum presentations.
#[derive(Parser)]
#[command(name = "sdhall", version, about, long_about = None)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the symmetric integer matrix of a quiver, the vertex
    /// classification, and the layer truncation.
    Cartan(Common),
    /// Tabulate filtration counts for all class pairs within the dimension
    /// bound, cross-checked by two independent counting routes.
    Hallnum(Common),
    /// Map every defining relation of the selected presentation into the
    /// algebra and check that it vanishes.
    Verify(Common),
    /// Check the straightening identities between opposite stalk powers
    /// over the full parameter grid.
    Identities(Common),
}

#[derive(Args)]
struct Common {
    /// Quiver definition file (`vertices:`, `arrow:`, optional `lambda:` lines).
    quiver: PathBuf,

    /// Field size; repeat the flag to run several primes.
    #[arg(long = "q", value_name = "PRIME")]
    q: Vec<u8>,

    /// Layer bound for the layered presentation and power bound for the
    /// straightening identities.
    #[arg(long, default_value_t = 2)]
    lmax: usize,

    /// Presentation to verify: `layered` or `charged`.
    #[arg(long, default_value = "layered")]
    mode: String,

    /// Charge list for the charged presentation, e.g. `1=2,2=1`.
    #[arg(long)]
    charge: Option<String>,

    /// Separate scalar-table file (`lambda: <vertex> <scalars...>` lines).
    #[arg(long)]
    lambda_table: Option<PathBuf>,

    /// Enumeration ceiling per scan; larger values admit bigger searches.
    #[arg(long, default_value_t = 1u128 << 22)]
    budget: u128,

    /// Total-dimension bound for the filtration-count table.
    #[arg(long, default_value_t = 3)]
    dim_bound: usize,

    /// Write the report to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,

    /// Force single-threaded execution (deterministic debugging path).
    #[arg(long)]
    serial: bool,
}

fn build_config(common: Common) -> Result<RunConfig> {
    let parsed = load_quiver_file(&common.quiver)?;
    let quiver = Arc::new(parsed.build()?);
    let mut lambda_rows = parsed.lambda.clone();
    if let Some(path) = &common.lambda_table {
        lambda_rows.extend(load_lambda_file(path)?);
    }
    let charge_entries = match &common.charge {
        Some(text) => parse_charge_list(text)?,
        None => Vec::new(),
    };
    let cfg = RunConfig {
        quiver_path: common.quiver,
        parsed,
        quiver,
        qs: if common.q.is_empty() {
            vec![2]
        } else {
            common.q
        },
        lmax: common.lmax,
        mode: common.mode.parse()?,
        charge_entries,
        lambda_rows,
        budget: common.budget,
        dim_bound: common.dim_bound,
        out: common.out,
        serial: common.serial,
    };
    cfg.validate()?;
    Ok(cfg)
}

fn run(cli: Cli) -> Result<bool> {
    let (cfg, report): (RunConfig, Report) = match cli.cmd {
        Cmd::Cartan(c) => {
            let cfg = build_config(c)?;
            let report = driver::run_cartan(&cfg)?;
            (cfg, report)
        }
        Cmd::Hallnum(c) => {
            let cfg = build_config(c)?;
            let report = driver::run_hallnum(&cfg)?;
            (cfg, report)
        }
        Cmd::Verify(c) => {
            let cfg = build_config(c)?;
            let report = driver::run_verify(&cfg)?;
            (cfg, report)
        }
        Cmd::Identities(c) => {
            let cfg = build_config(c)?;
            let report = driver::run_identities(&cfg)?;
            (cfg, report)
        }
    };
    report.persist(cfg.out.as_deref())?;
    Ok(report.all_zero())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("sdhall: {e}");
            ExitCode::from(2)
        }
    }
}
