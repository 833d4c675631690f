//! Command-line front end: single estimates, (L, p) sweeps, iso-contours and
//! Monte Carlo shortage runs, emitted as JSON or CSV for downstream
//! plotting.

mod emit;
mod profile;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use shorcost_core::mc::{simulate, SimConfig};
use shorcost_core::sweep::{contour, log_spaced_bits, log_spaced_perr, sweep};
use shorcost_core::{estimate, Metric, ProblemInstance};

#[derive(Parser)]
#[command(
    name = "shorcost",
    version,
    about = "Resource estimator for fault-tolerant factoring on a photonic cluster-state machine"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,

    /// Write the artifact to this path instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Profile file overriding constants and device parameters
    /// (key = value lines; see README). Falls back to $SHORCOST_PROFILE.
    #[arg(long, global = true)]
    profile: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MetricArg {
    /// Total runtime; thresholds in seconds.
    Runtime,
    /// Photonic-module count.
    Modules,
    /// Machine extent along the qubit line; thresholds in meters.
    Sx,
    /// Machine extent across the distillation stack; thresholds in meters.
    Sy,
}

impl From<MetricArg> for Metric {
    fn from(arg: MetricArg) -> Metric {
        match arg {
            MetricArg::Runtime => Metric::Runtime,
            MetricArg::Modules => Metric::Modules,
            MetricArg::Sx => Metric::SizeX,
            MetricArg::Sy => Metric::SizeY,
        }
    }
}

/// Geometric axis written as min:max:count.
#[derive(Debug, Clone)]
struct BitsAxis(Vec<u64>);

#[derive(Debug, Clone)]
struct PerrAxis(Vec<f64>);

fn split_axis(s: &str) -> Result<(&str, &str, usize), String> {
    let parts: Vec<&str> = s.split(':').collect();
    let [min, max, count] = parts[..] else {
        return Err(format!("expected min:max:count, got `{s}`"));
    };
    let count: usize = count
        .parse()
        .map_err(|_| format!("count `{count}` is not an integer"))?;
    Ok((min, max, count))
}

fn parse_bits_axis(s: &str) -> Result<BitsAxis, String> {
    let (min, max, count) = split_axis(s)?;
    let min: u64 = min.parse().map_err(|_| format!("`{min}` is not an integer"))?;
    let max: u64 = max.parse().map_err(|_| format!("`{max}` is not an integer"))?;
    log_spaced_bits(min, max, count)
        .map(BitsAxis)
        .map_err(|e| e.to_string())
}

fn parse_perr_axis(s: &str) -> Result<PerrAxis, String> {
    let (min, max, count) = split_axis(s)?;
    let min: f64 = min.parse().map_err(|_| format!("`{min}` is not a number"))?;
    let max: f64 = max.parse().map_err(|_| format!("`{max}` is not a number"))?;
    log_spaced_perr(min, max, count)
        .map(PerrAxis)
        .map_err(|e| e.to_string())
}

#[derive(Subcommand)]
enum Command {
    /// Estimate resources for a single problem size and error rate.
    Estimate {
        /// Bit length L of the number to factor (>= 2).
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
        bits: u64,
        /// Physical error rate per operation.
        #[arg(long)]
        perr: f64,
    },
    /// Evaluate the estimator over an (L, p) grid.
    Sweep {
        /// Problem-size axis min:max:count, geometrically spaced.
        #[arg(long, default_value = "4:8192:64", value_parser = parse_bits_axis)]
        bits: BitsAxis,
        /// Error-rate axis min:max:count, geometrically spaced.
        #[arg(long, default_value = "1e-5:6e-3:64", value_parser = parse_perr_axis)]
        perr: PerrAxis,
    },
    /// Largest problem size per error rate that stays within a metric bound.
    Contour {
        #[arg(long, value_enum)]
        metric: MetricArg,
        /// Bound in the metric's unit: seconds, modules, or meters.
        #[arg(long)]
        threshold: f64,
        #[arg(long, default_value = "1e-4:3e-3:16", value_parser = parse_perr_axis)]
        perr: PerrAxis,
    },
    /// Monte Carlo run of the spare-circuit shortage model.
    Simulate {
        /// Failure probability of one distillation circuit attempt.
        #[arg(long)]
        perr: f64,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<()> {
    let profile = profile::load(cli.profile.as_deref())?;
    let (k, hw) = (profile.constants, profile.hardware);

    let artifact = match cli.command {
        Command::Estimate { bits, perr } => {
            let report = estimate(
                &ProblemInstance { bits, physical_error_rate: perr },
                &k,
                &hw,
            )?;
            match cli.format {
                Format::Json => emit::to_json(&emit::EstimateDocument {
                    constants: k,
                    hardware: hw,
                    report,
                })?,
                Format::Csv => emit::report_csv(&report),
            }
        }
        Command::Sweep { bits, perr } => {
            let grid = sweep(&bits.0, &perr.0, &k, &hw)?;
            match cli.format {
                Format::Json => emit::to_json(&emit::sweep_document(&grid, k, hw))?,
                Format::Csv => emit::sweep_csv(&grid),
            }
        }
        Command::Contour { metric, threshold, perr } => {
            let line = contour(metric.into(), threshold, &perr.0, &k, &hw)?;
            match cli.format {
                Format::Json => emit::to_json(&emit::ContourDocument {
                    constants: k,
                    hardware: hw,
                    threshold_unit: emit::metric_unit(line.metric).into(),
                    line,
                })?,
                Format::Csv => emit::contour_csv(&line),
            }
        }
        Command::Simulate { perr, trials, seed } => {
            let config = SimConfig::new(perr, trials, seed);
            let result = simulate(&config)?;
            match cli.format {
                Format::Json => emit::to_json(&emit::SimulateDocument { config, result })?,
                Format::Csv => emit::simulate_csv(&result),
            }
        }
    };

    match &cli.output {
        Some(path) => std::fs::write(path, artifact)?,
        None => print!("{artifact}"),
    }
    Ok(())
}
