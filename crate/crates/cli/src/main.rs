//! `cmetric`: reproduces the numerical experiments of the conformal-metrics
//! library.
//!
//! Exit status is 0 on success, 1 when a checked property fails or output
//! cannot be written, and 2 on a bad argument.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use conformal_metrics::geom::Point;
use conformal_metrics::harness::{
    figure::cmd_figure,
    holder::{cmd_holder_probe, HolderMetric},
    qc::cmd_qc_check,
    rotation::cmd_rotation_scan,
    table::cmd_table,
    verify::cmd_verify,
    Emit, OutputFormat, RunConfig,
};

#[derive(Debug, Parser)]
#[command(name = "cmetric", version, about = "Modulus-metric experiments in the unit disk")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Common {
    /// Seed of the sample generator.
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    /// Random samples per suite.
    #[arg(long, global = true, default_value_t = 10_000)]
    samples: usize,
    /// Grid points of a scan.
    #[arg(long, global = true, default_value_t = 200)]
    grid: usize,
    /// Relative tolerance of identity checks.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tolerance: f64,
    /// Output format; `verify` and `qc-check` default to json, the rest to csv.
    #[arg(long, global = true, value_enum)]
    output: Option<Format>,
    /// Write to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Metric {
    Euclidean,
    Hyperbolic,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Midpoint-rotation against classical bounds for the two reference pairs.
    Table,
    /// μ(x, 0) with its linear and quartic lower bounds on [0.01, 0.99].
    Figure,
    /// Growth of μ(x, 0) / d(x, 0)^w along x = 10^(-k).
    HolderProbe {
        #[arg(long, allow_hyphen_values = true)]
        w: f64,
        #[arg(long, value_enum, default_value_t = Metric::Euclidean)]
        metric: Metric,
    },
    /// th(ρ/2), ρ and μ as a pair is rotated about its midpoint.
    RotationScan {
        /// First point as `re,im`.
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
        x: [f64; 2],
        /// Second point as `re,im`.
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
        y: [f64; 2],
    },
    /// Every property suite on seeded samples.
    Verify,
    /// μ distortion under the radial stretch |x|^(α−1) x.
    QcCheck {
        #[arg(long, allow_hyphen_values = true)]
        alpha: f64,
    },
}

fn parse_point(s: &str) -> Result<[f64; 2], String> {
    let (re, im) = s
        .split_once(',')
        .ok_or_else(|| format!("expected `re,im`, got `{s}`"))?;
    let part = |v: &str| {
        v.trim()
            .parse::<f64>()
            .map_err(|e| format!("`{v}` is not a number: {e}"))
    };
    Ok([part(re)?, part(im)?])
}

impl Common {
    fn config(&self, default_output: OutputFormat) -> RunConfig {
        RunConfig {
            seed: self.seed,
            samples: self.samples,
            grid: self.grid,
            tolerance: self.tolerance,
            output: match self.output {
                Some(Format::Csv) => OutputFormat::Csv,
                Some(Format::Json) => OutputFormat::Json,
                None => default_output,
            },
        }
    }

    fn sink(&self) -> anyhow::Result<Box<dyn Write>> {
        Ok(match &self.out {
            Some(path) => Box::new(BufWriter::new(
                File::create(path).with_context(|| format!("cannot create {}", path.display()))?,
            )),
            None => Box::new(io::stdout().lock()),
        })
    }
}

fn write_report<R: Emit>(report: &R, cfg: &RunConfig, common: &Common) -> anyhow::Result<()> {
    let mut sink = common.sink()?;
    report
        .emit(cfg.output, &mut sink)
        .and_then(|()| sink.flush())
        .context("cannot write output")
}

/// Runs the command; `Ok(false)` means a checked property failed.
fn run(cli: &Cli) -> anyhow::Result<bool> {
    let common = &cli.common;
    let default_output = match cli.command {
        Command::Verify | Command::QcCheck { .. } => OutputFormat::Json,
        _ => OutputFormat::Csv,
    };
    let cfg = common.config(default_output);
    cfg.validate()?;
    match &cli.command {
        Command::Table => {
            write_report(&cmd_table(), &cfg, common)?;
            Ok(true)
        }
        Command::Figure => {
            let report = cmd_figure(&cfg)?;
            write_report(&report, &cfg, common)?;
            if cfg.output == OutputFormat::Csv {
                eprint!("{}", report.summary());
            }
            Ok(report.switch_ok(1e-9))
        }
        Command::HolderProbe { w, metric } => {
            let metric = match metric {
                Metric::Euclidean => HolderMetric::Euclidean,
                Metric::Hyperbolic => HolderMetric::Hyperbolic,
            };
            let report = cmd_holder_probe(*w, metric)?;
            write_report(&report, &cfg, common)?;
            if !report.increasing {
                eprintln!(
                    "quotient is not strictly increasing from k = 3 (increasing from k = {})",
                    report.increasing_from
                );
            }
            if !report.minorant_ok {
                eprintln!("minorant exceeds the quotient");
            }
            Ok(report.passed)
        }
        Command::RotationScan { x, y } => {
            let (x, y) = (Point::planar(x[0], x[1]), Point::planar(y[0], y[1]));
            let report = cmd_rotation_scan(&x, &y, &cfg)?;
            write_report(&report, &cfg, common)?;
            if !report.nonincreasing {
                eprintln!("scan columns are not nonincreasing");
            }
            if !report.endpoints_match {
                eprintln!("scan endpoints differ from the closed-form bounds");
            }
            Ok(report.passed)
        }
        Command::Verify => {
            let report = cmd_verify(&cfg)?;
            write_report(&report, &cfg, common)?;
            for s in report.suites.iter().filter(|s| !s.ok) {
                eprintln!(
                    "suite {} failed ({}/{} passed); first failure: {}",
                    s.name,
                    s.passed,
                    s.checks,
                    s.first_failure.as_ref().map_or("none".into(), |v| v.to_string()),
                );
            }
            Ok(report.passed)
        }
        Command::QcCheck { alpha } => {
            let report = cmd_qc_check(*alpha, &cfg)?;
            write_report(&report, &cfg, common)?;
            Ok(report.passed())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<conformal_metrics::Error>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_parsing() {
        assert_eq!(parse_point("-0.7,0.7"), Ok([-0.7, 0.7]));
        assert_eq!(parse_point(" 0.1 , -0.2 "), Ok([0.1, -0.2]));
        assert!(parse_point("0.1").is_err());
        assert!(parse_point("a,b").is_err());
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
