//! Reproducible numerical experiments: the bound comparison table, the
//! lower-bound crossover data, the Hölder divergence probe, the rotation
//! scan, the distortion check, and the full invariant sweep.
//!
//! Every command returns a serializable report. [`Emit`] writes that report
//! either as CSV (comma separated, header row, LF line endings, 17
//! significant digits for unrounded values) or as pretty-printed JSON.
//!
//! Random sampling uses ChaCha8 seeded from a `u64`; each suite draws from
//! its own stream of the same seed, so suites are independent of one another
//! and of evaluation order.

use std::io::Write;

use serde::Serialize;

use crate::error::{Error, Result};

pub mod figure;
pub mod holder;
pub mod qc;
pub mod rotation;
pub mod sampling;
pub mod table;
pub mod verify;

pub use sampling::Sampler;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

/// Settings shared by every command.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub seed: u64,
    pub samples: usize,
    pub grid: usize,
    pub tolerance: f64,
    pub output: OutputFormat,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            seed: 42,
            samples: 10_000,
            grid: 200,
            tolerance: 1e-9,
            output: OutputFormat::Csv,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.samples < 1 {
            return Err(Error::InvalidArgument("samples must be at least 1".into()));
        }
        if self.grid < 2 {
            return Err(Error::InvalidArgument("grid must be at least 2".into()));
        }
        if !(self.tolerance > 0.0) || self.tolerance.is_infinite() {
            return Err(Error::InvalidArgument(format!(
                "tolerance must be positive, got {}",
                self.tolerance
            )));
        }
        Ok(())
    }
}

/// One row of a scan: an abscissa, the exact value there, and the bounds
/// and quotient that go with it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProbeRecord {
    pub abscissa: f64,
    pub exact: f64,
    pub bound_low: f64,
    pub bound_high: Option<f64>,
    pub quotient: Option<f64>,
}

impl ProbeRecord {
    /// `bound_low ≤ exact ≤ bound_high`, within `slack`.
    pub fn is_consistent(&self, slack: f64) -> bool {
        self.bound_low <= self.exact + slack && self.bound_high.is_none_or(|h| self.exact <= h + slack)
    }
}

/// A report that can be written as CSV or JSON.
pub trait Emit: Serialize {
    fn write_csv<W: Write>(&self, out: W) -> csv::Result<()>;

    fn emit<W: Write>(&self, format: OutputFormat, mut out: W) -> std::io::Result<()> {
        match format {
            OutputFormat::Csv => self.write_csv(&mut out).map_err(std::io::Error::other),
            OutputFormat::Json => {
                serde_json::to_writer_pretty(&mut out, self)?;
                writeln!(out)
            }
        }
    }
}

pub(crate) fn csv_writer<W: Write>(out: W) -> csv::Writer<W> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out)
}

/// 17 significant digits.
pub(crate) fn sig17(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        format!("{v}")
    }
}

/// Rounds half away from zero to six decimals.
pub fn round6(v: f64) -> f64 {
    (v * 1e6).round() / 1e6
}
