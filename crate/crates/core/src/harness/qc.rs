//! Distortion of `μ_{B²}` under the radial stretch `x ↦ |x|^(α−1) x`.

use std::io::Write;

use serde::Serialize;

use super::{csv_writer, sampling::Sampler, sig17, Emit, RunConfig};
use crate::error::Result;
use crate::metrics::{qc_mu_distortion, DistortionReport, StretchParam};

/// Sampler stream used for the distortion pairs.
pub const QC_STREAM: u64 = 1000;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QcReport {
    pub seed: u64,
    #[serde(flatten)]
    pub distortion: DistortionReport,
    /// `[α, 1/α]`.
    pub allowed: [f64; 2],
    /// Some ratio differs from 1.
    pub strict_distortion: bool,
}

impl QcReport {
    pub fn passed(&self) -> bool {
        self.distortion.passed
    }
}

pub fn cmd_qc_check(alpha: f64, cfg: &RunConfig) -> Result<QcReport> {
    cfg.validate()?;
    let p = StretchParam::new(alpha)?;
    let mut sampler = Sampler::new(cfg.seed, QC_STREAM);
    let pairs: Vec<_> = (0..cfg.samples).map(|_| sampler.admissible_pair()).collect();
    let distortion = qc_mu_distortion(p, &pairs)?;
    let strict_distortion = distortion.min_ratio != 1.0 || distortion.max_ratio != 1.0;
    Ok(QcReport {
        seed: cfg.seed,
        allowed: [1.0 / p.dilatation(), p.dilatation()],
        strict_distortion,
        distortion,
    })
}

impl Emit for QcReport {
    fn write_csv<W: Write>(&self, out: W) -> csv::Result<()> {
        let d = &self.distortion;
        let mut w = csv_writer(out);
        w.write_record(["alpha", "k", "pairs", "min_ratio", "max_ratio", "violations", "passed"])?;
        w.write_record([
            sig17(d.alpha),
            sig17(d.k),
            d.pairs.to_string(),
            sig17(d.min_ratio),
            sig17(d.max_ratio),
            d.violations.to_string(),
            d.passed.to_string(),
        ])?;
        w.flush()?;
        Ok(())
    }
}
