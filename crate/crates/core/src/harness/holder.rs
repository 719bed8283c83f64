//! Growth of `μ_{B²}(x, 0) / d(x, 0)^w` as `x → 0⁺`, which rules out a
//! Hölder estimate of `μ` by either the Euclidean or the hyperbolic distance.

use std::f64::consts::PI;
use std::io::Write;

use serde::Serialize;

use super::{csv_writer, sig17, Emit, ProbeRecord};
use crate::error::{domain, Result};
use crate::geom::{rho_ball, DomainSpec, Point};
use crate::metrics::mu_metric;
use crate::specfun::complement;

/// Probe abscissas are `10^(−k)` for `k` in this range.
pub const PROBE_EXPONENTS: std::ops::RangeInclusive<i32> = 1..=12;

/// The quotient must be strictly increasing from this exponent on.
pub const MONOTONE_FROM: i32 = 3;

/// Relative round-off allowance for the minorant comparison; at the smallest
/// probe the minorant and the quotient agree to about this order.
const MINORANT_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum HolderMetric {
    Euclidean,
    Hyperbolic,
}

/// `U(r) = log(2(1 + r′)/r)`, an upper bound for the ring function `μ(r)`.
pub fn ring_upper_u(r: f64) -> f64 {
    (2.0 * (1.0 + complement(r)) / r).ln()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HolderRow {
    pub k: i32,
    pub x: f64,
    pub mu: f64,
    pub denominator: f64,
    pub quotient: f64,
    /// `2π / (denominator · U(x))`.
    pub minorant: f64,
}

impl HolderRow {
    pub fn record(&self) -> ProbeRecord {
        ProbeRecord {
            abscissa: self.x,
            exact: self.quotient,
            bound_low: self.minorant,
            bound_high: None,
            quotient: Some(self.quotient),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HolderReport {
    pub w: f64,
    pub metric: HolderMetric,
    pub rows: Vec<HolderRow>,
    /// Quotient strictly increasing for `k ≥ 3`.
    pub increasing: bool,
    /// Smallest `k` from which the quotient is strictly increasing up to the
    /// last probe.
    pub increasing_from: i32,
    /// Minorant below the quotient at every row.
    pub minorant_ok: bool,
    /// `Q(10⁻¹²) / Q(10⁻³)`.
    pub growth: f64,
    pub passed: bool,
}

pub fn cmd_holder_probe(w: f64, metric: HolderMetric) -> Result<HolderReport> {
    if !(w > 0.0) || w.is_infinite() {
        return Err(domain("w", w, "(0, ∞)"));
    }
    let disk = DomainSpec::unit_disk();
    let origin = Point::planar(0.0, 0.0);
    let rows = PROBE_EXPONENTS
        .map(|k| {
            let x = 10f64.powi(-k);
            let p = Point::planar(x, 0.0);
            let mu = mu_metric(&disk, &p, &origin)?;
            let denominator = match metric {
                HolderMetric::Euclidean => x.powf(w),
                HolderMetric::Hyperbolic => rho_ball(&p, &origin)?.powf(w),
            };
            Ok(HolderRow {
                k,
                x,
                mu,
                denominator,
                quotient: mu / denominator,
                minorant: 2.0 * PI / (denominator * ring_upper_u(x)),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut increasing_from = *PROBE_EXPONENTS.end();
    for pair in rows.windows(2).rev() {
        if pair[1].quotient <= pair[0].quotient {
            break;
        }
        increasing_from = pair[0].k;
    }
    let increasing = increasing_from <= MONOTONE_FROM;
    let minorant_ok = rows
        .iter()
        .all(|r| r.minorant <= r.quotient * (1.0 + MINORANT_SLACK));
    let q = |k: i32| rows.iter().find(|r| r.k == k).map(|r| r.quotient).unwrap();
    let growth = q(12) / q(3);
    Ok(HolderReport {
        w,
        metric,
        rows,
        increasing,
        increasing_from,
        minorant_ok,
        growth,
        passed: increasing && minorant_ok,
    })
}

impl Emit for HolderReport {
    fn write_csv<W: Write>(&self, out: W) -> csv::Result<()> {
        let mut w = csv_writer(out);
        w.write_record(["k", "x", "mu", "denominator", "quotient", "minorant"])?;
        for r in &self.rows {
            let mut record = vec![r.k.to_string()];
            record.extend([r.x, r.mu, r.denominator, r.quotient, r.minorant].map(sig17));
            w.write_record(record)?;
        }
        w.flush()?;
        Ok(())
    }
}
