//! `th(ρ/2)`, `ρ` and `μ` of a pair as it is rotated about its Euclidean
//! midpoint, from the chord along the midpoint ray to the chord across it.

use std::f64::consts::FRAC_PI_2;
use std::io::Write;

use serde::Serialize;

use super::{csv_writer, sig17, Emit, RunConfig};
use crate::bounds::rho_bounds_midpoint;
use crate::error::Result;
use crate::geom::{rotation_params, th_half_rho, th_half_rho_rotated, DomainSpec, Point};
use crate::metrics::mu_from_th_half_rho;

/// Relative agreement required between the scan endpoints and the closed
/// forms.
pub const ENDPOINT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RotationRow {
    pub nu: f64,
    pub th: f64,
    pub rho: f64,
    pub mu: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RotationReport {
    pub x: [f64; 2],
    pub y: [f64; 2],
    pub d: f64,
    pub k: f64,
    /// Angle of the pair as given.
    pub native_nu: f64,
    /// First angle of the scan: 0 when the whole rotation stays in the disk,
    /// otherwise the native angle.
    pub start_nu: f64,
    pub rows: Vec<RotationRow>,
    pub nonincreasing: bool,
    /// Value the first row should take: the upper bound, or the exact value
    /// when the scan starts at the native angle.
    pub expected_first: f64,
    /// The lower bound, attained at `ν = π/2`.
    pub expected_last: f64,
    pub endpoints_match: bool,
    pub passed: bool,
}

fn rel_close(a: f64, b: f64) -> bool {
    (a - b).abs() <= ENDPOINT_TOL * b.abs().max(f64::MIN_POSITIVE)
}

pub fn cmd_rotation_scan(x: &Point, y: &Point, cfg: &RunConfig) -> Result<RotationReport> {
    cfg.validate()?;
    let params = rotation_params(x, y)?;
    let bounds = rho_bounds_midpoint(x, y)?;
    let (start_nu, expected_first) = match bounds.upper {
        Some(u) => (0.0, u),
        None => (params.nu(), th_half_rho(&DomainSpec::unit_disk(), x, y)?),
    };
    let step = (FRAC_PI_2 - start_nu) / (cfg.grid - 1) as f64;
    let rows = (0..cfg.grid)
        .map(|i| {
            let nu = if i + 1 == cfg.grid {
                FRAC_PI_2
            } else {
                start_nu + step * i as f64
            };
            let th = th_half_rho_rotated(&params.with_nu(nu)?);
            Ok(RotationRow {
                nu,
                th,
                rho: 2.0 * th.atanh(),
                mu: mu_from_th_half_rho(th)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let nonincreasing = rows
        .windows(2)
        .all(|p| p[1].th <= p[0].th && p[1].rho <= p[0].rho && p[1].mu <= p[0].mu);
    let endpoints_match = rel_close(rows[0].th, expected_first)
        && rel_close(rows[rows.len() - 1].th, bounds.lower);
    let pair = |p: &Point| [p.coords()[0], p.coords()[1]];
    Ok(RotationReport {
        x: pair(x),
        y: pair(y),
        d: params.d(),
        k: params.k(),
        native_nu: params.nu(),
        start_nu,
        rows,
        nonincreasing,
        expected_first,
        expected_last: bounds.lower,
        endpoints_match,
        passed: nonincreasing && endpoints_match,
    })
}

impl Emit for RotationReport {
    fn write_csv<W: Write>(&self, out: W) -> csv::Result<()> {
        let mut w = csv_writer(out);
        w.write_record(["nu", "th_half_rho", "rho", "mu"])?;
        for r in &self.rows {
            w.write_record([r.nu, r.th, r.rho, r.mu].map(sig17))?;
        }
        w.flush()?;
        Ok(())
    }
}
