//! `μ_{B²}(x, 0)` against its linear and quartic lower bounds on `[0.01, 0.99]`,
//! with the abscissa where the two bounds trade places.

use std::io::Write;

use serde::Serialize;

use super::{csv_writer, sig17, Emit, ProbeRecord, RunConfig};
use crate::bounds::{mu_lower_linear, mu_lower_quartic};
use crate::error::Result;
use crate::geom::{rho_ball, DomainSpec, Point};
use crate::metrics::mu_metric;

pub const X_RANGE: (f64, f64) = (0.01, 0.99);

/// The switch abscissa as stated to two decimals in the literature.
pub const ROUNDED_THRESHOLD: f64 = 0.75;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FigureRow {
    pub x: f64,
    pub rho: f64,
    pub mu: f64,
    pub quartic: f64,
    pub linear: f64,
}

impl FigureRow {
    pub fn at(x: f64) -> Result<Self> {
        let p = Point::planar(x, 0.0);
        let origin = Point::planar(0.0, 0.0);
        let rho = rho_ball(&p, &origin)?;
        Ok(Self {
            x,
            rho,
            mu: mu_metric(&DomainSpec::unit_disk(), &p, &origin)?,
            quartic: mu_lower_quartic(rho)?,
            linear: mu_lower_linear(rho)?,
        })
    }

    /// Positive where the quartic bound is the larger one.
    pub fn gap(&self) -> f64 {
        self.quartic - self.linear
    }

    pub fn record(&self) -> ProbeRecord {
        ProbeRecord {
            abscissa: self.x,
            exact: self.mu,
            bound_low: self.quartic.max(self.linear),
            bound_high: None,
            quotient: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Switch {
    pub x: f64,
    pub rho: f64,
    /// Grid cell in which the sign change was found.
    pub bracket: [f64; 2],
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FigureReport {
    pub grid: usize,
    pub rows: Vec<FigureRow>,
    pub sign_changes: usize,
    pub switch: Option<Switch>,
    /// `th(1)`, where `ρ(x, 0) = 2`.
    pub exact_threshold: f64,
    pub rounded_threshold: f64,
}

impl FigureReport {
    /// A unique switch was found and lies at `ρ = 2` within `tol`.
    pub fn switch_ok(&self, tol: f64) -> bool {
        self.sign_changes == 1 && self.switch.is_some_and(|s| (s.rho - 2.0).abs() <= tol)
    }

    pub fn summary(&self) -> String {
        let found = match self.switch {
            Some(s) => format!("x = {}, rho = {}", sig17(s.x), sig17(s.rho)),
            None => "none".into(),
        };
        format!(
            "ordering switch: {found} ({} sign change(s) on the grid)\n\
             exact threshold th(1) = {}\n\
             rounded threshold (two decimals, as usually quoted) = {}\n",
            self.sign_changes,
            sig17(self.exact_threshold),
            self.rounded_threshold,
        )
    }
}

fn refine(mut lo: f64, mut hi: f64, lo_sign: bool) -> Result<f64> {
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if (FigureRow::at(mid)?.gap() > 0.0) == lo_sign {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

pub fn cmd_figure(cfg: &RunConfig) -> Result<FigureReport> {
    cfg.validate()?;
    let (a, b) = X_RANGE;
    let step = (b - a) / (cfg.grid - 1) as f64;
    let rows = (0..cfg.grid)
        .map(|i| {
            let x = if i + 1 == cfg.grid { b } else { a + step * i as f64 };
            FigureRow::at(x)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut sign_changes = 0;
    let mut switch = None;
    for pair in rows.windows(2) {
        let (l, r) = (pair[0].gap() > 0.0, pair[1].gap() > 0.0);
        if l != r {
            sign_changes += 1;
            if switch.is_none() {
                let x = refine(pair[0].x, pair[1].x, l)?;
                switch = Some(Switch {
                    x,
                    rho: rho_ball(&Point::planar(x, 0.0), &Point::planar(0.0, 0.0))?,
                    bracket: [pair[0].x, pair[1].x],
                });
            }
        }
    }
    Ok(FigureReport {
        grid: cfg.grid,
        rows,
        sign_changes,
        switch,
        exact_threshold: 1f64.tanh(),
        rounded_threshold: ROUNDED_THRESHOLD,
    })
}

impl Emit for FigureReport {
    fn write_csv<W: Write>(&self, out: W) -> csv::Result<()> {
        let mut w = csv_writer(out);
        w.write_record(["x", "rho", "mu", "quartic_lower", "linear_lower"])?;
        for r in &self.rows {
            w.write_record([r.x, r.rho, r.mu, r.quartic, r.linear].map(sig17))?;
        }
        w.flush()?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn switch_at_rho_two() {
        let report = cmd_figure(&RunConfig::default()).unwrap();
        assert!(report.switch_ok(1e-9), "{}", report.summary());
        let x = report.switch.unwrap().x;
        assert!((x - 0.761_594_155_955_764_9).abs() < 1e-9);
    }

    #[test]
    fn regimes() {
        let mid = FigureRow::at(0.5).unwrap();
        assert!((mid.rho - 3f64.ln()).abs() < 1e-15);
        assert!(mid.gap() > 0.0);
        let far = FigureRow::at(0.9).unwrap();
        assert!((far.rho - 2.944_438_979_166_44).abs() < 1e-12);
        assert!(far.gap() < 0.0);
    }

    #[test]
    fn bounds_below_exact() {
        let report = cmd_figure(&RunConfig { grid: 50, ..Default::default() }).unwrap();
        assert_eq!(report.rows.len(), 50);
        assert_eq!(report.rows[0].x, 0.01);
        assert_eq!(report.rows[49].x, 0.99);
        assert!(report.rows.iter().all(|r| r.record().is_consistent(0.0)));
    }

    #[test]
    fn coarse_grid_still_finds_switch() {
        let report = cmd_figure(&RunConfig { grid: 2, ..Default::default() }).unwrap();
        assert!(report.switch_ok(1e-9));
    }
}
