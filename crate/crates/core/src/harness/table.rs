//! Comparison of the midpoint-rotation bracket on `th(ρ/2)` with the
//! classical one, for two fixed pairs.

use std::io::Write;

use serde::Serialize;

use super::{csv_writer, round6, sig17, Emit};
use crate::bounds::{rho_bounds_avv, rho_bounds_midpoint};
use crate::error::Result;
use crate::geom::{th_half_rho, DomainSpec, Point};

/// The two pairs of the comparison, as `((re, im), (re, im))`.
pub const TABLE_PAIRS: [([f64; 2], [f64; 2]); 2] = [
    ([0.6, 0.3], [0.1, 0.1]),
    ([-0.7, 0.7], [0.65, -0.6]),
];

/// Expected six-decimal values per row: midpoint lower, classical lower,
/// midpoint upper, classical upper.
pub const REFERENCE_VALUES: [[f64; 4]; 2] = [
    [0.575624, 0.491855, 0.591776, 0.594959],
    [0.997999, 0.999183, 0.999555, 0.999381],
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Tighter {
    Midpoint,
    Classical,
    Tie,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TableRow {
    pub x: [f64; 2],
    pub y: [f64; 2],
    pub exact: f64,
    pub lower_midpoint: f64,
    pub lower_classical: f64,
    /// Absent when the midpoint upper bound is not valid for the pair.
    pub upper_midpoint: Option<f64>,
    pub upper_classical: f64,
    pub tighter_lower: Tighter,
    pub tighter_upper: Tighter,
}

impl TableRow {
    /// The four bounds in table order, rounded to six decimals.
    pub fn rounded(&self) -> [Option<f64>; 4] {
        [
            Some(self.lower_midpoint),
            Some(self.lower_classical),
            self.upper_midpoint,
            Some(self.upper_classical),
        ]
        .map(|v| v.map(round6))
    }

    fn unrounded(&self) -> [Option<f64>; 4] {
        [
            Some(self.lower_midpoint),
            Some(self.lower_classical),
            self.upper_midpoint,
            Some(self.upper_classical),
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TableReport {
    pub rows: Vec<TableRow>,
}

impl TableReport {
    /// Largest deviation of an unrounded bound from [`REFERENCE_VALUES`].
    pub fn max_reference_deviation(&self) -> f64 {
        self.rows
            .iter()
            .zip(REFERENCE_VALUES)
            .flat_map(|(row, want)| {
                row.unrounded()
                    .into_iter()
                    .zip(want)
                    .map(|(got, want)| got.map_or(f64::INFINITY, |g| (g - want).abs()))
            })
            .fold(0.0, f64::max)
    }

    /// Whether every rounded bound equals its reference value.
    pub fn matches_reference(&self) -> bool {
        self.rows
            .iter()
            .zip(REFERENCE_VALUES)
            .all(|(row, want)| row.rounded().into_iter().zip(want).all(|(g, w)| g == Some(w)))
    }
}

fn tighter(midpoint: Option<f64>, classical: f64, prefer_larger: bool) -> Tighter {
    match midpoint {
        None => Tighter::Classical,
        Some(m) if m == classical => Tighter::Tie,
        Some(m) if (m > classical) == prefer_larger => Tighter::Midpoint,
        Some(_) => Tighter::Classical,
    }
}

pub fn table_row(x: &Point, y: &Point) -> Result<TableRow> {
    let mid = rho_bounds_midpoint(x, y)?;
    let avv = rho_bounds_avv(x, y)?;
    let upper_classical = avv.upper.expect("classical bracket always has an upper bound");
    let pair = |p: &Point| [p.coords()[0], p.coords()[1]];
    Ok(TableRow {
        x: pair(x),
        y: pair(y),
        exact: th_half_rho(&DomainSpec::unit_disk(), x, y)?,
        lower_midpoint: mid.lower,
        lower_classical: avv.lower,
        upper_midpoint: mid.upper,
        upper_classical,
        tighter_lower: tighter(Some(mid.lower), avv.lower, true),
        tighter_upper: tighter(mid.upper, upper_classical, false),
    })
}

pub fn cmd_table() -> TableReport {
    let rows = TABLE_PAIRS
        .iter()
        .map(|&(x, y)| {
            table_row(&Point::planar(x[0], x[1]), &Point::planar(y[0], y[1]))
                .expect("table pairs are admissible")
        })
        .collect();
    TableReport { rows }
}

fn fmt6(v: Option<f64>) -> String {
    v.map(|v| format!("{v:.6}")).unwrap_or_default()
}

fn tag(t: Tighter) -> &'static str {
    match t {
        Tighter::Midpoint => "midpoint",
        Tighter::Classical => "classical",
        Tighter::Tie => "tie",
    }
}

impl Emit for TableReport {
    fn write_csv<W: Write>(&self, out: W) -> csv::Result<()> {
        let mut w = csv_writer(out);
        w.write_record([
            "x",
            "y",
            "lower_midpoint",
            "lower_classical",
            "upper_midpoint",
            "upper_classical",
            "tighter_lower",
            "tighter_upper",
            "exact",
        ])?;
        for row in &self.rows {
            let [a, b, c, d] = row.rounded();
            w.write_record([
                format!("{}{:+}i", row.x[0], row.x[1]),
                format!("{}{:+}i", row.y[0], row.y[1]),
                fmt6(a),
                fmt6(b),
                fmt6(c),
                fmt6(d),
                tag(row.tighter_lower).into(),
                tag(row.tighter_upper).into(),
                sig17(row.exact),
            ])?;
        }
        w.flush()?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproduces_reference_values() {
        let report = cmd_table();
        assert!(report.matches_reference(), "{report:#?}");
        assert!(report.max_reference_deviation() < 5e-7);
    }

    #[test]
    fn tighter_sides() {
        let report = cmd_table();
        assert_eq!(report.rows[0].tighter_lower, Tighter::Midpoint);
        assert_eq!(report.rows[0].tighter_upper, Tighter::Midpoint);
        assert_eq!(report.rows[1].tighter_lower, Tighter::Classical);
        assert_eq!(report.rows[1].tighter_upper, Tighter::Classical);
    }

    #[test]
    fn csv_layout() {
        let mut buf = Vec::new();
        cmd_table().write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<_> = text.lines().collect();
        assert_eq!(lines.len(), 3);
        assert!(!text.contains('\r'));
        assert!(lines[1].contains("0.575624,0.491855,0.591776,0.594959,midpoint,midpoint"));
        assert!(lines[2].contains("0.997999,0.999183,0.999555,0.999381,classical,classical"));
    }
}
