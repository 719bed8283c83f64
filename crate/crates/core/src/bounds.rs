//! Closed-form two-sided estimates for the ring function, the Grötzsch
//! capacity, the modulus and Ferrand metrics, and `th(ρ/2)` itself.
//!
//! Each estimate is returned as a [`BoundPair`] tagged with the
//! [`BoundSource`] that produced it. Where an estimate has a closed-form
//! middle member (a quantity between the bounds that is sharper than
//! either), that member has its own function.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{domain, Result};
use crate::geom::{check_planar_disk_pair, check_rotatable_pair, Point};
use crate::metrics::mu_from_th_half_rho;
use crate::specfun::{
    arth_from_gap, arth_quartic_root_of_complement, arth_root, mu_with_complement, CapacityArg,
    Dimension, UnitInterval,
};

/// Collinearity and equal-norm tests for the equality cases of the
/// midpoint-rotation bounds.
pub const EQUALITY_TOL: f64 = 1e-12;

/// Which estimate a [`BoundPair`] came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundSource {
    /// `arth ⁴√r' < μ(r) < π² / (4 arth ⁴√r)`.
    RingFunction,
    /// Logarithmic bracket on `γ_n(s)`.
    CapacityLog,
    /// Bracket on `μ_D` linear in `ρ_D`.
    ModulusLinear,
    /// Lower bound on `μ_D` by `ρ_D^(1/4)`.
    ModulusQuartic,
    /// Logarithmic bracket on `λ_D`.
    FerrandLog,
    /// Bracket on `th(ρ_{B²}/2)` from rotating the pair about its midpoint.
    MidpointRotation,
    /// Classical bracket on `th(ρ_{B²}/2)` built from `|x|`, `|y|`, `|x − y|`.
    ClassicalChordal,
    /// Midpoint-rotation bracket pushed through `γ₂` onto `μ_{B²}`.
    MidpointModulus,
}

/// A lower bound and an optional upper bound on some exact quantity.
///
/// An absent upper bound means the estimate has no valid upper member for
/// the given input, not that the quantity is unbounded.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundPair {
    pub lower: f64,
    pub upper: Option<f64>,
    pub source: BoundSource,
}

impl BoundPair {
    /// Where a bound is attained both members agree mathematically and may
    /// cross by a few ulps; larger crossings are a logic error.
    pub fn new(lower: f64, upper: Option<f64>, source: BoundSource) -> Self {
        debug_assert!(
            upper.is_none_or(|u| lower <= u + 1e-12 * u.abs()),
            "{source:?}: lower {lower} exceeds upper {upper:?}"
        );
        Self { lower, upper, source }
    }

    /// `lower − slack ≤ value ≤ upper + slack`.
    pub fn contains(&self, value: f64, slack: f64) -> bool {
        self.lower <= value + slack && self.upper.is_none_or(|u| value <= u + slack)
    }

    /// Smallest distance from `value` to either end; negative on a violation.
    pub fn margin(&self, value: f64) -> f64 {
        let low = value - self.lower;
        self.upper.map_or(low, |u| low.min(u - value))
    }

    pub fn width(&self) -> Option<f64> {
        self.upper.map(|u| u - self.lower)
    }
}

/// `log(coth u)` without cancellation for large `u`.
fn ln_coth(u: f64) -> f64 {
    (2.0 / (2.0 * u).exp_m1()).ln_1p()
}

fn check_rho(rho: f64) -> Result<()> {
    if !(rho >= 0.0) || rho.is_infinite() {
        return Err(domain("ρ", rho, "[0, ∞)"));
    }
    Ok(())
}

/// Bracket on the ring function `μ(r)` by quartic roots.
pub fn mu_ring_bounds(r: UnitInterval) -> BoundPair {
    let r = r.get();
    let lower = arth_quartic_root_of_complement(r);
    let upper = PI * PI / (4.0 * arth_root(r, 4.0));
    BoundPair::new(lower, Some(upper), BoundSource::RingFunction)
}

/// `2^(n−1) c_n log((s+1)/(s−1)) ≤ γ_n(s) < 2^(n−1) c_n log(4(s+1)/(s−1))`.
pub fn gamma_n_bounds(n: Dimension, s: CapacityArg) -> BoundPair {
    let scale = n.capacity_scale();
    let log_ratio = (2.0 / (s.get() - 1.0)).ln_1p();
    BoundPair::new(
        scale * log_ratio,
        Some(scale * (log_ratio + 4f64.ln())),
        BoundSource::CapacityLog,
    )
}

/// The middle member `2^(n−1) c_n μ((s−1)/(s+1))`; equals `γ₂(s)` for `n = 2`.
pub fn gamma_n_middle(n: Dimension, s: CapacityArg) -> f64 {
    let s = s.get();
    let r = (s - 1.0) / (s + 1.0);
    let rc = 2.0 * s.sqrt() / (s + 1.0);
    n.capacity_scale() * mu_with_complement(r, rc)
}

/// `2^(n−1) c_n ρ ≤ μ_D ≤ 2^(n−1) c_n (ρ + log 4)`.
pub fn mu_bounds_nd(n: Dimension, rho: f64) -> Result<BoundPair> {
    check_rho(rho)?;
    let scale = n.capacity_scale();
    Ok(BoundPair::new(
        scale * rho,
        Some(scale * (rho + 4f64.ln())),
        BoundSource::ModulusLinear,
    ))
}

/// The middle member `2^(n−1) c_n μ(e^(−ρ))`; equals `μ_D` for `n = 2`.
pub fn mu_middle_nd(n: Dimension, rho: f64) -> Result<f64> {
    check_rho(rho)?;
    if rho == 0.0 {
        return Ok(0.0);
    }
    let r = (-rho).exp();
    let rc = (-(-2.0 * rho).exp_m1()).sqrt();
    Ok(n.capacity_scale() * mu_with_complement(r, rc))
}

/// `(4/π) ρ`, the planar linear lower bound on `μ_D`.
pub fn mu_lower_linear(rho: f64) -> Result<f64> {
    check_rho(rho)?;
    Ok(4.0 / PI * rho)
}

/// `8 / (π ⁴√2) · ρ^(1/4)`, a lower bound on the planar `μ_D`.
pub fn mu_lower_quartic(rho: f64) -> Result<f64> {
    check_rho(rho)?;
    Ok(8.0 / (PI * 2f64.powf(0.25)) * rho.powf(0.25))
}

/// The better of the linear and quartic lower bounds. The quartic one wins
/// exactly when `ρ < 2`.
pub fn best_mu_lower(rho: f64) -> Result<f64> {
    Ok(mu_lower_quartic(rho)?.max(mu_lower_linear(rho)?))
}

/// `c_n log t ≤ λ_D < c_n log(2t)` with `t = (e^(ρ/2) + 1)/(e^(ρ/2) − 1)`.
pub fn lambda_bounds(n: Dimension, rho: f64) -> Result<BoundPair> {
    if !(rho > 0.0) || rho.is_infinite() {
        return Err(domain("ρ", rho, "(0, ∞)"));
    }
    let cn = crate::specfun::constant_cn(n);
    let log_t = ln_coth(0.25 * rho);
    Ok(BoundPair::new(
        cn * log_t,
        Some(cn * (log_t + 2f64.ln())),
        BoundSource::FerrandLog,
    ))
}

/// The middle member `(c_n/2) μ(t^(−2))`; equals `λ_D` for `n = 2`.
pub fn lambda_middle(n: Dimension, rho: f64) -> Result<f64> {
    if !(rho > 0.0) || rho.is_infinite() {
        return Err(domain("ρ", rho, "(0, ∞)"));
    }
    // t⁻¹ = th(ρ/4).
    let th = (0.25 * rho).tanh();
    let r = th * th;
    let rc = ((1.0 + r) / (0.25 * rho).cosh().powi(2)).sqrt();
    Ok(0.5 * crate::specfun::constant_cn(n) * mu_with_complement(r, rc))
}

/// Which equality cases of the midpoint-rotation bracket a pair satisfies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EqualityCases {
    /// `|x| = |y|`: the lower bound is attained.
    pub lower: bool,
    /// `x`, `y` and `0` are collinear: the upper bound is attained.
    pub upper: bool,
}

pub fn midpoint_equality_cases(x: &Point, y: &Point) -> EqualityCases {
    let (a, b) = (x.coords(), y.coords());
    EqualityCases {
        lower: (x.norm() - y.norm()).abs() <= EQUALITY_TOL,
        upper: (a[0] * b[1] - a[1] * b[0]).abs() <= EQUALITY_TOL,
    }
}

/// Whether the upper midpoint-rotation bound `|x − y| / (1 − x·y)` is below 1,
/// i.e. `|x + y| + |x − y| < 2`.
pub fn midpoint_upper_is_valid(x: &Point, y: &Point) -> bool {
    x.add(y).norm() + x.distance(y) < 2.0
}

fn midpoint_th_bounds(x: &Point, y: &Point) -> (f64, Option<f64>) {
    let chord = x.distance(y);
    let dot = x.dot(y);
    let norms = x.norm_sq() + y.norm_sq();
    let lower = 2.0 * chord / (4.0 - 8.0 * dot + norms * norms).sqrt();
    let upper = midpoint_upper_is_valid(x, y)
        .then(|| chord / (1.0 - dot))
        .filter(|&u| u < 1.0);
    (lower, upper)
}

/// Bracket on `th(ρ_{B²}(x, y)/2)` from Euclidean midpoint rotation:
///
/// ```text
/// 2|x − y| / √(4 − 8x·y + (|x|² + |y|²)²)  ≤  th(ρ/2)  ≤  |x − y| / (1 − x·y)
/// ```
///
/// The upper member is dropped when `|x + y| + |x − y| ≥ 2`, where it is no
/// longer below 1.
pub fn rho_bounds_midpoint(x: &Point, y: &Point) -> Result<BoundPair> {
    check_rotatable_pair(x, y)?;
    let (lower, upper) = midpoint_th_bounds(x, y);
    Ok(BoundPair::new(lower, upper, BoundSource::MidpointRotation))
}

/// Classical bracket on `th(ρ_{B²}(x, y)/2)`:
///
/// ```text
/// |x−y| / min{|x−y| + √(1−|x|²)√(1−|y|²), 1 + |x||y|}
///   ≤ th(ρ/2) ≤
/// |x−y| / max{|x−y| + (1−|x|)(1−|y|), 1 − |x||y|}
/// ```
pub fn rho_bounds_avv(x: &Point, y: &Point) -> Result<BoundPair> {
    check_planar_disk_pair(x, y)?;
    let chord = x.distance(y);
    let (a, b) = (x.norm(), y.norm());
    let lower_den = (chord + ((1.0 - a) * (1.0 + a) * (1.0 - b) * (1.0 + b)).sqrt()).min(1.0 + a * b);
    let upper_den = (chord + (1.0 - a) * (1.0 - b)).max(1.0 - a * b);
    Ok(BoundPair::new(
        chord / lower_den,
        Some(chord / upper_den),
        BoundSource::ClassicalChordal,
    ))
}

/// The midpoint-rotation bracket carried over to `μ_{B²}` through
/// `μ = γ₂(1 / th(ρ/2))`. The upper member is present under the same
/// condition as in [`rho_bounds_midpoint`].
pub fn mu_bounds_midpoint(x: &Point, y: &Point) -> Result<BoundPair> {
    check_rotatable_pair(x, y)?;
    let (lower, upper) = midpoint_th_bounds(x, y);
    let upper = upper.map(mu_from_th_half_rho).transpose()?;
    Ok(BoundPair::new(
        mu_from_th_half_rho(lower)?,
        upper,
        BoundSource::MidpointModulus,
    ))
}

fn check_pdec_args(t: f64, p: f64) -> Result<()> {
    if !(t > 0.0) || t.is_infinite() {
        return Err(domain("t", t, "(0, ∞)"));
    }
    if !(p > 0.0) || p.is_infinite() {
        return Err(domain("p", p, "(0, ∞)"));
    }
    Ok(())
}

/// `log(p) + log(log(arth(y)/y))` with `y = (th t)^(1/p)`.
///
/// Writing `u = th t`, the expression factors as `u · (arth(y)/y)^p`, so its
/// growth in `p` is carried entirely by `p · log(arth(y)/y)`. That excess is
/// positive but can sit far below the resolution of `u` itself (for small
/// `p` it is of order `p·u^(2/p)`), so comparisons in `p` are made on its
/// logarithm.
pub fn pdec_log_excess(t: f64, p: f64) -> Result<f64> {
    check_pdec_args(t, p)?;
    let ln_y = -ln_coth(t) / p;
    let y = ln_y.exp();
    let ln_excess = if y < 1e-4 {
        // log(arth(y)/y) = y²/3 + 13y⁴/90 + O(y⁶)
        2.0 * ln_y - 3f64.ln() + (13.0 / 30.0 * y * y).ln_1p()
    } else if y < 0.5 {
        // arth(y)/y − 1 = Σ_{k≥1} y^(2k) / (2k + 1)
        let y2 = y * y;
        let mut term = 1.0;
        let mut sum = 0.0;
        for k in 1..80 {
            term *= y2;
            let add = term / (2 * k + 1) as f64;
            sum += add;
            if add < 1e-18 * sum {
                break;
            }
        }
        sum.ln_1p().ln()
    } else {
        (arth_from_gap(y, -ln_y.exp_m1()).ln() - ln_y).ln()
    };
    Ok(p.ln() + ln_excess)
}

/// `log([arth((th t)^(1/p))]^p)`, finite where the expression itself under-
/// or overflows.
pub fn pdec_log_expression(t: f64, p: f64) -> Result<f64> {
    let excess = pdec_log_excess(t, p)?.exp();
    Ok(-ln_coth(t) + excess)
}

/// `[arth((th t)^(1/p))]^p`, strictly increasing in `p`.
pub fn pdec_expression(t: f64, p: f64) -> Result<f64> {
    pdec_log_expression(t, p).map(f64::exp)
}
