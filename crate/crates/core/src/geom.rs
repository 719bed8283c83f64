//! Points, the two model domains, and the hyperbolic metric on them.
//!
//! In the unit ball `Bⁿ`
//!
//! ```text
//! sh²(ρ(x, y)/2) = |x − y|² / ((1 − |x|²)(1 − |y|²))
//! ```
//!
//! and in the upper half-space `Hⁿ`
//!
//! ```text
//! ch ρ(x, y) = 1 + |x − y|² / (2 xₙ yₙ).
//! ```
//!
//! Most consumers only need `th(ρ/2)`, which [`th_half_rho`] evaluates
//! without passing through `ρ` itself.

use std::f64::consts::FRAC_PI_2;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::specfun::Dimension;

/// A point of `Rⁿ`, `n ≥ 2`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Point(Vec<f64>);

impl Point {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.len() < 2 {
            return Err(Error::UnsupportedDimension(coords.len()));
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "non-finite coordinate in {coords:?}"
            )));
        }
        Ok(Self(coords))
    }

    /// The planar point `re + i·im`.
    pub fn planar(re: f64, im: f64) -> Self {
        Self(vec![re, im])
    }

    pub fn origin(n: Dimension) -> Self {
        Self(vec![0.0; n.get()])
    }

    /// `t·e₁` in dimension `n`.
    pub fn on_axis(n: Dimension, t: f64) -> Self {
        let mut coords = vec![0.0; n.get()];
        coords[0] = t;
        Self(coords)
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn dot(&self, other: &Point) -> f64 {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn norm_sq(&self) -> f64 {
        self.dot(self)
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn distance(&self, other: &Point) -> f64 {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt()
    }

    pub fn add(&self, other: &Point) -> Point {
        Point(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Point) -> Point {
        Point(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, factor: f64) -> Point {
        Point(self.0.iter().map(|a| a * factor).collect())
    }

    fn last(&self) -> f64 {
        self.0[self.0.len() - 1]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DomainKind {
    UnitBall,
    HalfSpace,
}

/// One of the two hyperbolic model domains in a fixed dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DomainSpec {
    pub kind: DomainKind,
    pub n: Dimension,
}

impl DomainSpec {
    pub fn new(kind: DomainKind, n: Dimension) -> Self {
        Self { kind, n }
    }

    pub fn unit_disk() -> Self {
        Self::new(DomainKind::UnitBall, Dimension::PLANE)
    }

    pub fn upper_half_plane() -> Self {
        Self::new(DomainKind::HalfSpace, Dimension::PLANE)
    }

    pub fn contains(&self, p: &Point) -> bool {
        if p.dim() != self.n.get() {
            return false;
        }
        match self.kind {
            DomainKind::UnitBall => p.norm_sq() < 1.0,
            DomainKind::HalfSpace => p.last() > 0.0,
        }
    }

    fn check_pair(&self, x: &Point, y: &Point) -> Result<()> {
        if x.dim() != y.dim() {
            return Err(Error::DimensionMismatch(x.dim(), y.dim()));
        }
        for p in [x, y] {
            if !self.contains(p) {
                return Err(Error::OutsideDomain(p.coords().to_vec()));
            }
        }
        Ok(())
    }
}

/// `1 − |x|²` as `(1 − |x|)(1 + |x|)`.
fn one_minus_norm_sq(x: &Point) -> f64 {
    let r = x.norm();
    (1.0 - r) * (1.0 + r)
}

/// `th(ρ_D(x, y)/2)` for either model domain.
pub fn th_half_rho(domain: &DomainSpec, x: &Point, y: &Point) -> Result<f64> {
    th_half_rho_with_complement(domain, x, y).map(|(th, _)| th)
}

/// `(th(ρ/2), 1/ch(ρ/2))`, the second computed directly rather than as
/// `√(1 − th²)`.
pub(crate) fn th_half_rho_with_complement(
    domain: &DomainSpec,
    x: &Point,
    y: &Point,
) -> Result<(f64, f64)> {
    domain.check_pair(x, y)?;
    let chord_sq = x.sub(y).norm_sq();
    let rest = match domain.kind {
        DomainKind::UnitBall => one_minus_norm_sq(x) * one_minus_norm_sq(y),
        DomainKind::HalfSpace => 4.0 * x.last() * y.last(),
    };
    let total = chord_sq + rest;
    Ok(((chord_sq / total).sqrt(), (rest / total).sqrt()))
}

/// Hyperbolic distance in either model domain.
pub fn rho(domain: &DomainSpec, x: &Point, y: &Point) -> Result<f64> {
    match domain.kind {
        DomainKind::UnitBall => rho_ball(x, y),
        DomainKind::HalfSpace => rho_halfspace(x, y),
    }
}

/// Hyperbolic distance in the unit ball `Bⁿ`.
pub fn rho_ball(x: &Point, y: &Point) -> Result<f64> {
    let ball = DomainSpec::new(DomainKind::UnitBall, Dimension::new(x.dim())?);
    ball.check_pair(x, y)?;
    let sh = x.distance(y) / (one_minus_norm_sq(x) * one_minus_norm_sq(y)).sqrt();
    Ok(2.0 * sh.asinh())
}

/// Hyperbolic distance in the upper half-space `Hⁿ` (last coordinate `> 0`).
pub fn rho_halfspace(x: &Point, y: &Point) -> Result<f64> {
    let half = DomainSpec::new(DomainKind::HalfSpace, Dimension::new(x.dim())?);
    half.check_pair(x, y)?;
    let sh = x.distance(y) / (2.0 * (x.last() * y.last()).sqrt());
    Ok(2.0 * sh.asinh())
}

/// A Euclidean ball `Bⁿ(center, radius)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EuclideanBall {
    pub center: Point,
    pub radius: f64,
}

/// The hyperbolic ball of radius `m` about `x` in `Bⁿ`, as a Euclidean ball.
pub fn hyp_ball_to_euclidean(x: &Point, m: f64) -> Result<EuclideanBall> {
    if !(m > 0.0) || m.is_infinite() {
        return Err(domain("M", m, "(0, ∞)"));
    }
    if x.norm_sq() >= 1.0 {
        return Err(Error::OutsideDomain(x.coords().to_vec()));
    }
    let t = (0.5 * m).tanh();
    let x2 = x.norm_sq();
    let denom = 1.0 - x2 * t * t;
    Ok(EuclideanBall {
        center: x.scale((1.0 - t) * (1.0 + t) / denom),
        radius: one_minus_norm_sq(x) * t / denom,
    })
}

/// Parameters of a planar pair relative to its Euclidean midpoint: half the
/// chord length `d`, half the midpoint norm `k`, and the smaller angle `nu`
/// between the chord and the ray from the origin through the midpoint.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RotationParams {
    d: f64,
    k: f64,
    nu: f64,
}

impl RotationParams {
    pub fn new(d: f64, k: f64, nu: f64) -> Result<Self> {
        if !(d > 0.0 && d < 1.0) {
            return Err(domain("d", d, "(0, 1)"));
        }
        if !(k > 0.0 && k < 1.0) {
            return Err(domain("k", k, "(0, 1)"));
        }
        if !(0.0..=FRAC_PI_2).contains(&nu) {
            return Err(domain("nu", nu, "[0, π/2]"));
        }
        Ok(Self { d, k, nu })
    }

    pub fn d(&self) -> f64 {
        self.d
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }

    /// Same pair, rotated about its midpoint to angle `nu`.
    pub fn with_nu(&self, nu: f64) -> Result<Self> {
        Self::new(self.d, self.k, nu)
    }
}

pub(crate) fn check_planar_disk_pair(x: &Point, y: &Point) -> Result<()> {
    for p in [x, y] {
        if p.dim() != 2 {
            return Err(Error::UnsupportedDimension(p.dim()));
        }
    }
    DomainSpec::unit_disk().check_pair(x, y)
}

/// Rejects `x = y` and `x = −y` on top of disk membership.
pub(crate) fn check_rotatable_pair(x: &Point, y: &Point) -> Result<()> {
    check_planar_disk_pair(x, y)?;
    if x == y {
        return Err(Error::CoincidentPoints);
    }
    if x.add(y).norm_sq() == 0.0 {
        return Err(Error::DegenerateMidpoint);
    }
    Ok(())
}

fn cross2(a: &Point, b: &Point) -> f64 {
    a.coords()[0] * b.coords()[1] - a.coords()[1] * b.coords()[0]
}

/// Midpoint-rotation parameters of a planar pair.
pub fn rotation_params(x: &Point, y: &Point) -> Result<RotationParams> {
    check_rotatable_pair(x, y)?;
    let chord = x.sub(y);
    let sum = x.add(y);
    let nu = cross2(&chord, &sum).abs().atan2(chord.dot(&sum).abs());
    RotationParams::new(0.5 * chord.norm(), 0.5 * sum.norm(), nu.min(FRAC_PI_2))
}

/// `th(ρ_{B²}/2)` of the pair described by `p`:
/// `2d / √((1 + d² − k²)² + 4k²d² sin²ν)`.
///
/// The formula is evaluated for any valid parameters. When `k + d ≥ 1` and
/// `nu` is small the rotated points leave the disk and the value reaches 1 or
/// more.
pub fn th_half_rho_rotated(p: &RotationParams) -> f64 {
    let (d, k) = (p.d, p.k);
    let base = 1.0 + d * d - k * k;
    let s = p.nu.sin();
    2.0 * d / (base * base + 4.0 * k * k * d * d * s * s).sqrt()
}

/// Rotates the pair about its Euclidean midpoint until the chord makes angle
/// `nu` with the midpoint ray. Only rotations that increase the angle are
/// allowed; those keep both points inside the disk.
pub fn rotate_about_midpoint(x: &Point, y: &Point, nu: f64) -> Result<(Point, Point)> {
    let params = rotation_params(x, y)?;
    if !(nu <= FRAC_PI_2) || nu < params.nu - 1e-12 {
        return Err(Error::InvalidArgument(format!(
            "target angle {nu} is not in [{}, π/2]",
            params.nu
        )));
    }
    let mid = x.add(y).scale(0.5);
    let chord = x.sub(y);
    let mid_angle = mid.coords()[1].atan2(mid.coords()[0]);
    // Side of the midpoint ray the chord leans to.
    let side = if cross2(&mid, &chord) * mid.dot(&chord) >= 0.0 {
        1.0
    } else {
        -1.0
    };
    let angle = mid_angle + side * nu;
    let mut dir = Point::planar(angle.cos(), angle.sin());
    if dir.dot(&chord) < 0.0 {
        dir = dir.scale(-1.0);
    }
    let half = dir.scale(params.d);
    Ok((mid.add(&half), mid.sub(&half)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::FRAC_PI_4;

    fn p(re: f64, im: f64) -> Point {
        Point::planar(re, im)
    }

    #[test]
    fn point_construction() {
        assert!(Point::new(vec![0.1]).is_err());
        assert!(Point::new(vec![0.1, f64::NAN]).is_err());
        assert_eq!(Point::new(vec![0.1, 0.2, 0.3]).unwrap().dim(), 3);
    }

    #[test]
    fn rho_ball_examples() {
        let o = p(0.0, 0.0);
        assert_relative_eq!(rho_ball(&o, &p(0.5, 0.0)).unwrap(), 3f64.ln(), max_relative = 1e-15);
        let x = p(0.6, 0.3);
        assert_eq!(rho_ball(&x, &x).unwrap(), 0.0);
        let th = (0.5 * rho_ball(&x, &p(0.1, 0.1)).unwrap()).tanh();
        assert_relative_eq!(th, 0.591_455_035_575_282_1, max_relative = 1e-14);
        assert!(rho_ball(&p(1.0, 0.0), &o).is_err());
        assert!(rho_ball(&p(0.1, 0.0), &Point::new(vec![0.0; 3]).unwrap()).is_err());
    }

    #[test]
    fn rho_ball_in_higher_dimension() {
        let n = Dimension::new(4).unwrap();
        let r = rho_ball(&Point::origin(n), &Point::on_axis(n, 0.5)).unwrap();
        assert_relative_eq!(r, 3f64.ln(), max_relative = 1e-15);
    }

    #[test]
    fn th_half_rho_matches_rho() {
        let disk = DomainSpec::unit_disk();
        let (x, y) = (p(-0.3, 0.8), p(0.55, 0.1));
        let th = th_half_rho(&disk, &x, &y).unwrap();
        assert_relative_eq!(th, (0.5 * rho_ball(&x, &y).unwrap()).tanh(), max_relative = 1e-14);
        // Complex form |x − y| / |1 − x ȳ|.
        let (a, b) = ((-0.3f64, 0.8f64), (0.55f64, 0.1f64));
        let re = 1.0 - (a.0 * b.0 + a.1 * b.1);
        let im = -(a.1 * b.0 - a.0 * b.1);
        let complex = ((a.0 - b.0).powi(2) + (a.1 - b.1).powi(2)).sqrt() / re.hypot(im);
        assert_relative_eq!(th, complex, max_relative = 1e-14);

        let half = DomainSpec::upper_half_plane();
        let (u, v) = (p(0.0, 1.0), p(1.0, 1.0));
        let th = th_half_rho(&half, &u, &v).unwrap();
        assert_relative_eq!(th, (0.5 * rho_halfspace(&u, &v).unwrap()).tanh(), max_relative = 1e-14);
    }

    #[test]
    fn rho_halfspace_examples() {
        assert_relative_eq!(
            rho_halfspace(&p(0.0, 1.0), &p(0.0, 2.0)).unwrap(),
            2f64.ln(),
            max_relative = 1e-15
        );
        assert_eq!(rho_halfspace(&p(0.3, 1.0), &p(0.3, 1.0)).unwrap(), 0.0);
        assert_relative_eq!(
            rho_halfspace(&p(0.0, 1.0), &p(1.0, 1.0)).unwrap(),
            0.962_423_650_119_206_9,
            max_relative = 1e-15
        );
        assert!(rho_halfspace(&p(0.0, 0.0), &p(0.0, 1.0)).is_err());
    }

    #[test]
    fn rho_halfspace_translation_and_dilation() {
        let (x, y) = (p(0.2, 0.7), p(-1.1, 2.3));
        let base = rho_halfspace(&x, &y).unwrap();
        let shifted = rho_halfspace(&p(5.2, 0.7), &p(3.9, 2.3)).unwrap();
        let dilated = rho_halfspace(&x.scale(3.5), &y.scale(3.5)).unwrap();
        assert_relative_eq!(base, shifted, max_relative = 1e-14);
        assert_relative_eq!(base, dilated, max_relative = 1e-14);
    }

    #[test]
    fn hyperbolic_ball_examples() {
        let ball = hyp_ball_to_euclidean(&p(0.0, 0.0), 1.0).unwrap();
        assert_eq!(ball.center, p(0.0, 0.0));
        assert_relative_eq!(ball.radius, 0.5f64.tanh(), max_relative = 1e-15);

        let x = p(0.5, 0.0);
        let ball = hyp_ball_to_euclidean(&x, 1.0).unwrap();
        assert_relative_eq!(ball.center.coords()[0], 0.415_401_341_008_292_4, max_relative = 1e-14);
        assert_relative_eq!(ball.radius, 0.366_135_113_845_635_76, max_relative = 1e-14);
        for sign in [1.0, -1.0] {
            let z = ball.center.add(&p(sign * ball.radius, 0.0));
            assert!((rho_ball(&x, &z).unwrap() - 1.0).abs() < 1e-10);
        }
        assert!(hyp_ball_to_euclidean(&p(1.0, 0.0), 1.0).is_err());
        assert!(hyp_ball_to_euclidean(&x, 0.0).is_err());
    }

    #[test]
    fn hyperbolic_ball_boundary_in_all_directions() {
        let x = p(-0.4, 0.7);
        let m = 2.3;
        let ball = hyp_ball_to_euclidean(&x, m).unwrap();
        assert!(ball.center.norm() + ball.radius < 1.0);
        for i in 0..32 {
            let a = i as f64 * std::f64::consts::TAU / 32.0;
            let z = ball.center.add(&p(ball.radius * a.cos(), ball.radius * a.sin()));
            assert!((rho_ball(&x, &z).unwrap() - m).abs() < 1e-10);
        }
    }

    #[test]
    fn rotation_params_examples() {
        let r = rotation_params(&p(0.5, 0.3), &p(0.1, 0.3)).unwrap();
        assert_relative_eq!(r.d(), 0.2, max_relative = 1e-15);
        assert_relative_eq!(r.k(), 0.424_264_068_711_928_5, max_relative = 1e-15);
        assert_relative_eq!(r.nu(), FRAC_PI_4, max_relative = 1e-15);

        assert_eq!(rotation_params(&p(0.5, 0.0), &p(0.25, 0.0)).unwrap().nu(), 0.0);
        let r = rotation_params(&p(0.3, 0.4), &p(0.4, 0.3)).unwrap();
        assert_relative_eq!(r.nu(), FRAC_PI_2, max_relative = 1e-15);

        assert_eq!(
            rotation_params(&p(0.3, 0.4), &p(-0.3, -0.4)),
            Err(Error::DegenerateMidpoint)
        );
        assert_eq!(rotation_params(&p(0.3, 0.4), &p(0.3, 0.4)), Err(Error::CoincidentPoints));
        assert!(RotationParams::new(0.2, 0.3, 2.0).is_err());
        assert!(RotationParams::new(0.0, 0.3, 0.1).is_err());
    }

    #[test]
    fn rotated_th_examples() {
        let collinear = RotationParams::new(0.125, 0.375, 0.0).unwrap();
        assert_relative_eq!(th_half_rho_rotated(&collinear), 0.25 / 0.875, max_relative = 1e-15);

        let (x, y) = (p(0.6, 0.3), p(0.1, 0.1));
        let params = rotation_params(&x, &y).unwrap();
        let at_right = params.with_nu(FRAC_PI_2).unwrap();
        assert_relative_eq!(th_half_rho_rotated(&at_right), 0.575_624_329_617_859_8, max_relative = 1e-14);
        let th = th_half_rho(&DomainSpec::unit_disk(), &x, &y).unwrap();
        assert_relative_eq!(th_half_rho_rotated(&params), th, max_relative = 1e-14);
    }

    #[test]
    fn rotate_about_midpoint_reaches_target_angle() {
        let (x, y) = (p(0.6, 0.3), p(0.1, 0.1));
        let native = rotation_params(&x, &y).unwrap();
        for i in 0..=10 {
            let nu = native.nu() + (FRAC_PI_2 - native.nu()) * i as f64 / 10.0;
            let (a, b) = rotate_about_midpoint(&x, &y, nu).unwrap();
            let params = rotation_params(&a, &b).unwrap();
            assert!((params.nu() - nu).abs() < 1e-12);
            assert!((params.d() - native.d()).abs() < 1e-14);
            assert!((params.k() - native.k()).abs() < 1e-14);
            let th = th_half_rho(&DomainSpec::unit_disk(), &a, &b).unwrap();
            assert!((th - th_half_rho_rotated(&params)).abs() < 1e-13);
        }
        // The native angle reproduces the original pair.
        let (a, b) = rotate_about_midpoint(&x, &y, native.nu()).unwrap();
        assert!(a.distance(&x) < 1e-14 && b.distance(&y) < 1e-14);
        assert!(rotate_about_midpoint(&x, &y, 0.0).is_err());
    }
}
