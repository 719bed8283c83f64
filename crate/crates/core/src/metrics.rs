//! The modulus metric `μ_D` and the Ferrand metric `λ_D` of the planar model
//! domains, the spherical ring condenser, and the radial stretch map.
//!
//! In `D ∈ {B², H²}` both metrics are functions of the hyperbolic distance
//! alone:
//!
//! ```text
//! μ_D(x, y) = γ₂(1 / th(ρ/2)) = 2π / μ(th(ρ/2))
//! λ_D(x, y) = γ₂(ch(ρ/2)) / 4  = (π/2) / μ(1/ch(ρ/2))
//! ```
//!
//! Since `th(ρ/2)` and `1/ch(ρ/2)` are complementary moduli, the product
//! `μ_D · λ_D` is identically 4.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::geom::{check_planar_disk_pair, th_half_rho_with_complement, DomainSpec, Point};
use crate::specfun::{complement, mu_with_complement, surface_area_omega, Dimension};

/// Relative round-off allowance when checking distortion ratios against
/// `[1/K, K]`.
const DISTORTION_SLACK: f64 = 1e-12;

fn require_plane(domain: &DomainSpec) -> Result<()> {
    if domain.n != Dimension::PLANE {
        return Err(Error::UnsupportedDimension(domain.n.get()));
    }
    Ok(())
}

/// `2π / μ(th)` for a known modulus and its complement; zero when `th = 0`.
fn mu_metric_from_pair(th: f64, th_c: f64) -> f64 {
    if th == 0.0 {
        0.0
    } else {
        2.0 * PI / mu_with_complement(th, th_c)
    }
}

/// The modulus metric of `B²` or `H²`.
pub fn mu_metric(domain: &DomainSpec, x: &Point, y: &Point) -> Result<f64> {
    require_plane(domain)?;
    let (th, th_c) = th_half_rho_with_complement(domain, x, y)?;
    Ok(mu_metric_from_pair(th, th_c))
}

/// The modulus metric as a function of `th(ρ/2) ∈ [0, 1)`.
pub fn mu_from_th_half_rho(th: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&th) {
        return Err(domain("th(ρ/2)", th, "[0, 1)"));
    }
    Ok(mu_metric_from_pair(th, complement(th)))
}

/// The modulus metric as a function of the hyperbolic distance.
pub fn mu_from_rho(rho: f64) -> Result<f64> {
    if !(rho >= 0.0) || rho.is_infinite() {
        return Err(domain("ρ", rho, "[0, ∞)"));
    }
    let half = 0.5 * rho;
    Ok(mu_metric_from_pair(half.tanh(), 1.0 / half.cosh()))
}

/// The Ferrand metric of `B²` or `H²`. Undefined for `x = y`.
pub fn lambda_metric(domain: &DomainSpec, x: &Point, y: &Point) -> Result<f64> {
    require_plane(domain)?;
    let (th, th_c) = th_half_rho_with_complement(domain, x, y)?;
    if th == 0.0 {
        return Err(Error::CoincidentPoints);
    }
    Ok(FRAC_PI_2 / mu_with_complement(th_c, th))
}

/// The annulus `{a ≤ |x| ≤ b}` in `Rⁿ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RingCondenser {
    a: f64,
    b: f64,
    n: Dimension,
}

impl RingCondenser {
    pub fn new(a: f64, b: f64, n: Dimension) -> Result<Self> {
        if !(a > 0.0) || a.is_infinite() {
            return Err(domain("a", a, "(0, ∞)"));
        }
        if !(b > a) || b.is_infinite() {
            return Err(domain("b", b, "(a, ∞)"));
        }
        Ok(Self { a, b, n })
    }

    pub fn inner(&self) -> f64 {
        self.a
    }

    pub fn outer(&self) -> f64 {
        self.b
    }

    pub fn dimension(&self) -> Dimension {
        self.n
    }
}

/// Modulus of the family of curves joining the two boundary spheres of the
/// ring: `ω_(n−1) (log(b/a))^(1−n)`.
pub fn ring_modulus(c: &RingCondenser) -> f64 {
    let n = c.n.get();
    let log_ratio = (c.b / c.a).ln();
    surface_area_omega(n as u32 - 1) * log_ratio.powi(1 - n as i32)
}

/// Capacity of the spherical ring condenser, which equals its modulus.
pub fn capacity_ring(c: &RingCondenser) -> f64 {
    ring_modulus(c)
}

/// Exponent `α ∈ (0, 1]` of the radial stretch `x ↦ |x|^(α−1) x`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
pub struct StretchParam(f64);

impl StretchParam {
    pub fn new(alpha: f64) -> Result<Self> {
        if alpha > 0.0 && alpha <= 1.0 {
            Ok(Self(alpha))
        } else {
            Err(domain("alpha", alpha, "(0, 1]"))
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }

    /// Planar dilatation `max(α, 1/α)` of the stretch.
    pub fn dilatation(self) -> f64 {
        self.0.max(1.0 / self.0)
    }
}

/// The radial stretch of the unit ball; fixes the origin, `|g(x)| = |x|^α`.
pub fn radial_stretch(x: &Point, p: StretchParam) -> Result<Point> {
    let r = x.norm();
    if r >= 1.0 {
        return Err(Error::OutsideDomain(x.coords().to_vec()));
    }
    if r == 0.0 {
        return Ok(x.clone());
    }
    Ok(x.scale(r.powf(p.get() - 1.0)))
}

/// Observed distortion of `μ_{B²}` under a radial stretch.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DistortionReport {
    pub alpha: f64,
    /// Dilatation `K`; every ratio must lie in `[1/K, K]`.
    pub k: f64,
    pub pairs: usize,
    pub min_ratio: f64,
    pub max_ratio: f64,
    pub violations: usize,
    pub passed: bool,
}

/// Ratio `μ(g(x), g(y)) / μ(x, y)` for one pair.
pub fn mu_distortion_ratio(x: &Point, y: &Point, p: StretchParam) -> Result<f64> {
    check_planar_disk_pair(x, y)?;
    if x == y {
        return Err(Error::CoincidentPoints);
    }
    let disk = DomainSpec::unit_disk();
    let before = mu_metric(&disk, x, y)?;
    let after = mu_metric(&disk, &radial_stretch(x, p)?, &radial_stretch(y, p)?)?;
    Ok(after / before)
}

/// Checks the quasiconformal distortion bound `μ/K ≤ μ∘g ≤ Kμ` over the
/// given pairs.
pub fn qc_mu_distortion(p: StretchParam, pairs: &[(Point, Point)]) -> Result<DistortionReport> {
    if pairs.is_empty() {
        return Err(Error::InvalidArgument("no point pairs given".into()));
    }
    let k = p.dilatation();
    let (lo, hi) = (1.0 / k * (1.0 - DISTORTION_SLACK), k * (1.0 + DISTORTION_SLACK));
    let mut min_ratio = f64::INFINITY;
    let mut max_ratio = f64::NEG_INFINITY;
    let mut violations = 0;
    for (x, y) in pairs {
        let ratio = mu_distortion_ratio(x, y, p)?;
        min_ratio = min_ratio.min(ratio);
        max_ratio = max_ratio.max(ratio);
        if !(lo..=hi).contains(&ratio) {
            violations += 1;
        }
    }
    Ok(DistortionReport {
        alpha: p.get(),
        k,
        pairs: pairs.len(),
        min_ratio,
        max_ratio,
        violations,
        passed: violations == 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::rho_ball;
    use crate::specfun::{gamma2, CapacityArg};
    use approx::assert_relative_eq;
    use std::f64::consts::{E, SQRT_2};

    fn p(re: f64, im: f64) -> Point {
        Point::planar(re, im)
    }

    #[test]
    fn mu_metric_examples() {
        let disk = DomainSpec::unit_disk();
        let o = p(0.0, 0.0);
        assert_relative_eq!(
            mu_metric(&disk, &p(0.5, 0.0), &o).unwrap(),
            3.126_803_845_392_223,
            max_relative = 1e-13
        );
        assert_eq!(mu_metric(&disk, &p(0.2, 0.1), &p(0.2, 0.1)).unwrap(), 0.0);
        assert_relative_eq!(
            mu_metric(&disk, &p(SQRT_2 - 1.0, 0.0), &o).unwrap(),
            2.0 * SQRT_2,
            max_relative = 1e-10
        );
    }

    #[test]
    fn mu_metric_rejects_bad_input() {
        let disk = DomainSpec::unit_disk();
        assert!(mu_metric(&disk, &p(1.0, 0.0), &p(0.0, 0.0)).is_err());
        let ball3 = DomainSpec::new(crate::geom::DomainKind::UnitBall, Dimension::new(3).unwrap());
        let o3 = Point::new(vec![0.0; 3]).unwrap();
        let x3 = Point::new(vec![0.5, 0.0, 0.0]).unwrap();
        assert_eq!(mu_metric(&ball3, &x3, &o3), Err(Error::UnsupportedDimension(3)));
    }

    #[test]
    fn mu_metric_is_conformally_consistent_between_models() {
        // The Cayley map z ↦ i(1 + z)/(1 − z) sends B² onto H² isometrically.
        let cayley = |re: f64, im: f64| {
            let (den_re, den_im) = (1.0 - re, -im);
            let (num_re, num_im) = (1.0 + re, im);
            let d = den_re * den_re + den_im * den_im;
            let q_re = (num_re * den_re + num_im * den_im) / d;
            let q_im = (num_im * den_re - num_re * den_im) / d;
            p(-q_im, q_re)
        };
        let (x, y) = ((0.3, -0.2), (-0.5, 0.4));
        let in_disk = mu_metric(&DomainSpec::unit_disk(), &p(x.0, x.1), &p(y.0, y.1)).unwrap();
        let in_half = mu_metric(
            &DomainSpec::upper_half_plane(),
            &cayley(x.0, x.1),
            &cayley(y.0, y.1),
        )
        .unwrap();
        assert_relative_eq!(in_disk, in_half, max_relative = 1e-13);
    }

    #[test]
    fn mu_asymptotic_branch_is_continuous() {
        let th = crate::specfun::MU_ASYMPTOTIC_THRESHOLD;
        let a = mu_from_th_half_rho(th * (1.0 - 1e-9)).unwrap();
        let b = mu_from_th_half_rho(th * (1.0 + 1e-9)).unwrap();
        assert!(a < b);
        assert_relative_eq!(a, b, max_relative = 1e-8);
    }

    #[test]
    fn mu_from_rho_agrees_with_points() {
        let (x, y) = (p(0.6, 0.3), p(0.1, 0.1));
        let rho = rho_ball(&x, &y).unwrap();
        assert_relative_eq!(
            mu_from_rho(rho).unwrap(),
            mu_metric(&DomainSpec::unit_disk(), &x, &y).unwrap(),
            max_relative = 1e-13
        );
        assert!(mu_from_rho(-1.0).is_err());
        assert!(mu_from_th_half_rho(1.0).is_err());
    }

    #[test]
    fn lambda_metric_examples() {
        let disk = DomainSpec::unit_disk();
        let (x, o) = (p(0.5, 0.0), p(0.0, 0.0));
        let lambda = lambda_metric(&disk, &x, &o).unwrap();
        assert_relative_eq!(lambda, 1.279_261_571_171_006_5, max_relative = 1e-13);
        let via_gamma = gamma2(CapacityArg::new(1.0 / 0.75f64.sqrt()).unwrap()) / 4.0;
        assert_relative_eq!(lambda, via_gamma, max_relative = 1e-13);
        assert_relative_eq!(lambda, 4.0 / mu_metric(&disk, &x, &o).unwrap(), max_relative = 1e-14);

        let (a, b) = (p(0.3, 0.2), p(0.1, 0.0));
        let product = mu_metric(&disk, &a, &b).unwrap() * lambda_metric(&disk, &a, &b).unwrap();
        assert_relative_eq!(product, 4.0, max_relative = 1e-9);

        assert_eq!(lambda_metric(&disk, &a, &a), Err(Error::CoincidentPoints));
    }

    #[test]
    fn lambda_grows_toward_the_boundary_pair() {
        let disk = DomainSpec::unit_disk();
        let mut last = 0.0;
        for t in [0.9, 0.99, 0.999, 0.999_999] {
            let l = lambda_metric(&disk, &p(t, 0.0), &p(t, 1e-3 * (1.0 - t))).unwrap();
            assert!(l.is_finite() && l > last);
            last = l;
        }
    }

    #[test]
    fn ring_examples() {
        let two = Dimension::PLANE;
        let three = Dimension::new(3).unwrap();
        let ring = |a, b, n| RingCondenser::new(a, b, n).unwrap();
        assert_relative_eq!(ring_modulus(&ring(1.0, E, two)), 2.0 * PI, max_relative = 1e-15);
        assert_relative_eq!(ring_modulus(&ring(1.0, E, three)), 4.0 * PI, max_relative = 1e-15);
        assert_relative_eq!(ring_modulus(&ring(1.0, E * E, two)), PI, max_relative = 1e-15);
        assert_relative_eq!(
            capacity_ring(&ring(1.0, (2.0 * PI).exp(), two)),
            1.0,
            max_relative = 1e-14
        );
        for (a, b, n) in [(1.0, E, two), (0.5, 3.0, three)] {
            assert_eq!(capacity_ring(&ring(a, b, n)), ring_modulus(&ring(a, b, n)));
        }
        assert!(RingCondenser::new(2.0, 1.0, two).is_err());
        assert!(RingCondenser::new(0.0, 1.0, two).is_err());
    }

    #[test]
    fn radial_stretch_examples() {
        let id = StretchParam::new(1.0).unwrap();
        let half = StretchParam::new(0.5).unwrap();
        let x = p(0.3, -0.4);
        assert_eq!(radial_stretch(&x, id).unwrap(), x);
        assert_relative_eq!(radial_stretch(&p(0.25, 0.0), half).unwrap().coords()[0], 0.5);
        assert_eq!(radial_stretch(&p(0.0, 0.0), half).unwrap(), p(0.0, 0.0));
        assert_relative_eq!(radial_stretch(&x, half).unwrap().norm(), 0.5f64.sqrt(), max_relative = 1e-15);
        assert!(radial_stretch(&p(0.6, 0.8), half).is_err());
        assert!(StretchParam::new(0.0).is_err());
        assert!(StretchParam::new(1.5).is_err());
    }

    #[test]
    fn distortion_examples() {
        let pairs = vec![(p(0.5, 0.0), p(0.0, 0.0)), (p(0.1, 0.7), p(-0.3, 0.2))];
        let report = qc_mu_distortion(StretchParam::new(1.0).unwrap(), &pairs).unwrap();
        assert_eq!((report.min_ratio, report.max_ratio), (1.0, 1.0));
        assert!(report.passed);

        let alpha = StretchParam::new(0.9).unwrap();
        let ratio = mu_distortion_ratio(&p(0.5, 0.0), &p(0.0, 0.0), alpha).unwrap();
        assert_relative_eq!(ratio, 1.042_153_226_373_737_5, max_relative = 1e-12);
        assert!(ratio >= 0.9 && ratio <= 10.0 / 9.0);

        let half = StretchParam::new(0.5).unwrap();
        let ratio = mu_distortion_ratio(&p(0.9, 0.0), &p(0.8, 0.0), half).unwrap();
        assert_relative_eq!(ratio, 1.001_321_868_478_694_9, max_relative = 1e-10);

        assert!(qc_mu_distortion(half, &[]).is_err());
        assert!(mu_distortion_ratio(&p(0.1, 0.0), &p(0.1, 0.0), half).is_err());
    }
}
