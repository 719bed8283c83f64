use std::f64::consts::{FRAC_PI_2, PI};

use approx::assert_relative_eq;
use proptest::prelude::*;

use conformal_metrics::bounds::{
    lambda_bounds, midpoint_equality_cases, mu_bounds_midpoint, mu_bounds_nd, mu_lower_quartic,
    mu_ring_bounds, pdec_log_excess, rho_bounds_avv, rho_bounds_midpoint,
};
use conformal_metrics::geom::{
    rho, rho_ball, rho_halfspace, rotate_about_midpoint, rotation_params, th_half_rho,
    th_half_rho_rotated, DomainSpec, Point,
};
use conformal_metrics::metrics::{lambda_metric, mu_distortion_ratio, mu_metric, StretchParam};
use conformal_metrics::specfun::{agm, gamma2, grotzsch_mu, CapacityArg, Dimension, UnitInterval};

fn mu(r: f64) -> f64 {
    grotzsch_mu(UnitInterval::new(r).unwrap())
}

fn disk_point() -> impl Strategy<Value = Point> {
    (0.0..0.999f64, 0.0..(2.0 * PI)).prop_map(|(r, a)| Point::planar(r * a.cos(), r * a.sin()))
}

fn admissible_pair() -> impl Strategy<Value = (Point, Point)> {
    (disk_point(), disk_point())
        .prop_filter("degenerate pair", |(x, y)| x.distance(y) >= 1e-6 && x.add(y).norm() >= 1e-6)
}

fn half_plane_point() -> impl Strategy<Value = Point> {
    (-10.0..10.0f64, 1e-3..10.0f64).prop_map(|(a, b)| Point::planar(a, b))
}

/// `z ↦ i(1 + z)/(1 − z)`, the disk onto the upper half-plane.
fn cayley(z: &Point) -> Point {
    let (a, b) = (z.coords()[0], z.coords()[1]);
    let den = (1.0 - a) * (1.0 - a) + b * b;
    Point::planar(-2.0 * b / den, (1.0 - a * a - b * b) / den)
}

proptest! {
    #[test]
    fn agm_lies_between_geometric_and_arithmetic_means(a in 1e-3..1e3f64, b in 1e-3..1e3f64) {
        let m = agm(a, b).unwrap();
        prop_assert!(m >= (a * b).sqrt() * (1.0 - 1e-15));
        prop_assert!(m <= 0.5 * (a + b) * (1.0 + 1e-15));
        assert_relative_eq!(m, agm(b, a).unwrap(), max_relative = 1e-15);
    }

    #[test]
    fn ring_function_decreasing(a in 1e-9..0.999_999f64, b in 1e-9..0.999_999f64) {
        prop_assume!(a != b);
        let (lo, hi) = (a.min(b), a.max(b));
        prop_assert!(mu(lo) > mu(hi));
    }

    #[test]
    fn ring_function_complement_identity(r in 1e-2..0.999_999f64) {
        let rc = ((1.0 - r) * (1.0 + r)).sqrt();
        assert_relative_eq!(mu(r) * mu(rc), PI * PI / 4.0, max_relative = 1e-12);
    }

    #[test]
    fn functional_identity(s in 1.000_001..1e3f64) {
        let product = mu(1.0 / s) * mu((s - 1.0) / (s + 1.0));
        assert_relative_eq!(product, PI * PI / 2.0, max_relative = 1e-9);
    }

    #[test]
    fn capacity_identity(s in 1.000_001..1e3f64) {
        let g = gamma2(CapacityArg::new(s).unwrap());
        assert_relative_eq!(g, 4.0 / PI * mu((s - 1.0) / (s + 1.0)), max_relative = 1e-10);
    }

    #[test]
    fn ring_bounds_contain_ring_function(r in 1e-12..0.999_999f64) {
        let u = UnitInterval::new(r).unwrap();
        prop_assert!(mu_ring_bounds(u).contains(grotzsch_mu(u), 1e-12));
    }

    #[test]
    fn rho_is_a_metric(x in disk_point(), y in disk_point(), z in disk_point()) {
        let d = |a: &Point, b: &Point| rho_ball(a, b).unwrap();
        prop_assert_eq!(d(&x, &y), d(&y, &x));
        prop_assert!(d(&x, &z) <= d(&x, &y) + d(&y, &z) + 1e-12);
        prop_assert_eq!(d(&x, &x), 0.0);
    }

    #[test]
    fn half_plane_distance_is_similarity_invariant(
        x in half_plane_point(),
        y in half_plane_point(),
        shift in -5.0..5.0f64,
        scale in 0.1..10.0f64,
    ) {
        let move_ = |p: &Point| Point::planar(scale * (p.coords()[0] + shift), scale * p.coords()[1]);
        let before = rho_halfspace(&x, &y).unwrap();
        let after = rho_halfspace(&move_(&x), &move_(&y)).unwrap();
        prop_assert!((before - after).abs() <= 1e-10 * before.max(1.0));
    }

    #[test]
    fn cayley_map_preserves_modulus_metric(x in disk_point(), y in disk_point()) {
        prop_assume!(x.norm() < 0.9 && y.norm() < 0.9);
        let disk = DomainSpec::unit_disk();
        let half = DomainSpec::upper_half_plane();
        let a = mu_metric(&disk, &x, &y).unwrap();
        let b = mu_metric(&half, &cayley(&x), &cayley(&y)).unwrap();
        prop_assert!((a - b).abs() <= 1e-9 * a.max(1.0));
    }

    #[test]
    fn modulus_metric_triangle_inequality(x in disk_point(), y in disk_point(), z in disk_point()) {
        let disk = DomainSpec::unit_disk();
        let m = |a: &Point, b: &Point| mu_metric(&disk, a, b).unwrap();
        prop_assert_eq!(m(&x, &y), m(&y, &x));
        prop_assert!(m(&x, &z) <= m(&x, &y) + m(&y, &z) + 1e-12);
    }

    #[test]
    fn product_of_metrics_is_four((x, y) in admissible_pair()) {
        let disk = DomainSpec::unit_disk();
        let p = mu_metric(&disk, &x, &y).unwrap() * lambda_metric(&disk, &x, &y).unwrap();
        assert_relative_eq!(p, 4.0, max_relative = 1e-9);
    }

    #[test]
    fn all_brackets_contain_exact_values((x, y) in admissible_pair()) {
        let disk = DomainSpec::unit_disk();
        let r = rho(&disk, &x, &y).unwrap();
        let th = th_half_rho(&disk, &x, &y).unwrap();
        let m = mu_metric(&disk, &x, &y).unwrap();
        let l = lambda_metric(&disk, &x, &y).unwrap();
        prop_assert!(mu_bounds_nd(Dimension::PLANE, r).unwrap().contains(m, 1e-12));
        prop_assert!(lambda_bounds(Dimension::PLANE, r).unwrap().contains(l, 1e-12));
        prop_assert!(rho_bounds_midpoint(&x, &y).unwrap().contains(th, 1e-12));
        prop_assert!(rho_bounds_avv(&x, &y).unwrap().contains(th, 1e-12));
        prop_assert!(mu_bounds_midpoint(&x, &y).unwrap().contains(m, 1e-12));
        prop_assert!(mu_lower_quartic(r).unwrap() <= m + 1e-12);
    }

    #[test]
    fn midpoint_upper_bound_attained_on_collinear_pairs(
        a in -0.999..0.999f64,
        b in -0.999..0.999f64,
        angle in 0.0..PI,
    ) {
        prop_assume!((a - b).abs() > 1e-6 && (a + b).abs() > 1e-6);
        let (x, y) = (
            Point::planar(a * angle.cos(), a * angle.sin()),
            Point::planar(b * angle.cos(), b * angle.sin()),
        );
        prop_assert!(midpoint_equality_cases(&x, &y).upper);
        let th = th_half_rho(&DomainSpec::unit_disk(), &x, &y).unwrap();
        let upper = rho_bounds_midpoint(&x, &y).unwrap().upper.unwrap();
        assert_relative_eq!(upper, th, max_relative = 1e-12);
    }

    #[test]
    fn rotation_decreases_th((x, y) in admissible_pair(), a in 0.0..FRAC_PI_2, b in 0.0..FRAC_PI_2) {
        let p = rotation_params(&x, &y).unwrap();
        let (lo, hi) = (a.min(b), a.max(b));
        let f = |nu: f64| th_half_rho_rotated(&p.with_nu(nu).unwrap());
        prop_assert!(f(hi) <= f(lo));
    }

    #[test]
    fn rotated_points_match_the_formula((x, y) in admissible_pair(), t in 0.0..1.0f64) {
        let p = rotation_params(&x, &y).unwrap();
        let nu = p.nu() + t * (FRAC_PI_2 - p.nu());
        let (u, v) = rotate_about_midpoint(&x, &y, nu).unwrap();
        let disk = DomainSpec::unit_disk();
        prop_assert!(disk.contains(&u) && disk.contains(&v));
        let th = th_half_rho(&disk, &u, &v).unwrap();
        let formula = th_half_rho_rotated(&p.with_nu(nu).unwrap());
        prop_assert!((th - formula).abs() <= 1e-9 * formula);
    }

    #[test]
    fn power_expression_increasing(t in 1e-2..10.0f64, a in 1e-2..10.0f64, b in 1e-2..10.0f64) {
        prop_assume!(a != b);
        let (lo, hi) = (a.min(b), a.max(b));
        prop_assert!(pdec_log_excess(t, lo).unwrap() < pdec_log_excess(t, hi).unwrap());
    }

    #[test]
    fn radial_stretch_distortion_bounded((x, y) in admissible_pair(), alpha in 0.01..=1.0f64) {
        let p = StretchParam::new(alpha).unwrap();
        let ratio = mu_distortion_ratio(&x, &y, p).unwrap();
        let k = p.dilatation();
        prop_assert!(ratio >= (1.0 / k) * (1.0 - 1e-12) && ratio <= k * (1.0 + 1e-12));
    }
}
