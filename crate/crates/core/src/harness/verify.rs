//! Seeded sweep over every identity, bracket and monotonicity property of
//! the library.
//!
//! Each [`Suite`] draws from its own sampler stream, so a suite's result
//! depends only on the seed and the sample count. A check records a signed
//! slack (how far inside the accepted region the sample sits; negative on a
//! violation) and, for identities, the observed relative error.

use std::f64::consts::{FRAC_PI_2, PI, SQRT_2};
use std::io::Write;

use serde::Serialize;
use serde_json::{json, Value};

use super::{csv_writer, sig17, Emit, RunConfig, Sampler};
use crate::bounds::{
    best_mu_lower, gamma_n_bounds, gamma_n_middle, lambda_bounds, lambda_middle,
    midpoint_equality_cases, mu_bounds_midpoint, mu_bounds_nd, mu_lower_linear, mu_lower_quartic,
    mu_ring_bounds, pdec_log_excess, rho_bounds_avv, rho_bounds_midpoint, BoundPair,
};
use crate::error::Result;
use crate::geom::{
    hyp_ball_to_euclidean, rho_ball, rotation_params, th_half_rho, th_half_rho_rotated,
    DomainSpec, Point,
};
use crate::metrics::{lambda_metric, mu_distortion_ratio, mu_metric, StretchParam};
use crate::quad;
use crate::specfun::{ellip_k, gamma2, grotzsch_mu, CapacityArg, Dimension, UnitInterval};

/// Absolute slack for bracket and triangle-inequality checks.
pub const BRACKET_SLACK: f64 = 1e-12;

/// Relative tolerance of the `n = 2` capacity identity.
pub const CAPACITY_IDENTITY_TOL: f64 = 1e-10;

/// Relative tolerance for closed-form equalities (equality cases, scan
/// endpoints, radial distances).
pub const CLOSED_FORM_TOL: f64 = 1e-12;

/// Absolute tolerance of the fixed point `μ(√2 − 1) = π/√2`.
pub const FIXED_POINT_TOL: f64 = 1e-10;

/// Relative tolerance of the elliptic integral against direct quadrature.
pub const QUADRATURE_TOL: f64 = 1e-10;

/// Relative tolerance of the hyperbolic-ball boundary check.
pub const HYPERBOLIC_BALL_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    RingFunctionalIdentity,
    RingFixedPoint,
    RingMonotone,
    EllipticQuadrature,
    CapacityIdentity,
    RingBracket,
    CapacityBracket,
    RhoMetric,
    HyperbolicBall,
    RotationMonotone,
    RotationEndpoints,
    ModulusLinearBracket,
    FerrandBracket,
    ProductIdentity,
    MetricAxioms,
    ModulusMonotone,
    MidpointRhoBracket,
    ClassicalRhoBracket,
    MidpointMuBracket,
    MidpointEquality,
    PdecMonotone,
    QuarticLower,
    LowerBoundCrossover,
    QcDistortion,
}

impl Suite {
    pub const ALL: [Suite; 24] = [
        Suite::RingFunctionalIdentity,
        Suite::RingFixedPoint,
        Suite::RingMonotone,
        Suite::EllipticQuadrature,
        Suite::CapacityIdentity,
        Suite::RingBracket,
        Suite::CapacityBracket,
        Suite::RhoMetric,
        Suite::HyperbolicBall,
        Suite::RotationMonotone,
        Suite::RotationEndpoints,
        Suite::ModulusLinearBracket,
        Suite::FerrandBracket,
        Suite::ProductIdentity,
        Suite::MetricAxioms,
        Suite::ModulusMonotone,
        Suite::MidpointRhoBracket,
        Suite::ClassicalRhoBracket,
        Suite::MidpointMuBracket,
        Suite::MidpointEquality,
        Suite::PdecMonotone,
        Suite::QuarticLower,
        Suite::LowerBoundCrossover,
        Suite::QcDistortion,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::RingFunctionalIdentity => "ring_functional_identity",
            Suite::RingFixedPoint => "ring_fixed_point",
            Suite::RingMonotone => "ring_monotone",
            Suite::EllipticQuadrature => "elliptic_quadrature",
            Suite::CapacityIdentity => "capacity_identity",
            Suite::RingBracket => "ring_bracket",
            Suite::CapacityBracket => "capacity_bracket",
            Suite::RhoMetric => "rho_metric",
            Suite::HyperbolicBall => "hyperbolic_ball",
            Suite::RotationMonotone => "rotation_monotone",
            Suite::RotationEndpoints => "rotation_endpoints",
            Suite::ModulusLinearBracket => "modulus_linear_bracket",
            Suite::FerrandBracket => "ferrand_bracket",
            Suite::ProductIdentity => "product_identity",
            Suite::MetricAxioms => "metric_axioms",
            Suite::ModulusMonotone => "modulus_monotone",
            Suite::MidpointRhoBracket => "midpoint_rho_bracket",
            Suite::ClassicalRhoBracket => "classical_rho_bracket",
            Suite::MidpointMuBracket => "midpoint_mu_bracket",
            Suite::MidpointEquality => "midpoint_equality",
            Suite::PdecMonotone => "pdec_monotone",
            Suite::QuarticLower => "quartic_lower",
            Suite::LowerBoundCrossover => "lower_bound_crossover",
            Suite::QcDistortion => "qc_distortion",
        }
    }

    pub fn from_name(name: &str) -> Option<Suite> {
        Suite::ALL.into_iter().find(|s| s.name() == name)
    }

    fn stream(self) -> u64 {
        Suite::ALL.iter().position(|&s| s == self).unwrap() as u64
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub name: &'static str,
    pub checks: usize,
    pub passed: usize,
    /// Smallest signed slack over all checks.
    pub worst_slack: f64,
    /// Largest relative error, for suites that check identities.
    pub worst_error: Option<f64>,
    pub first_failure: Option<Value>,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub samples: usize,
    pub tolerance: f64,
    pub suites: Vec<SuiteReport>,
    pub checks: usize,
    pub failed_suites: usize,
    pub passed: bool,
}

impl VerifyReport {
    pub fn suite(&self, suite: Suite) -> Option<&SuiteReport> {
        self.suites.iter().find(|s| s.name == suite.name())
    }
}

struct Check {
    ok: bool,
    slack: f64,
    error: Option<f64>,
    sample: Value,
}

fn rel_err(got: f64, want: f64) -> f64 {
    (got - want).abs() / want.abs()
}

/// `|got − want| / |want| < tol`.
fn identity(got: f64, want: f64, tol: f64, sample: Value) -> Check {
    let e = rel_err(got, want);
    Check { ok: e < tol, slack: tol - e, error: Some(e), sample }
}

/// `|got − want| / |want| ≤ tol`.
fn close(got: f64, want: f64, tol: f64, sample: Value) -> Check {
    let e = rel_err(got, want);
    Check { ok: e <= tol, slack: tol - e, error: Some(e), sample }
}

fn bracket(b: &BoundPair, value: f64, sample: Value) -> Check {
    Check {
        ok: b.contains(value, BRACKET_SLACK),
        slack: b.margin(value),
        error: None,
        sample: json!({ "sample": sample, "value": value, "bounds": b }),
    }
}

/// `small < large`.
fn strictly_below(small: f64, large: f64, sample: Value) -> Check {
    Check { ok: small < large, slack: large - small, error: None, sample }
}

/// `lhs ≤ rhs + BRACKET_SLACK`.
fn at_most(lhs: f64, rhs: f64, sample: Value) -> Check {
    Check { ok: lhs <= rhs + BRACKET_SLACK, slack: rhs - lhs, error: None, sample }
}

fn flag(ok: bool, sample: Value) -> Check {
    Check { ok, slack: if ok { 0.0 } else { -1.0 }, error: None, sample }
}

struct Tracker {
    checks: usize,
    passed: usize,
    worst_slack: f64,
    worst_error: Option<f64>,
    first_failure: Option<Value>,
}

impl Tracker {
    fn new() -> Self {
        Self {
            checks: 0,
            passed: 0,
            worst_slack: f64::INFINITY,
            worst_error: None,
            first_failure: None,
        }
    }

    fn record(&mut self, check: Result<Check>) {
        self.checks += 1;
        match check {
            Ok(c) => {
                self.worst_slack = self.worst_slack.min(c.slack);
                if let Some(e) = c.error {
                    self.worst_error = Some(self.worst_error.map_or(e, |w: f64| w.max(e)));
                }
                if c.ok {
                    self.passed += 1;
                } else if self.first_failure.is_none() {
                    self.first_failure = Some(c.sample);
                }
            }
            Err(e) => {
                self.worst_slack = f64::NEG_INFINITY;
                if self.first_failure.is_none() {
                    self.first_failure = Some(json!({ "error": e.to_string() }));
                }
            }
        }
    }

    fn finish(self, suite: Suite) -> SuiteReport {
        SuiteReport {
            name: suite.name(),
            ok: self.checks > 0 && self.passed == self.checks,
            checks: self.checks,
            passed: self.passed,
            worst_slack: self.worst_slack,
            worst_error: self.worst_error,
            first_failure: self.first_failure,
        }
    }
}

fn pt(p: &Point) -> Value {
    json!(p.coords())
}

fn unit(r: f64) -> Result<UnitInterval> {
    UnitInterval::new(r)
}

/// A ring-function argument in `(0, 1)`: uniform half the time, log-uniform
/// down to `1e−15` otherwise.
fn ring_arg(s: &mut Sampler) -> f64 {
    loop {
        let r = if s.uniform(0.0, 1.0) < 0.5 {
            s.uniform(0.0, 1.0)
        } else {
            s.log_uniform(-15.0, 0.0)
        };
        if r > 0.0 && r < 1.0 {
            return r;
        }
    }
}

/// A capacity argument in `(1, 1001]`: `s − 1` uniform or log-uniform.
fn capacity_arg(s: &mut Sampler) -> f64 {
    if s.uniform(0.0, 1.0) < 0.5 {
        s.uniform_open_closed(1.0, 1000.0)
    } else {
        1.0 + s.log_uniform(-8.0, 3.0)
    }
}

type SuiteFn = fn(&mut Sampler, usize, f64, &mut Tracker);

fn suite_fn(suite: Suite) -> SuiteFn {
    match suite {
        Suite::RingFunctionalIdentity => ring_functional_identity,
        Suite::RingFixedPoint => ring_fixed_point,
        Suite::RingMonotone => ring_monotone,
        Suite::EllipticQuadrature => elliptic_quadrature,
        Suite::CapacityIdentity => capacity_identity,
        Suite::RingBracket => ring_bracket,
        Suite::CapacityBracket => capacity_bracket,
        Suite::RhoMetric => rho_metric,
        Suite::HyperbolicBall => hyperbolic_ball,
        Suite::RotationMonotone => rotation_monotone,
        Suite::RotationEndpoints => rotation_endpoints,
        Suite::ModulusLinearBracket => modulus_linear_bracket,
        Suite::FerrandBracket => ferrand_bracket,
        Suite::ProductIdentity => product_identity,
        Suite::MetricAxioms => metric_axioms,
        Suite::ModulusMonotone => modulus_monotone,
        Suite::MidpointRhoBracket => midpoint_rho_bracket,
        Suite::ClassicalRhoBracket => classical_rho_bracket,
        Suite::MidpointMuBracket => midpoint_mu_bracket,
        Suite::MidpointEquality => midpoint_equality,
        Suite::PdecMonotone => pdec_monotone,
        Suite::QuarticLower => quartic_lower,
        Suite::LowerBoundCrossover => lower_bound_crossover,
        Suite::QcDistortion => qc_distortion,
    }
}

/// Runs one suite on `samples` draws from stream `suite` of `seed`.
/// `tolerance` governs the relative-error identities.
pub fn run_suite(suite: Suite, seed: u64, samples: usize, tolerance: f64) -> SuiteReport {
    let mut sampler = Sampler::new(seed, suite.stream());
    let mut tracker = Tracker::new();
    suite_fn(suite)(&mut sampler, samples, tolerance, &mut tracker);
    tracker.finish(suite)
}

pub fn cmd_verify(cfg: &RunConfig) -> Result<VerifyReport> {
    cfg.validate()?;
    let suites: Vec<_> = Suite::ALL
        .into_iter()
        .map(|s| run_suite(s, cfg.seed, cfg.samples, cfg.tolerance))
        .collect();
    let failed_suites = suites.iter().filter(|s| !s.ok).count();
    Ok(VerifyReport {
        seed: cfg.seed,
        samples: cfg.samples,
        tolerance: cfg.tolerance,
        checks: suites.iter().map(|s| s.checks).sum(),
        failed_suites,
        passed: failed_suites == 0,
        suites,
    })
}

fn ring_functional_identity(s: &mut Sampler, n: usize, tol: f64, t: &mut Tracker) {
    for _ in 0..n {
        let x = s.uniform_open_closed(1.0, 1000.0);
        t.record((|| {
            let product = grotzsch_mu(unit(1.0 / x)?) * grotzsch_mu(unit((x - 1.0) / (x + 1.0))?);
            Ok(identity(product, PI * PI / 2.0, tol, json!({ "s": x, "product": product })))
        })());
    }
}

fn ring_fixed_point(_: &mut Sampler, _: usize, _: f64, t: &mut Tracker) {
    t.record((|| {
        let v = grotzsch_mu(unit(SQRT_2 - 1.0)?);
        let err = (v - PI / SQRT_2).abs();
        Ok(Check {
            ok: err <= FIXED_POINT_TOL,
            slack: FIXED_POINT_TOL - err,
            error: Some(err / (PI / SQRT_2)),
            sample: json!({ "r": SQRT_2 - 1.0, "mu": v }),
        })
    })());
}

fn ring_monotone(s: &mut Sampler, n: usize, _: f64, t: &mut Tracker) {
    for _ in 0..n {
        let (a, b) = (ring_arg(s), ring_arg(s));
        let (lo, hi) = (a.min(b), a.max(b));
        if lo < hi {
            t.record((|| {
                let (m_lo, m_hi) = (grotzsch_mu(unit(lo)?), grotzsch_mu(unit(hi)?));
                Ok(strictly_below(m_hi, m_lo, json!({ "r": [lo, hi], "mu": [m_lo, m_hi] })))
            })());
        }
        let (a, b) = (capacity_arg(s), capacity_arg(s));
        let (lo, hi) = (a.min(b), a.max(b));
        if lo < hi {
            t.record((|| {
                let (g_lo, g_hi) = (gamma2(CapacityArg::new(lo)?), gamma2(CapacityArg::new(hi)?));
                Ok(strictly_below(g_hi, g_lo, json!({ "s": [lo, hi], "gamma2": [g_lo, g_hi] })))
            })());
        }
    }
}

fn elliptic_quadrature(s: &mut Sampler, n: usize, _: f64, t: &mut Tracker) {
    for _ in 0..n {
        let r = s.uniform(0.0, 0.999);
        t.record((|| {
            let k = ellip_k(r)?;
            let integrand = |th: f64| {
                let v = r * th.sin();
                1.0 / ((1.0 - v) * (1.0 + v)).sqrt()
            };
            let (q, _) = quad::integrate(integrand, 0.0, FRAC_PI_2, 1e-14);
            Ok(close(k, q, QUADRATURE_TOL, json!({ "r": r, "agm": k, "quadrature": q })))
        })());
    }
}

fn capacity_identity(s: &mut Sampler, n: usize, _: f64, t: &mut Tracker) {
    for _ in 0..n {
        let x = s.uniform_open_closed(1.0, 1000.0);
        t.record((|| {
            let g = gamma2(CapacityArg::new(x)?);
            let m = 4.0 / PI * grotzsch_mu(unit((x - 1.0) / (x + 1.0))?);
            Ok(identity(g, m, CAPACITY_IDENTITY_TOL, json!({ "s": x, "gamma2": g, "middle": m })))
        })());
    }
}

fn ring_bracket(s: &mut Sampler, n: usize, _: f64, t: &mut Tracker) {
    for _ in 0..n {
        let r = ring_arg(s);
        t.record((|| {
            let u = unit(r)?;
            Ok(bracket(&mu_ring_bounds(u), grotzsch_mu(u), json!({ "r": r })))
        })());
    }
}

fn capacity_bracket(s: &mut Sampler, n: usize, _: f64, t: &mut Tracker) {
    let space = Dimension::new(3).expect("3 is a valid dimension");
    for i in 0..n {
        let x = capacity_arg(s);
        t.record((|| {
            let c = CapacityArg::new(x)?;
            Ok(bracket(&gamma_n_bounds(Dimension::PLANE, c), gamma2(c), json!({ "n": 2, "s": x })))
        })());
        if i % 50 == 0 {
            t.record((|| {
                let c = CapacityArg::new(x)?;
                let middle = gamma_n_middle(space, c);
                Ok(bracket(&gamma_n_bounds(space, c), middle, json!({ "n": 3, "s": x })))
            })());
        }
    }
}

fn rho_metric(s: &mut Sampler, n: usize, _: f64, t: &mut Tracker) {
    let origin = Point::planar(0.0, 0.0);
    for _ in 0..n {
        let (x, y, z) = (s.point_in_disk(), s.point_in_disk(), s.point_in_disk());
        t.record((|| {
            let (xy, yx) = (rho_ball(&x, &y)?, rho_ball(&y, &x)?);
            Ok(flag(xy == yx, json!({ "x": pt(&x), "y": pt(&y), "rho": [xy, yx] })))
        })());
        t.record((|| {
            let (xz, xy, yz) = (rho_ball(&x, &z)?, rho_ball(&x, &y)?, rho_ball(&y, &z)?);
            Ok(at_most(xz, xy + yz, json!({ "x": pt(&x), "y": pt(&y), "z": pt(&z) })))
        })());
        let r = s.uniform(0.0, 0.999);
        if r > 0.0 {
            t.record((|| {
                let got = rho_ball(&origin, &Point::planar(r, 0.0))?;
                Ok(close(got, 2.0 * r.atanh(), CLOSED_FORM_TOL, json!({ "t": r, "rho": got })))
            })());
        }
    }
}

fn hyperbolic_ball(s: &mut Sampler, n: usize, _: f64, t: &mut Tracker) {
    for _ in 0..n {
        let x = s.point_in_disk();
        let m = s.uniform_open_closed(0.0, 3.0);
        let angle = s.uniform(0.0, 2.0 * PI);
        t.record((|| {
            let ball = hyp_ball_to_euclidean(&x, m)?;
            let edge = ball.center.add(&Point::planar(angle.cos(), angle.sin()).scale(ball.radius));
            let got = rho_ball(&x, &edge)?;
            Ok(close(got, m, HYPERBOLIC_BALL_TOL, json!({ "x": pt(&x), "M": m, "angle": angle, "rho": got })))
        })());
    }
}

fn rotation_monotone(s: &mut Sampler, n: usize, _: f64, t: &mut Tracker) {
    for _ in 0..n {
        let (x, y) = s.admissible_pair();
        let (a, b) = (s.uniform(0.0, FRAC_PI_2), s.uniform(0.0, FRAC_PI_2));
        let (nu1, nu2) = (a.min(b), a.max(b));
        t.record((|| {
            let p = rotation_params(&x, &y)?;
            let (f1, f2) = (
                th_half_rho_rotated(&p.with_nu(nu1)?),
                th_half_rho_rotated(&p.with_nu(nu2)?),
            );
            // Relative decrease predicted to first order; below a few ulps
            // only the non-strict comparison is meaningful.
            let (d, k) = (p.d(), p.k());
            let base = 1.0 + d * d - k * k;
            let lift = 4.0 * k * k * d * d;
            let predicted =
                0.5 * lift * (nu2.sin().powi(2) - nu1.sin().powi(2)) / (base * base + lift * nu1.sin().powi(2));
            let ok = f2 < f1 || (f2 <= f1 && predicted < 1e-13);
            Ok(Check {
                ok,
                slack: f1 - f2,
                error: None,
                sample: json!({ "d": d, "k": k, "nu": [nu1, nu2], "th": [f1, f2] }),
            })
        })());
    }
}

fn rotation_endpoints(s: &mut Sampler, n: usize, _: f64, t: &mut Tracker) {
    let disk = DomainSpec::unit_disk();
    for _ in 0..n {
        let (x, y) = s.admissible_pair();
        let sample = json!({ "x": pt(&x), "y": pt(&y) });
        t.record((|| {
            let p = rotation_params(&x, &y)?;
            let exact = th_half_rho(&disk, &x, &y)?;
            Ok(close(th_half_rho_rotated(&p), exact, CLOSED_FORM_TOL, json!({ "native": sample })))
        })());
        t.record((|| {
            let p = rotation_params(&x, &y)?;
            let along = th_half_rho_rotated(&p.with_nu(0.0)?);
            let closed = x.distance(&y) / (1.0 - x.dot(&y));
            Ok(close(along, closed, CLOSED_FORM_TOL, json!({ "nu0": sample })))
        })());
        t.record((|| {
            let p = rotation_params(&x, &y)?;
            let across = th_half_rho_rotated(&p.with_nu(FRAC_PI_2)?);
            let lower = rho_bounds_midpoint(&x, &y)?.lower;
            Ok(close(across, lower, CLOSED_FORM_TOL, json!({ "nu_half_pi": sample })))
        })());
    }
}

fn modulus_linear_bracket(s: &mut Sampler, n: usize, _: f64, t: &mut Tracker) {
    let disk = DomainSpec::unit_disk();
    for _ in 0..n {
        let (x, y) = s.admissible_pair();
        t.record((|| {
            let rho = rho_ball(&x, &y)?;
            let mu = mu_metric(&disk, &x, &y)?;
            Ok(bracket(&mu_bounds_nd(Dimension::PLANE, rho)?, mu, json!({ "x": pt(&x), "y": pt(&y), "rho": rho })))
        })());
    }
}

fn ferrand_bracket(s: &mut Sampler, n: usize, tol: f64, t: &mut Tracker) {
    let disk = DomainSpec::unit_disk();
    for _ in 0..n {
        let (x, y) = s.admissible_pair();
        let sample = json!({ "x": pt(&x), "y": pt(&y) });
        t.record((|| {
            let rho = rho_ball(&x, &y)?;
            let lambda = lambda_metric(&disk, &x, &y)?;
            Ok(bracket(&lambda_bounds(Dimension::PLANE, rho)?, lambda, sample.clone()))
        })());
        t.record((|| {
            let rho = rho_ball(&x, &y)?;
            let lambda = lambda_metric(&disk, &x, &y)?;
            let middle = lambda_middle(Dimension::PLANE, rho)?;
            Ok(identity(middle, lambda, tol, json!({ "middle": sample, "lambda": lambda })))
        })());
    }
}

fn product_identity(s: &mut Sampler, n: usize, tol: f64, t: &mut Tracker) {
    let disk = DomainSpec::unit_disk();
    for _ in 0..n {
        let (x, y) = s.admissible_pair();
        t.record((|| {
            let product = mu_metric(&disk, &x, &y)? * lambda_metric(&disk, &x, &y)?;
            Ok(identity(product, 4.0, tol, json!({ "x": pt(&x), "y": pt(&y), "product": product })))
        })());
    }
}

fn metric_axioms(s: &mut Sampler, n: usize, _: f64, t: &mut Tracker) {
    let disk = DomainSpec::unit_disk();
    for _ in 0..n {
        let (x, y, z) = (s.point_in_disk(), s.point_in_disk(), s.point_in_disk());
        let sample = json!({ "x": pt(&x), "y": pt(&y), "z": pt(&z) });
        t.record((|| {
            let (xy, yx) = (mu_metric(&disk, &x, &y)?, mu_metric(&disk, &y, &x)?);
            Ok(flag(xy == yx, json!({ "symmetry": sample, "mu": [xy, yx] })))
        })());
        t.record((|| {
            let xz = mu_metric(&disk, &x, &z)?;
            let via = mu_metric(&disk, &x, &y)? + mu_metric(&disk, &y, &z)?;
            Ok(at_most(xz, via, json!({ "triangle": sample, "direct": xz, "via_y": via })))
        })());
    }
}

fn modulus_monotone(s: &mut Sampler, n: usize, _: f64, t: &mut Tracker) {
    for _ in 0..n {
        let (x1, y1) = s.admissible_pair();
        let (x2, y2) = s.admissible_pair();
        t.record((|| {
            let (r1, r2) = (rho_ball(&x1, &y1)?, rho_ball(&x2, &y2)?);
            let (lo, hi) = (r1.min(r2), r1.max(r2));
            let (m_lo, m_hi) = (crate::metrics::mu_from_rho(lo)?, crate::metrics::mu_from_rho(hi)?);
            let sample = json!({ "rho": [lo, hi], "mu": [m_lo, m_hi] });
            Ok(if lo < hi {
                strictly_below(m_lo, m_hi, sample)
            } else {
                flag(m_lo == m_hi, sample)
            })
        })());
    }
}

fn midpoint_rho_bracket(s: &mut Sampler, n: usize, _: f64, t: &mut Tracker) {
    let disk = DomainSpec::unit_disk();
    for _ in 0..n {
        let (x, y) = s.admissible_pair();
        t.record((|| {
            let th = th_half_rho(&disk, &x, &y)?;
            Ok(bracket(&rho_bounds_midpoint(&x, &y)?, th, json!({ "x": pt(&x), "y": pt(&y) })))
        })());
    }
}

fn classical_rho_bracket(s: &mut Sampler, n: usize, _: f64, t: &mut Tracker) {
    let disk = DomainSpec::unit_disk();
    for _ in 0..n {
        let (x, y) = s.admissible_pair();
        t.record((|| {
            let th = th_half_rho(&disk, &x, &y)?;
            Ok(bracket(&rho_bounds_avv(&x, &y)?, th, json!({ "x": pt(&x), "y": pt(&y) })))
        })());
    }
}

fn midpoint_mu_bracket(s: &mut Sampler, n: usize, _: f64, t: &mut Tracker) {
    let disk = DomainSpec::unit_disk();
    for _ in 0..n {
        let (x, y) = s.admissible_pair();
        t.record((|| {
            let mu = mu_metric(&disk, &x, &y)?;
            Ok(bracket(&mu_bounds_midpoint(&x, &y)?, mu, json!({ "x": pt(&x), "y": pt(&y) })))
        })());
    }
}

fn polar(r: f64, angle: f64) -> Point {
    Point::planar(r * angle.cos(), r * angle.sin())
}

fn midpoint_equality(s: &mut Sampler, n: usize, _: f64, t: &mut Tracker) {
    let disk = DomainSpec::unit_disk();
    let mut done = 0;
    while done < n {
        let r = s.uniform(0.0, 0.999);
        let (a1, a2) = (s.uniform(0.0, 2.0 * PI), s.uniform(0.0, 2.0 * PI));
        let (x, y) = (polar(r, a1), polar(r, a2));
        let angle = s.uniform(0.0, PI);
        let (p, q) = (s.uniform(-0.999, 0.999), s.uniform(-0.999, 0.999));
        let (u, v) = (polar(p, angle), polar(q, angle));
        let admissible = |a: &Point, b: &Point| a.distance(b) >= 1e-6 && a.add(b).norm() >= 1e-6;
        if !admissible(&x, &y) || !admissible(&u, &v) {
            continue;
        }
        done += 1;
        t.record((|| {
            let th = th_half_rho(&disk, &x, &y)?;
            let sample = json!({ "equal_norms": [pt(&x), pt(&y)], "th": th });
            if !midpoint_equality_cases(&x, &y).lower {
                return Ok(flag(false, sample));
            }
            Ok(close(rho_bounds_midpoint(&x, &y)?.lower, th, CLOSED_FORM_TOL, sample))
        })());
        t.record((|| {
            let th = th_half_rho(&disk, &u, &v)?;
            let sample = json!({ "collinear": [pt(&u), pt(&v)], "th": th });
            if !midpoint_equality_cases(&u, &v).upper {
                return Ok(flag(false, sample));
            }
            match rho_bounds_midpoint(&u, &v)?.upper {
                Some(upper) => Ok(close(upper, th, CLOSED_FORM_TOL, sample)),
                None => Ok(flag(false, sample)),
            }
        })());
    }
}

fn pdec_monotone(s: &mut Sampler, n: usize, _: f64, t: &mut Tracker) {
    let mut done = 0;
    while done < n {
        let x = s.log_uniform(-2.0, 1.0);
        let (a, b) = (s.log_uniform(-2.0, 1.0), s.log_uniform(-2.0, 1.0));
        if a == b {
            continue;
        }
        done += 1;
        let (p1, p2) = (a.min(b), a.max(b));
        t.record((|| {
            let (e1, e2) = (pdec_log_excess(x, p1)?, pdec_log_excess(x, p2)?);
            Ok(strictly_below(e1, e2, json!({ "t": x, "p": [p1, p2], "log_excess": [e1, e2] })))
        })());
    }
}

fn quartic_lower(s: &mut Sampler, n: usize, _: f64, t: &mut Tracker) {
    let disk = DomainSpec::unit_disk();
    for _ in 0..n {
        let (x, y) = s.admissible_pair();
        t.record((|| {
            let rho = rho_ball(&x, &y)?;
            let mu = mu_metric(&disk, &x, &y)?;
            let q = mu_lower_quartic(rho)?;
            Ok(at_most(q, mu, json!({ "x": pt(&x), "y": pt(&y), "quartic": q, "mu": mu })))
        })());
    }
}

fn lower_bound_crossover(s: &mut Sampler, n: usize, _: f64, t: &mut Tracker) {
    let target = 8.0 / PI;
    t.record((|| {
        let (q, l) = (mu_lower_quartic(2.0)?, mu_lower_linear(2.0)?);
        let err = (q - target).abs().max((l - target).abs());
        Ok(Check {
            ok: err <= CLOSED_FORM_TOL,
            slack: CLOSED_FORM_TOL - err,
            error: Some(err / target),
            sample: json!({ "rho": 2.0, "quartic": q, "linear": l }),
        })
    })());
    for _ in 0..n {
        let rho = s.uniform(0.0, 4.0);
        if rho == 0.0 || (rho - 2.0).abs() < 1e-12 {
            continue;
        }
        t.record((|| {
            let (q, l, best) = (mu_lower_quartic(rho)?, mu_lower_linear(rho)?, best_mu_lower(rho)?);
            let winner = if rho < 2.0 { q } else { l };
            let loser = if rho < 2.0 { l } else { q };
            let mut c = strictly_below(loser, winner, json!({ "rho": rho, "quartic": q, "linear": l }));
            c.ok &= best == winner;
            Ok(c)
        })());
    }
}

fn qc_distortion(s: &mut Sampler, n: usize, _: f64, t: &mut Tracker) {
    let half = StretchParam::new(0.5).expect("0.5 is a valid stretch");
    let identity_map = StretchParam::new(1.0).expect("1 is a valid stretch");
    for _ in 0..n {
        let (x, y) = s.admissible_pair();
        let alpha = s.uniform_open_closed(0.0, 1.0);
        for p in [half, StretchParam::new(alpha).expect("alpha lies in (0, 1]")] {
            t.record((|| {
                let ratio = mu_distortion_ratio(&x, &y, p)?;
                let k = p.dilatation();
                let (lo, hi) = (1.0 / k, k);
                Ok(Check {
                    ok: ratio >= lo * (1.0 - BRACKET_SLACK) && ratio <= hi * (1.0 + BRACKET_SLACK),
                    slack: (ratio - lo).min(hi - ratio),
                    error: None,
                    sample: json!({ "x": pt(&x), "y": pt(&y), "alpha": p.get(), "ratio": ratio }),
                })
            })());
        }
        t.record((|| {
            let ratio = mu_distortion_ratio(&x, &y, identity_map)?;
            Ok(flag(ratio == 1.0, json!({ "x": pt(&x), "y": pt(&y), "alpha": 1.0, "ratio": ratio })))
        })());
    }
}

impl Emit for VerifyReport {
    fn write_csv<W: Write>(&self, out: W) -> csv::Result<()> {
        let mut w = csv_writer(out);
        w.write_record(["suite", "checks", "passed", "worst_slack", "worst_error", "ok"])?;
        for s in &self.suites {
            w.write_record([
                s.name.to_string(),
                s.checks.to_string(),
                s.passed.to_string(),
                sig17(s.worst_slack),
                s.worst_error.map(sig17).unwrap_or_default(),
                s.ok.to_string(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }
}
