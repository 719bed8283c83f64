//! Special functions behind the conformally invariant metrics of the plane.
//!
//! Everything here is built on the arithmetic–geometric mean. The complete
//! elliptic integral of the first kind is
//!
//! ```text
//! K(r) = π / (2 · agm(1, r'))        r' = √(1 − r²)
//! ```
//!
//! and the Grötzsch ring function is the modulus ratio
//!
//! ```text
//! μ(r) = (π/2) · K(r') / K(r) = (π/2) · agm(1, r') / agm(1, r)
//! ```
//!
//! The second form is the one used: it never forms the complement of a
//! complement, so μ stays accurate as `r → 0` and `r → 1`.

use std::f64::consts::{FRAC_2_PI, FRAC_PI_2, PI};

use crate::error::{domain, Error, Result};
use crate::quad;

const AGM_MAX_ITER: usize = 60;
const AGM_REL_TOL: f64 = 1e-15;

/// Below this modulus `μ(r)` is replaced by its logarithmic asymptote
/// `log(4/r)`, whose error is `O(r²)`.
pub const MU_ASYMPTOTIC_THRESHOLD: f64 = 1e-12;

const CN_QUAD_TOL: f64 = 1e-10;

/// A modulus `r` with `0 < r < 1`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct UnitInterval(f64);

impl UnitInterval {
    pub fn new(r: f64) -> Result<Self> {
        if r > 0.0 && r < 1.0 {
            Ok(Self(r))
        } else {
            Err(domain("r", r, "(0, 1)"))
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }

    /// The complementary modulus `r' = √((1 − r)(1 + r))`.
    pub fn complement(self) -> f64 {
        complement(self.0)
    }
}

impl TryFrom<f64> for UnitInterval {
    type Error = Error;

    fn try_from(r: f64) -> Result<Self> {
        Self::new(r)
    }
}

/// Argument `s > 1` of the Grötzsch capacity.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct CapacityArg(f64);

impl CapacityArg {
    pub fn new(s: f64) -> Result<Self> {
        if s > 1.0 && !s.is_nan() {
            Ok(Self(s))
        } else {
            Err(domain("s", s, "(1, ∞)"))
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for CapacityArg {
    type Error = Error;

    fn try_from(s: f64) -> Result<Self> {
        Self::new(s)
    }
}

/// Euclidean dimension `n ≥ 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Dimension(usize);

impl Dimension {
    pub const PLANE: Dimension = Dimension(2);

    pub fn new(n: usize) -> Result<Self> {
        if n >= 2 {
            Ok(Self(n))
        } else {
            Err(Error::UnsupportedDimension(n))
        }
    }

    pub fn get(self) -> usize {
        self.0
    }

    /// `2^(n−1) · c_n`, the factor that recurs in every capacity bound.
    pub fn capacity_scale(self) -> f64 {
        2f64.powi(self.0 as i32 - 1) * constant_cn(self)
    }
}

impl TryFrom<usize> for Dimension {
    type Error = Error;

    fn try_from(n: usize) -> Result<Self> {
        Self::new(n)
    }
}

pub(crate) fn complement(r: f64) -> f64 {
    ((1.0 - r) * (1.0 + r)).sqrt()
}

/// Arithmetic–geometric mean of `a` and `b`.
///
/// Iterates until `|a − b| ≤ 1e−15 · a` or 60 rounds have been taken.
pub fn agm(a: f64, b: f64) -> Result<f64> {
    if !(a > 0.0) || a.is_infinite() {
        return Err(domain("a", a, "(0, ∞)"));
    }
    if !(b >= 0.0) || b.is_infinite() {
        return Err(domain("b", b, "[0, ∞)"));
    }
    Ok(agm_unchecked(a, b))
}

fn agm_unchecked(mut a: f64, mut b: f64) -> f64 {
    if b == 0.0 {
        return 0.0;
    }
    for _ in 0..AGM_MAX_ITER {
        if (a - b).abs() <= AGM_REL_TOL * a {
            break;
        }
        let next = 0.5 * (a + b);
        b = (a * b).sqrt();
        a = next;
    }
    0.5 * (a + b)
}

/// Complete elliptic integral of the first kind, in the modulus convention:
/// `K(r) = ∫₀¹ dx / √((1 − x²)(1 − r²x²))`.
pub fn ellip_k(r: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&r) {
        return Err(domain("r", r, "[0, 1)"));
    }
    Ok(FRAC_PI_2 / agm_unchecked(1.0, complement(r)))
}

/// The Grötzsch ring function `μ(r)`.
pub fn grotzsch_mu(r: UnitInterval) -> f64 {
    mu_with_complement(r.get(), r.complement())
}

/// `μ(r)` when both `r` and `r'` are already known to full precision.
pub(crate) fn mu_with_complement(r: f64, rc: f64) -> f64 {
    if r < MU_ASYMPTOTIC_THRESHOLD {
        return (4.0 / r).ln();
    }
    FRAC_PI_2 * agm_unchecked(1.0, rc) / agm_unchecked(1.0, r)
}

/// Grötzsch capacity in the plane, `γ₂(s) = 2π / μ(1/s)`.
pub fn gamma2(s: CapacityArg) -> f64 {
    let s = s.get();
    // 1/s and √(s² − 1)/s, both without cancellation.
    let r = 1.0 / s;
    let rc = ((s - 1.0) * (s + 1.0)).sqrt() / s;
    2.0 * PI / mu_with_complement(r, rc)
}

/// Teichmüller capacity in the plane, `τ₂(t) = γ₂(√(t + 1)) / 2`.
pub fn tau2(t: f64) -> Result<f64> {
    if !(t > 0.0) || t.is_infinite() {
        return Err(domain("t", t, "(0, ∞)"));
    }
    // s = √(t+1) and s² − 1 = t exactly.
    let s = (t + 1.0).sqrt();
    let r = 1.0 / s;
    let rc = t.sqrt() / s;
    Ok(PI / mu_with_complement(r, rc))
}

/// `Γ(k/2)` for a positive integer `k`, by the recurrence `Γ(x + 1) = xΓ(x)`
/// started from `Γ(1) = 1` or `Γ(1/2) = √π`.
fn gamma_half_integer(k: u32) -> f64 {
    debug_assert!(k >= 1);
    let (mut x, mut g) = if k % 2 == 0 {
        (1.0, 1.0)
    } else {
        (0.5, PI.sqrt())
    };
    let target = f64::from(k) / 2.0;
    while x < target {
        g *= x;
        x += 1.0;
    }
    g
}

/// Surface area `ω_m` of the unit sphere `S^m ⊂ R^(m+1)`:
/// `ω_m = 2π^((m+1)/2) / Γ((m+1)/2)`.
pub fn surface_area_omega(m: u32) -> f64 {
    let k = m + 1;
    2.0 * PI.powf(f64::from(k) / 2.0) / gamma_half_integer(k)
}

/// The dimensional constant `c_n` of the Grötzsch capacity estimates.
///
/// `c₂ = 2/π`. For `n ≥ 3`,
/// `c_n = 2^(1−n) ω_(n−2) (∫₀^(π/2) sin^((2−n)/(n−1)) t dt)^(1−n)`.
pub fn constant_cn(n: Dimension) -> f64 {
    let n = n.get();
    if n == 2 {
        return FRAC_2_PI;
    }
    let nf = n as f64;
    let integral = sine_power_integral(n);
    2f64.powf(1.0 - nf) * surface_area_omega(n as u32 - 2) * integral.powf(1.0 - nf)
}

/// `∫₀^(π/2) sin^a t dt` with `a = (2−n)/(n−1)`.
///
/// The substitution `t = u^(n−1)` cancels the `t^a` endpoint singularity, so
/// the transformed integrand is bounded near `u = 0`.
fn sine_power_integral(n: usize) -> f64 {
    let m = (n - 1) as f64;
    let a = (2.0 - n as f64) / m;
    let upper = FRAC_PI_2.powf(1.0 / m);
    let integrand = |u: f64| {
        let t = u.powf(m);
        m * u.powf(m - 1.0) * t.sin().powf(a)
    };
    quad::integrate(integrand, 0.0, upper, CN_QUAD_TOL).0
}

/// `arth(y)` given `1 − y` directly, so `y` near 1 keeps its precision.
pub(crate) fn arth_from_gap(y: f64, gap: f64) -> f64 {
    0.5 * (2.0 * y / gap).ln_1p()
}

/// `arth(r^(1/p))` for `0 < r < 1`, accurate for `r` close to 1.
pub(crate) fn arth_root(r: f64, p: f64) -> f64 {
    let ln_y = r.ln() / p;
    arth_from_gap(ln_y.exp(), -ln_y.exp_m1())
}

/// `arth((r')^(1/4))` from `r` without forming `r'` first.
pub(crate) fn arth_quartic_root_of_complement(r: f64) -> f64 {
    // ln r' = ln(1 − r²)/2.
    let ln_y = (-r * r).ln_1p() / 8.0;
    arth_from_gap(ln_y.exp(), -ln_y.exp_m1())
}
