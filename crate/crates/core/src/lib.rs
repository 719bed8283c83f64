//! Conformally invariant metrics of the unit disk and the upper half-plane.
//!
//! The crate evaluates three metrics and the special functions they are
//! built from:
//!
//! | Quantity | Where |
//! |----------|-------|
//! | `agm`, `K(r)`, Grötzsch ring function `μ(r)`, capacities `γ₂`, `τ₂`, constants `ω_m`, `c_n` | [`specfun`] |
//! | hyperbolic metric `ρ` in `Bⁿ` and `Hⁿ`, midpoint rotation | [`geom`] |
//! | modulus metric `μ_D`, Ferrand metric `λ_D`, ring modulus, radial stretch | [`metrics`] |
//! | closed-form two-sided estimates for all of the above | [`bounds`] |
//! | reproducible experiments behind the `cmetric` command-line tool | [`harness`] |
//!
//! In the plane both metrics are exact functions of `ρ`:
//!
//! ```
//! use conformal_metrics::{geom::{DomainSpec, Point}, metrics};
//!
//! let disk = DomainSpec::unit_disk();
//! let (x, y) = (Point::planar(0.6, 0.3), Point::planar(0.1, 0.1));
//! let mu = metrics::mu_metric(&disk, &x, &y)?;
//! let lambda = metrics::lambda_metric(&disk, &x, &y)?;
//! assert!((mu * lambda - 4.0).abs() < 1e-12);
//! # Ok::<(), conformal_metrics::Error>(())
//! ```
//!
//! The guide under `book/` walks through each part with runnable examples;
//! its code blocks are compiled as doc-tests of this crate.

pub mod bounds;
mod error;
pub mod geom;
pub mod harness;
pub mod metrics;
mod quad;
pub mod specfun;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/special-functions.md")]
    mod special_functions {}
    #[doc = include_str!("../../../book/src/hyperbolic.md")]
    mod hyperbolic {}
    #[doc = include_str!("../../../book/src/modulus-metric.md")]
    mod modulus_metric {}
    #[doc = include_str!("../../../book/src/bounds.md")]
    mod bounds {}
    #[doc = include_str!("../../../book/src/midpoint-rotation.md")]
    mod midpoint_rotation {}
    #[doc = include_str!("../../../book/src/holder.md")]
    mod holder {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
    #[doc = include_str!("../../../README.md")]
    mod readme {}
}
