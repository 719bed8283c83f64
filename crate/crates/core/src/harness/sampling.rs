use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::geom::Point;

/// Points are drawn from the disk of this radius.
pub const SAMPLE_RADIUS: f64 = 0.999;

/// Pairs with `|x − y|` or `|x + y|` below this are redrawn.
pub const DEGENERACY_GAP: f64 = 1e-6;

/// Seeded source of sample points. Distinct `stream`s of one seed give
/// independent sequences.
#[derive(Debug, Clone)]
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        Self { rng }
    }

    /// Uniform on `[lo, hi)`.
    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.rng.random::<f64>()
    }

    /// Uniform on `(lo, hi]`.
    pub fn uniform_open_closed(&mut self, lo: f64, hi: f64) -> f64 {
        hi - (hi - lo) * self.rng.random::<f64>()
    }

    /// `10^u` with `u` uniform on `[lo_exp, hi_exp)`.
    pub fn log_uniform(&mut self, lo_exp: f64, hi_exp: f64) -> f64 {
        10f64.powf(self.uniform(lo_exp, hi_exp))
    }

    /// Uniform on the disk of radius [`SAMPLE_RADIUS`], by rejection from the
    /// enclosing square.
    pub fn point_in_disk(&mut self) -> Point {
        loop {
            let re = self.uniform(-SAMPLE_RADIUS, SAMPLE_RADIUS);
            let im = self.uniform(-SAMPLE_RADIUS, SAMPLE_RADIUS);
            if re * re + im * im < SAMPLE_RADIUS * SAMPLE_RADIUS {
                return Point::planar(re, im);
            }
        }
    }

    /// Two disk points with neither `x ≈ y` nor `x ≈ −y`.
    pub fn admissible_pair(&mut self) -> (Point, Point) {
        loop {
            let x = self.point_in_disk();
            let y = self.point_in_disk();
            if x.distance(&y) >= DEGENERACY_GAP && x.add(&y).norm() >= DEGENERACY_GAP {
                return (x, y);
            }
        }
    }
}
