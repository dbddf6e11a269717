//! Deterministic random points for sweeps.
//!
//! The generator is the 64-bit linear congruential map
//! `s -> 6364136223846793005 s + 1442695040888963407 (mod 2^64)`, seeded with
//! `s = seed`, and a uniform double is the top 53 bits of the new state times
//! `2^-53`. Any implementation following this recipe reproduces the same
//! points for the same seed.

use crate::cmath::c;
use crate::modular::{in_region, Region};
use crate::Complex64;

const MUL: u64 = 6_364_136_223_846_793_005;
const INC: u64 = 1_442_695_040_888_963_407;

#[derive(Debug, Clone)]
pub struct Lcg {
    state: u64,
}

impl Lcg {
    pub fn new(seed: u64) -> Self {
        Lcg { state: seed }
    }

    /// Independent stream for a named sub-sweep.
    pub fn derived(seed: u64, label: &str) -> Self {
        // FNV-1a of the label, mixed into the seed
        let h = label.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x100_0000_01b3));
        Lcg::new(seed ^ h)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_mul(MUL).wrapping_add(INC);
        self.state
    }

    /// Uniform in `[0, 1)`.
    pub fn uniform(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.uniform()
    }

    /// Log-uniform in `[lo, hi)`, both positive.
    pub fn log_uniform(&mut self, lo: f64, hi: f64) -> f64 {
        (lo.ln() + (hi.ln() - lo.ln()) * self.uniform()).exp()
    }

    pub fn int_range(&mut self, lo: i64, hi: i64) -> i64 {
        lo + (self.uniform() * (hi - lo + 1) as f64).floor() as i64
    }

    /// `Re` uniform in `re`, `Im` log-uniform in `im`.
    pub fn upper_half_plane(&mut self, re: (f64, f64), im: (f64, f64)) -> Complex64 {
        let x = self.range(re.0, re.1);
        c(x, self.log_uniform(im.0, im.1))
    }

    /// Default sweep point: `Re` in `[-3, 3]`, `Im` log-uniform in `[0.05, 20]`.
    pub fn default_point(&mut self) -> Complex64 {
        self.upper_half_plane((-3.0, 3.0), (0.05, 20.0))
    }

    /// Point of `(0, 1) u (C \ R)` at distance at least `gap` from `0`, `1`
    /// and both cuts; one in eight lands on the real segment.
    pub fn lambda_point(&mut self, gap: f64) -> Complex64 {
        if self.next_u64() % 8 == 0 {
            return c(self.range(gap, 1.0 - gap), 0.0);
        }
        let z = self.upper_half_plane((-3.0, 4.0), (gap, 20.0));
        if self.uniform() < 0.5 {
            z.conj()
        } else {
            z
        }
    }

    /// Point of `C \ [1, inf)` at distance at least `gap` from the cut.
    pub fn off_cut_point(&mut self, gap: f64) -> Complex64 {
        loop {
            let z = c(self.range(-6.0, 6.0), self.range(-4.0, 4.0));
            let dist = if z.re >= 1.0 { z.im.abs() } else { (z - 1.0).norm() };
            if dist >= gap {
                return z;
            }
        }
    }

    /// Point of the closed strip region with `Im >= im_min`.
    pub fn strip_point(&mut self, im_min: f64) -> Complex64 {
        loop {
            let z = self.upper_half_plane((-1.0, 1.0), (im_min, 20.0));
            if in_region(z, Region::ClosedStripRegion) {
                return z;
            }
        }
    }

    /// Strip point shifted by `2m` with `|m| <= max_shift`.
    pub fn periodized_point(&mut self, im_min: f64, max_shift: i64) -> Complex64 {
        let m = self.int_range(-max_shift, max_shift);
        self.strip_point(im_min) + 2.0 * m as f64
    }
}
