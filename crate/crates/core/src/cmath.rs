//! Small complex-arithmetic helpers shared by the evaluation modules.

use crate::error::{Error, Result};
use crate::Complex64;

pub const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };
pub const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };
pub const EPS: f64 = f64::EPSILON;

/// `ln 16`, the constant of every logarithmic singularity of `F`.
pub const LN_16: f64 = 2.772_588_722_239_781;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn real(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// `sign` with `sign(0) = 0`.
pub fn sign(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        -1.0
    } else {
        0.0
    }
}

pub fn is_finite(z: Complex64) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

/// Principal `Log(1 + w)`, accurate for small `|w|`.
pub fn log1p(w: Complex64) -> Complex64 {
    let (a, b) = (w.re, w.im);
    if w.norm() < 0.5 {
        let re = 0.5 * (2.0 * a + a * a + b * b).ln_1p();
        let im = b.atan2(1.0 + a);
        c(re, im)
    } else {
        (ONE + w).ln()
    }
}

/// Principal `Log(1 / (1 - w))`, accurate for small `|w|`.
pub fn log_inv_one_minus(w: Complex64) -> Complex64 {
    -log1p(-w)
}

pub(crate) fn check_finite(z: Complex64, what: &str) -> Result<()> {
    if is_finite(z) {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("{what} must be finite, got {z}")))
    }
}

pub(crate) fn check_tol(tol: f64) -> Result<()> {
    if tol > 0.0 && tol <= 1e-3 {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("tolerance must lie in (0, 1e-3], got {tol}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log1p_matches_ln_away_from_zero() {
        let w = c(0.3, -0.2);
        assert!((log1p(w) - (ONE + w).ln()).norm() < 1e-15);
        let w = c(2.0, 1.0);
        assert!((log1p(w) - (ONE + w).ln()).norm() < 1e-15);
    }

    #[test]
    fn log1p_keeps_relative_accuracy() {
        let w = c(1e-20, 3e-21);
        let l = log1p(w);
        assert!(((l - w) / w).norm() < 1e-15);
    }

    #[test]
    fn ln16_constant() {
        assert_eq!(LN_16, 16f64.ln());
    }
}
