//! The measure `sigma` on `[0, 1]` with density
//! `1 / (pi^2 t (1 - t) (F(t)^2 + F(1 - t)^2))` and total mass 1/2, its
//! distribution function, the companion function `nu` on `(1, inf)` and the
//! boundary pair `(v, v~)`.

use std::f64::consts::{FRAC_1_PI, PI};

use crate::error::{domain, Result};
use crate::hypergeo::f_complementary;

/// One point of the distribution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasureSample {
    pub x: f64,
    pub cdf: f64,
    pub density: f64,
}

fn check_unit(x: f64) -> Result<()> {
    if !(x > 0.0 && x < 1.0) {
        return domain(format!("sigma lives on (0, 1), got x = {x}"));
    }
    Ok(())
}

/// `(F(a), F(b))` as reals for `a + b = 1`.
fn pair(a: f64, b: f64) -> Result<(f64, f64)> {
    let (fa, fb) = f_complementary(a, b)?;
    Ok((fa.value.re, fb.value.re))
}

/// Distribution function at the point at distance `a` from 0 and `b` from 1.
pub(crate) fn cdf_pair(a: f64, b: f64) -> Result<f64> {
    let (fa, fb) = pair(a, b)?;
    Ok(fa.atan2(fb) * FRAC_1_PI)
}

/// Density at the point at distance `a` from 0 and `b` from 1.
pub(crate) fn density_pair(a: f64, b: f64) -> Result<f64> {
    let (fa, fb) = pair(a, b)?;
    Ok(1.0 / (PI * PI * a * b * (fa * fa + fb * fb)))
}

/// `sigma([0, x]) = (1/pi) arctan(F(x) / F(1 - x))`, in `(0, 1/2)`.
pub fn sigma_cdf(x: f64) -> Result<f64> {
    check_unit(x)?;
    cdf_pair(x, 1.0 - x)
}

/// `d sigma / dx`.
pub fn sigma_density(x: f64) -> Result<f64> {
    check_unit(x)?;
    density_pair(x, 1.0 - x)
}

pub fn sample(x: f64) -> Result<MeasureSample> {
    Ok(MeasureSample { x, cdf: sigma_cdf(x)?, density: sigma_density(x)? })
}

fn check_above_one(x: f64) -> Result<()> {
    if !(x > 1.0) || !x.is_finite() {
        return domain(format!("needs x > 1, got {x}"));
    }
    Ok(())
}

/// `nu(x) = (1/pi) arctan(F(1 - 1/x) / F(1/x))` for `x > 1`, in `(0, 1/2)`.
pub fn nu(x: f64) -> Result<f64> {
    check_above_one(x)?;
    let (fu, fd) = pair(1.0 / x, (x - 1.0) / x)?;
    Ok(fd.atan2(fu) * FRAC_1_PI)
}

/// `nu(1/u)` for `u` in `(0, 1)`, from `u` and `1 - u` directly.
pub(crate) fn nu_of_inverse(u: f64, one_minus_u: f64) -> Result<f64> {
    let (fu, fd) = pair(u, one_minus_u)?;
    Ok(fd.atan2(fu) * FRAC_1_PI)
}

/// `(v, v~) = (F(1 - 1/x), F(1/x)) / sqrt(x)`, the imaginary and real parts
/// of `F(x + i0)`.
pub fn boundary_pair(x: f64) -> Result<(f64, f64)> {
    check_above_one(x)?;
    let (fu, fd) = pair(1.0 / x, (x - 1.0) / x)?;
    let s = x.sqrt();
    Ok((fd / s, fu / s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergeo::hyper_f_boundary;
    use crate::Side;

    #[test]
    fn cdf_examples() {
        assert!((sigma_cdf(0.5).unwrap() - 0.25).abs() < 1e-16);
        assert!((sigma_cdf(0.3).unwrap() + sigma_cdf(0.7).unwrap() - 0.5).abs() < 1e-15);
        assert!((0.5 - sigma_cdf(1.0 - 1e-15).unwrap()) < 0.03);
        assert!(sigma_cdf(0.0).unwrap_err().is_domain());
        assert!(sigma_cdf(1.0).unwrap_err().is_domain());
    }

    #[test]
    fn cdf_tends_to_zero_logarithmically() {
        let x = 1e-6;
        let asymptotic = (PI / (16.0 / x as f64).ln()).atan() / PI;
        assert!((sigma_cdf(x).unwrap() - asymptotic).abs() < 1e-6);
        let mut prev = sigma_cdf(0.1).unwrap();
        for e in [1e-3, 1e-10, 1e-50, 1e-200, 1e-300] {
            let v = sigma_cdf(e).unwrap();
            assert!(v < prev && v > 0.0);
            prev = v;
        }
        assert!(prev < 2e-3);
    }

    #[test]
    fn density_examples() {
        let f_half = 1.180_340_599_016_096_2;
        let d = sigma_density(0.5).unwrap();
        assert!((d - 2.0 / (PI * PI * f_half * f_half)).abs() < 1e-15);
        assert!((sigma_density(0.2).unwrap() - sigma_density(0.8).unwrap()).abs() < 1e-15);
    }

    #[test]
    fn density_is_derivative_of_cdf() {
        let h = 1e-5;
        for x in [0.01, 0.2, 0.5, 0.77, 0.99] {
            let fd = (sigma_cdf(x + h).unwrap() - sigma_cdf(x - h).unwrap()) / (2.0 * h);
            assert!((fd - sigma_density(x).unwrap()).abs() < 1e-6, "{x}");
        }
    }

    #[test]
    fn nu_examples() {
        assert!((nu(2.0).unwrap() - 0.25).abs() < 1e-16);
        assert!((nu(10.0).unwrap() - (0.5 - sigma_cdf(0.1).unwrap())).abs() < 1e-15);
        let mut prev = 0.0;
        for k in 1..50 {
            let v = nu(1.0 + 0.3 * k as f64).unwrap();
            assert!(v > prev);
            prev = v;
        }
        assert!(nu(1.0).unwrap_err().is_domain());
    }

    #[test]
    fn boundary_pair_examples() {
        let f_half = 1.180_340_599_016_096_2;
        let (v, vt) = boundary_pair(2.0).unwrap();
        assert!((v - f_half / 2f64.sqrt()).abs() < 1e-15 && (v - vt).abs() < 1e-16);
        let (v, vt) = boundary_pair(4.0).unwrap();
        assert!(((PI * nu(4.0).unwrap()).tan() - v / vt).abs() < 1e-12);
        let b = hyper_f_boundary(4.0, Side::Above, 1e-12).unwrap().value;
        assert!((v * v + vt * vt - b.norm_sqr()).abs() < 1e-14);
    }
}
