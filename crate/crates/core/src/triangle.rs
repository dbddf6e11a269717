//! The Schwarz triangle function `tau(z) = i F(1 - z) / F(z)` on
//! `Lambda = (0, 1) u (C \ R)`, its values on both sides of the cuts, and the
//! remainders left after removing its logarithmic singularities.

use std::f64::consts::FRAC_1_PI;

use crate::cmath::{c, check_finite, check_tol, sign, EPS, I, LN_16, ONE};
use crate::error::{domain, Error, Result};
use crate::hypergeo::{eval_f, eval_f_one_minus, f_complementary};
use crate::{Complex64, EvalResult, Method, Side};

/// Radius within which the singular remainders are known to be bounded by 2.
pub const EPS_TRIANGLE: f64 = 1.0 / 100.0;

/// Which singular point a [`SingularRemainder`] removes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SingularKind {
    AtInfinity,
    AtZero,
    AtOne,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SingularRemainder {
    pub kind: SingularKind,
    pub value: Complex64,
}

/// True for `z` in `(0, 1) u (C \ R)`.
pub fn in_lambda(z: Complex64) -> bool {
    z.re.is_finite() && z.im.is_finite() && (z.im != 0.0 || (z.re > 0.0 && z.re < 1.0))
}

fn check_lambda(z: Complex64) -> Result<()> {
    check_finite(z, "z")?;
    if !in_lambda(z) {
        return domain(format!("tau is defined on (0, 1) and off the real axis, got z = {}", z.re));
    }
    Ok(())
}

pub(crate) fn eval_tau(z: Complex64) -> Result<EvalResult> {
    check_lambda(z)?;
    // F(1 - z) from z itself keeps accuracy as z -> 0
    let num = if z.norm() < 0.5 { eval_f_one_minus(z)? } else { eval_f(ONE - z)? };
    let den = eval_f(z)?;
    let v = I * num.value / den.value;
    let rel = num.abs_err / num.value.norm() + den.abs_err / den.value.norm() + 4.0 * EPS;
    Ok(EvalResult::new(v, v.norm() * rel, Method::ClosedForm))
}

/// `tau(z) = i F(1 - z) / F(z)` with `abs_err <= tol`.
pub fn triangle(z: Complex64, tol: f64) -> Result<EvalResult> {
    check_tol(tol)?;
    let r = eval_tau(z)?;
    if r.abs_err > tol {
        return Err(Error::Convergence(format!(
            "tau error bound {:.3e} exceeds tolerance {tol:.3e}",
            r.abs_err
        )));
    }
    Ok(r)
}

/// `y(x) = F(1 / (1 + x)) / F(x / (1 + x))`, the height of `tau` on the
/// lines `Re = +-1`.
pub fn y_of_x(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return domain(format!("y(x) needs x > 0, got {x}"));
    }
    let a = 1.0 / (1.0 + x);
    let b = x / (1.0 + x);
    let (fb, fa) = f_complementary(b, a)?;
    Ok(fa.value.re / fb.value.re)
}

/// `tau(-x +- i0) = +-1 + i y(x)`.
pub fn triangle_boundary_neg(x: f64, side: Side) -> Result<Complex64> {
    let y = y_of_x(x)?;
    Ok(c(side.sign(), y))
}

/// `tau(1 + x +- i0)`, obtained from the inversion `tau(z) tau(1 - z) = -1`
/// applied to the values on the negative axis.
pub fn triangle_boundary_pos(x: f64, side: Side) -> Result<Complex64> {
    let opposite = match side {
        Side::Above => Side::Below,
        Side::Below => Side::Above,
    };
    let t = triangle_boundary_neg(x, opposite)?;
    Ok(-t.inv())
}

/// Main term of the asymptotics of `tau` at the singular point `kind`:
/// `ln 16 / (i pi) + Arg(w) / pi` with `w = 1 - z`, `1/z`, `1/(1 - z)`.
pub fn singular_main_term(z: Complex64, kind: SingularKind) -> Complex64 {
    let w = match kind {
        SingularKind::AtInfinity => ONE - z,
        SingularKind::AtZero => z.inv(),
        SingularKind::AtOne => (ONE - z).inv(),
    };
    c(w.arg() * FRAC_1_PI, -LN_16 * FRAC_1_PI)
}

/// Remainders `tau(inf; z)`, `tau(0; z)`, `tau(1; z)`: `tau` (or its
/// inverse) with the logarithmic growth at that point subtracted.
pub fn singular_remainder(z: Complex64, kind: SingularKind) -> Result<SingularRemainder> {
    let t = eval_tau(z)?.value;
    let value = match kind {
        SingularKind::AtInfinity => (t - sign(z.im)).inv() + I * (z.norm().ln() * FRAC_1_PI),
        SingularKind::AtZero => -t - I * (z.norm().ln() * FRAC_1_PI),
        SingularKind::AtOne => t.inv() - I * ((ONE - z).norm().ln() * FRAC_1_PI),
    };
    Ok(SingularRemainder { kind, value })
}

/// `|tau(z) - sign(Im z) - tau(z / (z - 1))|`.
pub fn triangle_shift_residual(z: Complex64) -> Result<f64> {
    check_finite(z, "z")?;
    if z.im == 0.0 {
        return domain(format!("shift relation needs non-real z, got {}", z.re));
    }
    let a = eval_tau(z)?.value;
    let b = eval_tau(z / (z - ONE))?.value;
    Ok((a - sign(z.im) - b).norm())
}

/// `|tau(z) tau(1 - z) + 1|`.
pub fn inversion_residual(z: Complex64) -> Result<f64> {
    let a = eval_tau(z)?.value;
    let b = eval_tau(ONE - z)?.value;
    Ok((a * b + 1.0).norm())
}

/// Whether `w` lies in the open fundamental quadrilateral
/// `{Im > 0, |Re| < 1, |2w - 1| > 1, |2w + 1| > 1}`.
pub fn in_quadrilateral(w: Complex64) -> bool {
    w.im > 0.0 && w.re.abs() < 1.0 && (2.0 * w - ONE).norm() > 1.0 && (2.0 * w + ONE).norm() > 1.0
}

/// `tau` on `1/2 + i s`, the preimage of the unit circle.
pub fn unit_circle_point(s: f64) -> Result<Complex64> {
    Ok(eval_tau(c(0.5, s))?.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn tau(z: Complex64) -> Complex64 {
        triangle(z, 1e-10).unwrap().value
    }

    #[test]
    fn value_at_half_is_i() {
        assert!((tau(c(0.5, 0.0)) - I).norm() < 1e-15);
    }

    #[test]
    fn real_segment_maps_to_imaginary_axis() {
        for x in [1e-8, 0.1, 0.5, 0.9, 1.0 - 1e-9] {
            let t = tau(c(x, 0.0));
            assert_eq!(t.re, 0.0);
            assert!(t.im > 0.0);
        }
    }

    #[test]
    fn unit_circle_image() {
        assert!((tau(c(0.5, 0.3)).norm() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn inversion() {
        assert!(inversion_residual(c(0.3, 0.2)).unwrap() < 1e-14);
    }

    #[test]
    fn sign_of_real_part_follows_im_z() {
        for z in [c(0.3, 0.2), c(-2.0, 0.1), c(5.0, -3.0), c(0.7, -1e-6)] {
            let t = tau(z);
            assert!(t.re * z.im > 0.0, "{z}: {t}");
            assert!(t.re.abs() < 1.0 && t.im > 0.0);
            assert!(in_quadrilateral(t));
        }
    }

    #[test]
    fn boundary_negative_axis() {
        let t = triangle_boundary_neg(1.0, Side::Above).unwrap();
        assert!((t - c(1.0, 1.0)).norm() < 1e-15);
        let a = triangle_boundary_neg(0.37, Side::Above).unwrap();
        let b = triangle_boundary_neg(0.37, Side::Below).unwrap();
        assert_eq!(a - b, c(2.0, 0.0));
        // matches an off-axis evaluation just above the cut
        let near = tau(c(-0.37, 1e-10));
        assert!((near - a).norm() < 1e-8);
        assert!(triangle_boundary_neg(0.0, Side::Above).unwrap_err().is_domain());
    }

    #[test]
    fn boundary_negative_axis_log_growth() {
        for x in [1e-4, 1e-8] {
            let y = triangle_boundary_neg(x, Side::Above).unwrap().im;
            let main = (16.0 / x).ln() / PI;
            assert!((y - main).abs() < 0.01 * main);
        }
    }

    #[test]
    fn boundary_positive_axis() {
        let w = triangle_boundary_pos(1.0, Side::Above).unwrap();
        let below = triangle_boundary_pos(1.0, Side::Below).unwrap();
        assert!((below - w / (ONE - 2.0 * w)).norm() < 1e-14);
        let p = triangle_boundary_pos(0.5, Side::Above).unwrap();
        let n = triangle_boundary_neg(0.5, Side::Below).unwrap();
        assert!((p * n + 1.0).norm() < 1e-14);
        for x in [0.01, 1.0, 100.0] {
            for side in [Side::Above, Side::Below] {
                assert!(triangle_boundary_pos(x, side).unwrap().re.abs() < 1.0);
            }
        }
        // direct closed form i F(-x) / F(1 + x + i0)
        let x = 0.5;
        let fb = crate::hypergeo::eval_f_boundary(1.0 + x, Side::Above).unwrap().value;
        let direct = I * eval_f(c(-x, 0.0)).unwrap().value / fb;
        assert!((direct - p).norm() < 1e-14);
    }

    #[test]
    fn remainders_near_singular_points() {
        let z = c(1.0, 1.0) * (1e-4 / 2f64.sqrt());
        let r = singular_remainder(z, SingularKind::AtZero).unwrap();
        assert!((r.value - singular_main_term(z, SingularKind::AtZero)).norm() < 0.02);
        let z = c(1.0 - 1e-4, 0.0);
        let r = singular_remainder(z, SingularKind::AtOne).unwrap();
        assert!((r.value - c(0.0, -LN_16 / PI)).norm() < 0.02);
        let r = singular_remainder(c(0.0, 200.0), SingularKind::AtInfinity).unwrap();
        assert!(r.value.norm() <= 2.0);
        assert!((r.value - singular_main_term(c(0.0, 200.0), SingularKind::AtInfinity)).norm() < 0.05);
    }

    #[test]
    fn y_examples() {
        assert!((y_of_x(1.0).unwrap() - 1.0).abs() < 1e-15);
        let (a, b) = (y_of_x(0.1).unwrap(), y_of_x(10.0).unwrap());
        assert!(a > 1.0 && 1.0 > b);
        // y(1/x) = 1/y(x): both arguments swap
        assert!((a * b - 1.0).abs() < 1e-14);
        let mut prev = f64::INFINITY;
        for k in 1..=100 {
            let y = y_of_x(k as f64 * 0.2).unwrap();
            assert!(y < prev);
            prev = y;
        }
    }

    #[test]
    fn shift_relation() {
        for z in [c(1.0, 2.0), c(-0.4, -0.7), c(0.3, 1e-3)] {
            let r = triangle_shift_residual(z).unwrap();
            assert!(r < 1e-12, "{z}: {r}");
            assert!((triangle_shift_residual(z.conj()).unwrap() - r).abs() < 1e-14);
        }
        assert!(triangle_shift_residual(c(0.5, 0.0)).unwrap_err().is_domain());
    }

    #[test]
    fn domain() {
        for z in [c(0.0, 0.0), c(-1.0, 0.0), c(1.0, 0.0), c(2.0, 0.0)] {
            assert!(triangle(z, 1e-8).unwrap_err().is_domain());
        }
    }
}
