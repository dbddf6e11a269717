//! Integral representations of `Log F`, of `Log(F(1 - z) / F(z))` and of
//! `log Theta_3`, all driven by the [`quad`](crate::quad) engine.
//!
//! Integrals against `d sigma(t)` are split into an interior part, which is
//! handed to the quadrature rule, and two end pieces of width
//! `LOG_ENDPOINT_CUT / 2`. The density decays only like `1 / (t ln^2 t)` at
//! the ends, so those pieces still carry a few percent of the mass; their
//! contribution is taken as `K(0) sigma([0, a]) + K(1) sigma([1 - a, 1])`
//! with the exact masses from the distribution function, and the kernel's
//! variation over the piece goes into the error estimate.

use std::f64::consts::{FRAC_1_PI, PI};
use std::sync::OnceLock;

use crate::cmath::{c, check_finite, log1p, real, EPS, ONE};
use crate::error::{domain, Error, Result};
use crate::measure::{cdf_pair, density_pair, nu_of_inverse};
use crate::modular::{in_region, Region};
use crate::quad::LOG_ENDPOINT_CUT;
pub use crate::quad::{integrate, Node, QuadratureSpec, ReprResult, Substitution};
use crate::theta::theta_eval;
use crate::triangle::in_lambda;
use crate::Complex64;

/// Width of each end piece not covered by the quadrature rule.
const EDGE: f64 = 0.5 * LOG_ENDPOINT_CUT;

/// Kernel for the log-ratio representation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RatioForm {
    /// `int Log((1 - tz) / (1 - t + tz)) d sigma(t)`
    LogKernel,
    /// `((1 - 2z)/pi) int arctan(F(1 - t)/F(t)) / ((1 - tz)(1 - t + tz)) dt`
    ArctanKernel,
}

fn finish(r: ReprResult, spec: &QuadratureSpec) -> Result<ReprResult> {
    if !(r.value.re.is_finite() && r.value.im.is_finite()) {
        return Err(Error::Convergence("integral representation produced a non-finite value".into()));
    }
    if r.est_err > spec.tol.max(spec.rel_tol * r.value.norm()) {
        return Err(Error::Convergence(format!(
            "error estimate {:.3e} exceeds tolerance {:.3e}",
            r.est_err, spec.tol
        )));
    }
    Ok(r)
}

fn scaled(spec: &QuadratureSpec, factor: f64) -> QuadratureSpec {
    let mut s = *spec;
    s.tol *= factor;
    s
}

/// `int_0^1 K(t) d sigma(t)`. `kernel(t, 1 - t)` gets both distances;
/// `k0`, `k1` are the limits at the ends and `slope` bounds `|K'|` on the
/// end pieces.
fn sigma_integral<K>(kernel: K, k0: Complex64, k1: Complex64, slope: f64, spec: &QuadratureSpec) -> Result<ReprResult>
where
    K: Fn(f64, f64) -> Complex64,
{
    // LogEndpoint leaves exactly [0, EDGE] and [1 - EDGE, 1] uncovered; the
    // other rules are run on [EDGE, 1 - EDGE] through an affine map.
    let (shift, scale) = if spec.substitution == Substitution::LogEndpoint { (0.0, 1.0) } else { (EDGE, 1.0 - 2.0 * EDGE) };
    let integrand = |n: Node| {
        let t = shift + scale * n.from_left;
        let u = shift + scale * n.from_right;
        match density_pair(t, u) {
            Ok(d) => kernel(t, u) * (d * scale),
            Err(_) => c(f64::NAN, f64::NAN),
        }
    };
    let tail_mass = cdf_pair(EDGE, 1.0 - EDGE)?;
    let tail_err = 2.0 * tail_mass * EDGE * slope;
    let r = integrate(integrand, 0.0, 1.0, &scaled(spec, 0.9))?;
    let value = r.value + (k0 + k1) * tail_mass;
    Ok(ReprResult { value, est_err: r.est_err + tail_err + 4.0 * EPS * value.norm(), nodes_used: r.nodes_used })
}

/// `int_0^1 g(u) du` for a bounded integrand; under LogEndpoint the end
/// pieces are added as `g(end) * EDGE`.
fn bounded_integral<G>(g: G, g0: Complex64, g1: Complex64, spec: &QuadratureSpec) -> Result<ReprResult>
where
    G: Fn(f64, f64) -> Complex64,
{
    let integrand = |n: Node| g(n.from_left, n.from_right);
    let r = integrate(integrand, 0.0, 1.0, &scaled(spec, 0.9))?;
    if spec.substitution == Substitution::LogEndpoint {
        let ends = (g0 + g1) * EDGE;
        Ok(ReprResult { value: r.value + ends, est_err: r.est_err + ends.norm(), nodes_used: r.nodes_used })
    } else {
        Ok(r)
    }
}

fn check_cut(z: Complex64) -> Result<()> {
    check_finite(z, "z")?;
    if z.im == 0.0 && z.re >= 1.0 {
        return domain(format!("representation needs z off [1, inf), got {}", z.re));
    }
    Ok(())
}

fn check_lambda(z: Complex64) -> Result<()> {
    check_finite(z, "z")?;
    if !in_lambda(z) {
        return domain(format!("representation needs z in (0, 1) or off the real axis, got {z}"));
    }
    Ok(())
}

/// `1 - t z`, accurate for `t` near 1 through `u = 1 - t`.
fn one_minus_tz(z: Complex64, t: f64, u: f64) -> Complex64 {
    if t < 0.5 {
        ONE - z * t
    } else {
        (ONE - z) + z * u
    }
}

/// `Log F(z) = int_0^1 Log(1 / (1 - t z)) d sigma(t)`.
pub fn log_f_integral(z: Complex64, spec: &QuadratureSpec) -> Result<ReprResult> {
    check_cut(z)?;
    let kernel = |t: f64, u: f64| {
        if t < 0.5 {
            -log1p(-z * t)
        } else {
            -one_minus_tz(z, t, u).ln()
        }
    };
    let k1 = -(ONE - z).ln();
    let slope = 2.0 * z.norm() * (1.0 + 1.0 / (ONE - z).norm());
    finish(sigma_integral(kernel, real(0.0), k1, slope, spec)?, spec)
}

/// `beta = -int_0^1 u nu(1/u) / (1 + u^2) du`, the constant that makes the
/// `nu`-representation vanish at `z = 0`.
pub fn beta() -> Result<(f64, f64)> {
    static BETA: OnceLock<std::result::Result<(f64, f64), Error>> = OnceLock::new();
    BETA.get_or_init(|| {
        let spec = QuadratureSpec::internal(1e-14, 0.0, 1 << 18, Substitution::DoubleExponential);
        let g = |u: f64, w: f64| match nu_of_inverse(u, w) {
            Ok(v) => real(-u * v / (1.0 + u * u)),
            Err(_) => c(f64::NAN, f64::NAN),
        };
        let r = integrate(|n: Node| g(n.from_left, n.from_right), 0.0, 1.0, &spec)?;
        Ok((r.value.re, r.est_err))
    })
    .clone()
}

/// `Log F(z) = beta + int_1^inf (1/(t - z) - t/(1 + t^2)) nu(t) dt`, taken
/// as `beta + int_0^1 (u + z) nu(1/u) / ((1 - z u)(1 + u^2)) du` after `t = 1/u`.
pub fn log_f_pick(z: Complex64, spec: &QuadratureSpec) -> Result<ReprResult> {
    check_cut(z)?;
    let (b, b_err) = beta()?;
    let g = |u: f64, w: f64| match nu_of_inverse(u, w) {
        Ok(v) => (z + u) * v / ((ONE - z * u) * (1.0 + u * u)),
        Err(_) => c(f64::NAN, f64::NAN),
    };
    // nu(1/u) -> 1/2 as u -> 0 and -> 0 as u -> 1
    let g0 = z * 0.5;
    let r = bounded_integral(g, g0, real(0.0), &scaled(spec, 0.9))?;
    let r = ReprResult { value: r.value + b, est_err: r.est_err + b_err, nodes_used: r.nodes_used };
    finish(r, spec)
}

/// `Log(F(1 - z) / F(z))` by either kernel. Adding `i pi / 2` gives `Log tau(z)`.
pub fn log_ratio(z: Complex64, form: RatioForm, spec: &QuadratureSpec) -> Result<ReprResult> {
    check_lambda(z)?;
    let w = ONE - 2.0 * z;
    let r = match form {
        RatioForm::LogKernel => {
            let kernel = |t: f64, u: f64| {
                let den = z * t + u;
                let dm1 = w * t / den;
                if dm1.norm() < 0.5 {
                    log1p(dm1)
                } else {
                    (one_minus_tz(z, t, u) / den).ln()
                }
            };
            let k1 = ((ONE - z) / z).ln();
            let slope = 4.0 * w.norm() / (z.norm().min(1.0) * (ONE - z).norm().min(1.0));
            sigma_integral(kernel, real(0.0), k1, slope, spec)?
        }
        RatioForm::ArctanKernel => {
            let g = |t: f64, u: f64| {
                let (ft, fu) = match crate::hypergeo::f_complementary(t, u) {
                    Ok((a, b)) => (a.value.re, b.value.re),
                    Err(_) => return c(f64::NAN, f64::NAN),
                };
                let a = fu.atan2(ft);
                real(a) / (one_minus_tz(z, t, u) * (z * t + u))
            };
            let g0 = real(PI / 2.0);
            let inner = bounded_integral(g, g0, real(0.0), &scaled(spec, 1.0 / (w.norm() * FRAC_1_PI).max(1.0)))?;
            let k = w * FRAC_1_PI;
            ReprResult { value: k * inner.value, est_err: k.norm() * inner.est_err, nodes_used: inner.nodes_used }
        }
    };
    finish(r, spec)
}

/// `log Theta_3(tau(z)) = (1/2) Log F(z)` through the measure representation.
pub fn log_theta3_quadrilateral(z: Complex64, spec: &QuadratureSpec) -> Result<ReprResult> {
    check_lambda(z)?;
    let r = log_f_integral(z, spec)?;
    Ok(ReprResult { value: r.value * 0.5, est_err: r.est_err * 0.5, nodes_used: r.nodes_used })
}

/// `log Theta_3(+-1 + i y(x)) = (1/2) int_0^1 ln(1 / (1 + t x)) d sigma(t)`, real and negative.
pub fn log_theta3_boundary(x: f64, spec: &QuadratureSpec) -> Result<ReprResult> {
    if !(x > 0.0) || !x.is_finite() {
        return domain(format!("boundary representation needs x > 0, got {x}"));
    }
    let kernel = |t: f64, _u: f64| real(-0.5 * (t * x).ln_1p());
    let k1 = real(-0.5 * x.ln_1p());
    let r = sigma_integral(kernel, real(0.0), k1, x, spec)?;
    finish(ReprResult { value: real(r.value.re), ..r }, spec)
}

/// `(lambda(i s), 1 - lambda(i s))` for `s > 0`, the complement computed
/// without cancellation. For `s < 1` both come from the point `i / s`.
fn lambda_imag_axis(s: f64) -> Result<(f64, f64)> {
    let at = |y: f64| -> Result<(f64, f64)> {
        let v = theta_eval(c(0.0, y))?.values;
        let r2 = v.t2.re / v.t3.re;
        let r4 = v.t4.re / v.t3.re;
        Ok((r2.powi(4), r4.powi(4)))
    };
    if s >= 1.0 {
        at(s)
    } else {
        let (l, m) = at(1.0 / s)?;
        Ok((m, l))
    }
}

/// `(lambda(z), 1 - lambda(z))`, the complement as `Theta_4^4 / Theta_3^4`.
fn lambda_pair(z: Complex64) -> Result<(Complex64, Complex64)> {
    let v = theta_eval(z)?.values;
    let r2 = v.t2 / v.t3;
    let r4 = v.t4 / v.t3;
    Ok((r2.powu(4), r4.powu(4)))
}

/// `log Theta_3(z) = (1/2pi) int_0^inf Log(1 / (1 - lambda(i s) lambda(z))) ds / (1 + s^2)`
/// on the periodized region.
pub fn log_theta3_lambda_kernel(z: Complex64, spec: &QuadratureSpec) -> Result<ReprResult> {
    check_finite(z, "z")?;
    if !in_region(z, Region::PeriodizedRegion) {
        return domain(format!("lambda-kernel representation needs z in the periodized region, got {z}"));
    }
    let (lz, mz) = lambda_pair(z)?;
    // -Log(1 - a lz) with a = lambda(i s); when both lambdas are close to 1
    // the argument is formed from the complements.
    let kern = |a: f64, ma: f64| -> Complex64 {
        let p = lz * a;
        if p.norm() < 0.5 {
            -log1p(-p)
        } else if mz.norm() < 0.5 {
            -(mz + ma - mz * ma).ln()
        } else {
            -(ONE - p).ln()
        }
    };
    // fold [1, inf) onto (0, 1] with s -> 1/s
    let g = |s: f64, _w: f64| -> Complex64 {
        match lambda_imag_axis(s) {
            Ok((a, ma)) => (kern(a, ma) + kern(ma, a)) / (1.0 + s * s),
            Err(_) => c(f64::NAN, f64::NAN),
        }
    };
    let log_inv = -mz.ln();
    let g0 = log_inv;
    let g1 = {
        let (a, ma) = lambda_imag_axis(1.0)?;
        (kern(a, ma) + kern(ma, a)) * 0.5
    };
    let k = 0.5 * FRAC_1_PI;
    let inner = bounded_integral(g, g0, g1, &scaled(spec, 1.0 / k))?;
    let r = ReprResult { value: inner.value * k, est_err: inner.est_err * k, nodes_used: inner.nodes_used };
    finish(r, spec)
}

/// `int_0^1 d sigma`, which equals 1/2.
pub fn sigma_total_mass(spec: &QuadratureSpec) -> Result<ReprResult> {
    finish(sigma_integral(|_, _| ONE, ONE, ONE, 0.0, spec)?, spec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cmath::I;
    use crate::hypergeo::eval_f;
    use crate::theta::{eval_log_theta, ThetaIndex};
    use crate::triangle::{eval_tau, y_of_x};

    fn spec() -> QuadratureSpec {
        QuadratureSpec::new(1e-10, 1 << 16, Substitution::LogEndpoint).unwrap()
    }

    #[test]
    fn total_mass_is_half() {
        for sub in [Substitution::LogEndpoint, Substitution::DoubleExponential] {
            let s = QuadratureSpec::new(1e-10, 1 << 18, sub).unwrap();
            let r = sigma_total_mass(&s).unwrap();
            assert!((r.value.re - 0.5).abs() < 1e-9, "{sub:?}: {}", r.value);
        }
        // plain Gauss-Kronrod cannot resolve the 1/(t ln^2 t) ends and says so
        let s = QuadratureSpec::new(1e-10, 1 << 14, Substitution::None).unwrap();
        assert!(matches!(sigma_total_mass(&s), Err(Error::Convergence(_))));
    }

    #[test]
    fn log_f_integral_examples() {
        assert_eq!(log_f_integral(real(0.0), &spec()).unwrap().value, real(0.0));
        let r = log_f_integral(real(0.5), &spec()).unwrap();
        assert!((r.value.re - 0.165_803_040_062_109_34).abs() < 1e-9);
        for z in [c(0.0, 2.0), c(-3.0, 0.5), c(0.9, 0.05), c(5.0, -1.0)] {
            let r = log_f_integral(z, &spec()).unwrap();
            let want = eval_f(z).unwrap().value.ln();
            assert!((r.value - want).norm() < 1e-9, "{z}: {} vs {want}", r.value);
            assert!(r.est_err <= 1e-10);
        }
        assert!(log_f_integral(real(1.0), &spec()).unwrap_err().is_domain());
    }

    #[test]
    fn beta_pins_zero() {
        let r = log_f_pick(real(0.0), &spec()).unwrap();
        assert!(r.value.norm() < 1e-12);
        let (b, _) = beta().unwrap();
        assert!(b < 0.0);
    }

    #[test]
    fn pick_form_matches() {
        for z in [real(0.5), real(-3.0), c(0.3, 1.5), c(-1.0, -0.2)] {
            let r = log_f_pick(z, &spec()).unwrap();
            let want = eval_f(z).unwrap().value.ln();
            assert!((r.value - want).norm() < 1e-9, "{z}: {} vs {want}", r.value);
        }
        assert!(log_f_pick(real(-3.0), &spec()).unwrap().value.re < 0.0);
    }

    #[test]
    fn log_ratio_forms() {
        for form in [RatioForm::LogKernel, RatioForm::ArctanKernel] {
            assert!(log_ratio(real(0.5), form, &spec()).unwrap().value.norm() < 1e-10);
            let r = log_ratio(real(0.2), form, &spec()).unwrap();
            let want = (eval_f(real(0.8)).unwrap().value / eval_f(real(0.2)).unwrap().value).ln();
            assert!((r.value - want).norm() < 1e-9, "{form:?}");
            let z = c(0.3, 0.3);
            let r = log_ratio(z, form, &spec()).unwrap();
            let want = (eval_tau(z).unwrap().value / I).ln();
            assert!((r.value - want).norm() < 1e-9, "{form:?}: {} vs {want}", r.value);
            assert!(r.value.im.abs() < PI / 2.0);
        }
        assert!(log_ratio(real(-1.0), RatioForm::LogKernel, &spec()).unwrap_err().is_domain());
    }

    #[test]
    fn quadrilateral_form() {
        let r = log_theta3_quadrilateral(real(0.5), &spec()).unwrap();
        assert!((r.value.re - 0.082_901_520_031_054_67).abs() < 1e-9);
        let z = c(0.25, 0.6);
        let r = log_theta3_quadrilateral(z, &spec()).unwrap();
        let want = eval_log_theta(ThetaIndex::Three, eval_tau(z).unwrap().value).unwrap().value;
        assert!((r.value - want).norm() < 1e-9);
        assert!(r.value.im.abs() < PI / 4.0);
    }

    #[test]
    fn boundary_form() {
        let r = log_theta3_boundary(1.0, &spec()).unwrap();
        let y = y_of_x(1.0).unwrap();
        let want = eval_log_theta(ThetaIndex::Three, c(1.0, y)).unwrap().value;
        assert!(r.value.re < 0.0);
        assert!((r.value - want).norm() < 1e-9, "{} vs {want}", r.value);
        let small = log_theta3_boundary(1e-6, &spec()).unwrap();
        assert!(small.value.re.abs() < 1e-6);
        assert!(log_theta3_boundary(0.0, &spec()).unwrap_err().is_domain());
    }

    #[test]
    fn lambda_kernel_form() {
        let s = QuadratureSpec::new(1e-11, 1 << 16, Substitution::LogEndpoint).unwrap();
        for z in [I, c(2.4, 0.9), c(0.5, 5.0), c(-0.9, 0.6), c(1.0, 0.3)] {
            let r = log_theta3_lambda_kernel(z, &s).unwrap();
            let want = eval_log_theta(ThetaIndex::Three, z).unwrap().value;
            assert!((r.value - want).norm() < 1e-9, "{z}: {} vs {want}", r.value);
        }
        assert!(log_theta3_lambda_kernel(c(0.5, 0.1), &s).unwrap_err().is_domain());
    }

    #[test]
    fn halving_tolerance_does_not_raise_error_estimate() {
        let z = c(0.3, 0.7);
        let mut s = QuadratureSpec::new(1e-4, 1 << 16, Substitution::LogEndpoint).unwrap();
        let mut prev = f64::INFINITY;
        for _ in 0..8 {
            let r = log_f_integral(z, &s).unwrap();
            assert!(r.est_err <= prev);
            prev = r.est_err;
            s = s.halved();
        }
    }
}
