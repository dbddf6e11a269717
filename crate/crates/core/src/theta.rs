//! Jacobi theta null-values `Theta_2`, `Theta_3`, `Theta_4` on the upper
//! half-plane, their Lambert-series logarithms and derivatives, and the
//! modular function `lambda = Theta_2^4 / Theta_3^4`.
//!
//! With `q = e^{i pi z}`:
//!
//! * `Theta_3(z) = 1 + 2 sum_{n>=1} q^{n^2}`
//! * `Theta_4(z) = 1 + 2 sum_{n>=1} (-1)^n q^{n^2}`
//! * `Theta_2(z) = 2 sum_{n>=0} e^{i pi z (n + 1/2)^2}`
//!
//! Every exponential `e^{i pi k z}` is formed with the phase `k Re z` reduced
//! modulo 2 exactly, so large `n^2 Re z` does not lose digits.

use std::f64::consts::{FRAC_PI_4, LN_2, PI};

use crate::cmath::{c, check_tol, EPS, I, ONE};
use crate::error::{domain, Error, Result};
use crate::hypergeo::eval_f;
use crate::triangle::{eval_tau, in_quadrilateral};
use crate::{Complex64, EvalResult, Method};

/// Below this imaginary part the direct series is refused.
pub const MIN_IM_SERIES: f64 = 1e-8;
/// Largest number of Lambert terms before giving up.
const MAX_LAMBERT_TERMS: usize = 4_000_000;
/// Relative size at which theta series are truncated.
const THETA_CUTOFF: f64 = 1e-20;
/// Absolute size at which Lambert series are truncated.
const LAMBERT_CUTOFF: f64 = 1e-18;

/// The nome `q = e^{i pi z}`, `|q| < 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Nome {
    q: Complex64,
}

impl Nome {
    pub fn new(q: Complex64) -> Result<Self> {
        if !(q.norm() < 1.0) {
            return Err(Error::InvalidArgument(format!("nome must satisfy |q| < 1, got |q| = {}", q.norm())));
        }
        Ok(Nome { q })
    }

    pub fn from_z(z: Complex64) -> Result<Self> {
        check_upper(z)?;
        Ok(Nome { q: expi_pi(1.0, z) })
    }

    pub fn q(&self) -> Complex64 {
        self.q
    }
}

/// Selects one of the three theta null-values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ThetaIndex {
    Two,
    Three,
    Four,
}

impl ThetaIndex {
    pub fn from_k(k: u8) -> Result<Self> {
        match k {
            2 => Ok(ThetaIndex::Two),
            3 => Ok(ThetaIndex::Three),
            4 => Ok(ThetaIndex::Four),
            _ => Err(Error::InvalidArgument(format!("theta index must be 2, 3 or 4, got {k}"))),
        }
    }

    pub fn k(self) -> u8 {
        match self {
            ThetaIndex::Two => 2,
            ThetaIndex::Three => 3,
            ThetaIndex::Four => 4,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThetaTriple {
    pub t2: Complex64,
    pub t3: Complex64,
    pub t4: Complex64,
}

impl ThetaTriple {
    pub fn get(&self, k: ThetaIndex) -> Complex64 {
        match k {
            ThetaIndex::Two => self.t2,
            ThetaIndex::Three => self.t3,
            ThetaIndex::Four => self.t4,
        }
    }
}

/// Values, termwise derivatives and their error bounds at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThetaEval {
    pub values: ThetaTriple,
    pub derivs: ThetaTriple,
    /// absolute error bounds of `values`, in the order 2, 3, 4
    pub errs: [f64; 3],
    /// absolute error bounds of `derivs`
    pub deriv_errs: [f64; 3],
    pub terms: usize,
}

pub(crate) fn check_upper(z: Complex64) -> Result<()> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::InvalidArgument(format!("z must be finite, got {z}")));
    }
    if !(z.im > 0.0) {
        return domain(format!("theta functions need Im z > 0, got {z}"));
    }
    Ok(())
}

/// `e^{i pi k z}` for integer-valued `k`, with `k Re z` reduced mod 2 exactly.
pub(crate) fn expi_pi(k: f64, z: Complex64) -> Complex64 {
    let hi = k * z.re;
    let lo = k.mul_add(z.re, -hi);
    let turns = (hi % 2.0) + lo;
    let (s, co) = (PI * turns).sin_cos();
    let m = (-PI * k * z.im).exp();
    c(m * co, m * s)
}

/// Split `z = z' + 2m` with `|Re z'| <= 1`.
pub(crate) fn reduce_mod2(z: Complex64) -> (Complex64, i64) {
    let m = (z.re / 2.0).round();
    (c(z.re - 2.0 * m, z.im), m as i64)
}

/// `e^{i pi m / 2}` exactly.
fn quarter_turns(m: i64) -> Complex64 {
    match m.rem_euclid(4) {
        0 => ONE,
        1 => I,
        2 => -ONE,
        _ => -I,
    }
}

/// All three theta values and derivatives by direct summation.
pub fn theta_eval(z: Complex64) -> Result<ThetaEval> {
    check_upper(z)?;
    if z.im < MIN_IM_SERIES {
        return Err(Error::Convergence(format!(
            "Im z = {:e} is below {MIN_IM_SERIES:e}; reduce z into the fundamental domain first",
            z.im
        )));
    }
    let (zr, m) = reduce_mod2(z);
    let y = zr.im;
    let rho = (-PI * y).exp();

    let mut s3 = Complex64::new(0.0, 0.0);
    let mut s4 = Complex64::new(0.0, 0.0);
    let mut d3 = Complex64::new(0.0, 0.0);
    let mut d4 = Complex64::new(0.0, 0.0);
    let (mut a3, mut ad3) = (0.0f64, 0.0f64);
    // n = 1, 2, ... for Theta_3/4
    let mut n = 1usize;
    let n_tail = loop {
        let nf = n as f64;
        let k = nf * nf;
        let t = expi_pi(k, zr);
        let tn = t.norm();
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        s3 += t;
        s4 += t * sign;
        d3 += t * k;
        d4 += t * (k * sign);
        a3 += tn;
        ad3 += tn * k;
        let next = nf + 1.0;
        let r_next = rho.powf(next * next);
        let ratio = (next / nf).powi(2) * rho.powf(2.0 * next + 1.0);
        if r_next <= THETA_CUTOFF && r_next * next * next <= THETA_CUTOFF * ad3.max(f64::MIN_POSITIVE) && ratio < 0.5 {
            break next;
        }
        n += 1;
    };
    let nt = n_tail;
    let tail3 = 2.0 * rho.powf(nt * nt) / (1.0 - rho.powf(2.0 * nt + 1.0));
    let rd = ((nt + 1.0) / nt).powi(2) * rho.powf(2.0 * nt + 1.0);
    let dtail3 = 2.0 * PI * nt * nt * rho.powf(nt * nt) / (1.0 - rd);

    // Theta_2: exponents (n + 1/2)^2 = n^2 + n + 1/4, n = 0, 1, ...
    let mut s2 = Complex64::new(0.0, 0.0);
    let mut d2 = Complex64::new(0.0, 0.0);
    let (mut a2, mut ad2) = (0.0f64, 0.0f64);
    let mut j = 0usize;
    let lead2 = rho.powf(0.25);
    let j_tail = loop {
        let jf = j as f64;
        let k = jf * jf + jf + 0.25;
        let t = expi_pi(k, zr);
        s2 += t;
        d2 += t * k;
        a2 += t.norm();
        ad2 += t.norm() * k;
        let next = jf + 1.0;
        let kn = next * next + next + 0.25;
        let r_next = rho.powf(kn);
        let ratio = ((next + 1.5) / (next + 0.5)).powi(2) * rho.powf(2.0 * next + 2.0);
        if r_next <= THETA_CUTOFF * lead2 && r_next * kn <= THETA_CUTOFF * ad2.max(f64::MIN_POSITIVE) && ratio < 0.5 {
            break next;
        }
        j += 1;
    };
    let jt = j_tail;
    let kt = jt * jt + jt + 0.25;
    let tail2 = 2.0 * rho.powf(kt) / (1.0 - rho.powf(2.0 * jt + 2.0));
    let rd2 = ((jt + 1.5) / (jt + 0.5)).powi(2) * rho.powf(2.0 * jt + 2.0);
    let dtail2 = 2.0 * PI * kt * rho.powf(kt) / (1.0 - rd2);

    let ipi2 = I * (2.0 * PI);
    let phase2 = quarter_turns(m);
    let values = ThetaTriple { t2: phase2 * s2 * 2.0, t3: ONE + s3 * 2.0, t4: ONE + s4 * 2.0 };
    let derivs = ThetaTriple { t2: phase2 * ipi2 * d2, t3: ipi2 * d3, t4: ipi2 * d4 };
    let round = |a: f64| 10.0 * EPS * a;
    let errs = [tail2 + round(2.0 * a2), tail3 + round(1.0 + 2.0 * a3), tail3 + round(1.0 + 2.0 * a3)];
    let deriv_errs = [
        dtail2 + round(2.0 * PI * ad2),
        dtail3 + round(2.0 * PI * ad3),
        dtail3 + round(2.0 * PI * ad3),
    ];
    Ok(ThetaEval { values, derivs, errs, deriv_errs, terms: n + j + 2 })
}

/// `(Theta_2, Theta_3, Theta_4)(z)`; fails if any error bound exceeds `tol`.
pub fn theta_all(z: Complex64, tol: f64) -> Result<ThetaTriple> {
    check_tol(tol)?;
    let e = theta_eval(z)?;
    let worst = e.errs.iter().cloned().fold(0.0, f64::max);
    if worst > tol {
        return Err(Error::Convergence(format!("theta error bound {worst:.3e} exceeds tolerance {tol:.3e}")));
    }
    Ok(e.values)
}

fn slot(k: ThetaIndex) -> usize {
    (k.k() - 2) as usize
}

/// A single theta null-value as an [`EvalResult`].
pub fn theta(k: ThetaIndex, z: Complex64, tol: f64) -> Result<EvalResult> {
    check_tol(tol)?;
    let e = theta_eval(z)?;
    let err = e.errs[slot(k)];
    if err > tol {
        return Err(Error::Convergence(format!("theta error bound {err:.3e} exceeds tolerance {tol:.3e}")));
    }
    Ok(EvalResult::new(e.values.get(k), err, Method::ThetaSeries))
}

/// Termwise derivatives `Theta_k'(z)`.
pub fn theta_derivs(z: Complex64) -> Result<ThetaTriple> {
    Ok(theta_eval(z)?.derivs)
}

/// Residuals of the six transformation rules under `z -> -1/z` and `z -> z + 1`:
/// `Theta_2(-1/z) = (z/i)^{1/2} Theta_4(z)`, `Theta_3(-1/z) = (z/i)^{1/2} Theta_3(z)`,
/// `Theta_4(-1/z) = (z/i)^{1/2} Theta_2(z)`, `Theta_2(z+1) = e^{i pi/4} Theta_2(z)`,
/// `Theta_3(z+1) = Theta_4(z)`, `Theta_4(z+1) = Theta_3(z)`.
pub fn theta_transform_residuals(z: Complex64) -> Result<[f64; 6]> {
    let t = theta_eval(z)?.values;
    let s = theta_eval(-z.inv())?.values;
    let p = theta_eval(z + 1.0)?.values;
    let root = (z / I).sqrt();
    let e8 = Complex64::from_polar(1.0, FRAC_PI_4);
    Ok([
        (s.t2 - root * t.t4).norm(),
        (s.t3 - root * t.t3).norm(),
        (s.t4 - root * t.t2).norm(),
        (p.t2 - e8 * t.t2).norm(),
        (p.t3 - t.t4).norm(),
        (p.t4 - t.t3).norm(),
    ])
}

/// Residuals of the derived period and inversion tables: the shifts by 2,
/// the maps `z -> z / (1 - 2z)` and `z -> -1/(z -+ 1)`, for the values,
/// squares and fourth powers.
pub fn addendum_residuals(z: Complex64) -> Result<Vec<(&'static str, f64)>> {
    let t = theta_eval(z)?.values;
    let p2 = theta_eval(z + 2.0)?.values;
    let w = z / (ONE - 2.0 * z);
    let tw = theta_eval(w)?.values;
    let zm = z - ONE;
    let zp = z + ONE;
    let tm = theta_eval(-zm.inv())?.values;
    let tp = theta_eval(-zp.inv())?.values;
    let s = (2.0 * z - ONE).sqrt();
    let d = 2.0 * z - ONE;
    let sm = zm.sqrt();
    let sp = zp.sqrt();
    let i_half = Complex64::from_polar(1.0, FRAC_PI_4);
    let sq = |a: Complex64| a * a;
    let p4 = |a: Complex64| sq(sq(a));
    let mut out = vec![
        ("shift2_theta2", (p2.t2 - I * t.t2).norm()),
        ("shift2_theta2_sq", (sq(p2.t2) + sq(t.t2)).norm()),
        ("shift2_theta2_4", (p4(p2.t2) - p4(t.t2)).norm()),
        ("shift2_theta3", (p2.t3 - t.t3).norm()),
        ("shift2_theta4", (p2.t4 - t.t4).norm()),
        ("mobius2_theta2", (t.t2 - I * tw.t2 / s).norm()),
        ("mobius2_theta3", (t.t3 - I * tw.t3 / s).norm()),
        ("mobius2_theta4", (t.t4 - tw.t4 / s).norm()),
        ("mobius2_theta2_sq", (sq(t.t2) + sq(tw.t2) / d).norm()),
        ("mobius2_theta3_sq", (sq(t.t3) + sq(tw.t3) / d).norm()),
        ("mobius2_theta4_sq", (sq(t.t4) - sq(tw.t4) / d).norm()),
    ];
    for k in [ThetaIndex::Two, ThetaIndex::Three, ThetaIndex::Four] {
        let name = match k {
            ThetaIndex::Two => "mobius2_theta2_4",
            ThetaIndex::Three => "mobius2_theta3_4",
            ThetaIndex::Four => "mobius2_theta4_4",
        };
        out.push((name, (p4(t.get(k)) - p4(tw.get(k)) / (d * d)).norm()));
    }
    out.extend([
        ("inv_minus_theta2", (t.t2 - I * tm.t4 / sm).norm()),
        ("inv_plus_theta2", (t.t2 - tp.t4 / sp).norm()),
        ("inv_minus_theta3", (t.t3 - i_half * tm.t2 / sm).norm()),
        ("inv_plus_theta3", (t.t3 - i_half * tp.t2 / sp).norm()),
        ("inv_minus_theta4", (t.t4 - i_half * tm.t3 / sm).norm()),
        ("inv_plus_theta4", (t.t4 - i_half * tp.t3 / sp).norm()),
        ("inv_minus_theta2_sq", (sq(t.t2) + sq(tm.t4) / zm).norm()),
        ("inv_plus_theta2_sq", (sq(t.t2) - sq(tp.t4) / zp).norm()),
        ("inv_minus_theta3_sq", (sq(t.t3) - I * sq(tm.t2) / zm).norm()),
        ("inv_plus_theta3_sq", (sq(t.t3) - I * sq(tp.t2) / zp).norm()),
        ("inv_minus_theta4_sq", (sq(t.t4) - I * sq(tm.t3) / zm).norm()),
        ("inv_plus_theta4_sq", (sq(t.t4) - I * sq(tp.t3) / zp).norm()),
    ]);
    for (sigma_name, ts, zs) in [("minus", tm, zm), ("plus", tp, zp)] {
        let z2 = zs * zs;
        let r3 = (p4(t.t3) + p4(ts.t2) / z2).norm();
        let r4 = (p4(t.t4) + p4(ts.t3) / z2).norm();
        let r2 = (p4(t.t2) - p4(ts.t4) / z2).norm();
        let names: [&'static str; 3] = if sigma_name == "minus" {
            ["inv_minus_theta3_4", "inv_minus_theta4_4", "inv_minus_theta2_4"]
        } else {
            ["inv_plus_theta3_4", "inv_plus_theta4_4", "inv_plus_theta2_4"]
        };
        out.extend([(names[0], r3), (names[1], r4), (names[2], r2)]);
    }
    Ok(out)
}

struct Lambert {
    value: Complex64,
    err: f64,
}

/// `sum_{j>=0} coef(k_j) v_j / (1 + sgn v_j)`, `v_j = u^{k_j}`, `k_j = first + step j`.
fn lambert(z: Complex64, first: f64, step: f64, weight: impl Fn(f64) -> f64, sgn: f64) -> Result<Lambert> {
    let rho = (-PI * z.im).exp();
    let mut sum = Complex64::new(0.0, 0.0);
    let mut abs_sum = 0.0;
    let mut k = first;
    for _ in 0..MAX_LAMBERT_TERMS {
        let v = expi_pi(k, z);
        let term = v / (ONE + v * sgn) * weight(k);
        sum += term;
        abs_sum += term.norm();
        // bound on everything after index k
        let kn = k + step;
        let rk = rho.powf(kn);
        let tail = weight(kn).abs() * rk / ((1.0 - rk) * (1.0 - rho.powf(step)));
        if tail <= LAMBERT_CUTOFF {
            return Ok(Lambert { value: sum, err: tail + 10.0 * EPS * abs_sum });
        }
        k = kn;
    }
    Err(Error::Convergence(format!(
        "Lambert series at Im z = {:e} needs more than {MAX_LAMBERT_TERMS} terms",
        z.im
    )))
}

pub(crate) fn eval_log_theta(k: ThetaIndex, z: Complex64) -> Result<EvalResult> {
    check_upper(z)?;
    let (zr, m) = reduce_mod2(z);
    let r = match k {
        ThetaIndex::Three => lambert(zr, 1.0, 2.0, |k| 2.0 / k, 1.0)?,
        ThetaIndex::Four => {
            let l = lambert(zr, 1.0, 2.0, |k| -2.0 / k, -1.0)?;
            Lambert { value: l.value, err: l.err }
        }
        ThetaIndex::Two => {
            // log Theta_2(z) = i pi z / 4 + ln 2 + sum (1/n) u^{2n} / (1 + u^{2n})
            let l = lambert(zr, 2.0, 2.0, |k| 2.0 / k, 1.0)?;
            let lead = I * (PI * zr / 4.0) + LN_2 + I * (PI * m as f64 / 2.0);
            Lambert { value: lead + l.value, err: l.err + 4.0 * EPS * lead.norm() }
        }
    };
    Ok(EvalResult::new(r.value, r.err, Method::LambertSeries))
}

/// `log Theta_k(z)` by the Lambert series, the branch that tends to 0
/// (`k = 3, 4`) as `Im z -> inf`, with `log Theta_2(z) = i pi z / 4 + ln 2 + log theta_2(e^{i pi z})`.
pub fn log_theta(k: ThetaIndex, z: Complex64, tol: f64) -> Result<EvalResult> {
    check_tol(tol)?;
    let r = eval_log_theta(k, z)?;
    if r.abs_err > tol {
        return Err(Error::Convergence(format!(
            "Lambert series error {:.3e} exceeds tolerance {tol:.3e}",
            r.abs_err
        )));
    }
    Ok(r)
}

/// Residuals of the logarithmic relations: period 2 (shift by `2m`),
/// inversion `log Theta_k(-1/z) = log Theta_{6-k}(z) + Log(z/i)/2` and the
/// shift `z -> z - 1`.
pub fn log_theta_relations_residuals(z: Complex64, m: i64) -> Result<Vec<(&'static str, f64)>> {
    use ThetaIndex::*;
    let lt = |k, w| eval_log_theta(k, w).map(|r| r.value);
    let shift = z + 2.0 * m as f64;
    let inv = -z.inv();
    let half_log = (z / I).ln() * 0.5;
    let zm1 = z - ONE;
    let (l2, l3, l4) = (lt(Two, z)?, lt(Three, z)?, lt(Four, z)?);
    Ok(vec![
        ("period_log_theta2", (lt(Two, shift)? - I * (PI * m as f64 / 2.0) - l2).norm()),
        ("period_log_theta3", (lt(Three, shift)? - l3).norm()),
        ("period_log_theta4", (lt(Four, shift)? - l4).norm()),
        ("inversion_log_theta2", (lt(Two, inv)? - l4 - half_log).norm()),
        ("inversion_log_theta3", (lt(Three, inv)? - l3 - half_log).norm()),
        ("inversion_log_theta4", (lt(Four, inv)? - l2 - half_log).norm()),
        ("shift_log_theta2", (lt(Two, zm1)? - l2 + I * FRAC_PI_4).norm()),
        ("shift_log_theta3", (lt(Three, zm1)? - l4).norm()),
        ("shift_log_theta4", (lt(Four, zm1)? - l3).norm()),
    ])
}

pub(crate) fn eval_lambda(z: Complex64) -> Result<EvalResult> {
    let e = theta_eval(z)?;
    let r = e.values.t2 / e.values.t3;
    let r2 = r * r;
    let v = r2 * r2;
    let rel = 4.0 * (e.errs[0] / e.values.t2.norm() + e.errs[1] / e.values.t3.norm()) + 8.0 * EPS;
    Ok(EvalResult::new(v, v.norm() * rel, Method::ThetaSeries))
}

/// `lambda(z) = Theta_2(z)^4 / Theta_3(z)^4`.
pub fn lambda(z: Complex64, tol: f64) -> Result<EvalResult> {
    check_tol(tol)?;
    let r = eval_lambda(z)?;
    if r.abs_err > tol {
        return Err(Error::Convergence(format!("lambda error {:.3e} exceeds tolerance {tol:.3e}", r.abs_err)));
    }
    Ok(r)
}

/// `lambda'(z) = 4 lambda (Theta_2'/Theta_2 - Theta_3'/Theta_3)` from termwise derivatives.
pub fn lambda_prime(z: Complex64) -> Result<Complex64> {
    let e = theta_eval(z)?;
    Ok(lambda_prime_from(&e))
}

fn lambda_prime_from(e: &ThetaEval) -> Complex64 {
    let (v, d) = (e.values, e.derivs);
    let r = v.t2 / v.t3;
    let lam = r * r * r * r;
    lam * 4.0 * (d.t2 / v.t2 - d.t3 / v.t3)
}

/// `[|lambda' - i pi lambda (1 - lambda) Theta_3^4|,
///   |(pi/4i) Theta_2^4 - (Theta_4'/Theta_4 - Theta_3'/Theta_3)|,
///   |(pi/4i) Theta_4^4 - (Theta_3'/Theta_3 - Theta_2'/Theta_2)|]`,
/// each divided by the larger side (at least 1).
pub fn lambda_prime_residuals(z: Complex64) -> Result<[f64; 3]> {
    let e = theta_eval(z)?;
    let (v, d) = (e.values, e.derivs);
    let r = v.t2 / v.t3;
    let lam = r * r * r * r;
    let lp = lambda_prime_from(&e);
    let t3_4 = v.t3 * v.t3 * v.t3 * v.t3;
    let k = PI / (4.0 * I);
    let (g2, g3, g4) = (d.t2 / v.t2, d.t3 / v.t3, d.t4 / v.t4);
    let rel = |a: Complex64, b: Complex64| (a - b).norm() / a.norm().max(b.norm()).max(1.0);
    Ok([
        rel(lp, I * PI * lam * (ONE - lam) * t3_4),
        rel(k * v.t2.powu(4), g4 - g3),
        rel(k * v.t4.powu(4), g3 - g2),
    ])
}

/// `|Theta_2^4 + Theta_4^4 - Theta_3^4|` over the largest of the three terms.
pub fn jacobi_residual(z: Complex64) -> Result<f64> {
    let v = theta_eval(z)?.values;
    let (a, b, t3) = (v.t2.powu(4), v.t4.powu(4), v.t3.powu(4));
    Ok((a + b - t3).norm() / a.norm().max(b.norm()).max(t3.norm()))
}

/// `|Theta_3(tau(z))^2 - F(z)|` on `(0, 1) u (C \ R)`.
pub fn wirtinger_residual(z: Complex64) -> Result<f64> {
    let t = eval_tau(z)?.value;
    let th = theta_eval(t)?.values.t3;
    let f = eval_f(z)?.value;
    Ok((th * th - f).norm())
}

/// `|lambda(tau(z)) - z|`.
pub fn lambda_tau_residual(z: Complex64) -> Result<f64> {
    let t = eval_tau(z)?.value;
    Ok((eval_lambda(t)?.value - z).norm())
}

/// The two sign facts on the fundamental quadrilateral off the imaginary axis:
/// `Re z * Im Theta_3(z)^4 > 0` and `Re z * Im[Theta_3'(z) / (lambda'(z) Theta_3(z))] > 0`.
pub fn sign_inequalities_check(z: Complex64) -> Result<[bool; 2]> {
    if !in_quadrilateral(z) || z.re == 0.0 {
        return domain(format!("sign inequalities need z in the quadrilateral with Re z != 0, got {z}"));
    }
    let e = theta_eval(z)?;
    let t3 = e.values.t3;
    let lp = lambda_prime_from(&e);
    let a = z.re * t3.powu(4).im > 0.0;
    let b = z.re * (e.derivs.t3 / (lp * t3)).im > 0.0;
    Ok([a, b])
}

#[cfg(test)]
mod tests {
    use super::*;

    const THETA3_I: f64 = 1.086_434_811_213_308;

    fn th(z: Complex64) -> ThetaTriple {
        theta_all(z, 1e-12).unwrap()
    }

    #[test]
    fn theta3_at_i() {
        let t = th(I);
        assert!((t.t3.re - THETA3_I).abs() < 1e-15);
        assert!(t.t3.im.abs() < 1e-16);
    }

    #[test]
    fn jacobi_at_i_and_period() {
        assert!(jacobi_residual(I).unwrap() < 1e-14);
        let a = th(c(2.0, 1.0));
        let b = th(I);
        assert!((a.t3 - b.t3).norm() < 1e-15);
        // Theta_2 picks up e^{i pi/2} per shift by 2
        assert!((a.t2 - I * b.t2).norm() < 1e-15);
    }

    #[test]
    fn phase_reduction_is_exact_for_large_real_parts() {
        // Re parts chosen so that z + 2e6 is exact
        let z = c(0.25, 0.7);
        let a = th(z);
        let b = th(z + 2e6);
        assert!((a.t3 - b.t3).norm() < 1e-12);
    }

    #[test]
    fn transform_table() {
        let r = theta_transform_residuals(I).unwrap();
        assert!(r[1] < 1e-15);
        for z in [c(0.5, 2.0), c(-1.0, 3.0), c(0.2, 0.3)] {
            let r = theta_transform_residuals(z).unwrap();
            for (j, x) in r.iter().enumerate() {
                assert!(*x < 1e-12, "{z} relation {j}: {x}");
            }
        }
    }

    #[test]
    fn addendum_tables() {
        for z in [c(0.3, 0.8), c(-0.7, 0.4), c(1.6, 1.1), c(0.1, 3.0)] {
            for (name, r) in addendum_residuals(z).unwrap() {
                assert!(r < 1e-10, "{z} {name}: {r}");
            }
        }
    }

    #[test]
    fn log_theta_values() {
        let r = log_theta(ThetaIndex::Three, I, 1e-12).unwrap();
        assert!((r.value.re - THETA3_I.ln()).abs() < 1e-15);
        assert_eq!(r.method, Method::LambertSeries);
        let r = log_theta(ThetaIndex::Three, c(0.0, 5.0), 1e-12).unwrap();
        let u = (-5.0 * PI).exp();
        assert!((r.value.re - 2.0 * u / (1.0 + u)).abs() < 1e-20);
        for k in [ThetaIndex::Two, ThetaIndex::Three, ThetaIndex::Four] {
            for z in [c(0.3, 0.8), c(-1.7, 0.2), c(0.0, 2.0)] {
                let l = log_theta(k, z, 1e-12).unwrap().value;
                let t = theta(k, z, 1e-12).unwrap().value;
                assert!((l.exp() - t).norm() < 1e-13, "{k:?} {z}");
                if z.re == 0.0 {
                    assert!(l.im.abs() < 1e-16);
                }
            }
        }
    }

    #[test]
    fn log_relations() {
        for (z, m) in [(I, 1), (c(0.4, 1.2), 3), (c(-0.7, 0.5), -2)] {
            for (name, r) in log_theta_relations_residuals(z, m).unwrap() {
                assert!(r < 1e-12, "{z} {name}: {r}");
            }
        }
    }

    #[test]
    fn lambda_values() {
        assert!((lambda(I, 1e-12).unwrap().value - 0.5).norm() < 1e-15);
        assert!((lambda(c(2.0, 1.0), 1e-12).unwrap().value - 0.5).norm() < 1e-15);
        for t in [0.1, 1.0, 3.0] {
            let l = lambda(c(0.0, t), 1e-12).unwrap().value;
            assert!(l.re > 0.0 && l.re < 1.0 && l.im.abs() < 1e-16);
        }
        assert!(lambda_tau_residual(c(0.3, 0.4)).unwrap() < 1e-13);
    }

    #[test]
    fn lambda_prime_identities() {
        let lp = lambda_prime(I).unwrap();
        let want = I * PI * 0.25 * THETA3_I.powi(4);
        assert!((lp - want).norm() < 1e-14);
        for z in [c(0.2, 0.9), c(0.0, 1.1), c(-0.6, 0.3)] {
            for r in lambda_prime_residuals(z).unwrap() {
                assert!(r < 1e-11, "{z}: {r}");
            }
        }
        let z = c(0.2, 0.9);
        let h = 1e-5;
        let fd = (lambda(z + h, 1e-12).unwrap().value - lambda(z - h, 1e-12).unwrap().value) / (2.0 * h);
        assert!((fd - lambda_prime(z).unwrap()).norm() < 1e-8);
    }

    #[test]
    fn wirtinger() {
        let t = th(I).t3;
        assert!((t * t).re > 1.18030 && (t * t).re < 1.18036);
        assert!(wirtinger_residual(c(0.5, 0.0)).unwrap() < 1e-14);
        assert!(wirtinger_residual(c(0.1, 0.0)).unwrap() < 1e-13);
        assert!(wirtinger_residual(c(-1.0, 2.0)).unwrap() < 1e-13);
    }

    #[test]
    fn sign_inequalities() {
        for z in [c(0.5, 2.0), c(-0.5, 2.0), c(0.9, 5.0)] {
            assert_eq!(sign_inequalities_check(z).unwrap(), [true, true], "{z}");
        }
        assert!(sign_inequalities_check(c(0.0, 2.0)).unwrap_err().is_domain());
        assert!(sign_inequalities_check(c(0.5, 0.1)).unwrap_err().is_domain());
    }

    #[test]
    fn domain_and_convergence() {
        assert!(theta_all(c(0.0, 0.0), 1e-8).unwrap_err().is_domain());
        assert!(theta_all(c(0.0, -1.0), 1e-8).unwrap_err().is_domain());
        assert!(matches!(theta_all(c(0.0, 1e-9), 1e-8), Err(Error::Convergence(_))));
        assert!(theta_all(c(0.3, 2e-8), 1e-3).is_ok());
        assert!(ThetaIndex::from_k(5).is_err());
        assert!(Nome::new(c(1.0, 0.0)).is_err());
        assert!((Nome::from_z(I).unwrap().q() - (-PI).exp()).norm() < 1e-17);
    }
}
