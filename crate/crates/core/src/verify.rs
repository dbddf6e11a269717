//! Identity sweeps over deterministic random points. Each suite returns one
//! [`SweepReport`] per identity it checks.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::cmath::c;
use crate::error::{Error, Result};
use crate::hypergeo::{eval_f, hyper_bounds_check, kummer_residual, wronskian_residual};
use crate::modular::{log_theta3_global, reduce_to_fundamental};
use crate::quad::QuadratureSpec;
use crate::reprs::{
    log_f_integral, log_f_pick, log_ratio, log_theta3_boundary, log_theta3_lambda_kernel, log_theta3_quadrilateral,
    RatioForm,
};
use crate::sample::Lcg;
use crate::theta::{
    addendum_residuals, eval_lambda, eval_log_theta, jacobi_residual, lambda_prime, lambda_prime_residuals,
    lambda_tau_residual, log_theta_relations_residuals, theta_eval, theta_transform_residuals, wirtinger_residual,
    ThetaIndex,
};
use crate::triangle::{eval_tau, triangle_shift_residual, y_of_x};
use crate::Complex64;

/// Outcome of one identity over a sample.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepReport {
    pub name: String,
    pub points: usize,
    pub max_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
    /// point where the largest residual (or the first failure) occurred
    pub worst: Option<Complex64>,
}

impl fmt::Display for SweepReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:<28} {:>6} pts  max {:>10.3e}  tol {:>8.1e}  {}",
            self.name,
            self.points,
            self.max_residual,
            self.tolerance,
            if self.pass { "PASS" } else { "FAIL" }
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    Jacobi,
    Wirtinger,
    Wronskian,
    Transforms,
    LambdaPrime,
    IntegralReprs,
    Reduction,
    Bounds,
    All,
}

impl Suite {
    pub const EACH: [Suite; 8] = [
        Suite::Jacobi,
        Suite::Wirtinger,
        Suite::Wronskian,
        Suite::Transforms,
        Suite::LambdaPrime,
        Suite::IntegralReprs,
        Suite::Reduction,
        Suite::Bounds,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Jacobi => "jacobi",
            Suite::Wirtinger => "wirtinger",
            Suite::Wronskian => "wronskian",
            Suite::Transforms => "transforms",
            Suite::LambdaPrime => "lambda_prime",
            Suite::IntegralReprs => "integral_reprs",
            Suite::Reduction => "reduction",
            Suite::Bounds => "bounds",
            Suite::All => "all",
        }
    }

    /// Tolerance used when the caller does not give one.
    pub fn default_tol(self) -> f64 {
        match self {
            Suite::Jacobi => 1e-11,
            Suite::IntegralReprs => 1e-7,
            _ => 1e-9,
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::EACH
            .iter()
            .chain(std::iter::once(&Suite::All))
            .find(|x| x.name() == s)
            .copied()
            .ok_or_else(|| Error::InvalidArgument(format!("unknown suite '{s}'")))
    }
}

/// Collects the worst residual of one identity. An evaluation error counts
/// as an infinite residual.
struct Sweep {
    name: String,
    tol: f64,
    points: usize,
    max: f64,
    worst: Option<Complex64>,
}

impl Sweep {
    fn new(name: impl Into<String>, tol: f64) -> Self {
        Sweep { name: name.into(), tol, points: 0, max: 0.0, worst: None }
    }

    fn record(&mut self, z: Complex64, r: Result<f64>) {
        self.points += 1;
        let v = match r {
            Ok(v) if !v.is_nan() => v,
            _ => f64::INFINITY,
        };
        if v > self.max || (self.worst.is_none() && v >= self.max) {
            self.max = v;
            self.worst = Some(z);
        }
    }

    fn report(self) -> SweepReport {
        SweepReport {
            pass: self.max <= self.tol,
            name: self.name,
            points: self.points,
            max_residual: self.max,
            tolerance: self.tol,
            worst: self.worst,
        }
    }
}

/// Run `suite` on `n` points per identity. `tol` overrides the residual
/// tolerance of every identity whose tolerance is not structural.
pub fn run_suite(suite: Suite, n: usize, seed: u64, tol: Option<f64>) -> Vec<SweepReport> {
    let t = tol.unwrap_or(suite.default_tol());
    match suite {
        Suite::All => Suite::EACH.iter().flat_map(|&s| run_suite(s, n, seed, tol)).collect(),
        Suite::Jacobi => vec![jacobi(n, seed, t)],
        Suite::Wirtinger => wirtinger(n, seed, t),
        Suite::Wronskian => vec![wronskian(n, seed, t)],
        Suite::Transforms => transforms(n, seed, t),
        Suite::LambdaPrime => lambda_primes(n, seed, t),
        Suite::IntegralReprs => integral_reprs(n, seed, t),
        Suite::Reduction => reduction(n, seed, t),
        Suite::Bounds => vec![bounds(n, seed)],
    }
}

/// True when every report passed.
pub fn all_pass(reports: &[SweepReport]) -> bool {
    reports.iter().all(|r| r.pass)
}

pub fn jacobi(n: usize, seed: u64, tol: f64) -> SweepReport {
    let mut g = Lcg::derived(seed, "jacobi");
    let mut s = Sweep::new("jacobi", tol);
    for _ in 0..n {
        let z = g.default_point();
        s.record(z, jacobi_residual(z));
    }
    s.report()
}

pub fn wirtinger(n: usize, seed: u64, tol: f64) -> Vec<SweepReport> {
    let mut g = Lcg::derived(seed, "wirtinger");
    let mut w = Sweep::new("wirtinger", tol);
    let mut l = Sweep::new("lambda_of_tau", tol);
    for _ in 0..n {
        let z = g.lambda_point(0.05);
        w.record(z, wirtinger_residual(z));
        l.record(z, lambda_tau_residual(z));
    }
    vec![w.report(), l.report()]
}

pub fn wronskian(n: usize, seed: u64, tol: f64) -> SweepReport {
    let mut g = Lcg::derived(seed, "wronskian");
    let mut s = Sweep::new("wronskian", tol);
    for _ in 0..n {
        let z = g.lambda_point(0.05);
        s.record(z, wronskian_residual(z));
    }
    s.report()
}

fn max_of(v: Result<Vec<(&'static str, f64)>>) -> Result<f64> {
    Ok(v?.into_iter().map(|(_, r)| r).fold(0.0, f64::max))
}

pub fn transforms(n: usize, seed: u64, tol: f64) -> Vec<SweepReport> {
    let mut g = Lcg::derived(seed, "transforms");
    let mut table = Sweep::new("theta_transformations", tol);
    let mut add = Sweep::new("theta_period_inversion", tol);
    let mut logs = Sweep::new("log_theta_relations", tol);
    let mut kummer = Sweep::new("kummer", tol);
    let mut shift = Sweep::new("triangle_shift", tol);
    for _ in 0..n {
        let z = g.default_point();
        // relative to the size of the values involved
        let scale = theta_eval(z).map(|e| e.values.t3.norm().max(1.0)).unwrap_or(1.0);
        table.record(z, theta_transform_residuals(z).map(|r| r.iter().fold(0.0, |a: f64, &b| a.max(b)) / scale));
        let w = g.strip_point(0.05);
        add.record(w, max_of(addendum_residuals(w)));
        let m = g.int_range(-3, 3);
        logs.record(z, max_of(log_theta_relations_residuals(z, m)));
        let u = c(g.range(-4.0, 5.0), g.log_uniform(0.05, 10.0) * if g.uniform() < 0.5 { -1.0 } else { 1.0 });
        kummer.record(u, kummer_residual(u));
        shift.record(u, triangle_shift_residual(u));
    }
    vec![table.report(), add.report(), logs.report(), kummer.report(), shift.report()]
}

pub fn lambda_primes(n: usize, seed: u64, tol: f64) -> Vec<SweepReport> {
    let mut g = Lcg::derived(seed, "lambda_prime");
    let mut ids = Sweep::new("lambda_prime_identities", tol);
    let mut fd = Sweep::new("lambda_prime_finite_diff", 1e-5);
    for _ in 0..n {
        let z = g.strip_point(0.05);
        ids.record(z, lambda_prime_residuals(z).map(|r| r.iter().fold(0.0, |a: f64, &b| a.max(b))));
        fd.record(z, finite_difference_check(z));
    }
    vec![ids.report(), fd.report()]
}

/// Relative gap between `lambda'` and a fourth-order central difference.
fn finite_difference_check(z: Complex64) -> Result<f64> {
    let h = 1e-3 * z.im.min(1.0);
    let l = |w: Complex64| eval_lambda(w).map(|r| r.value);
    let fd = (l(z - 2.0 * h)? - 8.0 * l(z - h)? + 8.0 * l(z + h)? - l(z + 2.0 * h)?) / (12.0 * h);
    let d = lambda_prime(z)?;
    Ok((fd - d).norm() / d.norm().max(1.0))
}

fn repr_spec(tol: f64) -> QuadratureSpec {
    QuadratureSpec::with_tol((0.01 * tol).clamp(1e-12, 1e-3)).unwrap_or_default()
}

pub fn integral_reprs(n: usize, seed: u64, tol: f64) -> Vec<SweepReport> {
    let spec = repr_spec(tol);
    let mut g = Lcg::derived(seed, "integral_reprs");
    let mut measure = Sweep::new("log_f_measure_form", tol);
    let mut pick = Sweep::new("log_f_nu_form", tol);
    let mut ratio = Sweep::new("log_ratio_two_forms", tol);
    let mut quad = Sweep::new("log_theta3_quadrilateral", tol);
    let mut bnd = Sweep::new("log_theta3_boundary", tol);
    let mut kern = Sweep::new("log_theta3_lambda_kernel", tol);
    for _ in 0..n {
        let z = g.off_cut_point(0.05);
        let direct = eval_f(z).map(|r| r.value.ln());
        measure.record(z, direct.clone().and_then(|d| Ok((log_f_integral(z, &spec)?.value - d).norm())));
        pick.record(z, direct.and_then(|d| Ok((log_f_pick(z, &spec)?.value - d).norm())));

        let u = g.lambda_point(0.05);
        ratio.record(
            u,
            (|| {
                let a = log_ratio(u, RatioForm::LogKernel, &spec)?.value;
                let b = log_ratio(u, RatioForm::ArctanKernel, &spec)?.value;
                Ok((a - b).norm())
            })(),
        );
        quad.record(
            u,
            (|| {
                let t = eval_tau(u)?.value;
                let series = eval_log_theta(ThetaIndex::Three, t)?.value;
                Ok((log_theta3_quadrilateral(u, &spec)?.value - series).norm())
            })(),
        );

        let x = g.log_uniform(0.05, 20.0);
        bnd.record(
            c(-x, 0.0),
            (|| {
                let y = y_of_x(x)?;
                let series = eval_log_theta(ThetaIndex::Three, c(1.0, y))?.value;
                Ok((log_theta3_boundary(x, &spec)?.value - series).norm())
            })(),
        );

        let w = g.periodized_point(0.05, 3);
        kern.record(
            w,
            (|| {
                let series = eval_log_theta(ThetaIndex::Three, w)?.value;
                Ok((log_theta3_lambda_kernel(w, &spec)?.value - series).norm())
            })(),
        );
    }
    vec![measure.report(), pick.report(), ratio.report(), quad.report(), bnd.report(), kern.report()]
}

pub fn reduction(n: usize, seed: u64, tol: f64) -> Vec<SweepReport> {
    let mut g = Lcg::derived(seed, "reduction");
    let mut cert = Sweep::new("reduction_certificates", 1e-10);
    let mut global = Sweep::new("log_theta3_global", tol);
    let mut period = Sweep::new("log_theta3_global_period", 1e-10);
    for _ in 0..n {
        let z = g.upper_half_plane((-3.0, 3.0), (1e-3, 1e3));
        cert.record(
            z,
            reduce_to_fundamental(z).and_then(|r| {
                r.check()?;
                Ok((r.matrix.apply(z) - r.reduced).norm())
            }),
        );
        let z = g.default_point();
        global.record(
            z,
            (|| {
                let v = log_theta3_global(z, 1e-8)?.value.exp();
                Ok((v - theta_eval(z)?.values.t3).norm())
            })(),
        );
        period.record(
            z,
            (|| Ok((log_theta3_global(z + 2.0, 1e-8)?.value - log_theta3_global(z, 1e-8)?.value).norm()))(),
        );
    }
    vec![cert.report(), global.report(), period.report()]
}

/// Draw a point where at least one of the three inequalities applies.
fn bounds_point(g: &mut Lcg) -> Complex64 {
    let angle = g.range(-PI, PI);
    let p = Complex64::from_polar(1.0, angle);
    match g.next_u64() % 3 {
        0 => p * g.range(0.0, 1.0),
        1 => 1.0 + p * g.range(1e-6, 1.0),
        _ => 1.0 + p * g.log_uniform(1.0, 1e3),
    }
}

/// Largest amount by which an applicable inequality fails; zero when none does.
pub fn bounds(n: usize, seed: u64) -> SweepReport {
    let mut g = Lcg::derived(seed, "bounds");
    let mut s = Sweep::new("certified_bounds", 0.0);
    for _ in 0..n {
        let z = bounds_point(&mut g);
        if z.im == 0.0 && z.re >= 1.0 {
            continue;
        }
        s.record(
            z,
            hyper_bounds_check(z).map(|r| r.applicable().map(|b| if b.holds { 0.0 } else { b.lhs - b.rhs }).fold(0.0, f64::max)),
        );
    }
    s.report()
}
