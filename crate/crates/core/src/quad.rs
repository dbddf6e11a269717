//! Quadrature engine for the integral representations.
//!
//! Three rules are available, selected by [`Substitution`]:
//!
//! * `None`: globally adaptive 7/15-point Gauss–Kronrod. A semi-infinite
//!   range `[a, inf)` is first mapped to `[0, 1)` by `x = a + s / (1 - s)`.
//! * `DoubleExponential`: tanh-sinh on a finite interval, exp-sinh on
//!   `[a, inf)`, with step halving until successive levels agree.
//! * `LogEndpoint`: the interval is split at its midpoint and each half is
//!   parametrised by the logarithm of the distance to its endpoint,
//!   `x = a + h e^{-s}` and `x = b - h e^{-s}`, then integrated by adaptive
//!   Gauss–Kronrod in `s`. The pieces within `LOG_ENDPOINT_CUT * h` of the
//!   endpoints are not covered; callers add those tails analytically.
//!
//! Integrands receive a [`Node`] that carries the distances to both
//! endpoints computed without cancellation, so that functions with a
//! singularity at an endpoint can be evaluated through the small distance
//! rather than through `1 - x`.
//!
//! Node sequences depend only on the interval and the `QuadratureSpec`, so results are
//! bit-for-bit reproducible on a given platform.

use std::collections::BinaryHeap;

use crate::cmath::EPS;
use crate::error::{Error, Result};
use crate::Complex64;

/// Relative width (with respect to the half interval) left uncovered at
/// each end by [`Substitution::LogEndpoint`].
pub const LOG_ENDPOINT_CUT: f64 = 1e-15;

const MAX_NODES_LIMIT: usize = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Substitution {
    None,
    DoubleExponential,
    LogEndpoint,
}

/// Controls one quadrature: absolute target tolerance, node budget and rule.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub tol: f64,
    pub max_nodes: usize,
    pub substitution: Substitution,
    /// Relative tolerance used only by internal callers that need accuracy
    /// near machine precision; always zero for specs built with [`QuadratureSpec::new`].
    pub(crate) rel_tol: f64,
}

impl QuadratureSpec {
    pub fn new(tol: f64, max_nodes: usize, substitution: Substitution) -> Result<Self> {
        if !(1e-12..=1e-3).contains(&tol) {
            return Err(Error::InvalidArgument(format!(
                "quadrature tolerance must lie in [1e-12, 1e-3], got {tol}"
            )));
        }
        if max_nodes == 0 || max_nodes > MAX_NODES_LIMIT {
            return Err(Error::InvalidArgument(format!(
                "node budget must lie in [1, 2^20], got {max_nodes}"
            )));
        }
        Ok(QuadratureSpec { tol, max_nodes, substitution, rel_tol: 0.0 })
    }

    /// Spec with the given tolerance, a budget of `2^16` nodes and the rule
    /// each representation would pick by default.
    pub fn with_tol(tol: f64) -> Result<Self> {
        Self::new(tol, 1 << 16, Substitution::LogEndpoint)
    }

    pub(crate) fn internal(tol: f64, rel_tol: f64, max_nodes: usize, substitution: Substitution) -> Self {
        QuadratureSpec { tol, max_nodes, substitution, rel_tol }
    }

    pub fn substitution(mut self, substitution: Substitution) -> Self {
        self.substitution = substitution;
        self
    }

    pub fn halved(mut self) -> Self {
        self.tol *= 0.5;
        self
    }
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec { tol: 1e-10, max_nodes: 1 << 16, substitution: Substitution::LogEndpoint, rel_tol: 0.0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReprResult {
    pub value: Complex64,
    pub est_err: f64,
    pub nodes_used: usize,
}

impl ReprResult {
    fn zero() -> Self {
        ReprResult { value: Complex64::new(0.0, 0.0), est_err: 0.0, nodes_used: 0 }
    }

    fn add(self, other: ReprResult) -> ReprResult {
        ReprResult {
            value: self.value + other.value,
            est_err: self.est_err + other.est_err,
            nodes_used: self.nodes_used + other.nodes_used,
        }
    }
}

/// An abscissa together with its distances to the two interval endpoints.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Node {
    pub x: f64,
    /// `x - a`
    pub from_left: f64,
    /// `b - x`; infinite on a semi-infinite interval.
    pub from_right: f64,
}

impl Node {
    /// Node on an interval with both distances supplied.
    pub fn new(x: f64, from_left: f64, from_right: f64) -> Self {
        Node { x, from_left, from_right }
    }
}

/// Integrate `f` over `[a, b]` (`b` may be `f64::INFINITY`).
pub fn integrate<F>(f: F, a: f64, b: f64, spec: &QuadratureSpec) -> Result<ReprResult>
where
    F: Fn(Node) -> Complex64,
{
    if !(a.is_finite() && (b > a)) {
        return Err(Error::InvalidArgument(format!("invalid interval [{a}, {b}]")));
    }
    match (spec.substitution, b.is_finite()) {
        (Substitution::None, true) => {
            let g = |s: f64, sl: f64, sr: f64| f(Node::new(s, sl, sr));
            gauss_kronrod(&g, a, b, spec.tol, spec.rel_tol, spec.max_nodes)
        }
        (Substitution::None, false) => {
            // x = a + s / (1 - s)
            let g = |s: f64, _sl: f64, sr: f64| {
                let x_off = s / sr;
                let jac = 1.0 / (sr * sr);
                f(Node::new(a + x_off, x_off, f64::INFINITY)) * jac
            };
            gauss_kronrod(&g, 0.0, 1.0, spec.tol, spec.rel_tol, spec.max_nodes)
        }
        (Substitution::DoubleExponential, true) => tanh_sinh(&f, a, b, spec),
        (Substitution::DoubleExponential, false) => exp_sinh(&f, a, spec),
        (Substitution::LogEndpoint, true) => log_endpoint(&f, a, b, spec),
        (Substitution::LogEndpoint, false) => Err(Error::InvalidArgument(
            "log-endpoint substitution needs a finite interval".into(),
        )),
    }
}

// 7-point Gauss / 15-point Kronrod abscissae and weights.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

struct Segment {
    lo: f64,
    hi: f64,
    value: Complex64,
    err: f64,
    abs_sum: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.err.total_cmp(&other.err)
    }
}

/// One G7/K15 panel on `[lo, hi]`, a sub-interval of `[a, b]`.
fn gk15<G>(g: &G, a: f64, b: f64, lo: f64, hi: f64) -> Segment
where
    G: Fn(f64, f64, f64) -> Complex64,
{
    let half = 0.5 * (hi - lo);
    let center = lo + half;
    let eval = |dx: f64| {
        let x = center + dx;
        // Distances to the outer endpoints, measured from the closer panel edge.
        let from_left = (lo - a) + (half + dx);
        let from_right = (b - hi) + (half - dx);
        g(x, from_left, from_right)
    };
    let fc = eval(0.0);
    let mut kron = fc * WGK[7];
    let mut gauss = fc * WG[3];
    let mut abs_sum = fc.norm() * WGK[7];
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = eval(-dx);
        let f2 = eval(dx);
        kron += (f1 + f2) * WGK[j];
        abs_sum += (f1.norm() + f2.norm()) * WGK[j];
        if j % 2 == 1 {
            gauss += (f1 + f2) * WG[j / 2];
        }
    }
    let value = kron * half;
    let err = ((kron - gauss) * half).norm();
    Segment { lo, hi, value, err, abs_sum: abs_sum * half.abs() }
}

fn gauss_kronrod<G>(g: &G, a: f64, b: f64, tol: f64, rel_tol: f64, max_nodes: usize) -> Result<ReprResult>
where
    G: Fn(f64, f64, f64) -> Complex64,
{
    let first = gk15(g, a, b, a, b);
    let mut nodes = 15;
    let mut heap = BinaryHeap::new();
    let mut frozen_value = Complex64::new(0.0, 0.0);
    let mut frozen_err = 0.0;
    let mut frozen_abs = 0.0;
    heap.push(first);
    loop {
        let (value, err, abs_sum) = heap.iter().fold(
            (frozen_value, frozen_err, frozen_abs),
            |(v, e, s), seg| (v + seg.value, e + seg.err, s + seg.abs_sum),
        );
        let roundoff = 50.0 * EPS * abs_sum;
        let target = tol.max(rel_tol * value.norm());
        if err + roundoff <= target {
            return Ok(ReprResult { value, est_err: err + roundoff, nodes_used: nodes });
        }
        let worst = match heap.pop() {
            Some(seg) => seg,
            None => {
                return Err(Error::Convergence(format!(
                    "Gauss-Kronrod: error {:.3e} cannot reach {target:.3e} (interval resolution exhausted)",
                    err + roundoff
                )))
            }
        };
        if nodes + 30 > max_nodes {
            return Err(Error::Convergence(format!(
                "Gauss-Kronrod: node budget {max_nodes} exhausted at error {:.3e} (target {target:.3e})",
                err + roundoff
            )));
        }
        let mid = 0.5 * (worst.lo + worst.hi);
        if mid <= worst.lo || mid >= worst.hi || (worst.hi - worst.lo) < 64.0 * EPS * mid.abs().max(f64::MIN_POSITIVE) {
            frozen_value += worst.value;
            frozen_err += worst.err;
            frozen_abs += worst.abs_sum;
            continue;
        }
        heap.push(gk15(g, a, b, worst.lo, mid));
        heap.push(gk15(g, a, b, mid, worst.hi));
        nodes += 30;
    }
}

fn log_endpoint<F>(f: &F, a: f64, b: f64, spec: &QuadratureSpec) -> Result<ReprResult>
where
    F: Fn(Node) -> Complex64,
{
    let h = 0.5 * (b - a);
    let s_max = (1.0 / LOG_ENDPOINT_CUT).ln();
    // left half: x = a + h e^{-s}
    let left = |s: f64, _sl: f64, _sr: f64| {
        let d = h * (-s).exp();
        let jac = d;
        f(Node::new(a + d, d, 2.0 * h - d)) * jac
    };
    // right half: x = b - h e^{-s}
    let right = |s: f64, _sl: f64, _sr: f64| {
        let d = h * (-s).exp();
        let jac = d;
        f(Node::new(b - d, 2.0 * h - d, d)) * jac
    };
    let half_tol = 0.5 * spec.tol;
    let r1 = gauss_kronrod(&left, 0.0, s_max, half_tol, spec.rel_tol, spec.max_nodes / 2)?;
    let r2 = gauss_kronrod(&right, 0.0, s_max, half_tol, spec.rel_tol, spec.max_nodes / 2)?;
    Ok(ReprResult::zero().add(r1).add(r2))
}

const DE_MAX_LEVEL: usize = 12;

fn tanh_sinh<F>(f: &F, a: f64, b: f64, spec: &QuadratureSpec) -> Result<ReprResult>
where
    F: Fn(Node) -> Complex64,
{
    let half = 0.5 * (b - a);
    let center = a + half;
    let half_pi = std::f64::consts::FRAC_PI_2;
    // Contribution of abscissa t (and -t when `pair`).
    let point = |t: f64| -> Option<(Complex64, f64)> {
        let u = half_pi * t.sinh();
        let w = half_pi * t.cosh() / u.cosh().powi(2);
        // 1 - tanh(u) and 1 + tanh(u) without cancellation
        let e = (-2.0 * u.abs()).exp();
        let small = 2.0 * e / (1.0 + e);
        let big = 2.0 - small;
        let (to_right, to_left) = if u >= 0.0 { (small, big) } else { (big, small) };
        let from_left = half * to_left;
        let from_right = half * to_right;
        if from_left <= 0.0 || from_right <= 0.0 || !w.is_finite() || w == 0.0 {
            return None;
        }
        let x = if u >= 0.0 { b - from_right } else { a + from_left };
        let x = if (x - center).abs() < half * 0.5 { center + half * u.tanh() } else { x };
        let v = f(Node::new(x, from_left, from_right)) * (w * half);
        Some((v, v.norm()))
    };
    let mut nodes = 0usize;
    let mut step = 1.0f64;
    let (v0, a0) = point(0.0).unwrap_or((Complex64::new(0.0, 0.0), 0.0));
    let mut sum = v0;
    let mut abs_sum = a0;
    nodes += 1;
    // level 0: all integers k != 0
    let add_range = |first: f64, stride: f64, sum: &mut Complex64, abs_sum: &mut f64, nodes: &mut usize| {
        for sgn in [1.0, -1.0] {
            let mut k = 0usize;
            loop {
                let t = sgn * (first + stride * k as f64);
                k += 1;
                match point(t) {
                    Some((v, av)) => {
                        *sum += v;
                        *abs_sum += av;
                        *nodes += 1;
                        if av < 1e-300 || t.abs() > 7.0 {
                            break;
                        }
                    }
                    None => break,
                }
            }
        }
    };
    add_range(1.0, 1.0, &mut sum, &mut abs_sum, &mut nodes);
    let mut prev = sum * step;
    for level in 1..=DE_MAX_LEVEL {
        step *= 0.5;
        add_range(step, 2.0 * step, &mut sum, &mut abs_sum, &mut nodes);
        let cur = sum * step;
        let diff = (cur - prev).norm();
        let roundoff = 50.0 * EPS * abs_sum * step;
        let target = spec.tol.max(spec.rel_tol * cur.norm());
        if level >= 3 && diff + roundoff <= target {
            return Ok(ReprResult { value: cur, est_err: diff + roundoff, nodes_used: nodes });
        }
        if nodes > spec.max_nodes {
            return Err(Error::Convergence(format!(
                "tanh-sinh: node budget {} exhausted at error {diff:.3e}",
                spec.max_nodes
            )));
        }
        prev = cur;
    }
    Err(Error::Convergence(format!(
        "tanh-sinh: no convergence after {DE_MAX_LEVEL} levels"
    )))
}

fn exp_sinh<F>(f: &F, a: f64, spec: &QuadratureSpec) -> Result<ReprResult>
where
    F: Fn(Node) -> Complex64,
{
    let half_pi = std::f64::consts::FRAC_PI_2;
    let point = |t: f64| -> Option<(Complex64, f64)> {
        let d = (half_pi * t.sinh()).exp();
        let w = half_pi * t.cosh() * d;
        if d <= 0.0 || !d.is_finite() || !w.is_finite() {
            return None;
        }
        let v = f(Node::new(a + d, d, f64::INFINITY)) * w;
        if !crate::cmath::is_finite(v) {
            return None;
        }
        Some((v, v.norm()))
    };
    let mut nodes = 1usize;
    let mut step = 1.0f64;
    let (v0, a0) = point(0.0).unwrap_or((Complex64::new(0.0, 0.0), 0.0));
    let mut sum = v0;
    let mut abs_sum = a0;
    let add_range = |first: f64, stride: f64, sum: &mut Complex64, abs_sum: &mut f64, nodes: &mut usize| {
        for sgn in [1.0, -1.0] {
            let mut k = 0usize;
            let mut quiet = 0;
            loop {
                let t = sgn * (first + stride * k as f64);
                k += 1;
                if t.abs() > 7.0 {
                    break;
                }
                match point(t) {
                    Some((v, av)) => {
                        *sum += v;
                        *abs_sum += av;
                        *nodes += 1;
                        if av <= 1e-18 * abs_sum.max(f64::MIN_POSITIVE) {
                            quiet += 1;
                            if quiet >= 3 {
                                break;
                            }
                        } else {
                            quiet = 0;
                        }
                    }
                    None => break,
                }
            }
        }
    };
    add_range(1.0, 1.0, &mut sum, &mut abs_sum, &mut nodes);
    let mut prev = sum * step;
    for level in 1..=DE_MAX_LEVEL {
        step *= 0.5;
        add_range(step, 2.0 * step, &mut sum, &mut abs_sum, &mut nodes);
        let cur = sum * step;
        let diff = (cur - prev).norm();
        let roundoff = 50.0 * EPS * abs_sum * step;
        let target = spec.tol.max(spec.rel_tol * cur.norm());
        if level >= 3 && diff + roundoff <= target {
            return Ok(ReprResult { value: cur, est_err: diff + roundoff, nodes_used: nodes });
        }
        if nodes > spec.max_nodes {
            return Err(Error::Convergence(format!(
                "exp-sinh: node budget {} exhausted at error {diff:.3e}",
                spec.max_nodes
            )));
        }
        prev = cur;
    }
    Err(Error::Convergence(format!("exp-sinh: no convergence after {DE_MAX_LEVEL} levels")))
}
