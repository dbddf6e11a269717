//! Theta-group bookkeeping: integer Möbius matrices, reduction of a point of
//! the upper half-plane into `{|Re w| <= 1, |w| >= 1}` by `T^{+-2}` and `S`,
//! Berndt's phase sum, and the continuous `log Theta_3` on all of `H`.
//!
//! The literal phase sum over `k = 1..=c` disagrees with the series by a
//! constant `i pi / 4` for every theta-group matrix with `c > 0` (its last
//! term is always `+1`). [`effective_phase`] drops that term and is what
//! [`log_theta3_global`] applies; [`berndt_phase`] returns the sum as written.

use std::f64::consts::PI;
use std::fmt;

use crate::cmath::{c, check_tol, EPS, I};
use crate::error::{domain, Error, Result};
use crate::quad::{QuadratureSpec, Substitution};
use crate::theta::{check_upper, eval_lambda, eval_log_theta, ThetaIndex};
use crate::triangle::in_quadrilateral;
use crate::{Complex64, EvalResult, Method};

/// Steps allowed in [`reduce_to_fundamental`] before giving up.
pub const MAX_REDUCTION_STEPS: usize = 10_000;

/// Largest entry kept exactly; beyond it the map can no longer be applied in `f64`.
const MAX_ENTRY: i64 = 1 << 53;

/// Slack used when checking that a reduced point lies in the closed region.
const REGION_SLACK: f64 = 1e-12;

/// `(a b; c d)` with `ad - bc = 1`, acting by `z -> (az + b)/(cz + d)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MobiusMatrix {
    a: i64,
    b: i64,
    c: i64,
    d: i64,
}

impl MobiusMatrix {
    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        let det = a as i128 * d as i128 - b as i128 * c as i128;
        if det != 1 {
            return Err(Error::InvalidMatrix(format!("determinant of ({a},{b};{c},{d}) is {det}, not 1")));
        }
        Ok(MobiusMatrix { a, b, c, d })
    }

    pub const IDENTITY: MobiusMatrix = MobiusMatrix { a: 1, b: 0, c: 0, d: 1 };
    /// `z -> -1/z`
    pub const S: MobiusMatrix = MobiusMatrix { a: 0, b: -1, c: 1, d: 0 };

    /// `z -> z + 2n`
    pub fn shift(n: i64) -> Result<Self> {
        let b = n.checked_mul(2).ok_or_else(|| Error::InvalidMatrix("translation overflows".into()))?;
        Ok(MobiusMatrix { a: 1, b, c: 0, d: 1 })
    }

    pub fn a(&self) -> i64 {
        self.a
    }
    pub fn b(&self) -> i64 {
        self.b
    }
    pub fn c(&self) -> i64 {
        self.c
    }
    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn entries(&self) -> [i64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    /// `self * other`, i.e. apply `other` first.
    pub fn mul(&self, other: &MobiusMatrix) -> Result<MobiusMatrix> {
        let dot = |x: i64, y: i64, u: i64, v: i64| -> Result<i64> {
            let r = x as i128 * y as i128 + u as i128 * v as i128;
            i64::try_from(r).map_err(|_| Error::InvalidMatrix("matrix product overflows i64".into()))
        };
        Ok(MobiusMatrix {
            a: dot(self.a, other.a, self.b, other.c)?,
            b: dot(self.a, other.b, self.b, other.d)?,
            c: dot(self.c, other.a, self.d, other.c)?,
            d: dot(self.c, other.b, self.d, other.d)?,
        })
    }

    pub fn neg(&self) -> MobiusMatrix {
        MobiusMatrix { a: -self.a, b: -self.b, c: -self.c, d: -self.d }
    }

    /// Representative with `c > 0`, or `c = 0` and `d > 0`.
    pub fn normalized(&self) -> MobiusMatrix {
        if self.c < 0 || (self.c == 0 && self.d < 0) {
            self.neg()
        } else {
            *self
        }
    }

    /// `c z + d`, with the real part formed by a fused multiply-add.
    pub fn denominator(&self, z: Complex64) -> Complex64 {
        let cf = self.c as f64;
        c(cf.mul_add(z.re, self.d as f64), cf * z.im)
    }

    /// `phi_M(z) = (az + b)/(cz + d)`.
    pub fn apply(&self, z: Complex64) -> Complex64 {
        let af = self.a as f64;
        let num = c(af.mul_add(z.re, self.b as f64), af * z.im);
        num / self.denominator(z)
    }
}

impl fmt::Display for MobiusMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{};{},{})", self.a, self.b, self.c, self.d)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GroupClass {
    /// congruent to the identity mod 2
    Gamma2,
    /// congruent to `(0 1; 1 0)` mod 2
    ThetaOffDiagonal,
    OutsideThetaGroup,
}

impl GroupClass {
    pub fn in_theta_group(self) -> bool {
        self != GroupClass::OutsideThetaGroup
    }
}

pub fn classify(m: &MobiusMatrix) -> Result<GroupClass> {
    // re-check in case the matrix was assembled by hand through a product
    MobiusMatrix::new(m.a, m.b, m.c, m.d)?;
    let odd = |x: i64| x.rem_euclid(2) == 1;
    Ok(match (odd(m.a), odd(m.b), odd(m.c), odd(m.d)) {
        (true, false, false, true) => GroupClass::Gamma2,
        (false, true, true, false) => GroupClass::ThetaOffDiagonal,
        _ => GroupClass::OutsideThetaGroup,
    })
}

/// Proof object for one reduction: `reduced = phi_matrix(input)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReductionCertificate {
    pub input: Complex64,
    /// sign-normalized
    pub matrix: MobiusMatrix,
    pub reduced: Complex64,
    /// number of `T^{+-2n}` and `S` factors applied
    pub steps: usize,
    /// literal phase sum for `c > 0`, zero for translations
    pub berndt_phase: Complex64,
    /// phase actually used to relate `log Theta_3` at both points
    pub applied_phase: Complex64,
}

impl ReductionCertificate {
    /// Invariants: theta-group matrix, `reduced` reproduces `phi_M(input)`,
    /// and lies in the closed region.
    pub fn check(&self) -> Result<()> {
        if !classify(&self.matrix)?.in_theta_group() {
            return Err(Error::Internal(format!("matrix {} is outside the theta group", self.matrix)));
        }
        let w = self.matrix.apply(self.input);
        if (w - self.reduced).norm() > 1e-12 * self.reduced.norm().max(1.0) {
            return Err(Error::Internal(format!("phi_M(input) = {w} differs from reduced {}", self.reduced)));
        }
        if !in_reduced_region(self.reduced, REGION_SLACK) {
            return Err(Error::Internal(format!("reduced point {} is outside |Re| <= 1, |w| >= 1", self.reduced)));
        }
        Ok(())
    }
}

fn in_reduced_region(w: Complex64, slack: f64) -> bool {
    w.im > 0.0 && w.re.abs() <= 1.0 + slack && w.norm() >= 1.0 - slack
}

/// Nearest integer to `x`, ties toward zero.
fn nearest_ties_to_zero(x: f64) -> f64 {
    let r = x.round();
    if (r - x).abs() == 0.5 {
        x.trunc()
    } else {
        r
    }
}

/// Map `z` into `{|Re w| <= 1, |w| >= 1}` with a word in `T^{+-2}` and `S`.
pub fn reduce_to_fundamental(z: Complex64) -> Result<ReductionCertificate> {
    check_upper(z)?;
    let mut m = MobiusMatrix::IDENTITY;
    let mut w = z;
    let mut steps = 0;
    loop {
        let n = nearest_ties_to_zero(w.re / 2.0);
        if n != 0.0 {
            if n.abs() >= MAX_ENTRY as f64 {
                return domain(format!("real part of {z} is too large to reduce exactly"));
            }
            m = MobiusMatrix::shift(-(n as i64))?.mul(&m)?;
            w = c(w.re - 2.0 * n, w.im);
            steps += 1;
        }
        if w.norm() >= 1.0 - 1e-14 {
            break;
        }
        m = MobiusMatrix::S.mul(&m)?;
        w = -w.inv();
        steps += 1;
        if steps > MAX_REDUCTION_STEPS {
            return Err(Error::Internal(format!("reduction of {z} did not finish in {MAX_REDUCTION_STEPS} steps")));
        }
        if m.entries().iter().any(|e| e.abs() >= MAX_ENTRY) {
            return domain(format!("Im z = {:e} is too small for an exact reduction matrix", z.im));
        }
    }
    let matrix = m.normalized();
    let reduced = matrix.apply(z);
    let (berndt, applied) = if matrix.c > 0 {
        (berndt_phase(&matrix)?, effective_phase(&matrix)?)
    } else {
        (c(0.0, 0.0), c(0.0, 0.0))
    };
    Ok(ReductionCertificate { input: z, matrix, reduced, steps, berndt_phase: berndt, applied_phase: applied })
}

fn check_phase_matrix(m: &MobiusMatrix) -> Result<()> {
    if m.c <= 0 {
        return Err(Error::InvalidMatrix(format!("phase sum needs c > 0, got {m}")));
    }
    if !classify(m)?.in_theta_group() {
        return Err(Error::InvalidMatrix(format!("{m} is not in the theta group")));
    }
    Ok(())
}

fn phase_sum(m: &MobiusMatrix, upto: i64) -> i64 {
    (1..=upto)
        .map(|k| {
            let fl = (k as i128 * m.d as i128).div_euclid(m.c as i128);
            if (k as i128 + 1 + fl).rem_euclid(2) == 0 {
                1
            } else {
                -1
            }
        })
        .sum()
}

/// `(pi i / 4) sum_{k=1}^{c} (-1)^{k + 1 + floor(kd/c)}` as written.
pub fn berndt_phase(m: &MobiusMatrix) -> Result<Complex64> {
    check_phase_matrix(m)?;
    Ok(I * (PI / 4.0 * phase_sum(m, m.c) as f64))
}

/// The phase that makes `log Theta_3(Mz) = log Theta_3(z) + Log((cz+d)/i)/2 + phase`
/// hold for the continuous branch: the sum stopped at `k = c - 1`.
pub fn effective_phase(m: &MobiusMatrix) -> Result<Complex64> {
    check_phase_matrix(m)?;
    Ok(I * (PI / 4.0 * phase_sum(m, m.c - 1) as f64))
}

/// How [`log_theta3_global_with`] evaluates `log Theta_3` at the reduced point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GlobalRoute {
    Series,
    /// `(1/2) Log F(lambda(w))` through the measure representation
    Integral,
}

/// Continuous `log Theta_3` on `H`, real on the imaginary axis.
pub fn log_theta3_global(z: Complex64, tol: f64) -> Result<EvalResult> {
    log_theta3_global_with(z, tol, GlobalRoute::Series)
}

pub fn log_theta3_global_with(z: Complex64, tol: f64, route: GlobalRoute) -> Result<EvalResult> {
    check_tol(tol)?;
    let cert = reduce_to_fundamental(z)?;
    let w = cert.reduced;
    let (at_w, err_w) = match route {
        GlobalRoute::Series => {
            let r = eval_log_theta(ThetaIndex::Three, w)?;
            (r.value, r.abs_err)
        }
        GlobalRoute::Integral => {
            let l = eval_lambda(w)?;
            let spec = QuadratureSpec::internal((0.5 * tol).max(1e-13), 0.0, 1 << 18, Substitution::LogEndpoint);
            let r = crate::reprs::log_f_integral(l.value, &spec)?;
            (r.value * 0.5, 0.5 * r.est_err + l.abs_err / l.value.norm().max(EPS))
        }
    };
    let m = cert.matrix;
    let value = if m.c == 0 {
        at_w
    } else {
        at_w - 0.5 * (m.denominator(z) / I).ln() - cert.applied_phase
    };
    let abs_err = err_w + 8.0 * EPS * (value.norm() + at_w.norm());
    if abs_err > tol {
        return Err(Error::Convergence(format!("global log Theta_3 error {abs_err:.3e} exceeds tolerance {tol:.3e}")));
    }
    let method = match route {
        GlobalRoute::Series => Method::ModularReduction,
        GlobalRoute::Integral => Method::IntegralRepresentation,
    };
    Ok(EvalResult::new(value, abs_err, method))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Region {
    /// `{Im > 0, |Re| < 1, |2z - 1| > 1, |2z + 1| > 1}`
    Quadrilateral,
    /// the quadrilateral together with the lines `Re = +-1`
    ClosedStripRegion,
    /// union of the `2m` translates of the closed strip region
    PeriodizedRegion,
}

pub fn in_region(z: Complex64, region: Region) -> bool {
    let strip = |w: Complex64| in_quadrilateral(w) || (w.im > 0.0 && w.re.abs() == 1.0);
    match region {
        Region::Quadrilateral => in_quadrilateral(z),
        Region::ClosedStripRegion => strip(z),
        Region::PeriodizedRegion => {
            if !(z.re.is_finite() && z.im > 0.0) {
                return false;
            }
            let m = (z.re / 2.0).floor();
            [m, m + 1.0].iter().any(|&k| strip(c(z.re - 2.0 * k, z.im)))
        }
    }
}
