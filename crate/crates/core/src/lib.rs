//! Numerical evaluation of the Jacobi theta null-values, the hypergeometric
//! function `F(z) = F(1/2, 1/2; 1; z)`, the Schwarz triangle function
//! `tau(z) = i F(1 - z) / F(z)` and the elliptic modular function `lambda`.
//!
//! `log Theta_3` is available two independent ways: by the Lambert-type
//! series in the nome, and by exponential integral representations built on
//! the explicit measure `d sigma = dt / (pi^2 t (1 - t) (F(t)^2 + F(1 - t)^2))`,
//! extended to the whole upper half-plane by reduction into the fundamental
//! domain of the theta group.
//!
//! Module map:
//!
//! | module       | contents                                                  |
//! |--------------|-----------------------------------------------------------|
//! | [`hypergeo`] | `F`, `F'`, boundary values on the cut, certified bounds    |
//! | [`triangle`] | `tau`, its boundary values, singular remainders, `y(x)`    |
//! | [`theta`]    | `Theta_2/3/4`, Lambert logarithms, `lambda`, identities    |
//! | [`measure`]  | CDF and density of `sigma`, `nu`, the pair `(v, v~)`       |
//! | [`quad`]     | adaptive quadrature engine                                 |
//! | [`reprs`]    | every integral representation                              |
//! | [`modular`]  | theta-group matrices, reduction, Berndt phase, global log  |
//! | [`verify`]   | identity sweeps used by the CLI                            |

pub mod cmath;
pub mod hypergeo;
pub mod measure;
pub mod modular;
pub mod quad;
pub mod reprs;
pub mod sample;
pub mod theta;
pub mod triangle;
pub mod verify;

mod error;

pub use error::{Error, Result};
pub use num_complex::Complex64;

/// Complex numbers throughout the crate. Branch conventions live in the
/// operation contracts, not in the type.
pub type ComplexValue = Complex64;

/// Which region strategy or representation produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    MaclaurinSeries,
    PfaffMapped,
    LogExpansionNear1,
    BoundaryLimit,
    StieltjesQuadrature,
    ThetaSeries,
    LambertSeries,
    ClosedForm,
    IntegralRepresentation,
    ModularReduction,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::MaclaurinSeries => "maclaurin_series",
            Method::PfaffMapped => "pfaff_mapped",
            Method::LogExpansionNear1 => "log_expansion_near_1",
            Method::BoundaryLimit => "boundary_limit",
            Method::StieltjesQuadrature => "stieltjes_quadrature",
            Method::ThetaSeries => "theta_series",
            Method::LambertSeries => "lambert_series",
            Method::ClosedForm => "closed_form",
            Method::IntegralRepresentation => "integral_representation",
            Method::ModularReduction => "modular_reduction",
        }
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// A value with an absolute-error estimate and the method that produced it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalResult {
    pub value: ComplexValue,
    pub abs_err: f64,
    pub method: Method,
}

impl EvalResult {
    pub(crate) fn new(value: ComplexValue, abs_err: f64, method: Method) -> Self {
        EvalResult { value, abs_err, method }
    }
}

/// Side of a cut from which a boundary value is approached.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    /// Limit from the upper half-plane, `x + i0`.
    Above,
    /// Limit from the lower half-plane, `x - i0`.
    Below,
}

impl Side {
    pub fn sign(self) -> f64 {
        match self {
            Side::Above => 1.0,
            Side::Below => -1.0,
        }
    }
}
