//! Values checked against frozen mpmath references.

mod common;

use common::{oracles, pair, real, small_im_points};
use thetakit::hypergeo::{hyper_f, hyper_f_boundary};
use thetakit::measure::sigma_density;
use thetakit::modular::log_theta3_global;
use thetakit::quad::QuadratureSpec;
use thetakit::reprs::{log_f_integral, log_theta3_quadrilateral};
use thetakit::theta::{log_theta, theta, ThetaIndex};
use thetakit::{Complex64, Side};

fn z(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn spec() -> QuadratureSpec {
    QuadratureSpec::with_tol(1e-11).unwrap()
}

#[test]
fn f_at_half() {
    let o = oracles();
    let want = real(&o["f_half_maclaurin_200"]);
    assert_eq!(o["f_half_maclaurin_200"], o["f_half_closed_form"]);
    let r = hyper_f(z(0.5, 0.0), 1e-12).unwrap();
    assert!((r.value.re - want).abs() < 2e-15, "{}", r.value.re);
    assert!(r.value.re > 1.18030 && r.value.re < 1.18036);
}

#[test]
fn f_at_minus_one() {
    let want = real(&oracles()["f_minus_one"]);
    let r = hyper_f(z(-1.0, 0.0), 1e-12).unwrap();
    assert!((r.value.re - want).abs() < 1e-15);
}

#[test]
fn f_complex_points_and_error_estimates() {
    let o = oracles();
    for p in o["f_complex"].as_array().unwrap() {
        let zz = pair(&p["z"]);
        let want = pair(&p["f"]);
        let r = hyper_f(zz, 1e-10).unwrap();
        let err = (r.value - want).norm();
        assert!(err < 1e-12 * want.norm().max(1.0), "{zz}: {} vs {want}", r.value);
        assert!(err <= r.abs_err + 4.0 * f64::EPSILON * want.norm(), "{zz}: err {err:e} > claimed {:e}", r.abs_err);
    }
}

#[test]
fn f_above_cut() {
    let o = oracles();
    for p in o["f_above_cut"].as_array().unwrap() {
        let x = real(&p["x"]);
        let want = pair(&p["f"]);
        let r = hyper_f_boundary(x, Side::Above, 1e-12).unwrap();
        assert!((r.value - want).norm() < 1e-14, "{x}: {} vs {want}", r.value);
        let below = hyper_f_boundary(x, Side::Below, 1e-12).unwrap();
        assert_eq!(below.value, r.value.conj());
    }
}

#[test]
fn log_f_half_by_measure() {
    let want = real(&oracles()["ln_f_half"]);
    let r = log_f_integral(z(0.5, 0.0), &spec()).unwrap();
    assert!((r.value.re - want).abs() < 1e-10);
    assert!(r.value.im == 0.0);
}

#[test]
fn density_at_half() {
    let want = real(&oracles()["sigma_density_half"]);
    assert!((sigma_density(0.5).unwrap() - want).abs() < 1e-15);
}

#[test]
fn theta_at_i() {
    let o = oracles();
    let t3 = theta(ThetaIndex::Three, z(0.0, 1.0), 1e-12).unwrap().value;
    assert!((t3.re - real(&o["theta3_i"])).abs() < 1e-15 && t3.im == 0.0);
    let t2 = theta(ThetaIndex::Two, z(0.0, 1.0), 1e-12).unwrap().value;
    assert!((t2.re - real(&o["theta2_i"])).abs() < 1e-15);
    let want = real(&o["log_theta3_i"]);
    let l = log_theta(ThetaIndex::Three, z(0.0, 1.0), 1e-12).unwrap().value;
    assert!((l.re - want).abs() < 1e-16);
    // Wirtinger at z = 1/2: log Theta_3(i) = ln F(1/2) / 2
    let q = log_theta3_quadrilateral(z(0.5, 0.0), &spec()).unwrap().value;
    assert!((q.re - want).abs() < 1e-10);
}

#[test]
fn log_theta3_at_5i() {
    let want = real(&oracles()["log_theta3_5i"]);
    let r = log_theta3_global(z(0.0, 5.0), 1e-12).unwrap().value;
    assert!((r.re - want).abs() < 1e-20 && r.im == 0.0);
}

#[test]
fn theta3_near_real_axis() {
    let o = oracles();
    for p in o["theta3_special"].as_array().unwrap() {
        let zz = pair(&p["z"]);
        let want = pair(&p["theta3"]);
        let got = log_theta3_global(zz, 1e-8).unwrap().value.exp();
        assert!((got - want).norm() < 1e-9 * want.norm().max(1.0), "{zz}: {got} vs {want}");
    }
}

#[test]
fn theta3_small_im_against_oracle() {
    for (zz, want) in small_im_points() {
        let got = log_theta3_global(zz, 1e-8).unwrap().value.exp();
        assert!((got - want).norm() < 1e-6, "{zz}: {got} vs {want}");
    }
}
