"""Extended-precision reference values for the thetakit test suite.

Everything here is computed with mpmath at 50 significant digits by direct
series summation, independently of the Rust code paths. The output is frozen
into ../data/oracles.json and checked in; rerun only to regenerate.

    python3 gen_oracles.py > ../data/oracles.json
"""

import json
import random

import mpmath as mp

mp.mp.dps = 50


def f_maclaurin(z, terms):
    """F(1/2,1/2;1;z) by plain Maclaurin summation."""
    s = mp.mpf(0)
    c = mp.mpf(1)
    zn = mp.mpf(1)
    for n in range(terms):
        s += c * zn
        c *= ((n + mp.mpf(0.5)) / (n + 1)) ** 2
        zn *= z
    return s


def theta3_series(z):
    """Theta_3(z) = 1 + 2 sum q^{n^2}, q = exp(i pi z), summed to 1e-40."""
    z = mp.mpc(z)
    y = mp.im(z)
    nmax = int(mp.sqrt(95 / (mp.pi * y))) + 3
    s = mp.mpc(1)
    for n in range(1, nmax + 1):
        s += 2 * mp.exp(1j * mp.pi * n * n * z)
    return s


def theta2_series(z):
    z = mp.mpc(z)
    y = mp.im(z)
    nmax = int(mp.sqrt(95 / (mp.pi * y))) + 3
    s = mp.mpc(0)
    for n in range(0, nmax + 1):
        s += 2 * mp.exp(1j * mp.pi * (n + mp.mpf(0.5)) ** 2 * z)
    return s


def cplx(v):
    v = mp.mpc(v)
    return [mp.nstr(mp.re(v), 25), mp.nstr(mp.im(v), 25)]


def main():
    out = {}

    f_half = f_maclaurin(mp.mpf(0.5), 200)
    out["f_half_maclaurin_200"] = mp.nstr(f_half, 30)
    out["f_half_closed_form"] = mp.nstr(mp.sqrt(mp.pi) / mp.gamma(mp.mpf(0.75)) ** 2, 30)
    # F(-1) = F(1/2)/sqrt(2) by the Pfaff transformation
    out["f_minus_one"] = mp.nstr(f_half / mp.sqrt(2), 30)
    out["ln_f_half"] = mp.nstr(mp.log(f_half), 30)
    out["sigma_density_half"] = mp.nstr(2 / (mp.pi ** 2 * f_half ** 2), 30)

    t3i = theta3_series(1j)
    out["theta3_i"] = mp.nstr(mp.re(t3i), 30)
    out["log_theta3_i"] = mp.nstr(mp.log(mp.re(t3i)), 30)
    out["log_theta3_5i"] = mp.nstr(mp.log(mp.re(theta3_series(5j))), 30)
    out["theta2_i"] = mp.nstr(mp.re(theta2_series(1j)), 30)

    specials = [
        (mp.mpf("0.01"), mp.mpf("0.01")),
        (mp.mpf(100), mp.mpf("0.001")),
        (mp.mpf("0.1"), mp.mpf("0.1")),
    ]
    out["theta3_special"] = [
        {"z": [mp.nstr(x, 20), mp.nstr(y, 20)], "theta3": cplx(theta3_series(mp.mpc(x, y)))}
        for (x, y) in specials
    ]

    # 100 points with Im z log-uniform in [1e-4, 0.05], Re z uniform in [-3, 3].
    # Coordinates are rounded to 12 decimals so they are exact-enough doubles
    # and the oracle is evaluated at precisely the parsed value.
    rng = random.Random(20240917)
    pts = []
    for _ in range(100):
        x = round(rng.uniform(-3.0, 3.0), 12)
        ly = rng.uniform(mp.log10(1e-4), mp.log10(0.05))
        y = float("%.12e" % (10.0 ** float(ly)))
        zx = mp.mpf(repr(x))
        zy = mp.mpf(repr(y))
        pts.append({"z": [repr(x), repr(y)], "theta3": cplx(theta3_series(mp.mpc(zx, zy)))})
    out["theta3_small_im"] = pts

    # F at complex points covering every evaluation region, from mpmath's own
    # hyp2f1 rather than the series above; evaluated at the parsed doubles
    f_pts = [
        ("0.3", "0.4"), ("-0.5", "0.2"), ("-3.2", "0.4"), ("0.95", "-0.05"),
        ("1.2", "0.3"), ("0.5", "1.2"), ("1.5", "-1.5"), ("4.0", "2.0"),
        ("-40.0", "1.0"), ("2.0", "0.001"), ("0.999999", "0.0"), ("-1e6", "0.0"),
    ]
    out["f_complex"] = [
        {"z": [x, y], "f": cplx(mp.hyp2f1(0.5, 0.5, 1, mp.mpc(float(x), float(y))))} for (x, y) in f_pts
    ]
    # boundary values from just above the cut
    out["f_above_cut"] = [
        {"x": x, "f": cplx(mp.hyp2f1(0.5, 0.5, 1, mp.mpc(mp.mpf(x), mp.mpf("1e-40"))))}
        for x in ["1.5", "2.0", "10.0", "1000.0"]
    ]

    print(json.dumps(out, indent=1))


if __name__ == "__main__":
    main()
