"""Independent high-precision oracles, frozen into ``derived.json``.

Every value here is computed with mpmath quadrature or exact arithmetic and
never calls into ``boolsd``. Run ``python3 tests/oracles/generate.py`` to
regenerate; the test suite only reads the frozen file.
"""

import json
import pathlib

import mpmath as mp

mp.mp.dps = 30
OUT = pathlib.Path(__file__).with_name("derived.json")


def cx(z):
    z = mp.mpc(z)
    return [float(z.real), float(z.imag)]


def semicircle_density(x, m=0, s2=1):
    r = 4 * s2 - (x - m) ** 2
    return mp.sqrt(r) / (2 * mp.pi * s2) if r > 0 else mp.mpf(0)


def cauchy_density(dens, lo, hi, z):
    return mp.quad(lambda x: dens(x) / (z - x), [lo, hi])


def gauss(x):
    return mp.exp(-x * x / 2) / mp.sqrt(2 * mp.pi)


def mp_density(x, lam):
    a, b = (1 - mp.sqrt(lam)) ** 2, (1 + mp.sqrt(lam)) ** 2
    if a < x < b:
        return mp.sqrt((x - a) * (b - x)) / (2 * mp.pi * x)
    return mp.mpf(0)


def main():
    out = {}
    z = mp.mpc(0, 1)
    out["cauchy_semicircle_i"] = cx(cauchy_density(semicircle_density, -2, 2, z))
    # Boolean Gaussian B(gamma, a) as a two-point law, F at a test point
    g, a = mp.mpf("0.5"), mp.mpf(2)
    r = mp.sqrt(g * g + 4 * a)
    x1, x2 = (g - r) / 2, (g + r) / 2
    w1, w2 = x1 ** 2 / (x1 ** 2 + a), x2 ** 2 / (x2 ** 2 + a)
    zt = mp.mpc("0.3", "0.7")
    out["boolean_gaussian_F"] = {"gamma": 0.5, "a": 2.0, "z": cx(zt),
                                 "F": cx(1 / (w1 / (zt - x1) + w2 / (zt - x2))),
                                 "atoms": [[float(x1), float(w1)], [float(x2), float(w2)]]}
    out["normal_F_i"] = cx(1 / mp.quad(lambda x: gauss(x) / (z - x), [-mp.inf, 0, mp.inf]))
    out["normal_G_2i"] = cx(mp.quad(lambda x: gauss(x) / (2j - x), [-mp.inf, 0, mp.inf]))
    out["h_1"] = float(mp.quad(lambda t: mp.exp(t * t), [0, 1]))
    out["normal_ell0"] = float(mp.sqrt(2 / mp.pi) / mp.pi)
    out["semicircle_density_0"] = float(semicircle_density(0))
    out["mp1_density_2"] = float(mp_density(2, 1))
    # remark_atom_family at p = 2: mu({1}) = 1/q with q = 1 + int_0^1 (1-t)^(p-2) dt
    out["remark_atom_p2"] = float(1 / (1 + mp.quad(lambda t: (1 - t) ** 0, [0, 1])))
    # Fuss-Catalan p = 2 atom weight at (2^(1/2) - 1)^(-1) = 1 + sqrt 2
    p = mp.mpf(2)
    out["fuss_catalan_p2_atom"] = [float(1 / (2 ** (1 / p) - 1)), float(1 / (p * (2 - 2 ** (1 - 1 / p))))]
    p = mp.mpf("1.5")
    out["fuss_catalan_p15_atom"] = [float(1 / (2 ** (1 / p) - 1)), float(1 / (p * (2 - 2 ** (1 - 1 / p))))]
    # Kesten t = 2: total density mass
    t = mp.mpf(2)
    c = 2 * mp.sqrt(t - 1)
    kd = lambda x: t * mp.sqrt(4 * (t - 1) - x * x) / (2 * mp.pi * (t * t - x * x)) if abs(x) < c else 0  # noqa: E731
    out["kesten2_density_mass"] = float(mp.quad(kd, [-c, 0, c]))
    # Cauchy pair: tau = dx/(pi(1 + x^2)), b = 0; K(z) = -i
    zt2 = mp.mpc("0.4", "0.9")
    out["cauchy_pick_K"] = {"z": cx(zt2), "K": cx(mp.quad(lambda x: (1 + x * zt2) / (zt2 - x) / (mp.pi * (1 + x * x)),
                                                       [-mp.inf, 0, mp.inf]))}
    # B(0,1) (+) B(0,1): K = 2/z -> atoms +-sqrt 2, mass 1/2
    out["bern_sq_atoms"] = [[float(-mp.sqrt(2)), 0.5], [float(mp.sqrt(2)), 0.5]]
    # normal_cauchy boundary values against the Gaussian density
    out["gauss_density"] = {str(x): float(gauss(x)) for x in (0, 1, 2)}
    # semicircle S(0,1) density on [-1.8, 1.8]
    out["semicircle_samples"] = [[float(x), float(semicircle_density(x))] for x in mp.linspace(-1.8, 1.8, 13)]
    OUT.write_text(json.dumps(out, indent=1, sort_keys=True) + "\n")


if __name__ == "__main__":
    main()
