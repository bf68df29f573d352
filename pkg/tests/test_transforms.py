import cmath
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from boolsd.catalog import entry
from boolsd.errors import DegenerateDilationError, DomainError, InvariantViolation
from boolsd.measure_model import SpectralMeasure, dirac
from boolsd.transforms import (
    F,
    K,
    TransformHandle,
    atom_mass,
    boolean_shift_handle,
    cauchy,
    cauchy_handle,
    check_f_range,
    classical_shift_handle,
    dilate_handle,
    eta,
    f_from_eta,
    f_from_pair,
    f_transform,
    g_from_f,
    gaussian_component_from_F,
    k_from_F,
    levy_ac_certificate,
    pick_integral,
    self_energy,
    stieltjes_invert,
)

from .conftest import cplx


def semicircle():
    return SpectralMeasure(density=lambda x: math.sqrt(max(4 - x * x, 0)) / (2 * math.pi),
                           support=[(-2, 2)], mass_hint=1.0)


def gauss():
    return SpectralMeasure(density=lambda x: math.exp(-x * x / 2) / math.sqrt(2 * math.pi),
                           support=[(-math.inf, math.inf)], mass_hint=1.0)


# frozen high-precision values ------------------------------------------------


def test_semicircle_cauchy_at_i(oracle):
    assert abs(cauchy(semicircle(), 1j) - cplx(oracle["cauchy_semicircle_i"])) < 1e-12
    assert abs(entry("semicircle").f_closed(1j) - 1 / cplx(oracle["cauchy_semicircle_i"])) < 1e-12


def test_normal_f_both_routes(oracle):
    closed = entry("normal").f_closed
    quad = f_transform(gauss())
    z_ref = cplx(oracle["normal_F_i"])
    assert abs(closed(1j) - z_ref) < 1e-12
    assert abs(quad(1j) - z_ref) < 1e-9
    assert abs(1 / closed(2j) - cplx(oracle["normal_G_2i"])) < 1e-12


def test_boolean_gaussian_f_and_atoms(oracle):
    o = oracle["boolean_gaussian_F"]
    e = entry("boolean_gaussian", gamma=o["gamma"], a=o["a"])
    assert abs(e.f_closed(cplx(o["z"])) - cplx(o["F"])) < 1e-12
    for x, w in o["atoms"]:
        assert atom_mass(e.f_closed, x) == pytest.approx(w, abs=1e-8)


def test_gaussian_density_by_inversion(oracle):
    prof = stieltjes_invert(entry("normal").f_closed, (0.0, 2.0), 3)
    ref = [oracle["gauss_density"][k] for k in ("0", "1", "2")]
    np.testing.assert_allclose(prof.values, ref, atol=1e-9)


def test_semicircle_density_by_quadrature_inversion(oracle):
    xs = [x for x, _ in oracle["semicircle_samples"]]
    h = f_transform(semicircle(), check=False)
    prof = stieltjes_invert(h, (xs[0], xs[-1]), len(xs))
    np.testing.assert_allclose(prof.values, [v for _, v in oracle["semicircle_samples"]], atol=1e-6)


def test_cauchy_pick_integral(oracle):
    o = oracle["cauchy_pick_K"]
    pair = entry("cauchy").pair
    assert abs(pick_integral(pair, cplx(o["z"])) - cplx(o["K"])) < 1e-9


# structural identities ----------------------------------------------------------


def test_dirac_transforms():
    h = f_transform(dirac(1.5))
    z = 0.3 + 0.8j
    assert abs(h(z) - (z - 1.5)) < 1e-14
    assert abs(self_energy(h)(z) - 1.5) < 1e-14
    assert abs(g_from_f(h)(z) - 1 / (z - 1.5)) < 1e-14


def test_eta_identity():
    h = entry("semicircle").f_closed
    e = eta(h)
    k = self_energy(h)
    for z in (0.3 - 0.7j, -1.0 - 0.2j, 2.0 - 3j):
        assert abs(e(z) - z * k(1 / z)) < 1e-12
        assert abs(f_from_eta(e.eval)(1 / z) - h(1 / z)) < 1e-12


def test_roles_enforced():
    with pytest.raises(ValueError):
        TransformHandle("X", lambda z: z)
    g = cauchy_handle(dirac(0.0))
    with pytest.raises(ValueError):
        self_energy(g)


def test_f_from_k_handle():
    kk = TransformHandle(K, lambda z: 1 / z)
    h = f_transform(kk)
    assert h.role == F
    assert abs(h(2j) - (2j - 1 / 2j)) < 1e-15


def test_cauchy_rejects_real_argument():
    with pytest.raises(DomainError):
        cauchy(semicircle(), 0.5)


def test_range_check_catches_bad_map():
    bad = TransformHandle(F, lambda z: z.conjugate())
    with pytest.raises(InvariantViolation):
        check_f_range(bad)


def test_dilation_and_shifts():
    h = entry("semicircle").f_closed
    z = 0.4 + 0.6j
    assert abs(dilate_handle(h, 2.0)(z) - entry("semicircle", sigma2=4.0).f_closed(z)) < 1e-12
    assert abs(classical_shift_handle(h, 1.0)(z) - entry("semicircle", m=1.0).f_closed(z)) < 1e-12
    assert abs(boolean_shift_handle(h, 0.5)(z) - (h(z) - 0.5)) < 1e-15
    # reflection: the semicircle is symmetric
    assert abs(dilate_handle(h, -1.0)(z) - h(z)) < 1e-12
    with pytest.raises(DegenerateDilationError):
        dilate_handle(h, 0.0)


def test_gaussian_component():
    # symmetric Bernoulli: K(z) = 1/z, a pure pole at 0 with residue 1
    assert gaussian_component_from_F(entry("bernoulli").f_closed) == pytest.approx(1.0, abs=1e-9)
    assert gaussian_component_from_F(entry("semicircle").f_closed) == 0.0
    assert gaussian_component_from_F(entry("kesten", t=2.0).f_closed) == 0.0


def test_k_profile_of_normal_matches_closed_form():
    from boolsd.catalog import normal_k

    grid = np.array([-3.0, -1.0, -0.2, 0.3, 1.5, 4.0])
    prof = k_from_F(entry("normal").f_closed, grid)
    np.testing.assert_allclose(prof.k, [normal_k(x) for x in grid], rtol=1e-9)


def test_k_grid_must_avoid_zero():
    with pytest.raises(DomainError):
        k_from_F(entry("normal").f_closed, [0.0, 1.0])


def test_ac_certificate_detects_levy_atom():
    # F(z) = z - 1/(z - 1) has a real pole at 1: Levy atom
    h = TransformHandle(F, lambda z: z - 1 / (z - 1))
    cert = levy_ac_certificate(h, [-1.0, 0.5, 2.0], [0.0, 1.0])
    assert not cert.passed and 1.0 in cert.spikes
    ok = levy_ac_certificate(entry("normal").f_closed, [-1.0, 0.5, 2.0], [0.0])
    assert ok.passed


def test_pair_route_matches_closed_form():
    e = entry("normal")
    h = f_from_pair(e.pair)
    for z in (0.5 + 1j, -2 + 0.1j, 3 + 0.01j):
        assert abs(h(z) - e.f_closed(z)) < 1e-8


@given(st.floats(-4, 4), st.floats(1e-3, 4))
def test_f_increases_imaginary_part(x, y):
    z = complex(x, y)
    for h in (entry("normal").f_closed, entry("semicircle").f_closed, entry("free_poisson").f_closed):
        assert h(z).imag >= y - 1e-12


@given(st.floats(-3, 3), st.floats(0.05, 3))
def test_eta_k_consistency_random(x, y):
    h = entry("kesten", t=3.0).f_closed
    w = complex(x, -y)
    assert abs(eta(h)(w) - w * self_energy(h)(1 / w)) < 1e-10 * (1 + abs(w))


@given(st.floats(0.2, 5), st.floats(-3, 3), st.floats(0.1, 3))
def test_dilation_scales_self_energy(c, x, y):
    h = entry("normal").f_closed
    z = complex(x, y)
    lhs = self_energy(dilate_handle(h, c))(z)
    rhs = c * self_energy(h)(z / c)
    assert abs(lhs - rhs) < 1e-11 * (1 + abs(rhs))
    assert cmath.isfinite(lhs)
