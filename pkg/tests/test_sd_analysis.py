import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from boolsd.catalog import entry, normal_ell
from boolsd.errors import InvariantViolation, ShiftRefused
from boolsd.measure_model import SpectralMeasure
from boolsd.profiles import KProfile, two_sided_grid
from boolsd.sd_analysis import (
    FAIL,
    INCONCLUSIVE,
    PASS,
    atom_census,
    check_boolean_sd,
    normal_p,
    normal_p_fd,
    normal_profile,
    normal_shift_scan,
    normal_threshold,
    profile_from_ell,
    profile_from_k,
    shift_profile,
    shift_threshold,
    shift_threshold_from_ell,
    unimodality_check,
)
from boolsd.transforms import dilate_handle, boolean_shift_handle

GRID = two_sided_grid(-5, 5, 400)


# unimodality ---------------------------------------------------------------------


def test_unimodal_profile_passes():
    prof = profile_from_k(lambda x: math.exp(-abs(x)), GRID)
    assert unimodality_check(prof).verdict == PASS


def test_bump_away_from_zero_fails_with_witness():
    prof = profile_from_k(lambda x: math.exp(-(x - 1.0) ** 2), GRID)
    rep = unimodality_check(prof)
    assert rep.verdict == FAIL
    w = rep.worst_violation
    assert 0 < w["x1"] < w["x2"] <= 1.0 + 1e-9 or w["x1"] < w["x2"] < 0
    assert w["gap"] > 0


def test_zero_profile_passes():
    prof = profile_from_k(lambda x: 0.0, GRID)
    rep = unimodality_check(prof)
    assert rep.verdict == PASS and "vanishes" in rep.note


def test_tiny_wiggle_forgiven_by_relative_tolerance():
    prof = profile_from_k(lambda x: math.exp(-abs(x)) * (1 + 1e-8 * math.sin(50 * x)), GRID)
    assert unimodality_check(prof).verdict == PASS


def test_flagged_witness_is_inconclusive():
    grid = two_sided_grid(-2, 2, 60)
    k = np.exp(-np.abs(grid))
    i = int(np.searchsorted(grid, 1.0))
    k[i] = 10.0
    flags = ["" for _ in grid]
    flags[i] = "unconverged"
    prof = KProfile.from_samples(grid, k, flags)
    assert unimodality_check(prof).verdict == INCONCLUSIVE


def test_profile_grid_validation():
    with pytest.raises(ValueError):
        KProfile.from_samples([0.0, 1.0], [1.0, 1.0])
    with pytest.raises(ValueError):
        KProfile.from_samples([1.0, 0.5], [1.0, 1.0])


@given(st.floats(0.1, 5), st.floats(0.1, 5))
def test_two_sided_exponentials_always_pass(a, b):
    prof = profile_from_k(lambda x: math.exp(-a * x) if x > 0 else math.exp(b * x), GRID)
    assert unimodality_check(prof).verdict == PASS


# full SD check ---------------------------------------------------------------------


@pytest.mark.parametrize("fid,params,expected", [
    ("semicircle", {}, PASS),
    ("kesten", {"t": 2.0}, PASS),
    ("normal", {}, PASS),
    ("free_poisson", {"lambda": 0.5}, FAIL),
    ("free_poisson", {"lambda": 1.0}, PASS),
    ("free_poisson", {"lambda": 2.0}, FAIL),
    ("two_point", {"p": 0.3}, FAIL),
    ("two_point", {"p": 0.7}, FAIL),
    ("two_point", {"p": 0.5}, PASS),
    ("cauchy", {}, PASS),
])
def test_check_boolean_sd_verdicts(fid, params, expected):
    res = check_boolean_sd(entry(fid, **params))
    assert res.verdict == expected, res.reason
    assert res.to_json()["verdict"] == expected


def test_levy_atom_reason_reported():
    res = check_boolean_sd(entry("two_point", p=0.3))
    assert "Levy measure has atoms" in res.reason
    res = check_boolean_sd(entry("free_poisson", **{"lambda": 2.0}))
    assert "not unimodal" in res.reason


def test_semicircle_window_dependence_of_shift():
    assert check_boolean_sd(entry("semicircle", m=2.0)).verdict == PASS
    assert check_boolean_sd(entry("semicircle", m=3.0)).verdict == FAIL
    assert check_boolean_sd(entry("semicircle", m=-3.0)).verdict == FAIL


@pytest.mark.parametrize("c", [0.3, 2.5])
def test_dilation_invariance(c):
    base = entry("kesten", t=3.0)
    h = dilate_handle(base.f_closed, c)
    assert check_boolean_sd(h, window=(-4 * c, 4 * c)).verdict == PASS


def test_boolean_shift_invariance():
    # Boolean shift adds a constant to K: the Levy measure is unchanged
    h = boolean_shift_handle(entry("normal").f_closed, 1.7)
    assert check_boolean_sd(h, window=(-10, 10)).verdict == PASS


def test_closed_k_route_agrees():
    e = entry("normal")
    a = check_boolean_sd(e)
    b = check_boolean_sd(e, use_closed_k=True)
    np.testing.assert_allclose(a.profile.k, b.profile.k, rtol=1e-8)


def test_measure_input_route():
    mu = SpectralMeasure(density=lambda x: math.sqrt(max(4 - x * x, 0)) / (2 * math.pi),
                         support=[(-2, 2)], mass_hint=1.0)
    res = check_boolean_sd(mu, window=(-3, 3), n=60)
    assert res.verdict == PASS


def test_bad_input_type():
    with pytest.raises(TypeError):
        check_boolean_sd(42)


# atom census -----------------------------------------------------------------------


def test_census_boolean_gaussian(oracle):
    o = oracle["boolean_gaussian_F"]
    cen = atom_census(entry("boolean_gaussian", gamma=o["gamma"], a=o["a"]).f_closed)
    assert cen.count == 2
    for (x, w), (xr, wr) in zip(cen.atoms, o["atoms"]):
        assert x == pytest.approx(xr, abs=1e-12)
        assert w == pytest.approx(wr, abs=1e-8)
    assert cen.poles == (0.0,)


def test_census_finds_levy_atom_pole():
    cen = atom_census(entry("two_point", p=0.3).f_closed)
    assert cen.levy_atoms and cen.levy_atoms[0] == pytest.approx(0.4, abs=1e-9)


def test_census_remark_atom():
    e = entry("remark_atom_family", p=2.0)
    res = check_boolean_sd(e)
    near_one = [w for x, w in res.census.atoms if abs(x - 1.0) < 1e-9]
    assert near_one == [pytest.approx(0.5, abs=1e-6)]
    assert res.census.zero_mass == 0.0


def test_certified_census_rejects_inner_atom():
    # k claimed on [-1, 1] while an atom sits at -0.5: contradicts selfdecomposability
    prof = profile_from_k(lambda x: 1.0, two_sided_grid(-1, 1, 50), support=[(-1, 1)])
    h = entry("boolean_gaussian", alpha=-0.5, beta=2.0).f_closed
    with pytest.raises(InvariantViolation):
        atom_census(h, prof, sd_certified=True, candidates=(-0.5,))


# shift thresholds ------------------------------------------------------------------


def test_threshold_flat_ell():
    x = np.linspace(-3, 3, 300)
    x = x[x != 0]
    rep = shift_threshold_from_ell(x, np.ones_like(x))
    assert rep.flat and math.isinf(rep.M_plus) and math.isinf(rep.M_minus)


def test_threshold_symmetric_for_symmetric_ell():
    prof = normal_profile(n=600)
    rep = shift_threshold(prof)
    assert rep.M_plus == pytest.approx(-rep.M_minus, rel=1e-6)
    assert rep.M_plus == pytest.approx(3.0864874732, abs=5e-3)


def test_threshold_needs_enough_points():
    with pytest.raises(ValueError):
        shift_threshold(profile_from_ell(normal_ell, two_sided_grid(-2, 2, 20)))


def test_shift_refused_with_gaussian_component():
    prof = profile_from_k(lambda x: math.exp(-abs(x)), GRID, gaussian_component=0.5)
    with pytest.raises(ShiftRefused):
        shift_profile(prof, 1.0)
    assert shift_profile(prof, 0.0) is prof


def test_shift_profile_moves_ell():
    prof = profile_from_ell(normal_ell, GRID)
    moved = shift_profile(prof, 1.0, grid=GRID)
    i = int(np.argmin(np.abs(GRID - 1.5)))
    assert moved.ell[i] == pytest.approx(normal_ell(GRID[i] - 1.0), rel=1e-14)


def test_arctan_family_threshold_matches_closed_form():
    # ell(t) = arctan(t) + pi/2: increasing everywhere, so only M_minus is informative
    x = two_sided_grid(-40, 40, 4000)
    rep = shift_threshold_from_ell(x, np.arctan(x) + math.pi / 2)
    # the pair (a, b) -> (-inf, inf) limit bounds M_plus from above by pi/2
    assert rep.M_plus <= math.pi / 2 + 1e-2


# the normal law ---------------------------------------------------------------------


def test_normal_threshold_values():
    rep = normal_threshold()
    assert rep.a0 == pytest.approx(-2.0297, abs=1e-4)
    assert rep.M0 == pytest.approx(3.0865, abs=1e-4)
    assert rep.derivative_crosscheck < 1e-6
    assert any(abs(z - rep.a0) < 1e-5 for z in rep.ell2_sign_changes)


def test_normal_p_routes_agree():
    for a in (-4.0, -2.0, -0.7):
        assert normal_p(a) == pytest.approx(normal_p_fd(a), abs=1e-6)


def test_normal_shift_scan_sides():
    rows = normal_shift_scan([2.9, 3.3, -3.3])
    assert [r["verdict"] for r in rows] == [PASS, FAIL, FAIL]


@pytest.mark.parametrize("m,expected", [(1.0, PASS), (2.0, FAIL)])
def test_arctan_family_dichotomy(m, expected):
    # SD exactly when m <= pi/2; F comes from the generating pair by quadrature
    assert check_boolean_sd(entry("arctan_levy_family", m=m)).verdict == expected
