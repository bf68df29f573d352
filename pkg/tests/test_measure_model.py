import json
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from boolsd.errors import DegenerateDilationError, InvalidTripletError, MeasureError
from boolsd.measure_model import (
    GeneratingPair,
    LevyTriplet,
    SpectralMeasure,
    check_triplet_integrability,
    dilate,
    dirac,
    measure_from_json,
    measure_to_json,
    pair_from_triplet,
    shift_classical,
    triplet_from_pair,
)


def semicircle_density(x):
    return math.sqrt(max(4 - x * x, 0.0)) / (2 * math.pi)


def semicircle_measure():
    return SpectralMeasure(density=semicircle_density, support=[(-2, 2)], mass_hint=1.0)


def test_masses():
    mu = SpectralMeasure(atoms=[(1.0, 0.25)], density=lambda x: 0.75, support=[(0, 1)], mass_hint=1.0)
    assert mu.atom_mass == pytest.approx(0.25)
    assert mu.total_mass == pytest.approx(1.0, abs=1e-12)


def test_atoms_sorted_and_validated():
    mu = SpectralMeasure(atoms=[(2.0, 0.5), (-1.0, 0.5)])
    assert mu.atoms == ((-1.0, 0.5), (2.0, 0.5))
    with pytest.raises(MeasureError):
        SpectralMeasure(atoms=[(0.0, -0.1)])
    with pytest.raises(MeasureError):
        SpectralMeasure(atoms=[(0.0, 0.5), (0.0, 0.5)])


def test_negative_density_rejected():
    with pytest.raises(MeasureError):
        SpectralMeasure(density=lambda x: x, support=[(-1, 1)])


def test_mass_hint_mismatch_rejected():
    with pytest.raises(MeasureError):
        SpectralMeasure(density=lambda x: 1.0, support=[(0, 1)], mass_hint=2.0)


def test_empty_support_interval_rejected():
    with pytest.raises(MeasureError):
        SpectralMeasure(density=lambda x: 1.0, support=[(1, 1)])


def test_integrate_second_moment():
    assert semicircle_measure().integrate(lambda x: x * x) == pytest.approx(1.0, abs=1e-10)


def test_dilate_and_shift():
    mu = semicircle_measure()
    d = dilate(mu, 0.5)
    assert d.support == ((-1.0, 1.0),)
    assert d.integrate(lambda x: x * x) == pytest.approx(0.25, abs=1e-10)
    s = shift_classical(mu, 3.0)
    assert s.integrate(lambda x: x) == pytest.approx(3.0, abs=1e-10)
    neg = dilate(dirac(2.0), -1.5)
    assert neg.atoms == ((-3.0, 1.0),)
    with pytest.raises(DegenerateDilationError):
        dilate(mu, 0.0)


def test_json_roundtrip_table():
    mu = SpectralMeasure(atoms=[(3.0, 0.2)], density=lambda x: 0.8, support=[(0, 1)], mass_hint=1.0)
    text = json.dumps(measure_to_json(mu, table_points=11))
    back = measure_from_json(text)
    assert back.total_mass == pytest.approx(1.0, abs=1e-9)
    assert back.atoms == ((3.0, 0.2),)


def test_json_catalog_density():
    mu = measure_from_json({"density": {"kind": "semicircle", "params": {"m": 0, "sigma2": 1}}, "mass": 1})
    assert mu.total_mass == pytest.approx(1.0, abs=1e-9)
    assert measure_to_json(mu)["density"]["kind"] == "semicircle"


def test_json_table_requires_increasing_grid():
    with pytest.raises(MeasureError):
        measure_from_json({"density": {"kind": "table", "x": [0, 0, 1], "y": [1, 1, 1]}})


def test_triplet_validation():
    with pytest.raises(InvalidTripletError):
        LevyTriplet(a=-1.0, gamma=0.0)
    with pytest.raises(InvalidTripletError):
        LevyTriplet(a=0.0, gamma=0.0, levy_atoms=[(0.0, 1.0)])
    with pytest.raises(InvalidTripletError):
        LevyTriplet(a=0.0, gamma=0.0, levy_atoms=[(1.0, -1.0)])


def test_integrability_condition_violation():
    # nu(dx) = |x|^-3 dx near 0 has infinite (1 ^ x^2)-moment
    t = LevyTriplet(a=0.0, gamma=0.0, k=lambda x: 1.0 / (x * x), k_support=((-1.0, 1.0),))
    with pytest.raises(InvalidTripletError):
        check_triplet_integrability(t)


def test_pair_triplet_roundtrip_atoms():
    t = LevyTriplet(a=0.5, gamma=1.25, levy_atoms=[(-2.0, 0.3), (0.5, 1.1)])
    p = pair_from_triplet(t)
    assert p.tau.atom_at(0.0) == pytest.approx(0.5)
    back = triplet_from_pair(p)
    assert back.a == pytest.approx(0.5)
    assert back.gamma == pytest.approx(1.25, abs=1e-12)
    for (x, m), (y, n) in zip(back.levy_atoms, t.levy_atoms):
        assert x == y and m == pytest.approx(n, rel=1e-12)


def test_pair_triplet_roundtrip_density():
    t = LevyTriplet(a=0.0, gamma=-0.4, k=lambda x: math.exp(-abs(x)), k_support=((-math.inf, math.inf),))
    back = triplet_from_pair(pair_from_triplet(t))
    assert back.gamma == pytest.approx(-0.4, abs=1e-9)
    for x in (-3.0, -0.2, 0.7, 2.5):
        assert back.k(x) == pytest.approx(math.exp(-abs(x)), rel=1e-12)


def test_pair_root():
    p = GeneratingPair(1.0, SpectralMeasure(atoms=[(1.0, 2.0)]))
    r = p.root(4)
    assert r.b == 0.25 and r.tau.atoms == ((1.0, 0.5),)
    with pytest.raises(MeasureError):
        GeneratingPair(math.nan, SpectralMeasure())


@given(
    st.floats(0, 3),
    st.floats(-3, 3),
    st.lists(st.tuples(st.floats(-5, 5).filter(lambda x: abs(x) > 1e-2), st.floats(1e-3, 2)),
             max_size=4, unique_by=lambda t: round(t[0], 6)),
)
def test_random_triplets_roundtrip(a, gamma, atoms):
    t = LevyTriplet(a=a, gamma=gamma, levy_atoms=atoms)
    back = triplet_from_pair(pair_from_triplet(t))
    assert back.a == pytest.approx(a, abs=1e-12)
    assert back.gamma == pytest.approx(gamma, abs=1e-10)
    np.testing.assert_allclose([m for _, m in back.levy_atoms], [m for _, m in t.levy_atoms], rtol=1e-10)


@given(st.floats(0.1, 5), st.floats(-5, 5))
def test_dilate_shift_preserve_mass(c, m):
    mu = shift_classical(dilate(semicircle_measure(), c), m)
    assert mu.total_mass == pytest.approx(1.0, abs=1e-8)
