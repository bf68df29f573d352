import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from boolsd.limits import DEFAULT_LADDER, aitken_limit, extrapolate, ladder_limit, richardson_limit


def test_richardson_exact_for_quadratic():
    eps = np.array([1e-1, 5e-2, 2.5e-2, 1.25e-2])
    vals = 3.0 + 2.0 * eps - 7.0 * eps**2
    est, res = richardson_limit(eps, vals)
    assert est == pytest.approx(3.0, abs=1e-12)
    assert res < 1e-10


def test_richardson_needs_enough_points():
    with pytest.raises(ValueError):
        richardson_limit([0.1, 0.05, 0.02], [1.0, 1.0, 1.0])


def test_aitken_geometric_sequence():
    n = np.arange(8)
    vals = 1.5 + 0.5**n
    est, res = aitken_limit(vals)
    assert est == pytest.approx(1.5, abs=1e-12)


def test_extrapolate_vectorised():
    eps = np.array(DEFAULT_LADDER)
    vals = np.vstack([1 + eps, 2 - eps**2])
    value, residual, ok, _ = extrapolate(eps, vals)
    np.testing.assert_allclose(value, [1, 2], atol=1e-10)
    assert ok.all()


def test_ladder_limit_linear_error():
    lim = ladder_limit(lambda e: 1j + 0.3 * e)
    assert lim.converged
    assert abs(lim.value - 1j) < 1e-9


def test_deep_ladder_handles_log_decay():
    # mass vanishing like 1/log(1/eps): the ordinary ladder cannot settle
    lim = ladder_limit(lambda e: 1.0 / np.log(1.0 / e), deep=True, atol=1e-4)
    assert abs(lim.value) < 1e-3


@given(st.floats(-5, 5), st.floats(-5, 5), st.floats(-5, 5))
def test_polynomial_limits_recovered(c0, c1, c2):
    lim = ladder_limit(lambda e: c0 + c1 * e + c2 * e * e)
    assert abs(lim.value - c0) < 1e-8 * (1 + abs(c0))
