import math

import pytest

from boolsd._quad import cauchy_integral, integrate, integrate_complex
from boolsd.errors import QuadratureError


def test_integrate_with_endpoint_singularity():
    val = integrate(lambda x: 1 / math.sqrt(x), 0.0, 1.0)
    assert val == pytest.approx(2.0, abs=1e-9)


def test_integrate_infinite_range():
    val = integrate(lambda x: math.exp(-x * x), -math.inf, math.inf)
    assert val == pytest.approx(math.sqrt(math.pi), abs=1e-10)


def test_integrate_splits_at_points():
    val = integrate(lambda x: abs(x - 0.3), 0.0, 1.0, points=(0.3,))
    assert val == pytest.approx(0.045 + 0.245, abs=1e-12)


def test_empty_interval():
    assert integrate(lambda x: 1.0, 1.0, 1.0) == 0.0


def test_complex_integrand():
    val = integrate_complex(lambda t: complex(t, t * t), 0.0, 1.0)
    assert val == pytest.approx(complex(0.5, 1 / 3), abs=1e-12)


def test_divergent_integral_raises():
    with pytest.raises(QuadratureError):
        integrate(lambda x: 1.0 / x, 0.0, 1.0)


@pytest.mark.parametrize("z", [0.3 + 1j, 0.3 + 1e-3j, 0.3 + 1e-9j, 2.0 + 1e-6j])
def test_cauchy_integral_uniform(z):
    # int_0^1 dt / (z - t) = log(z) - log(z - 1)
    import cmath

    exact = cmath.log(z) - cmath.log(z - 1)
    got = cauchy_integral(lambda t: 1.0, 0.0, 1.0, z)
    assert abs(got - exact) < 1e-8


def test_cauchy_integral_boundary_value():
    # boundary value at x = 0.5 of the uniform law: principal value 0 minus i pi
    got = cauchy_integral(lambda t: 1.0, 0.0, 1.0, 0.5 + 0j)
    assert abs(got - (-1j * math.pi)) < 1e-9


def test_cauchy_integral_rejects_lower_half_plane():
    with pytest.raises(ValueError):
        cauchy_integral(lambda t: 1.0, 0.0, 1.0, 0.5 - 1j)
