"""Adaptive Gauss-Kronrod quadrature helpers (QUADPACK via :func:`scipy.integrate.quad`).

Every integral is split at the supplied breakpoints so that integrands with
``|x|^-1``-type or endpoint singularities stay inside a single panel edge.
"""

from __future__ import annotations

import cmath
import math
import warnings

import numpy as np
from scipy.integrate import IntegrationWarning, quad

from .errors import QuadratureError

ATOL = 1e-10
RTOL = 1e-10
LIMIT = 200
_MAX_BISECT = 4

# half-width of the window used for singularity subtraction in cauchy_integral
_SUBTRACT_HALF_WIDTH = 1.0
# below this Im z the Cauchy kernel is treated as near-singular
_NEAR_AXIS = 0.5


def _panels(lo, hi, points):
    cuts = sorted({float(p) for p in points if lo < p < hi})
    edges = [lo, *cuts, hi]
    return list(zip(edges[:-1], edges[1:]))


def _quad_panel(func, a, b, epsabs, epsrel, limit, depth=0):
    with warnings.catch_warnings():
        warnings.simplefilter("error", IntegrationWarning)
        try:
            val, _ = quad(func, a, b, epsabs=epsabs, epsrel=epsrel, limit=limit)
            return val
        except IntegrationWarning:
            pass
    # refine-and-retry with a larger subdivision budget
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", IntegrationWarning)
        val, err = quad(func, a, b, epsabs=epsabs, epsrel=epsrel, limit=limit * 8)
    if caught and not (np.isfinite(val) and abs(err) <= max(1e3 * epsabs, 1e-6 * abs(val))):
        if depth < _MAX_BISECT and math.isfinite(a) and math.isfinite(b):
            # two nearby singularities in one panel: separate them by bisection
            m = 0.5 * (a + b)
            return (_quad_panel(func, a, m, epsabs, epsrel, limit, depth + 1)
                    + _quad_panel(func, m, b, epsabs, epsrel, limit, depth + 1))
        raise QuadratureError(
            f"quadrature on [{a}, {b}] did not converge (estimate {val!r}, error {err!r})",
            partial=val,
        )
    return val


def integrate(func, lo, hi, points=(), epsabs=ATOL, epsrel=RTOL, limit=LIMIT):
    """Integrate a real function over ``[lo, hi]`` (either end may be infinite).

    Raises
    ------
    QuadratureError
        When a panel fails twice; ``partial`` holds the sum accumulated so far.
    """
    if hi <= lo:
        return 0.0
    total = 0.0
    for a, b in _panels(lo, hi, points):
        try:
            total += _quad_panel(func, a, b, epsabs, epsrel, limit)
        except QuadratureError as exc:
            raise QuadratureError(str(exc), partial=total + (exc.partial or 0.0)) from None
    return total


def integrate_complex(func, lo, hi, points=(), epsabs=ATOL, epsrel=RTOL, limit=LIMIT):
    re = integrate(lambda t: func(t).real, lo, hi, points, epsabs, epsrel, limit)
    im = integrate(lambda t: func(t).imag, lo, hi, points, epsabs, epsrel, limit)
    return complex(re, im)


def _safe_weight(weight, s):
    try:
        return complex(weight(s))
    except (ZeroDivisionError, OverflowError, ValueError):
        return None


def cauchy_integral(weight, lo, hi, z, points=(), epsabs=ATOL, epsrel=RTOL):
    """Return ``int_lo^hi weight(t) / (z - t) dt`` for ``Im z >= 0``.

    ``Im z == 0`` gives the boundary value from the upper half-plane
    (principal value minus ``i*pi*weight(Re z)``). Close to the real axis the
    kernel is regularised by subtracting ``weight(s)`` with ``s`` the projection
    of ``Re z`` onto ``[lo, hi]``; the subtracted part is integrated in closed
    form. ``weight`` may be complex valued.
    """
    z = complex(z)
    x, y = z.real, z.imag
    if y < 0:
        raise ValueError("cauchy_integral expects Im z >= 0")
    if hi <= lo:
        return 0j
    pts = set(points)
    s = min(max(x, lo), hi)
    if math.isfinite(s):
        a = max(lo, s - _SUBTRACT_HALF_WIDTH)
        b = min(hi, s + _SUBTRACT_HALF_WIDTH)
        w0 = _safe_weight(weight, s) if y < _NEAR_AXIS else None
    else:
        w0 = None
    on_edge = y == 0 and (x == a or x == b) if w0 is not None else False
    if w0 is None or not cmath.isfinite(w0) or (on_edge and w0 != 0):
        kernel_pts = pts | ({x} if lo < x < hi else set())
        return integrate_complex(lambda t: weight(t) / (z - t), lo, hi, kernel_pts, epsabs, epsrel)

    local_pts = {p for p in pts if a < p < b} | ({x} if a < x < b else set())
    local = integrate_complex(
        lambda t: (weight(t) - w0) / (z - t), a, b, local_pts, epsabs, epsrel
    )
    if w0 != 0:
        local += w0 * (cmath.log(z - a) - cmath.log(z - b))
    outer = 0j
    if lo < a:
        outer += integrate_complex(lambda t: weight(t) / (z - t), lo, a, pts, epsabs, epsrel)
    if b < hi:
        outer += integrate_complex(lambda t: weight(t) / (z - t), b, hi, pts, epsabs, epsrel)
    return local + outer
