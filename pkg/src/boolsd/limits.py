"""Boundary limits ``lim_{eps -> 0+} g(eps)`` from an epsilon ladder.

Values sampled on a decreasing ladder are extrapolated to ``eps = 0`` by
polynomial (Richardson) extrapolation of orders 1-2. When that does not settle,
an Aitken delta-squared step handles power-law convergence ``eps^q`` with
non-integer ``q`` (typical next to atoms and support edges). A deep ladder
``eps = 10^(-2^j)`` extrapolated in ``u = 1/log(1/eps)`` covers the logarithmic
convergence met at atoms of vanishing mass.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

DEFAULT_LADDER = tuple(10.0 ** -k for k in range(2, 9))
DEEP_LADDER = tuple(10.0 ** -(2 ** j) for j in range(2, 9))

LIMIT_ATOL = 1e-9
LIMIT_RTOL = 1e-7


@dataclass(frozen=True)
class Limit:
    value: complex
    residual: float
    converged: bool
    method: str
    samples: tuple = ()


def _poly_at_zero(eps, vals, deg):
    """Extrapolate to 0 with the degree-``deg`` interpolant through the last ``deg+1`` samples.

    ``vals`` has the ladder on its last axis.
    """
    e = np.asarray(eps[-(deg + 1):], dtype=float)
    w = np.empty(deg + 1)
    for i in range(deg + 1):
        others = np.delete(e, i)
        w[i] = np.prod(others / (others - e[i]))
    return vals[..., -(deg + 1):] @ w


def richardson_limit(eps, vals, order=2):
    """Richardson extrapolation (orders ``1..order``) along the last axis.

    Returns ``(estimate, residual)`` where the residual compares the estimates
    built from the newest and the previous window of samples.
    """
    eps = np.asarray(eps, dtype=float)
    vals = np.asarray(vals)
    if eps.size < order + 2:
        raise ValueError(f"need at least {order + 2} ladder points for order {order}")
    est = _poly_at_zero(eps, vals, order)
    prev = _poly_at_zero(eps[:-1], vals[..., :-1], order)
    return est, np.abs(est - prev)


def _aitken_last(vals):
    v0, v1, v2 = vals[..., -3], vals[..., -2], vals[..., -1]
    d1 = v2 - v1
    den = d1 - (v1 - v0)
    safe = np.abs(den) > 1e-300
    out = np.where(safe, v2 - d1 * d1 / np.where(safe, den, 1.0), v2)
    return out


def _aitken_sweep(vals):
    return np.stack([_aitken_last(vals[..., : i + 3]) for i in range(vals.shape[-1] - 2)], axis=-1)


def aitken_limit(vals):
    """Iterated Aitken delta-squared.

    Each sweep removes one power-law error term; sweeps continue while at
    least two transformed samples remain, and the residual compares the last two.
    """
    vals = np.asarray(vals)
    if vals.shape[-1] < 4:
        raise ValueError("need at least 4 ladder points for Aitken extrapolation")
    level = _aitken_sweep(vals)
    while level.shape[-1] >= 4:
        level = _aitken_sweep(level)
    return level[..., -1], np.abs(level[..., -1] - level[..., -2])


def _tolerance(value, atol, rtol):
    return atol + rtol * np.abs(value)


def extrapolate(eps, vals, atol=LIMIT_ATOL, rtol=LIMIT_RTOL):
    """Vectorised limit of ``vals`` (ladder on the last axis).

    Returns ``(value, residual, converged, used_aitken)`` arrays; Aitken replaces Richardson
    wherever the latter did not meet the tolerance and Aitken did better.
    """
    vals = np.asarray(vals)
    r_est, r_res = richardson_limit(eps, vals)
    a_est, a_res = aitken_limit(vals)
    use_a = (r_res > _tolerance(r_est, atol, rtol)) & (a_res < r_res)
    value = np.where(use_a, a_est, r_est)
    residual = np.where(use_a, a_res, r_res)
    converged = residual <= _tolerance(value, atol, rtol)
    return value, residual, converged, use_a


def _deep_limit(fn, atol, rtol):
    eps = np.asarray(DEEP_LADDER)
    vals = np.array([complex(fn(e)) for e in eps])
    if np.all(np.abs(vals[-2:]) <= atol) and np.abs(vals[-1]) <= np.abs(vals[-2]):
        return Limit(0j, float(np.abs(vals[-1])), True, "deep-vanishing", tuple(complex(v) for v in vals))
    u = 1.0 / np.log(1.0 / eps)
    est, res = richardson_limit(u, vals, order=4)
    est, res = complex(est), float(res)
    ok = bool(res <= _tolerance(est, atol, rtol))
    return Limit(est, res, ok, "deep-log", tuple(complex(v) for v in vals))


def ladder_limit(fn, ladder=DEFAULT_LADDER, atol=LIMIT_ATOL, rtol=LIMIT_RTOL, deep=False):
    """Limit of the scalar function ``fn(eps)`` as ``eps -> 0+``.

    Parameters
    ----------
    fn : callable
        ``eps -> complex``.
    ladder : sequence of float
        Decreasing positive sample points.
    deep : bool
        Also try the deep ladder with logarithmic extrapolation when the
        ordinary ladder does not converge. Only meaningful for closed-form
        functions that stay accurate at ``eps ~ 1e-256``.
    """
    eps = np.asarray(ladder, dtype=float)
    vals = np.array([complex(fn(e)) for e in eps])
    value, residual, ok, used_a = extrapolate(eps, vals, atol, rtol)
    method = "aitken" if used_a else "richardson"
    best = Limit(complex(value), float(residual), bool(ok), method, tuple(complex(v) for v in vals))
    if best.converged or not deep:
        return best
    alt = _deep_limit(fn, atol, rtol)
    if alt.converged or alt.residual < best.residual:
        return alt
    return best
