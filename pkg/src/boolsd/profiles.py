"""Sampled boundary data: Stieltjes-inversion profiles and Levy ``k``/``ell`` profiles."""

from __future__ import annotations

import io
import math
from dataclasses import dataclass, field

import numpy as np

from ._util import fmt17

# a sample of k above this value counts as "in the support"
LEVY_SUPPORT_THRESHOLD = 1e-10

OK = ""
DIVERGENT = "divergent"
UNCONVERGED = "unconverged"


def _csv(header, columns, flags):
    buf = io.StringIO(newline="")
    buf.write(",".join(header) + "\n")
    for row in zip(*columns, flags):
        *nums, flag = row
        buf.write(",".join(fmt17(v) for v in nums) + "," + flag + "\n")
    return buf.getvalue()


@dataclass(frozen=True)
class BoundaryProfile:
    """Extrapolated boundary limits on a real grid.

    ``values[i]`` estimates ``lim_{eps -> 0+}`` of the sampled functional at
    ``grid[i]``; ``residual`` is the extrapolation residual and ``flags`` marks
    points where the ladder did not settle (candidate atoms or support edges).
    """

    grid: np.ndarray
    values: np.ndarray
    residual: np.ndarray
    flags: tuple
    epsilon_ladder: tuple

    def to_csv(self):
        return _csv(("x", "value", "residual", "flag"), (self.grid, self.values, self.residual), self.flags)


@dataclass(frozen=True)
class KProfile:
    """Samples of ``k(x) = |x| dnu^ac/dx`` and ``ell(x) = |x| k(x)`` on a grid avoiding 0.

    Attributes
    ----------
    alpha, beta : float
        Estimated outer endpoints of ``{k != 0}``; infinite when ``k`` is still
        above threshold at the corresponding end of the grid.
    flags : tuple of str
        ``""`` for a clean sample, ``"divergent"`` for a Levy-atom candidate,
        ``"unconverged"`` when the extrapolation residual exceeds tolerance.
    gaussian_component : float
        Carried along so shift operations can refuse when it is positive.
    """

    grid: np.ndarray
    k: np.ndarray
    ell: np.ndarray
    alpha: float
    beta: float
    flags: tuple
    residual: np.ndarray = field(default=None)
    gaussian_component: float = 0.0

    @classmethod
    def from_samples(cls, grid, k, flags=None, residual=None, gaussian_component=0.0,
                     threshold=LEVY_SUPPORT_THRESHOLD):
        grid = np.asarray(grid, dtype=float)
        k = np.asarray(k, dtype=float)
        if grid.ndim != 1 or grid.shape != k.shape:
            raise ValueError("grid and k must be 1-d arrays of equal length")
        if np.any(np.diff(grid) <= 0):
            raise ValueError("grid must be strictly increasing")
        if np.any(grid == 0):
            raise ValueError("grid must exclude 0")
        k = np.where(np.isfinite(k) & (k < 0) & (k > -threshold), 0.0, k)
        flags = tuple(flags) if flags is not None else (OK,) * grid.size
        residual = np.zeros_like(grid) if residual is None else np.asarray(residual, dtype=float)
        alpha, beta = support_endpoints(grid, k, threshold)
        return cls(grid, k, np.abs(grid) * k, alpha, beta, flags, residual, float(gaussian_component))

    @property
    def is_zero(self):
        return not np.any(self.k > LEVY_SUPPORT_THRESHOLD)

    def to_csv(self):
        return _csv(("x", "k", "ell"), (self.grid, self.k, self.ell), self.flags)


def support_endpoints(grid, k, threshold=LEVY_SUPPORT_THRESHOLD):
    """``(alpha, beta)`` of the sampled support of ``k``; ``(nan, nan)`` when ``k`` vanishes."""
    on = np.flatnonzero(k > threshold)
    if on.size == 0:
        return math.nan, math.nan
    alpha = -math.inf if on[0] == 0 else float(grid[on[0]])
    beta = math.inf if on[-1] == grid.size - 1 else float(grid[on[-1]])
    return alpha, beta


def two_sided_grid(lo, hi, n=400, near_zero=1e-4, geometric_fraction=0.3):
    """Grid on ``[lo, hi]`` excluding 0: geometric towards 0, uniform in the bulk.

    Roughly ``geometric_fraction`` of the points on each side are spent on the
    geometric part ``[near_zero, 0.1 * |end|]``.
    """
    if lo >= 0 or hi <= 0:
        grid = np.linspace(lo, hi, n)
        return grid[grid != 0]
    pieces = []
    for end in (lo, hi):
        span = abs(end)
        m = max(8, int(round(n * span / (hi - lo))))
        n_geo = max(2, int(geometric_fraction * m))
        knee = 0.1 * span
        geo = np.geomspace(min(near_zero, 0.5 * knee), knee, n_geo, endpoint=False)
        bulk = np.linspace(knee, span, m - n_geo)
        pieces.append(math.copysign(1.0, end) * np.concatenate([geo, bulk]))
    return np.unique(np.concatenate(pieces))
