"""Measures on the real line and the two Boolean parametrisations.

A probability measure is described by its atoms and an absolutely continuous
density with declared support. The Boolean generating pair ``(b, tau)`` and the
Boolean Levy triplet ``(a, nu, gamma)`` are related by

    a     = tau({0})
    nu    = (1 + x^2) / x^2 * tau   on R \\ {0}
    gamma = b + int x (1_[-1,1](x) - 1/(1+x^2)) nu(dx)

and the Levy measure is stored through ``k(x) = |x| dnu/dx`` plus atoms.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Optional, Sequence

import numpy as np

from ._quad import integrate
from .errors import (
    DegenerateDilationError,
    InvalidTripletError,
    MeasureError,
    QuadratureError,
)

MASS_TOL = 1e-6
_TINY = 1e-200
_SAMPLES_PER_INTERVAL = 64


def _interval_samples(lo, hi, n=_SAMPLES_PER_INTERVAL):
    """Interior sample points of ``(lo, hi)``; infinite ends are reached through ``tan``."""
    u = (np.arange(n) + 0.5) / n
    if math.isfinite(lo) and math.isfinite(hi):
        return lo + (hi - lo) * u
    if math.isfinite(lo):
        return lo + np.tan(0.5 * np.pi * u)
    if math.isfinite(hi):
        return hi - np.tan(0.5 * np.pi * u[::-1])
    return np.tan(np.pi * (u - 0.5))


@dataclass(frozen=True)
class SpectralMeasure:
    """Finite positive measure: atoms plus a density on a union of intervals.

    Parameters
    ----------
    atoms : sequence of (location, mass)
        Masses strictly positive, locations pairwise distinct.
    density : callable, optional
        Scalar ``float -> float >= 0``; only consulted on ``support``.
    support : sequence of (lo, hi)
        Intervals on which the density may be nonzero (ends may be infinite).
    mass_hint : float, optional
        Declared total mass; a mismatch beyond ``1e-6`` raises.
    breakpoints : sequence of float
        Interior points where the density is singular or kinked; quadrature
        splits there (0 is always added).
    source : dict, optional
        JSON description the measure was built from, used for serialisation.
    """

    atoms: tuple = ()
    density: Optional[Callable[[float], float]] = None
    support: tuple = ()
    mass_hint: Optional[float] = None
    breakpoints: tuple = ()
    source: Optional[dict] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        atoms = tuple(sorted((float(x), float(w)) for x, w in self.atoms))
        for x, w in atoms:
            if not (w > 0 and math.isfinite(w)):
                raise MeasureError(f"atom at {x} has non-positive mass {w}")
        locs = [x for x, _ in atoms]
        if len(set(locs)) != len(locs):
            raise MeasureError("atom locations must be pairwise distinct")
        object.__setattr__(self, "atoms", atoms)
        support = tuple(sorted((float(lo), float(hi)) for lo, hi in self.support))
        for lo, hi in support:
            if not lo < hi:
                raise MeasureError(f"empty support interval ({lo}, {hi})")
        if self.density is None and support:
            support = ()
        object.__setattr__(self, "support", support)
        object.__setattr__(self, "breakpoints", tuple(sorted({0.0, *map(float, self.breakpoints)})))
        if self.density is not None:
            for lo, hi in support:
                xs = _interval_samples(lo, hi)
                vals = np.array([self.density(x) for x in xs], dtype=float)
                if np.any(vals < 0) or not np.all(np.isfinite(vals)):
                    bad = xs[np.argmin(np.where(np.isfinite(vals), vals, -np.inf))]
                    raise MeasureError(f"density is negative or non-finite near x={bad}")
        if self.mass_hint is not None:
            total = self.total_mass
            if abs(total - self.mass_hint) > MASS_TOL:
                raise MeasureError(
                    f"total mass {total!r} does not match declared mass {self.mass_hint!r}"
                )

    @cached_property
    def atom_mass(self):
        return float(sum(w for _, w in self.atoms))

    @cached_property
    def density_mass(self):
        return sum(self.integrate_density(lambda x: 1.0))

    @property
    def total_mass(self):
        return self.atom_mass + self.density_mass

    def points_in(self, lo, hi):
        return [p for p in self.breakpoints if lo < p < hi]

    def integrate_density(self, g, extra_points=()):
        """Per-interval integrals of ``g(x) * density(x)`` over the support."""
        if self.density is None:
            return [0.0]
        out = []
        for lo, hi in self.support:
            pts = [p for p in (*self.breakpoints, *extra_points) if lo < p < hi]
            out.append(integrate(lambda x: g(x) * self.density(x), lo, hi, pts))
        return out

    def integrate(self, g, extra_points=()):
        """``int g dmu`` (atoms summed exactly, density by quadrature)."""
        return sum(w * g(x) for x, w in self.atoms) + sum(self.integrate_density(g, extra_points))

    def density_at(self, x):
        """Vectorised density, zero off the support."""
        x = np.asarray(x, dtype=float)
        out = np.zeros_like(x)
        if self.density is None:
            return out
        flat = out.reshape(-1)
        for i, xi in enumerate(x.reshape(-1)):
            if any(lo <= xi <= hi for lo, hi in self.support):
                flat[i] = self.density(float(xi))
        return out

    def atom_at(self, x, tol=0.0):
        return sum(w for y, w in self.atoms if abs(y - x) <= tol)

    def scaled(self, s):
        """The measure ``s * mu`` for ``s > 0``."""
        if not s > 0:
            raise MeasureError("scale factor must be positive")
        dens = None if self.density is None else (lambda x, d=self.density: s * d(x))
        return SpectralMeasure(
            atoms=[(x, s * w) for x, w in self.atoms],
            density=dens,
            support=self.support,
            mass_hint=None if self.mass_hint is None else s * self.mass_hint,
            breakpoints=self.breakpoints,
        )


def dirac(x, mass=1.0):
    return SpectralMeasure(atoms=[(x, mass)], mass_hint=mass)


@dataclass(frozen=True)
class GeneratingPair:
    """Boolean generating pair ``(b, tau)``: ``K(z) = b + int (1 + x z)/(z - x) tau(dx)``."""

    b: float
    tau: SpectralMeasure

    def __post_init__(self):
        if not math.isfinite(self.b):
            raise MeasureError("b must be finite")

    def root(self, n):
        """Pair of the n-th Boolean convolution root ``(b/n, tau/n)``."""
        if self.tau.total_mass == 0:
            return GeneratingPair(self.b / n, self.tau)
        return GeneratingPair(self.b / n, self.tau.scaled(1.0 / n))


@dataclass(frozen=True)
class LevyTriplet:
    """Boolean Levy triplet ``(a, nu, gamma)``.

    The Levy measure is ``nu(dx) = k(x)/|x| dx + sum_j m_j delta_{x_j}``; ``k`` is
    carried as a callable on ``k_support`` so conversions stay exact.
    """

    a: float
    gamma: float
    k: Optional[Callable[[float], float]] = None
    k_support: tuple = ()
    levy_atoms: tuple = ()
    k_breakpoints: tuple = ()

    def __post_init__(self):
        if not self.a >= 0:
            raise InvalidTripletError(f"Gaussian component must be >= 0, got {self.a}")
        atoms = tuple(sorted((float(x), float(m)) for x, m in self.levy_atoms))
        for x, m in atoms:
            if x == 0:
                raise InvalidTripletError("Levy measure must not charge {0}")
            if not m > 0:
                raise InvalidTripletError(f"Levy atom at {x} has non-positive mass {m}")
        object.__setattr__(self, "levy_atoms", atoms)
        object.__setattr__(
            self, "k_support", tuple(sorted((float(lo), float(hi)) for lo, hi in self.k_support))
        )

    def ell(self, x):
        return abs(x) * self.k(x) if self.k is not None else 0.0

    def profile(self, grid):
        """Sample ``k`` on ``grid`` as a :class:`~boolsd.profiles.KProfile`."""
        from .profiles import KProfile

        grid = np.asarray(grid, dtype=float)
        k = np.zeros_like(grid)
        if self.k is not None:
            for i, x in enumerate(grid):
                if any(lo <= x <= hi for lo, hi in self.k_support):
                    k[i] = self.k(float(x))
        return KProfile.from_samples(grid, k, gaussian_component=self.a)


def _drift_kernel(x):
    """``x (1_[-1,1](x) (1+x^2) - 1) / x^2``: the gamma-correction per unit of tau."""
    return x if abs(x) <= 1 else -1.0 / x


def triplet_from_pair(pair: GeneratingPair) -> LevyTriplet:
    """Boolean Levy triplet of the measure with generating pair ``pair``."""
    tau = pair.tau
    a = tau.atom_at(0.0)
    levy_atoms = [(x, (1 + x * x) / (x * x) * w) for x, w in tau.atoms if x != 0]
    k = None
    if tau.density is not None:
        dens = tau.density

        def k(x, dens=dens):
            return (1 + x * x) * dens(x) / abs(x) if x != 0 else math.inf

    try:
        drift = tau.integrate(lambda x: _drift_kernel(x) if x != 0 else 0.0, extra_points=(-1.0, 1.0))
    except QuadratureError as exc:
        raise QuadratureError(f"gamma integral failed: {exc}", partial=exc.partial) from None
    return LevyTriplet(
        a=a,
        gamma=pair.b + drift,
        k=k,
        k_support=tau.support,
        levy_atoms=levy_atoms,
        k_breakpoints=tau.breakpoints,
    )


def levy_mass_near_zero(triplet: LevyTriplet):
    """``int (1 ^ x^2) nu(dx)``; finite for an admissible triplet (soft numerical check)."""
    total = sum(min(1.0, x * x) * m for x, m in triplet.levy_atoms)
    if triplet.k is not None:
        kk = triplet.k
        for lo, hi in triplet.k_support:
            pts = [p for p in (-1.0, 0.0, 1.0, *triplet.k_breakpoints) if lo < p < hi]
            total += integrate(
                lambda x: min(1.0, x * x) * kk(x) / abs(x) if x != 0 else 0.0, lo, hi, pts
            )
    return total


def check_triplet_integrability(triplet: LevyTriplet):
    """Raise :class:`InvalidTripletError` when ``int (1 ^ x^2) nu(dx)`` is not finite."""
    try:
        val = levy_mass_near_zero(triplet)
    except QuadratureError as exc:
        raise InvalidTripletError(
            f"int (1 ^ x^2) nu(dx) does not converge (partial {exc.partial!r})"
        ) from None
    if not math.isfinite(val):
        raise InvalidTripletError("int (1 ^ x^2) nu(dx) is infinite")
    return val


def pair_from_triplet(triplet: LevyTriplet) -> GeneratingPair:
    """Generating pair ``(b, tau)`` of an admissible triplet (``int (1 ^ x^2) nu(dx) < inf``)."""
    check_triplet_integrability(triplet)
    atoms = [(x, x * x / (1 + x * x) * m) for x, m in triplet.levy_atoms]
    if triplet.a > 0:
        atoms.append((0.0, triplet.a))
    dens = None
    if triplet.k is not None:
        kk = triplet.k

        def dens(x, kk=kk):
            if x == 0:
                # value at 0 is immaterial for the measure; use the two-sided mean so
                # quadrature that samples 0 sees no artificial jump
                return 0.5 * _TINY * (kk(_TINY) + kk(-_TINY))
            return abs(x) * kk(x) / (1 + x * x)

    tau = SpectralMeasure(
        atoms=atoms,
        density=dens,
        support=triplet.k_support,
        breakpoints=triplet.k_breakpoints,
    )
    drift = tau.integrate(lambda x: _drift_kernel(x) if x != 0 else 0.0, extra_points=(-1.0, 1.0))
    return GeneratingPair(b=triplet.gamma - drift, tau=tau)


def dilate(measure: SpectralMeasure, c: float) -> SpectralMeasure:
    """Push-forward ``D_c(mu)`` under ``x -> c x``."""
    if c == 0:
        raise DegenerateDilationError("dilation factor must be nonzero")
    c = float(c)
    dens = None
    if measure.density is not None:
        d = measure.density

        def dens(x, d=d):
            return d(x / c) / abs(c)

    support = [tuple(sorted((c * lo, c * hi))) for lo, hi in measure.support]
    return SpectralMeasure(
        atoms=[(c * x, w) for x, w in measure.atoms],
        density=dens,
        support=support,
        mass_hint=measure.mass_hint,
        breakpoints=[c * p for p in measure.breakpoints],
    )


def shift_classical(measure: SpectralMeasure, m: float) -> SpectralMeasure:
    """Classical shift ``mu * delta_m`` (translation by ``m``)."""
    m = float(m)
    dens = None
    if measure.density is not None:
        d = measure.density

        def dens(x, d=d):
            return d(x - m)

    return SpectralMeasure(
        atoms=[(x + m, w) for x, w in measure.atoms],
        density=dens,
        support=[(lo + m, hi + m) for lo, hi in measure.support],
        mass_hint=measure.mass_hint,
        breakpoints=[p + m for p in measure.breakpoints],
    )


# ---------------------------------------------------------------------------
# JSON measure descriptions
#   {"atoms": [{"x": .., "w": ..}], "density": {"kind": "table", "x": [..], "y": [..]}
#    | {"kind": "<catalog-id>", "params": {..}}, "support": [[lo, hi], ..], "mass": 1.0}


def _bound(v):
    if isinstance(v, str):
        return float(v.replace("Infinity", "inf"))
    return float(v)


def measure_from_json(desc) -> SpectralMeasure:
    """Build a measure from a JSON description (``dict``, JSON text or file path)."""
    if isinstance(desc, str):
        text = desc
        if not text.lstrip().startswith("{"):
            with open(desc, encoding="utf-8") as fh:
                text = fh.read()
        desc = json.loads(text)
    atoms = [(float(a["x"]), float(a["w"])) for a in desc.get("atoms", [])]
    mass = desc.get("mass")
    dens_desc = desc.get("density")
    support = [(_bound(lo), _bound(hi)) for lo, hi in desc.get("support", [])]
    density = None
    breakpoints: Sequence[float] = ()
    if dens_desc:
        kind = dens_desc.get("kind")
        if kind == "table":
            xs = np.asarray(dens_desc["x"], dtype=float)
            ys = np.asarray(dens_desc["y"], dtype=float)
            if xs.ndim != 1 or xs.shape != ys.shape or np.any(np.diff(xs) <= 0):
                raise MeasureError("table density needs strictly increasing x and matching y")

            def density(x, xs=xs, ys=ys):
                return float(np.interp(x, xs, ys, left=0.0, right=0.0))

            if not support:
                support = [(float(xs[0]), float(xs[-1]))]
            breakpoints = xs[1:-1].tolist() if xs.size < 200 else ()
        else:
            from .catalog import entry

            base = entry(kind, **dens_desc.get("params", {})).measure
            if base is None:
                raise MeasureError(f"catalog family {kind!r} has no explicit measure")
            density = base.density
            breakpoints = base.breakpoints
            if not support:
                support = list(base.support)
            if not atoms and dens_desc.get("include_atoms", True):
                atoms = list(base.atoms)
    return SpectralMeasure(
        atoms=atoms,
        density=density,
        support=support,
        mass_hint=None if mass is None else float(mass),
        breakpoints=breakpoints,
        source=desc,
    )


def measure_to_json(measure: SpectralMeasure, table_points=2001):
    """JSON-ready description; densities without a recorded source are tabulated."""
    if measure.source is not None:
        return measure.source
    out = {"atoms": [{"x": x, "w": w} for x, w in measure.atoms]}
    if measure.density is not None:
        if any(not (math.isfinite(lo) and math.isfinite(hi)) for lo, hi in measure.support):
            raise MeasureError("cannot tabulate a density with unbounded support")
        xs = np.concatenate(
            [np.linspace(lo, hi, table_points) for lo, hi in measure.support]
        )
        ys = measure.density_at(xs)
        out["density"] = {"kind": "table", "x": xs.tolist(), "y": ys.tolist()}
        out["support"] = [[lo, hi] for lo, hi in measure.support]
    if measure.mass_hint is not None:
        out["mass"] = measure.mass_hint
    return out
