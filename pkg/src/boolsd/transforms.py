"""Analytic transforms of measures and recovery of measures from boundary values.

Conventions: ``G(z) = int 1/(z - x) mu(dx)`` on the upper half-plane,
``F = 1/G``, ``K(z) = z - F(z)`` and ``eta(z) = z K(1/z) = 1 - z F(1/z)`` on the
lower half-plane. Boundary limits ``eps -> 0+`` are taken along a ladder of
``eps`` values and extrapolated (see :mod:`boolsd.limits`).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Callable, Optional

import numpy as np

from ._quad import cauchy_integral
from ._util import parallel_map
from .errors import DomainError, ExtrapolationError, InvariantViolation
from .limits import DEFAULT_LADDER, LIMIT_ATOL, LIMIT_RTOL, extrapolate, ladder_limit
from .measure_model import SpectralMeasure
from .profiles import DIVERGENT, OK, UNCONVERGED, BoundaryProfile, KProfile

G, F, K, ETA, PHI, R = "G", "F", "K", "eta", "phi", "R"
ROLES = (G, F, K, ETA, PHI, R)

ATOM_THRESHOLD = 1e-8
GAUSSIAN_THRESHOLD = 1e-8
# |Im F| boundary values above this are treated as divergent (Levy-atom candidates)
DIVERGENCE_LEVEL = 1e6


@dataclass(frozen=True)
class TransformHandle:
    """An analytic map with a declared role.

    Parameters
    ----------
    role : str
        One of ``"G"``, ``"F"``, ``"K"``, ``"eta"``, ``"phi"``, ``"R"``.
    eval : callable
        Scalar ``complex -> complex``.
    domain_floor : float
        Smallest imaginary part at which evaluation is trusted; 0 when the map
        extends continuously to the real line.
    boundary : callable, optional
        Exact boundary value ``x -> lim_{eps->0+} eval(x + i eps)`` when a
        closed form provides it; used instead of an epsilon ladder.
    measure : SpectralMeasure, optional
        The underlying measure, when known.
    """

    role: str
    eval: Callable[[complex], complex]
    domain_floor: float = 0.0
    boundary: Optional[Callable[[float], complex]] = field(default=None, compare=False)
    measure: Optional[SpectralMeasure] = field(default=None, compare=False, repr=False)
    label: str = ""

    def __post_init__(self):
        if self.role not in ROLES:
            raise ValueError(f"unknown transform role {self.role!r}")

    def __call__(self, z):
        if np.ndim(z) == 0:
            return complex(self.eval(complex(z)))
        z = np.asarray(z, dtype=complex)
        out = np.array([self.eval(complex(w)) for w in z.ravel()], dtype=complex)
        return out.reshape(z.shape)


def _require(handle, *roles):
    if handle.role not in roles:
        raise ValueError(f"expected a handle with role in {roles}, got {handle.role!r}")


# ---------------------------------------------------------------------------
# forward transforms


def cauchy(measure: SpectralMeasure, z) -> complex:
    """``G_mu(z)``: exact sum over atoms plus adaptive quadrature over the density.

    ``Im z > 0`` is required. Near the real axis the quadrature subtracts the
    density value at ``Re z`` and integrates the remainder, which keeps the
    kernel ``1/(z - x)`` well conditioned.
    """
    z = complex(z)
    if not z.imag > 0:
        raise DomainError(f"cauchy needs Im z > 0, got {z!r}")
    return _cauchy_upper(measure, z)


def _cauchy_upper(measure, z):
    total = sum(w / (z - x) for x, w in measure.atoms)
    if measure.density is not None:
        for lo, hi in measure.support:
            pts = measure.points_in(lo, hi)
            total += cauchy_integral(measure.density, lo, hi, z, pts)
    return complex(total)


def cauchy_handle(measure: SpectralMeasure) -> TransformHandle:
    return TransformHandle(G, lambda z: cauchy(measure, z), 0.0, measure=measure, label="quadrature")


def _probe_points():
    xs = np.array([-3.0, -1.0, -0.3, 0.0, 0.4, 1.2, 3.5])
    ys = np.array([0.05, 0.5, 2.0])
    return (xs[:, None] + 1j * ys[None, :]).ravel()


def check_f_range(handle: TransformHandle, points=None, tol=1e-9):
    """Raise :class:`InvariantViolation` unless ``Im F(z) >= Im z`` on the probe points."""
    _require(handle, F)
    pts = _probe_points() if points is None else np.asarray(points, dtype=complex)
    for z in pts:
        if z.imag <= handle.domain_floor:
            continue
        w = handle(z)
        if not w.imag >= z.imag - tol * max(1.0, abs(w)):
            raise InvariantViolation(f"Im F({z}) = {w.imag} < Im z = {z.imag}")


def f_transform(obj, check=True) -> TransformHandle:
    """Reciprocal Cauchy transform ``F = 1/G`` of a measure or a G/F/K handle."""
    if isinstance(obj, SpectralMeasure):
        measure = obj
        h = TransformHandle(F, lambda z: 1.0 / cauchy(measure, z), 0.0, measure=measure,
                            label="quadrature")
    elif obj.role == F:
        h = obj
    elif obj.role == G:
        g = obj
        bnd = None if g.boundary is None else (lambda x: 1.0 / g.boundary(x))
        h = TransformHandle(F, lambda z: 1.0 / g.eval(z), g.domain_floor, bnd, g.measure, g.label)
    elif obj.role == K:
        kk = obj
        bnd = None if kk.boundary is None else (lambda x: x - kk.boundary(x))
        h = TransformHandle(F, lambda z: z - kk.eval(z), kk.domain_floor, bnd, kk.measure, kk.label)
    else:
        raise ValueError(f"cannot build F from a handle with role {obj.role!r}")
    if check:
        check_f_range(h)
    return h


def g_from_f(handle: TransformHandle) -> TransformHandle:
    _require(handle, F, G)
    if handle.role == G:
        return handle
    bnd = None if handle.boundary is None else (lambda x: 1.0 / handle.boundary(x))
    return TransformHandle(G, lambda z: 1.0 / handle.eval(z), handle.domain_floor, bnd,
                           handle.measure, handle.label)


def self_energy(handle: TransformHandle) -> TransformHandle:
    """``K(z) = z - F(z)``."""
    _require(handle, F)
    bnd = None if handle.boundary is None else (lambda x: x - handle.boundary(x))
    return TransformHandle(K, lambda z: z - handle.eval(z), handle.domain_floor, bnd,
                           handle.measure, handle.label)


def eta(handle: TransformHandle) -> TransformHandle:
    """``eta(z) = 1 - z F(1/z) = z K(1/z)`` on the lower half-plane."""
    _require(handle, F, K)
    if handle.role == F:
        return TransformHandle(ETA, lambda z: 1.0 - z * handle.eval(1.0 / z), 0.0,
                               measure=handle.measure, label=handle.label)
    return TransformHandle(ETA, lambda z: z * handle.eval(1.0 / z), 0.0,
                           measure=handle.measure, label=handle.label)


def f_from_eta(eta_fn, label="", domain_floor=0.0) -> TransformHandle:
    """F handle from an eta function: ``K(z) = z eta(1/z)``, ``F = z - K``."""
    return TransformHandle(F, lambda z: z - z * eta_fn(1.0 / z), domain_floor, label=label)


def dilate_handle(handle: TransformHandle, c: float) -> TransformHandle:
    """F of ``D_c(mu)``: ``c F(z/c)`` for ``c > 0``; reflected through conjugation for ``c < 0``."""
    _require(handle, F)
    if c == 0:
        from .errors import DegenerateDilationError

        raise DegenerateDilationError("dilation factor must be nonzero")
    f = handle.eval
    if c > 0:
        ev = lambda z: c * f(z / c)  # noqa: E731
        bnd = None if handle.boundary is None else (lambda x: c * handle.boundary(x / c))
    else:
        ev = lambda z: c * f((z / c).conjugate()).conjugate()  # noqa: E731
        bnd = None if handle.boundary is None else (
            lambda x: c * complex(handle.boundary(x / c)).conjugate())
    return TransformHandle(F, ev, handle.domain_floor * abs(c), bnd, label=f"D_{c}({handle.label})")


def boolean_shift_handle(handle: TransformHandle, a: float) -> TransformHandle:
    """F of ``mu (+) delta_a``: ``F(z) - a``."""
    _require(handle, F)
    bnd = None if handle.boundary is None else (lambda x: handle.boundary(x) - a)
    return TransformHandle(F, lambda z: handle.eval(z) - a, handle.domain_floor, bnd,
                           label=f"{handle.label}+bool({a})")


def classical_shift_handle(handle: TransformHandle, m: float) -> TransformHandle:
    """F of ``mu * delta_m``: ``F(z - m)``."""
    _require(handle, F)
    bnd = None if handle.boundary is None else (lambda x: handle.boundary(x - m))
    return TransformHandle(F, lambda z: handle.eval(z - m), handle.domain_floor, bnd,
                           label=f"{handle.label}*delta({m})")


# ---------------------------------------------------------------------------
# boundary values


def _ladder_for(handle, ladder):
    floor = handle.domain_floor
    lad = tuple(e for e in ladder if e >= floor)
    if len(lad) < 5:
        raise ExtrapolationError(
            f"epsilon ladder reaches below the trusted floor {floor}; fewer than 5 usable points"
        )
    return lad


def boundary_limits(handle: TransformHandle, grid, functional, ladder=DEFAULT_LADDER,
                    atol=LIMIT_ATOL, rtol=LIMIT_RTOL):
    """Extrapolated ``lim functional(handle(x + i eps), eps)`` at each grid point.

    Returns ``(values, residuals, converged)``; closed-form boundary values are
    used directly when the handle provides them.
    """
    grid = np.asarray(grid, dtype=float)
    if handle.boundary is not None:
        vals = np.array([functional(complex(handle.boundary(x)), 0.0) for x in grid])
        return vals, np.zeros_like(vals), np.ones(grid.shape, dtype=bool)
    lad = np.asarray(_ladder_for(handle, ladder))

    def sample(x):
        return [functional(handle.eval(complex(x, e)), e) for e in lad]

    samples = np.array(parallel_map(sample, grid), dtype=float)
    if samples.ndim == 1:
        samples = samples.reshape(grid.size, lad.size)
    vals, res, ok, _ = extrapolate(lad, samples, atol, rtol)
    return vals, res, ok


def stieltjes_invert(handle: TransformHandle, window, n: int, ladder=DEFAULT_LADDER,
                     atol=LIMIT_ATOL, rtol=1e-6) -> BoundaryProfile:
    """Density samples ``-(1/pi) lim Im G(x + i eps)`` on ``n`` points of ``window``.

    Points where the ladder does not settle are flagged ``"unconverged"``
    (typically atoms or support edges); this is not an error.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    g = g_from_f(handle) if handle.role == F else handle
    _require(g, G)
    lo, hi = window
    grid = np.linspace(lo, hi, n)
    vals, res, ok = boundary_limits(g, grid, lambda w, e: -w.imag / math.pi, ladder, atol, rtol)
    flags = tuple(OK if c else UNCONVERGED for c in ok)
    return BoundaryProfile(grid, np.asarray(vals), np.asarray(res), flags, tuple(ladder))


def atom_mass(handle: TransformHandle, x0: float, threshold=ATOM_THRESHOLD, ladder=DEFAULT_LADDER,
              deep=True, atol=1e-10, rtol=1e-6) -> float:
    """``mu({x0}) = lim i eps G(x0 + i eps)``.

    The ordinary ladder is tried first; closed-form handles fall back on a deep
    ladder with logarithmic extrapolation for slowly vanishing limits.

    Raises
    ------
    ExtrapolationError
        When neither ladder converges.
    """
    if not math.isfinite(x0):
        raise DomainError("x0 must be finite")
    _require(handle, G, F)
    if handle.role == G:
        fn = lambda e: 1j * e * handle.eval(complex(x0, e))  # noqa: E731
    else:
        fn = lambda e: 1j * e / handle.eval(complex(x0, e))  # noqa: E731
    lad = _ladder_for(handle, ladder)
    use_deep = deep and handle.domain_floor == 0.0 and handle.label != "quadrature"
    lim = ladder_limit(fn, lad, atol, rtol, deep=use_deep)
    if not lim.converged:
        raise ExtrapolationError(
            f"atom mass at {x0} did not converge (residual {lim.residual:.3g})",
            partial=lim.value.real,
        )
    m = lim.value.real
    return 0.0 if m < threshold else float(m)


def k_from_F(handle: TransformHandle, grid, ladder=DEFAULT_LADDER, atol=1e-10, rtol=1e-7,
             gaussian_component=None) -> KProfile:
    """``k(x) = lim Im F(x + i eps) / (pi |x|)`` on ``grid`` (0 excluded).

    Divergent boundary values are flagged ``"divergent"`` (Levy-atom candidates),
    non-settling ones ``"unconverged"``.
    """
    _require(handle, F)
    grid = np.asarray(grid, dtype=float)
    if np.any(grid == 0):
        raise DomainError("k_from_F grid must exclude 0")
    vals, res, ok = boundary_limits(handle, grid, lambda w, e: w.imag, ladder, atol, rtol)
    k = np.asarray(vals, dtype=float) / (math.pi * np.abs(grid))
    flags = []
    for v, c in zip(vals, ok):
        if not math.isfinite(v) or abs(v) > DIVERGENCE_LEVEL:
            flags.append(DIVERGENT)
        elif not c:
            flags.append(UNCONVERGED)
        else:
            flags.append(OK)
    k = np.where(np.isfinite(k), k, 0.0)
    if gaussian_component is None:
        gaussian_component = gaussian_component_from_F(handle)
    return KProfile.from_samples(grid, k, flags, np.asarray(res) / (math.pi * np.abs(grid)),
                                 gaussian_component)


def gaussian_component_from_F(handle: TransformHandle, ladder=DEFAULT_LADDER,
                              threshold=GAUSSIAN_THRESHOLD) -> float:
    """``a = -lim i eps F(i eps)``, clipped to 0 below ``threshold``."""
    _require(handle, F)
    lad = _ladder_for(handle, ladder)
    deep = handle.domain_floor == 0.0 and handle.label != "quadrature"
    lim = ladder_limit(lambda e: -1j * e * handle.eval(complex(0.0, e)), lad, 0.1 * threshold, 1e-7,
                       deep=deep)
    if not lim.converged:
        raise ExtrapolationError(
            f"Gaussian component did not converge (residual {lim.residual:.3g})",
            partial=lim.value.real,
        )
    a = lim.value.real
    return 0.0 if abs(a) < threshold else float(a)


@dataclass(frozen=True)
class AcCertificate:
    """Numerical evidence that the Levy measure is absolutely continuous.

    ``regular`` lists ``(x, boundary Im F, passed)`` for probe points off the
    candidate set; ``singular`` lists ``(x, |eps F(x + i eps)|, passed)`` for the
    candidate points. Only finitely many candidate points are examined, so a
    pass is evidence rather than proof.
    """

    passed: bool
    regular: tuple
    singular: tuple
    gaussian_pole_at_zero: bool
    spikes: tuple = ()
    note: str = ("finitely many probe and candidate points are examined; "
                 "a pass is numerical evidence, not proof")

    def to_json(self):
        return {
            "passed": self.passed,
            "gaussian_pole_at_zero": self.gaussian_pole_at_zero,
            "regular": [{"x": x, "im_F": v, "passed": p} for x, v, p in self.regular],
            "singular": [{"x": x, "eps_F": v, "passed": p} for x, v, p in self.singular],
            "levy_atom_candidates": list(self.spikes),
            "note": self.note,
        }


def levy_ac_certificate(handle: TransformHandle, probe_grid, candidate_singular_points=(),
                        ladder=DEFAULT_LADDER, tol=1e-6) -> AcCertificate:
    """Check finite boundary limits of ``Im F`` off ``C`` and ``eps F(x + i eps) -> 0`` on ``C \\ {0}``.

    A Levy atom at ``x`` makes ``Im F(x + i eps)`` blow up like ``1/eps``; such
    points are reported in ``spikes``. A pole of ``F`` at 0 corresponds to a
    Gaussian component and is reported separately, not as a failure.
    """
    _require(handle, F)
    probe = np.asarray([x for x in np.asarray(probe_grid, dtype=float)
                        if all(abs(x - c) > 1e-12 for c in candidate_singular_points)])
    regular = []
    spikes = []
    if probe.size:
        vals, res, ok = boundary_limits(handle, probe, lambda w, e: w.imag, ladder)
        for x, v, r, c in zip(probe, vals, res, ok):
            good = bool(math.isfinite(v) and abs(v) < DIVERGENCE_LEVEL and (c or r < 1e-4 * (1 + abs(v))))
            regular.append((float(x), float(v), good))
            if not good:
                spikes.append(float(x))
    singular = []
    lad = _ladder_for(handle, ladder)
    for c in candidate_singular_points:
        if c == 0:
            continue
        lim = ladder_limit(lambda e: e * handle.eval(complex(c, e)), lad, 1e-10, 1e-6)
        v = abs(lim.value)
        good = bool(v < tol)
        singular.append((float(c), float(v), good))
        if not good:
            spikes.append(float(c))
    a = gaussian_component_from_F(handle, lad)
    passed = all(p for *_, p in regular) and all(p for *_, p in singular)
    return AcCertificate(passed, tuple(regular), tuple(singular), a > 0, tuple(sorted(spikes)))


def with_label(handle: TransformHandle, label: str) -> TransformHandle:
    return replace(handle, label=label)


def pick_integral(pair, z):
    """``b + int (1 + x z)/(z - x) tau(dx)`` for ``Im z >= 0``.

    This is ``K`` of the Boolean law and ``phi`` of the free law sharing the
    generating pair ``(b, tau)``.
    """
    z = complex(z)
    tau = pair.tau
    total = pair.b + sum(w * (1 + x * z) / (z - x) for x, w in tau.atoms)
    if tau.density is not None:
        d = tau.density
        for lo, hi in tau.support:
            total += cauchy_integral(lambda x: d(x) * (1 + x * z), lo, hi, z, tau.points_in(lo, hi))
    return complex(total)


def k_from_pair(pair, label="pair") -> TransformHandle:
    return TransformHandle(K, lambda z: pick_integral(pair, z), 0.0, label=label)


def f_from_pair(pair, label="pair") -> TransformHandle:
    """F of the Boolean law with generating pair ``pair``: ``F(z) = z - K(z)``."""
    return TransformHandle(F, lambda z: z - pick_integral(pair, z), 0.0, label=label)
