"""Boolean selfdecomposability: unimodality of ``k``, atom census and shift thresholds.

A law is Boolean selfdecomposable exactly when its Boolean Levy measure is
absolutely continuous and ``k`` is unimodal with mode 0 (non-decreasing on the
negative half-line, non-increasing on the positive one). A classical shift by
``m`` moves ``ell`` rigidly, ``ell_m(t) = ell(t - m)``, which yields explicit
thresholds beyond which unimodality must break.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
from scipy.optimize import brentq, golden

from ._util import parallel_map
from .catalog import CatalogEntry, normal_ell, normal_f, normal_f_derivatives
from .errors import ExtrapolationError, InvariantViolation, ShiftRefused
from .measure_model import SpectralMeasure
from .profiles import DIVERGENT, OK, KProfile, two_sided_grid
from .transforms import (
    ATOM_THRESHOLD,
    F,
    TransformHandle,
    atom_mass,
    f_transform,
    gaussian_component_from_F,
    k_from_F,
    levy_ac_certificate,
)

PASS, FAIL, INCONCLUSIVE = "pass", "fail", "inconclusive"
UNIMODALITY_TOL = 1e-6
MIN_POINTS_PER_SIDE = 8


# ---------------------------------------------------------------------------
# unimodality


@dataclass(frozen=True)
class UnimodalityReport:
    """Verdict of the mode-0 unimodality test.

    ``worst_violation`` is ``None`` on a clean pass, otherwise a dict with the
    witness pair ``x1 < x2`` (same side of 0), the two ``k`` values and the gap
    by which monotonicity is broken.
    """

    verdict: str
    worst_violation: Optional[dict]
    tolerance: float
    note: str = ""

    def to_json(self):
        return {"verdict": self.verdict, "worst_violation": self.worst_violation,
                "tolerance": self.tolerance, "note": self.note}


def _side_violation(x, k, r, bad, increasing, tol):
    """Worst violation of monotonicity on one side.

    ``increasing`` asks for ``k`` non-decreasing in ``x``. The allowed slack of a
    pair is ``tol * max(k1, k2)`` plus both extrapolation residuals.
    """
    n = x.size
    if n < 2:
        return None
    i, j = np.triu_indices(n, 1)  # x[i] < x[j]
    gap = (k[i] - k[j]) if increasing else (k[j] - k[i])
    slack = tol * np.maximum(k[i], k[j]) + r[i] + r[j]
    excess = gap - slack
    w = int(np.argmax(excess))
    if excess[w] <= 0:
        return None
    a, b = i[w], j[w]
    contaminated = bool(bad[a] or bad[b])
    clean = ~(bad[i] | bad[j])
    clean_excess = np.where(clean, excess, -np.inf)
    if contaminated and np.any(clean_excess > 0):
        w = int(np.argmax(clean_excess))
        a, b = i[w], j[w]
        contaminated = False
    return {
        "x1": float(x[a]), "x2": float(x[b]), "k1": float(k[a]), "k2": float(k[b]),
        "gap": float(gap[w]), "excess": float(excess[w]), "contaminated": contaminated,
    }


def unimodality_check(profile: KProfile, tolerance: float = UNIMODALITY_TOL) -> UnimodalityReport:
    """Is ``k`` non-decreasing on ``x < 0`` and non-increasing on ``x > 0``?

    Violations up to ``tolerance`` relative to the larger ``k`` value of the
    witness pair (widened by extrapolation residuals) are forgiven. A failure
    whose only witnesses involve flagged samples is reported as inconclusive.
    """
    if profile.is_zero:
        return UnimodalityReport(PASS, None, tolerance, "k vanishes: no Levy measure")
    x, k = profile.grid, profile.k
    r = np.zeros_like(k) if profile.residual is None else np.nan_to_num(profile.residual, nan=0.0)
    bad = np.array([f != OK for f in profile.flags])
    finite = np.isfinite(k)
    worst = None
    notes = []
    for side, increasing in ((x < 0, True), (x > 0, False)):
        sel = side & finite
        nonzero = int(np.count_nonzero(k[sel] > 0))
        if 0 < nonzero < MIN_POINTS_PER_SIDE:
            notes.append(f"only {nonzero} samples with k > 0 on the {'negative' if increasing else 'positive'} side")
        v = _side_violation(x[sel], k[sel], r[sel], bad[sel], increasing, tolerance)
        if v is not None and (worst is None or (worst["contaminated"], -worst["excess"]) > (v["contaminated"], -v["excess"])):
            worst = v
    if worst is None:
        verdict = INCONCLUSIVE if notes else PASS
    else:
        verdict = INCONCLUSIVE if worst["contaminated"] else FAIL
    return UnimodalityReport(verdict, worst, tolerance, "; ".join(notes))


# ---------------------------------------------------------------------------
# atom census


@dataclass(frozen=True)
class AtomCensus:
    """Atoms of ``mu`` found outside ``(alpha, beta)``, the mass at 0, and poles of ``F``.

    Poles of ``F`` on the real line away from 0 are atoms of the Boolean Levy
    measure; a pole at 0 is the Gaussian component.
    """

    atoms: tuple
    zero_mass: float
    poles: tuple
    alpha: float
    beta: float

    @property
    def count(self):
        return len(self.atoms)

    @property
    def levy_atoms(self):
        return tuple(p for p in self.poles if p != 0.0)

    def to_json(self):
        return {"atoms": [{"x": x, "w": w} for x, w in self.atoms], "count": self.count,
                "zero_mass": self.zero_mass, "poles": list(self.poles),
                "alpha": self.alpha, "beta": self.beta}


def _real_f(handle, x, delta=1e-13):
    if handle.boundary is not None:
        v = complex(handle.boundary(x))
    else:
        v = handle.eval(complex(x, delta))
    # an infinite boundary value (a pole) carries no usable sign
    return v.real if cmath.isfinite(v) else math.nan


def _scan_points(lo, hi, anchor_left, n=600):
    """Points in ``(lo, hi)`` clustered geometrically towards the finite anchor end."""
    span = hi - lo
    geo = np.geomspace(1e-10 * max(1.0, span), span, n // 2, endpoint=False)
    lin = np.linspace(0, span, n // 2, endpoint=False)[1:]
    off = np.unique(np.concatenate([geo, lin]))
    return lo + off if anchor_left else hi - off[::-1]


def _outer_radius(handle, center):
    r = 2.0 * max(1.0, abs(center))
    for _ in range(60):
        left, right = _real_f(handle, -r), _real_f(handle, r)
        if left < 0 < right:
            return r
        r *= 2.0
    return r


def _sign_changes(handle, xs):
    vals = np.array([_real_f(handle, x) for x in xs])
    # samples that hit a pole exactly are dropped; the sign change survives
    keep = np.isfinite(vals)
    xs, vals = np.asarray(xs)[keep], vals[keep]
    zeros, poles = [], []
    for (x0, v0), (x1, v1) in zip(zip(xs[:-1], vals[:-1]), zip(xs[1:], vals[1:])):
        if v0 < 0 <= v1 or v0 <= 0 < v1:
            zeros.append((x0, x1))
        elif v0 > 0 > v1:
            poles.append((x0, x1))
    return zeros, poles


def atom_census(handle: TransformHandle, profile: Optional[KProfile] = None, sd_certified=False,
                threshold=ATOM_THRESHOLD, candidates=()) -> AtomCensus:
    """Locate atoms as zeros of the real boundary values of ``F`` off the support of ``k``.

    Off the closed support of the Levy measure ``F`` is real and strictly
    increasing between consecutive poles, so each zero brackets cleanly. For
    SD-certified inputs an atom strictly inside ``(alpha, beta)`` away from 0,
    or more than two atoms, raise :class:`InvariantViolation`.
    """
    if handle.role != F:
        handle = f_transform(handle, check=False)
    alpha, beta = (math.nan, math.nan) if profile is None else (profile.alpha, profile.beta)
    empty = math.isnan(alpha)
    regions = []
    center = 0.0 if empty else max(abs(a) for a in (alpha, beta) if math.isfinite(a)) if (
        math.isfinite(alpha) or math.isfinite(beta)) else 0.0
    r = _outer_radius(handle, center)
    if empty:
        xs = np.unique(np.concatenate([np.linspace(-r, r, 4001), -np.geomspace(1e-9, r, 400),
                                       np.geomspace(1e-9, r, 400)]))
        regions.append(xs)
    else:
        if math.isfinite(alpha):
            regions.append(_scan_points(-r, alpha, anchor_left=False))
        if math.isfinite(beta):
            regions.append(_scan_points(beta, r, anchor_left=True))
    zeros, poles = [], []
    for xs in regions:
        z, p = _sign_changes(handle, xs)
        zeros += z
        poles += p
    atoms = []
    for lo, hi in zeros:
        try:
            x0 = brentq(lambda x: _real_f(handle, x), lo, hi, xtol=1e-14, rtol=1e-14)
        except ValueError:
            continue
        if any(abs(x0 - x) <= 1e-8 * max(1.0, abs(x)) for x, _ in atoms):
            continue
        m = atom_mass(handle, x0, threshold)
        if m > 0:
            atoms.append((float(x0), float(m)))
    pole_locs = []
    for lo, hi in poles:
        # a pole is where 1/F changes sign through zero
        try:
            x0 = brentq(lambda x: 1.0 / _real_f(handle, x) if _real_f(handle, x) != 0 else 0.0,
                        lo, hi, xtol=1e-14, rtol=1e-14)
        except (ValueError, ZeroDivisionError):
            x0 = 0.5 * (lo + hi)
        pole_locs.append(0.0 if abs(x0) < 1e-9 else float(x0))
    for c in candidates:
        if all(abs(c - x) > 1e-8 * max(1.0, abs(x)) for x, _ in atoms):
            try:
                m = atom_mass(handle, c, threshold)
            except ExtrapolationError:
                m = 0.0
            if m > 0:
                atoms.append((float(c), m))
    try:
        zero_mass = atom_mass(handle, 0.0, threshold)
    except ExtrapolationError as exc:
        zero_mass = float(exc.partial or 0.0)
    if zero_mass > 0 and all(abs(x) > 1e-12 for x, _ in atoms):
        atoms.append((0.0, zero_mass))
    atoms.sort()
    # the regularity statements concern laws with a nonzero Levy measure;
    # Dirac and Boolean Gaussian laws are exempt
    if sd_certified and not empty:
        if zero_mass > threshold:
            raise InvariantViolation(f"SD-certified law has an atom at 0 of mass {zero_mass}")
        inside = [x for x, _ in atoms if alpha < x < beta and x != 0.0]
        if inside:
            raise InvariantViolation(f"SD-certified law has atoms inside (alpha, beta): {inside}")
        if len(atoms) > 2:
            raise InvariantViolation(f"SD-certified law has {len(atoms)} > 2 atoms")
    return AtomCensus(tuple(atoms), zero_mass, tuple(sorted(set(pole_locs))), alpha, beta)


# ---------------------------------------------------------------------------
# full SD check


@dataclass(frozen=True)
class SDResult:
    verdict: str
    profile: KProfile
    unimodality: UnimodalityReport
    ac_certificate: object
    census: Optional[AtomCensus]
    gaussian_component: float
    reason: str = ""

    def to_json(self):
        return {
            "verdict": self.verdict,
            "reason": self.reason,
            "gaussian_component": self.gaussian_component,
            "alpha": self.profile.alpha,
            "beta": self.profile.beta,
            "unimodality": self.unimodality.to_json(),
            "ac_certificate": None if self.ac_certificate is None else self.ac_certificate.to_json(),
            "census": None if self.census is None else self.census.to_json(),
        }


def default_window(entry: Optional[CatalogEntry] = None, fallback=10.0):
    """Window for the ``k`` grid: the finite part of the support of ``k`` with a margin, straddling 0."""
    if entry is None or not entry.k_support:
        return -fallback, fallback
    lo = min(a for a, _ in entry.k_support)
    hi = max(b for _, b in entry.k_support)
    lo = lo if math.isfinite(lo) else -fallback
    hi = hi if math.isfinite(hi) else fallback
    if not math.isfinite(min(a for a, _ in entry.k_support)) and math.isfinite(hi):
        lo = min(lo, hi - fallback)
    if not math.isfinite(max(b for _, b in entry.k_support)) and math.isfinite(lo):
        hi = max(hi, lo + fallback)
    pad = 0.05 * (hi - lo) + 0.1
    return min(lo - pad, -pad), max(hi + pad, pad)


def _resolve(obj):
    entry = obj if isinstance(obj, CatalogEntry) else None
    if entry is not None:
        return entry, entry.f_closed
    if isinstance(obj, SpectralMeasure):
        return None, f_transform(obj, check=False)
    if isinstance(obj, TransformHandle):
        return None, obj if obj.role == F else f_transform(obj, check=False)
    raise TypeError(f"cannot check {type(obj).__name__}")


def check_boolean_sd(obj, grid=None, window=None, n=400, tolerance=UNIMODALITY_TOL,
                     use_closed_k=False, census=True) -> SDResult:
    """Boolean selfdecomposability of a catalog entry, measure or F handle.

    Pipeline: ``k`` from boundary values of ``F`` (or the closed form) on a grid
    geometric near 0, a search for Levy atoms (real poles of ``F`` off 0, which
    break absolute continuity), the unimodality test, and the atom census. A
    positive Gaussian component is allowed.
    """
    entry, handle = _resolve(obj)
    if grid is None:
        lo, hi = window if window is not None else default_window(entry)
        grid = two_sided_grid(lo, hi, n)
    a = gaussian_component_from_F(handle)
    if use_closed_k and entry is not None and entry.k_closed is not None:
        prof = profile_from_k(entry.k_closed, grid, entry.k_support, gaussian_component=a)
    else:
        prof = k_from_F(handle, grid, gaussian_component=a)
    uni = unimodality_check(prof, tolerance)
    cens = atom_census(handle, prof, candidates=entry.atom_candidates if entry else ()) if census else None
    levy_atoms = list(cens.levy_atoms) if cens else []
    divergent = [float(x) for x, f in zip(prof.grid, prof.flags) if f == DIVERGENT]
    cands = sorted({0.0, *levy_atoms, *divergent})
    probe = prof.grid[:: max(1, prof.grid.size // 40)]
    cert = levy_ac_certificate(handle, probe, cands)
    reason = ""
    if levy_atoms or cert.spikes:
        verdict = FAIL
        reason = f"Levy measure has atoms at {sorted(set(levy_atoms) | set(cert.spikes))}"
    elif uni.verdict == FAIL:
        verdict = FAIL
        reason = "k is not unimodal with mode 0"
    elif uni.verdict == INCONCLUSIVE:
        verdict = INCONCLUSIVE
        reason = uni.note or "violation only at flagged samples"
    else:
        verdict = PASS
    if verdict == PASS and cens is not None:
        atom_census(handle, prof, sd_certified=True, candidates=entry.atom_candidates if entry else ())
    return SDResult(verdict, prof, uni, cert, cens, a, reason)


def profile_from_k(k_fn: Callable[[float], float], grid, support=None, gaussian_component=0.0):
    """Sample a closed-form ``k`` on ``grid`` (0 excluded)."""
    grid = np.asarray(grid, dtype=float)
    vals = np.array([
        k_fn(float(x)) if support is None or any(lo <= x <= hi for lo, hi in support) else 0.0
        for x in grid])
    return KProfile.from_samples(grid, vals, gaussian_component=gaussian_component)


def profile_from_ell(ell_fn: Callable[[float], float], grid, gaussian_component=0.0):
    """Sample ``k = ell/|x|`` from a closed-form ``ell``; ``ell_fn`` is kept for exact resampling."""
    grid = np.asarray(grid, dtype=float)
    ell = np.array([ell_fn(float(x)) for x in grid])
    prof = KProfile.from_samples(grid, ell / np.abs(grid), gaussian_component=gaussian_component)
    object.__setattr__(prof, "_ell_fn", ell_fn)
    return prof


# ---------------------------------------------------------------------------
# classical shifts


def shift_profile(profile: KProfile, m: float, grid=None) -> KProfile:
    """Profile of ``lambda * delta_m``: ``ell_new(t) = ell(t - m)``, ``k_new = ell_new/|t|``.

    Without ``grid`` the samples are carried over exactly to ``grid + m``
    (dropping a point that lands on 0). With ``grid``, ``ell`` is resampled from
    its closed form when the profile was built by :func:`profile_from_ell`,
    otherwise linearly interpolated.

    Raises
    ------
    ShiftRefused
        When the profile carries a positive Gaussian component; the shifted law
        is then never selfdecomposable for ``m != 0``.
    """
    if profile.gaussian_component > 0 and m != 0:
        raise ShiftRefused(
            f"Gaussian component {profile.gaussian_component} > 0: the classical shift by {m} "
            "acquires a Levy atom at m and is not selfdecomposable")
    if m == 0 and grid is None:
        return profile
    ell_fn = getattr(profile, "_ell_fn", None)
    if grid is None:
        t = profile.grid + m
        keep = t != 0
        t, ell = t[keep], profile.ell[keep]
        flags = tuple(f for f, k in zip(profile.flags, keep) if k)
        res = None if profile.residual is None else (profile.residual * np.abs(profile.grid))[keep] / np.abs(t)
    else:
        t = np.asarray(grid, dtype=float)
        if ell_fn is not None:
            ell = np.array([ell_fn(float(s - m)) for s in t])
        else:
            ell = np.interp(t - m, profile.grid, profile.ell, left=0.0, right=0.0)
        flags, res = None, None
    out = KProfile.from_samples(t, ell / np.abs(t), flags, res, 0.0)
    if ell_fn is not None:
        object.__setattr__(out, "_ell_fn", lambda s, f=ell_fn: f(s - m))
    return out


@dataclass(frozen=True)
class ShiftThresholdReport:
    """Shift bounds from sampled ``ell``.

    ``lambda * delta_m`` is not SD for ``m > M_plus`` and for ``m < M_minus``;
    ``flat`` marks a constant ``ell`` (SD under every shift).
    """

    M_plus: float
    M_minus: float
    witness_plus: Optional[tuple]
    witness_minus: Optional[tuple]
    flat: bool

    def to_json(self):
        return {"M_plus": self.M_plus, "M_minus": self.M_minus, "witness_plus": self.witness_plus,
                "witness_minus": self.witness_minus, "flat": self.flat}


def shift_threshold_from_ell(grid, ell, rtol=1e-9) -> ShiftThresholdReport:
    """Threshold bounds over all grid pairs.

    ``M_plus = inf {(b ell(a) - a ell(b)) / (ell(b) - ell(a)) : a < b, ell(a) < ell(b)}``
    and ``M_minus = sup {(c ell(d) - d ell(c)) / (ell(c) - ell(d)) : c < d, ell(c) > ell(d)}``.
    Differences of ``ell`` below ``rtol * max ell`` are treated as ties.
    """
    x = np.asarray(grid, dtype=float)
    l = np.asarray(ell, dtype=float)
    ok = np.isfinite(l)
    x, l = x[ok], l[ok]
    scale = float(np.max(np.abs(l))) if l.size else 0.0
    if scale == 0.0 or np.ptp(l) <= rtol * scale:
        return ShiftThresholdReport(math.inf, -math.inf, None, None, True)
    i, j = np.triu_indices(x.size, 1)
    d = l[j] - l[i]
    num = x[j] * l[i] - x[i] * l[j]
    eps = rtol * scale
    up = d > eps
    down = d < -eps
    m_plus, w_plus = math.inf, None
    if np.any(up):
        vals = num[up] / d[up]
        w = int(np.argmin(vals))
        m_plus = float(vals[w])
        a, b = i[up][w], j[up][w]
        w_plus = (float(x[a]), float(x[b]))
    m_minus, w_minus = -math.inf, None
    if np.any(down):
        # c = x[i], d = x[j]: (c ell(d) - d ell(c)) / (ell(c) - ell(d)) = num / d
        vals = num[down] / d[down]
        w = int(np.argmax(vals))
        m_minus = float(vals[w])
        c, dd = i[down][w], j[down][w]
        w_minus = (float(x[c]), float(x[dd]))
    return ShiftThresholdReport(m_plus, m_minus, w_plus, w_minus, False)


def shift_threshold(profile: KProfile, rtol=1e-9) -> ShiftThresholdReport:
    """:func:`shift_threshold_from_ell` on the samples of a profile (needs >= 200 points)."""
    if profile.grid.size < 200:
        raise ValueError("shift_threshold needs at least 200 grid points")
    return shift_threshold_from_ell(profile.grid, profile.ell, rtol)


# ---------------------------------------------------------------------------
# the normal law


@dataclass(frozen=True)
class NormalThresholdReport:
    """Minimiser ``a0`` of ``p(a) = ell(a)/ell'(a) - a`` on the negative half-line and ``M0 = p(a0)``."""

    a0: float
    M0: float
    p_curve: tuple
    candidates: tuple
    ell2_sign_changes: tuple
    derivative_crosscheck: float
    bracket: tuple

    def to_json(self):
        return {
            "a0": self.a0, "M0": self.M0,
            "candidates": [{"a": a, "p": p} for a, p in self.candidates],
            "ell2_sign_changes": list(self.ell2_sign_changes),
            "derivative_crosscheck": self.derivative_crosscheck,
            "bracket": list(self.bracket),
            "p_curve": [{"a": a, "p": p} for a, p in self.p_curve],
        }


def normal_p(a):
    """``p(a) = ell(a)/ell'(a) - a = -f(a)/f'(a) - a`` for ``N(0, 1)``."""
    f, f1, _ = normal_f_derivatives(a)
    return -f / f1 - a


def normal_p_fd(a, h=1e-5):
    """``p`` with ``ell'`` from central differences of the closed-form ``ell``."""
    d = (normal_ell(a + h) - normal_ell(a - h)) / (2 * h)
    return normal_ell(a) / d - a


def normal_ell2(a):
    """``ell''`` for ``N(0, 1)``: ``c (2 f'^2/f^3 - f''/f^2)``."""
    f, f1, f2 = normal_f_derivatives(a)
    c = normal_ell(0.0) * normal_f(0.0)
    return c * (2 * f1 * f1 / f ** 3 - f2 / f ** 2)


def normal_threshold(bracket=(-10.0, -1e-3), n_scan=4000, xtol=1e-6) -> NormalThresholdReport:
    """Locate ``a0`` and ``M0`` for the standard normal law.

    A coarse scan of ``p`` finds every interior local minimum; each is refined by
    golden-section search until the bracket is shorter than ``xtol`` and
    cross-checked against the sign change of ``ell''`` (``p' = -ell ell''/ell'^2``).
    """
    lo, hi = bracket
    a = np.linspace(lo, hi, n_scan)
    p = np.array([normal_p(x) for x in a])
    idx = [i for i in range(1, n_scan - 1) if p[i] <= p[i - 1] and p[i] <= p[i + 1]]
    if not idx:
        idx = [int(np.argmin(p))]
    cands = []
    for i in idx:
        l, r = a[max(i - 1, 0)], a[min(i + 1, n_scan - 1)]
        # golden's tol is relative; |a| <= 10 keeps the bracket below xtol
        amin = golden(normal_p, brack=(l, a[i], r), tol=xtol / 20.0)
        cands.append((float(amin), float(normal_p(amin))))
    cands.sort(key=lambda c: c[1])
    sign = np.sign([normal_ell2(x) for x in a])
    zeros = []
    for i in np.flatnonzero(sign[:-1] * sign[1:] < 0):
        zeros.append(float(brentq(normal_ell2, a[i], a[i + 1], xtol=1e-12)))
    a0, m0 = cands[0]
    curve_a = np.linspace(-6.0, -0.05, 200)
    curve = tuple((float(x), float(normal_p(x))) for x in curve_a)
    check_pts = np.linspace(-4.0, -0.5, 50)
    cross = max(abs(normal_p(x) - normal_p_fd(x)) for x in check_pts)
    return NormalThresholdReport(a0, m0, curve, tuple(cands), tuple(zeros), float(cross), tuple(bracket))


def normal_profile(grid=None, window=(-12.0, 12.0), n=2000) -> KProfile:
    """Closed-form ``k`` profile of ``N(0, 1)`` (resamplable)."""
    if grid is None:
        grid = two_sided_grid(*window, n=n, near_zero=1e-6)
    return profile_from_ell(normal_ell, grid)


def normal_shift_scan(m_grid, grid=None, window=(-12.0, 12.0), n=2000, tolerance=UNIMODALITY_TOL):
    """Unimodality verdict of ``k_{N(m, 1)}`` for each ``m`` in ``m_grid``."""
    base = normal_profile(window=window, n=n)
    if grid is None:
        grid = base.grid

    def one(m):
        prof = shift_profile(base, float(m), grid=grid)
        rep = unimodality_check(prof, tolerance)
        return {"m": float(m), "verdict": rep.verdict, "worst_violation": rep.worst_violation}

    return parallel_map(one, list(m_grid))
