"""Boolean convolution and the Boolean-to-free Bercovici-Pata bijection.

Boolean convolution adds self-energies: ``K_{mu (+) nu} = K_mu + K_nu``.
The bijection keeps the generating pair ``(b, tau)`` and swaps the role of the
Pick integral: on the Boolean side it is ``K``, on the free side it is the
Voiculescu transform ``phi`` with ``F^{-1}(z) = z + phi(z)``. The free ``F`` is
recovered pointwise by a damped Newton solve.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import InvariantViolation, NotSelfDecomposable, SolverError
from .measure_model import GeneratingPair, LevyTriplet, pair_from_triplet
from .transforms import (
    F,
    PHI,
    R,
    TransformHandle,
    _require,
    dilate_handle,
    f_from_pair,
    pick_integral,
)

NEWTON_TOL = 1e-12
NEWTON_MAX_ITER = 200
RANGE_TOL = 1e-9
RECOMPOSE_TOL = 1e-10


def boolean_convolve(F1: TransformHandle, F2: TransformHandle) -> TransformHandle:
    """F of ``mu1 (+) mu2``: ``z - K1(z) - K2(z) = F1(z) + F2(z) - z``."""
    _require(F1, F)
    _require(F2, F)
    f1, f2 = F1.eval, F2.eval
    bnd = None
    if F1.boundary is not None and F2.boundary is not None:
        b1, b2 = F1.boundary, F2.boundary
        bnd = lambda x: complex(b1(x)) + complex(b2(x)) - x  # noqa: E731
    return TransformHandle(F, lambda z: f1(z) + f2(z) - z, max(F1.domain_floor, F2.domain_floor),
                           bnd, label=f"{F1.label}(+){F2.label}")


def _default_probes(floor):
    xs = np.concatenate([np.linspace(-12, 12, 241), [-0.05, -1e-3, 1e-3, 0.05]])
    eps = [e for e in (1e-6, 1e-4, 1e-2, 0.1, 1.0) if e >= floor] or [max(floor, 1.0)]
    return [complex(x, e) for x in xs for e in eps]


def sd_decompose(handle: TransformHandle, c: float, probes=None, tol=RANGE_TOL,
                 recompose_tol=RECOMPOSE_TOL) -> TransformHandle:
    """Cofactor ``mu_c`` in ``mu = D_c(mu) (+) mu_c``.

    ``K_{mu_c}(z) = K(z) - c K(z/c)``. A probability measure ``mu_c`` exists only
    if this map sends the upper half-plane into the closed lower half-plane, so
    the range is sampled on ``probes`` (near-axis points by default, plus real
    boundary values when a closed form provides them).

    Raises
    ------
    NotSelfDecomposable
        When ``Im K_{mu_c} > tol (1 + |K(z)| + |c K(z/c)|)`` at some probe; the
        offending point and value are attached.
    InvariantViolation
        When ``D_c(mu) (+) mu_c`` does not recompose ``F`` to ``recompose_tol``.
    """
    _require(handle, F)
    c = float(c)
    if not 0 < c < 1:
        raise ValueError("c must lie in (0, 1)")
    f = handle.eval

    def kc(z):
        return (z - f(z)) - c * (z / c - f(z / c))

    bnd = None
    if handle.boundary is not None:
        fb = handle.boundary

        def bnd(x):
            x = float(x)
            return (x - complex(fb(x))) - c * (x / c - complex(fb(x / c)))

    probes = _default_probes(handle.domain_floor) if probes is None else [complex(z) for z in probes]
    worst = None
    for z in probes:
        k1, k2 = z - f(z), c * (z / c - f(z / c))
        v = (k1 - k2).imag
        if not math.isfinite(v):
            continue
        excess = v - tol * (1 + abs(k1) + abs(k2))
        if excess > 0 and (worst is None or excess > worst[0]):
            worst = (excess, z, v)
    if bnd is not None:
        for x in np.linspace(-12, 12, 2401).tolist():
            if x == 0:
                continue
            k1 = x - complex(handle.boundary(x))
            k2 = c * (x / c - complex(handle.boundary(x / c)))
            v = (k1 - k2).imag
            if not (math.isfinite(v) and math.isfinite(abs(k1)) and math.isfinite(abs(k2))):
                continue
            excess = v - tol * (1 + abs(k1) + abs(k2))
            if excess > 0 and (worst is None or excess > worst[0]):
                worst = (excess, complex(x), v)
    if worst is not None:
        _, z, v = worst
        raise NotSelfDecomposable(
            f"cofactor self-energy has Im K = {v:.3g} > 0 at z = {z:.6g}; no cofactor for c = {c}",
            c=c, z=z, im_value=v,
        )

    cof = TransformHandle(F, lambda z: z - kc(z), handle.domain_floor,
                          None if bnd is None else (lambda x: x - bnd(x)),
                          label=f"cofactor_{c}({handle.label})")
    recomposed = boolean_convolve(dilate_handle(handle, c), cof)
    for z in probes[:: max(1, len(probes) // 50)]:
        a, b = recomposed.eval(z), f(z)
        if not (math.isfinite(abs(a)) and math.isfinite(abs(b))):
            continue
        if abs(a - b) > recompose_tol * max(1.0, abs(b)):
            raise InvariantViolation(f"recomposition mismatch {abs(a - b):.3g} at z = {z}")
    return cof


@dataclass(frozen=True)
class FreeHandle:
    """Voiculescu transform ``phi`` and ``R(z) = z phi(1/z)`` of a freely infinitely divisible law."""

    phi: TransformHandle
    r: TransformHandle
    pair: Optional[GeneratingPair] = None
    label: str = ""


def free_handle(phi_fn, label="", pair=None) -> FreeHandle:
    """Wrap a scalar ``phi`` (defined on the whole upper half-plane) as a :class:`FreeHandle`."""
    phi = TransformHandle(PHI, phi_fn, 0.0, label=label)
    r = TransformHandle(R, lambda z: z * phi_fn(1.0 / z), 0.0, label=label)
    return FreeHandle(phi, r, pair, label)


def bp_forward(pair: GeneratingPair, label="") -> FreeHandle:
    """Image of the Boolean law with pair ``(b, tau)`` under the bijection.

    ``phi(z) = b + int (1 + x z)/(z - x) tau(dx)``, the same Pick integral as
    the Boolean ``K``; hence ``R(z) = z phi(1/z)`` equals the Boolean ``eta``.
    """
    return free_handle(lambda z: pick_integral(pair, z), label or "free", pair)


def bp_inverse(pair: GeneratingPair, label="") -> TransformHandle:
    """Boolean F sharing the generating pair of a freely infinitely divisible law."""
    return f_from_pair(pair, label or "boolean")


def _newton(phi, z, w, tol, max_iter):
    """Damped Newton for ``w + phi(w) = z``; returns ``(w, |H|, ok)``."""
    h = w + phi(w) - z
    for _ in range(max_iter):
        r = abs(h)
        if r < tol * max(1.0, abs(z)):
            return w, r, True
        step_h = 1e-7 * max(1.0, abs(w))
        dphi = (phi(w + step_h) - phi(w - step_h)) / (2 * step_h)
        d = 1.0 + dphi
        if d == 0 or not math.isfinite(abs(d)):
            return w, r, False
        step = h / d
        t = 1.0
        for _ in range(60):
            wn = w - t * step
            if wn.imag > 0:
                hn = wn + phi(wn) - z
                if math.isfinite(abs(hn)) and abs(hn) < r:
                    break
            t *= 0.5
        else:
            return w, r, False
        w, h = wn, hn
    return w, abs(h), abs(h) < tol * max(1.0, abs(z))


def free_f_solve(handle: FreeHandle, z, tol=NEWTON_TOL, max_iter=NEWTON_MAX_ITER) -> complex:
    """``F(z)`` of the free law: the solution ``w`` in the upper half-plane of ``w + phi(w) = z``.

    Newton starts at ``w = z``. If it stalls, the solve is continued from
    ``z + i s`` for decreasing ``s`` (halving the imaginary offset), each stage
    warm-starting the next.

    Raises
    ------
    SolverError
        When neither route reaches ``|H| < tol``.
    """
    z = complex(z)
    if not z.imag > 0:
        raise ValueError("free_f_solve needs Im z > 0")
    phi = handle.phi.eval
    w, r, ok = _newton(phi, z, z, tol, max_iter)
    if ok:
        return w
    # continuation in the imaginary part from a well-conditioned start
    s = max(4.0, 4.0 * abs(z))
    w = z + 1j * s
    w, r, ok = _newton(phi, z + 1j * s, w, tol, max_iter)
    while s > 0 and ok:
        s_next = 0.0 if s < 1e-3 * max(z.imag, 1e-12) else 0.5 * s
        w_next, r, ok_next = _newton(phi, z + 1j * s_next, w, tol, max_iter)
        if not ok_next:
            if s - s_next < 1e-14:
                break
            s_next = 0.5 * (s + s_next)
            w_next, r, ok_next = _newton(phi, z + 1j * s_next, w, tol, max_iter)
            if not ok_next:
                break
        w, s = w_next, s_next
    if ok and s == 0:
        return w
    raise SolverError(f"w + phi(w) = z did not converge at z = {z} (|H| = {r:.3g})", partial=w)


def free_f_handle(handle: FreeHandle) -> TransformHandle:
    """F of the free law as a handle, composable with the inversion routines."""
    return TransformHandle(F, lambda z: free_f_solve(handle, z), 0.0, label=f"F[{handle.label}]")


def fuss_catalan_free_pair(p: float) -> GeneratingPair:
    """Generating pair of the free Fuss-Catalan law ``mu(p, p)``, ``1 <= p <= 2``.

    Its free Levy triplet is ``(0, k(x)/|x| dx, p)`` with
    ``k(x) = -sin(p pi)/pi ((1 + x)/(-x))^p`` on ``(-1, 0)`` for ``p < 2``; at
    ``p = 2`` the law is the semicircle of mean 2 and variance 1, triplet ``(1, 0, 2)``.
    """
    p = float(p)
    if not 1 <= p <= 2:
        raise ValueError("fuss_catalan_free_pair requires 1 <= p <= 2")
    if p == 2.0:
        return pair_from_triplet(LevyTriplet(a=1.0, gamma=2.0))
    sp = math.sin(p * math.pi)

    def k(x):
        return -sp / math.pi * ((1 + x) / -x) ** p if -1 < x < 0 else 0.0

    return pair_from_triplet(LevyTriplet(a=0.0, gamma=p, k=k, k_support=((-1.0, 0.0),),
                                         k_breakpoints=(-0.5,)))
