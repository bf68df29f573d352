"""Closed-form distribution families used as oracles.

Each family provides its measure (atoms and density), a closed-form
reciprocal Cauchy transform ``F`` with an exact boundary extension where one
exists, the closed-form ``k`` function of its Boolean Levy measure and the
known selfdecomposability verdict.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Optional

import mpmath
import numpy as np
from scipy.integrate import quad
from scipy.optimize import brentq
from scipy.special import dawsn, wofz

from ._quad import integrate
from .errors import DomainError
from .measure_model import GeneratingPair, LevyTriplet, SpectralMeasure, pair_from_triplet
from .transforms import F, TransformHandle, f_from_pair

SQRT2 = math.sqrt(2.0)
SQRT_PI_2 = math.sqrt(math.pi / 2.0)
# ell_{N(0,1)}(0+)
NORMAL_ELL0 = math.sqrt(2.0 / math.pi) / math.pi

H_MAX_ABS = 30.0
_H_SERIES_RADIUS = 3.0


# ---------------------------------------------------------------------------
# the function h(z) = int_0^z exp(t^2) dt and the standard normal law


def h_eval(z):
    """``h(z) = int_0^z exp(t^2) dt``.

    Real arguments go through Dawson's function, ``h(x) = exp(x^2) D(x)``;
    complex ones use the Maclaurin series for ``|z| <= 3`` and quadrature along
    the segment ``[0, z]`` beyond.
    """
    if isinstance(z, (float, int, np.floating, np.integer)):
        x = float(z)
        if abs(x) > H_MAX_ABS:
            raise DomainError(f"|z| = {abs(x)} exceeds the overflow guard {H_MAX_ABS}")
        return math.exp(x * x) * float(dawsn(x))
    z = complex(z)
    if abs(z) > H_MAX_ABS:
        raise DomainError(f"|z| = {abs(z)} exceeds the overflow guard {H_MAX_ABS}")
    if z.imag == 0.0:
        return complex(h_eval(z.real))
    if abs(z) <= _H_SERIES_RADIUS:
        z2 = z * z
        term = z  # z^(2n+1) / n!
        total = z
        n = 0
        while True:
            n += 1
            term = term * z2 / n
            add = term / (2 * n + 1)
            total += add
            if abs(add) <= 1e-18 * abs(total):
                return total
    # h(z) = z int_0^1 exp(z^2 s^2) ds
    z2 = z * z
    re = integrate(lambda s: (cmath.exp(z2 * s * s)).real, 0.0, 1.0)
    im = integrate(lambda s: (cmath.exp(z2 * s * s)).imag, 0.0, 1.0)
    return z * complex(re, im)


def normal_cauchy(z):
    """Cauchy transform of ``N(0, 1)``.

    ``G(z) = exp(-z^2/2) [-i sqrt(pi/2) + sqrt(2) h(z/sqrt(2))]``, an entire
    function; on the real line it is the boundary value from above. For
    ``Im z > 2`` or ``|z| > 3 sqrt(2)`` off the axis the same function is
    evaluated through the Faddeeva function, ``-i sqrt(pi/2) w(z/sqrt(2))``,
    because the bracket above cancels catastrophically there.
    """
    z = complex(z)
    x, y = z.real, z.imag
    if y == 0.0:
        return complex(SQRT2 * float(dawsn(x / SQRT2)), -SQRT_PI_2 * math.exp(-0.5 * x * x))
    if y > 0 and (y > 2.0 or abs(z) > _H_SERIES_RADIUS * SQRT2):
        return complex(-1j * SQRT_PI_2 * wofz(z / SQRT2))
    if abs(z) > H_MAX_ABS * SQRT2:
        raise DomainError(f"|z| = {abs(z)} exceeds the overflow guard")
    return cmath.exp(-0.5 * z * z) * (-1j * SQRT_PI_2 + SQRT2 * h_eval(z / SQRT2))


def normal_density(x, m=0.0, v=1.0):
    return math.exp(-0.5 * (x - m) ** 2 / v) / math.sqrt(2 * math.pi * v)


def normal_f(x):
    """``f(x) = exp(-x^2/2) [1 + (4/pi) h(x/sqrt 2)^2]``, so that ``ell = c / f``."""
    x = float(x)
    d = float(dawsn(x / SQRT2))
    e = math.exp(0.5 * x * x) if abs(x) < 37 else math.inf
    if math.isinf(e):
        return math.inf
    return 1.0 / e + 4.0 / math.pi * e * d * d


def normal_f_derivatives(x):
    """``(f, f', f'')`` from the closed forms.

    ``f' = -x f + (4 sqrt 2 / pi) h(x/sqrt 2)`` and ``f'' = -f - x f' + (4/pi) exp(x^2/2)``.
    """
    x = float(x)
    e = math.exp(0.5 * x * x)
    d = float(dawsn(x / SQRT2))
    f = 1.0 / e + 4.0 / math.pi * e * d * d
    f1 = -x * f + 4.0 * SQRT2 / math.pi * e * d
    f2 = -f - x * f1 + 4.0 / math.pi * e
    return f, f1, f2


def normal_ell(x):
    """``ell(x) = |x| k(x)`` for ``N(0, 1)``; continuous at 0 with value ``sqrt(2/pi)/pi``."""
    f = normal_f(x)
    return 0.0 if math.isinf(f) else NORMAL_ELL0 / f


def normal_k(x):
    """``k(x) = sqrt(2/pi) / (pi |x| f(x))`` for ``N(0, 1)``, ``x != 0``."""
    if x == 0:
        raise DomainError("normal_k is not defined at 0")
    return normal_ell(x) / abs(x)


# ---------------------------------------------------------------------------
# catalog entries


@dataclass(frozen=True, eq=False)
class CatalogEntry:
    """A closed-form family member.

    ``measure`` is built lazily (construction checks the total mass by
    quadrature). ``k_closed`` is ``None`` when the Levy measure vanishes.
    """

    id: str
    params: dict
    f_closed: TransformHandle
    measure_factory: Optional[Callable[[], SpectralMeasure]] = field(default=None, repr=False)
    k_closed: Optional[Callable[[float], float]] = field(default=None, repr=False)
    k_support: tuple = ()
    k_breakpoints: tuple = ()
    levy_atoms: tuple = ()
    gaussian_component: float = 0.0
    gamma: Optional[float] = None
    sd_expected: Optional[bool] = None
    sd_condition: str = ""
    atom_candidates: tuple = ()
    density_windows: tuple = ()

    @cached_property
    def measure(self) -> Optional[SpectralMeasure]:
        return None if self.measure_factory is None else self.measure_factory()

    @property
    def triplet(self) -> Optional[LevyTriplet]:
        if self.gamma is None:
            return None
        return LevyTriplet(
            a=self.gaussian_component,
            gamma=self.gamma,
            k=self.k_closed,
            k_support=self.k_support,
            levy_atoms=self.levy_atoms,
            k_breakpoints=self.k_breakpoints,
        )

    @cached_property
    def pair(self) -> Optional[GeneratingPair]:
        t = self.triplet
        return None if t is None else pair_from_triplet(t)

    @property
    def name(self):
        args = ",".join(f"{k}={v:g}" for k, v in self.params.items())
        return f"{self.id}({args})"


def _handle(ev, boundary=None, label=""):
    return TransformHandle(F, ev, 0.0, boundary, label=label)


def _check(cond, msg):
    if not cond:
        raise DomainError(msg)


def _sqrt_pair(z, c):
    """``sqrt(z - c) sqrt(z + c)`` with principal roots: behaves like ``z`` and maps C+ to C+ after halving."""
    return cmath.sqrt(z - c) * cmath.sqrt(z + c)


def _sqrt_pair_boundary(x, lo, hi):
    """Boundary value from above of ``sqrt((z - lo)(z - hi))`` normalised like ``z`` at infinity."""
    p = (x - lo) * (x - hi)
    if x >= hi:
        return complex(math.sqrt(p))
    if x <= lo:
        return complex(-math.sqrt(p))
    return complex(0.0, math.sqrt(-p))


def dirac(x0=0.0):
    x0 = float(x0)
    return CatalogEntry(
        "dirac", {"x0": x0}, _handle(lambda z: z - x0, lambda x: complex(x - x0), f"dirac({x0})"),
        measure_factory=lambda: SpectralMeasure(atoms=[(x0, 1.0)], mass_hint=1.0),
        gamma=x0, sd_expected=True, sd_condition="always", atom_candidates=(x0,),
    )


def two_point(p=0.5):
    """``p delta_1 + (1 - p) delta_{-1}``; ``F(z) = (z^2 - 1)/(z - (1 - 2p))``."""
    p = float(p)
    _check(0 < p < 1, "two_point requires 0 < p < 1")
    s = 1.0 - 2.0 * p
    if s == 0.0:
        return boolean_gaussian(0.0, 1.0, _id="two_point", _params={"p": p})
    ev = lambda z: (z * z - 1.0) / (z - s)  # noqa: E731
    # K(z) = (1 - s z)/(z - s): a Levy atom at s with tau-mass (1 - s^2)/(1 + s^2)
    m_tau = (1 - s * s) / (1 + s * s)
    nu_mass = (1 + s * s) / (s * s) * m_tau
    return CatalogEntry(
        "two_point", {"p": p}, _handle(ev, lambda x: complex(ev(x)) if x != s else complex(math.inf), "two_point"),
        measure_factory=lambda: SpectralMeasure(atoms=[(-1.0, 1 - p), (1.0, p)], mass_hint=1.0),
        levy_atoms=((s, nu_mass),),
        gamma=_gamma_from_levy_atom(s, m_tau, b=-2 * s / (1 + s * s)),
        sd_expected=False, sd_condition="SD iff p = 1/2", atom_candidates=(-1.0, 1.0),
    )


def _gamma_from_levy_atom(s, tau_mass, b):
    g = s if abs(s) <= 1 else -1.0 / s
    return b + g * tau_mass


def boolean_gaussian(gamma=0.0, a=1.0, alpha=None, beta=None, _id="boolean_gaussian", _params=None):
    """``B(gamma, a)``: triplet ``(a, 0, gamma)``, ``F(z) = z - gamma - a/z``.

    The atoms sit at the roots ``r`` of ``z^2 - gamma z - a`` and carry mass
    ``r^2/(r^2 + a)``. Passing ``alpha < 0 < beta`` instead selects the law
    with atoms ``alpha, beta`` (``gamma = alpha + beta``, ``a = -alpha beta``).
    """
    if alpha is not None or beta is not None:
        _check(alpha is not None and beta is not None and alpha < 0 < beta,
               "boolean_gaussian (alpha, beta) form needs alpha < 0 < beta")
        gamma, a = alpha + beta, -alpha * beta
    gamma, a = float(gamma), float(a)
    _check(a > 0, "boolean_gaussian requires a > 0")
    disc = math.sqrt(gamma * gamma + 4 * a)
    roots = ((gamma - disc) / 2, (gamma + disc) / 2)
    atoms = [(r, r * r / (r * r + a)) for r in roots]
    ev = lambda z: z - gamma - a / z  # noqa: E731
    return CatalogEntry(
        _id, _params or {"gamma": gamma, "a": a},
        _handle(ev, lambda x: complex(x - gamma - a / x) if x != 0 else complex(0, math.inf),
                f"B({gamma},{a})"),
        measure_factory=lambda: SpectralMeasure(atoms=atoms, mass_hint=1.0),
        gaussian_component=a, gamma=gamma, sd_expected=True, sd_condition="always",
        atom_candidates=roots,
    )


BOOLEAN_STABLE_DOMAIN = "0 < alpha <= 1 and 0 <= rho <= 1, or 1 < alpha <= 2 and 1 - 1/alpha <= rho <= 1/alpha"


def boolean_stable(alpha=1.0, rho=0.5):
    """Boolean stable law ``b_{alpha,rho}``: ``eta(z) = -(e^{i rho pi} z)^alpha`` (principal power)."""
    al, rho = float(alpha), float(rho)
    ok = (0 < al <= 1 and 0 <= rho <= 1) or (1 < al <= 2 and 1 - 1 / al - 1e-15 <= rho <= 1 / al + 1e-15)
    _check(ok, f"boolean_stable requires {BOOLEAN_STABLE_DOMAIN}")
    rot = cmath.exp(1j * rho * math.pi)
    s_pos = math.sin(al * rho * math.pi)
    s_neg = math.sin(al * (1 - rho) * math.pi)
    c_pos = math.cos(al * rho * math.pi)
    c_neg = math.cos(al * (1 - rho) * math.pi)

    def ev(z):
        return z + z * (rot / z) ** al

    def bnd(x):
        if x > 0:
            return x + x ** (1 - al) * cmath.exp(1j * al * rho * math.pi)
        if x < 0:
            return x - (-x) ** (1 - al) * cmath.exp(-1j * al * (1 - rho) * math.pi)
        return complex(math.nan, math.nan)

    def k(x):
        if x > 0:
            return s_pos / math.pi * x ** (-al)
        if x < 0:
            return s_neg / math.pi * (-x) ** (-al)
        return math.inf

    def dens(x):
        if x == 0:
            return math.inf if al < 1 else (max(s_pos, s_neg) / math.pi if al == 1 else 0.0)
        if x > 0:
            s, c, u = s_pos, c_pos, x
        else:
            s, c, u = s_neg, c_neg, -x
        ua = u ** al
        return max(0.0, s * u ** (al - 1) / (math.pi * (ua * ua + 2 * ua * c + 1)))

    atoms = []
    if abs(al * rho - 1) < 1e-12:
        atoms.append((1.0, 1.0 / al))
    if abs(al * (1 - rho) - 1) < 1e-12:
        atoms.append((-1.0, 1.0 / al))
    support = []
    if s_neg > 1e-15:
        support.append((-math.inf, 0.0))
    if s_pos > 1e-15:
        support.append((0.0, math.inf))
    k_support = tuple(support)
    has_k = bool(k_support)
    bps = (-1.0, 1.0)
    return CatalogEntry(
        "boolean_stable", {"alpha": al, "rho": rho}, _handle(ev, bnd, f"b({al},{rho})"),
        measure_factory=lambda: SpectralMeasure(
            atoms=atoms, density=dens if has_k else None, support=support, mass_hint=1.0, breakpoints=bps),
        k_closed=k if has_k else None, k_support=k_support,
        gaussian_component=1.0 if (al == 2.0) else 0.0,
        # symmetric cases: the drift vanishes (Bernoulli: triplet (1, 0, 0); Cauchy: (0, dx/(pi x^2), 0))
        gamma=0.0 if al == 2.0 or (al == 1.0 and rho == 0.5) else None,
        sd_expected=True, sd_condition="always (stable)", atom_candidates=tuple(x for x, _ in atoms),
        density_windows=((0.2, 3.0), (-3.0, -0.2)),
    )


def free_half_stable():
    """Positive free 1/2-stable law: ``F(z) = (2z - 1 - sqrt(1 - 4z))/2``."""

    def ev(z):
        return (2 * z - 1 - cmath.sqrt(1 - 4 * z)) / 2

    def bnd(x):
        if x > 0.25:
            return complex(x - 0.5, 0.5 * math.sqrt(4 * x - 1))
        return complex(x - 0.5 - 0.5 * math.sqrt(1 - 4 * x))

    def k(x):
        return math.sqrt(4 * x - 1) / (2 * math.pi * x) if x >= 0.25 else 0.0

    def dens(x):
        return math.sqrt(max(4 * x - 1, 0.0)) / (2 * math.pi * x * x)

    return CatalogEntry(
        "free_half_stable", {}, _handle(ev, bnd, "free_half_stable"),
        measure_factory=lambda: SpectralMeasure(
            density=dens, support=[(0.25, math.inf)], mass_hint=1.0, breakpoints=(0.5, 2.0)),
        k_closed=k, k_support=((0.25, math.inf),), k_breakpoints=(0.5, 2.0),
        sd_expected=False, sd_condition="never", density_windows=((0.3, 5.0),),
    )


def free_poisson(lam=1.0, **kw):
    """Marchenko-Pastur law ``MP_lambda`` (rate ``lambda``, jump size 1)."""
    lam = float(kw.pop("lambda", lam))
    _check(not kw, f"unknown parameters {sorted(kw)}")
    _check(lam > 0, "free_poisson requires lambda > 0")
    lo, hi = (1 - math.sqrt(lam)) ** 2, (1 + math.sqrt(lam)) ** 2

    def ev(z):
        w = (z - lo) * (z - hi)
        return (z + 1 - lam + 1j * cmath.sqrt(-w)) / 2

    def bnd(x):
        return (x + 1 - lam + _sqrt_pair_boundary(x, lo, hi)) / 2

    def k(x):
        if lo < x < hi:
            return math.sqrt((x - lo) * (hi - x)) / (2 * math.pi * x)
        return 0.0

    def dens(x):
        return math.sqrt(max((hi - x) * (x - lo), 0.0)) / (2 * math.pi * x)

    atoms = [(0.0, 1 - lam)] if lam < 1 else []
    return CatalogEntry(
        "free_poisson", {"lambda": lam}, _handle(ev, bnd, f"MP({lam})"),
        measure_factory=lambda: SpectralMeasure(atoms=atoms, density=dens, support=[(lo, hi)], mass_hint=1.0),
        k_closed=k, k_support=((lo, hi),),
        sd_expected=(lam == 1.0), sd_condition="SD iff lambda = 1",
        atom_candidates=(0.0,) if atoms else (),
        density_windows=((lo + 0.02 * (hi - lo), hi - 0.02 * (hi - lo)),),
    )


def semicircle(m=0.0, sigma2=1.0, sigma=None):
    """Semicircle law ``S(m, sigma^2)`` on ``[m - 2 sigma, m + 2 sigma]``."""
    if sigma is not None:
        sigma2 = float(sigma) ** 2
    m, sigma2 = float(m), float(sigma2)
    _check(sigma2 > 0, "semicircle requires sigma2 > 0")
    s = math.sqrt(sigma2)
    lo, hi = m - 2 * s, m + 2 * s

    def ev(z):
        return (z - m + _sqrt_pair(z - m, 2 * s)) / 2

    def bnd(x):
        return (x - m + _sqrt_pair_boundary(x, lo, hi)) / 2

    def k(x):
        return math.sqrt(max(4 * sigma2 - (x - m) ** 2, 0.0)) / (2 * math.pi * abs(x))

    def dens(x):
        return math.sqrt(max(4 * sigma2 - (x - m) ** 2, 0.0)) / (2 * math.pi * sigma2)

    return CatalogEntry(
        "semicircle", {"m": m, "sigma2": sigma2}, _handle(ev, bnd, f"S({m},{sigma2})"),
        measure_factory=lambda: SpectralMeasure(density=dens, support=[(lo, hi)], mass_hint=1.0),
        k_closed=k, k_support=((lo, hi),),
        sd_expected=(lo <= 0 <= hi), sd_condition="SD iff m - 2 sigma <= 0 <= m + 2 sigma",
        density_windows=((lo + 0.05 * s, hi - 0.05 * s),),
    )


def kesten(t=2.0):
    """Kesten law: ``t``-fold free convolution power of the symmetric Bernoulli law, ``t > 1``."""
    t = float(t)
    _check(t > 1, "kesten requires t > 1")
    c = 2 * math.sqrt(t - 1)

    def ev(z):
        return ((t - 2) * z + t * _sqrt_pair(z, c)) / (2 * (t - 1))

    def bnd(x):
        return ((t - 2) * x + t * _sqrt_pair_boundary(x, -c, c)) / (2 * (t - 1))

    def k(x):
        return t * math.sqrt(max(c * c - x * x, 0.0)) / (2 * math.pi * (t - 1) * abs(x))

    def dens(x):
        return t * math.sqrt(max(c * c - x * x, 0.0)) / (2 * math.pi * (t * t - x * x))

    w = max((2 - t) / 2, 0.0)
    atoms = [(-t, w), (t, w)] if w > 0 else []
    # near t = 2 the poles at +-t crowd the edges +-c; grade panels towards the edges
    edge = [c * (1 - 10.0 ** -j) for j in range(1, 9)]
    brk = tuple(sorted([*edge, *(-e for e in edge)]))
    # K(z) = z - F(z) is odd: gamma = 0
    return CatalogEntry(
        "kesten", {"t": t}, _handle(ev, bnd, f"kesten({t})"),
        measure_factory=lambda: SpectralMeasure(atoms=atoms, density=dens, support=[(-c, c)], mass_hint=1.0,
                                                breakpoints=brk),
        k_closed=k, k_support=((-c, c),), gamma=0.0,
        sd_expected=True, sd_condition="always (t > 1)", atom_candidates=(-t, t) if atoms else (),
        density_windows=((-0.95 * c, 0.95 * c),),
    )


def fuss_catalan_boolean(p=1.5):
    """Boolean counterpart of the Fuss-Catalan law ``mu(p, p)``, ``1 <= p <= 2``.

    ``eta(z) = (1 + z)^p - 1`` (principal power), ``F(z) = z [2 - (1 + 1/z)^p]``;
    Boolean triplet ``(0, k(x)/|x| dx, p)`` with
    ``k(x) = -sin(p pi)/pi ((1 + x)/(-x))^p`` on ``(-1, 0)``.
    """
    p = float(p)
    _check(1 <= p <= 2, "fuss_catalan_boolean requires 1 <= p <= 2")
    if p == 2.0:
        return boolean_gaussian(2.0, 1.0, _id="fuss_catalan_boolean", _params={"p": 2.0})
    sp, cp = math.sin(p * math.pi), math.cos(p * math.pi)

    def ev(z):
        return z * (2 - (1 + 1 / z) ** p)

    def bnd(x):
        if -1 < x < 0:
            u = ((1 + x) / -x) ** p
            return x * (2 - u * cmath.exp(-1j * p * math.pi))
        return complex(x * (2 - (1 + 1 / x) ** p))

    def k(x):
        return -sp / math.pi * ((1 + x) / -x) ** p if -1 < x < 0 else 0.0

    def dens(x):
        u = abs((1 + x) / x) ** p
        return max(0.0, sp * u / (math.pi * x * (4 - 4 * cp * u + u * u)))

    x_atom = 1.0 / (2 ** (1 / p) - 1)
    w_atom = 1.0 / (p * (2 - 2 ** (1 - 1 / p)))
    has_k = sp != 0.0
    return CatalogEntry(
        "fuss_catalan_boolean", {"p": p}, _handle(ev, bnd, f"fc({p})"),
        measure_factory=lambda: SpectralMeasure(
            atoms=[(x_atom, w_atom)], density=dens if has_k else None,
            support=[(-1.0, 0.0)] if has_k else [], mass_hint=1.0, breakpoints=(-0.5,)),
        k_closed=k if has_k else None, k_support=((-1.0, 0.0),) if has_k else (),
        k_breakpoints=(-0.5,), gamma=p,
        sd_expected=True, sd_condition="always (1 <= p <= 2)", atom_candidates=(x_atom,),
        density_windows=((-0.9, -0.1),) if has_k else (),
    )


def cauchy_dirac_mixture(p=0.5):
    """``kappa_p = p Cauchy + (1 - p) delta_0``: ``F(z) = z (z + i)/(z + (1 - p) i)``."""
    p = float(p)
    _check(0 <= p <= 1, "cauchy_dirac_mixture requires 0 <= p <= 1")
    q = 1 - p

    def ev(z):
        return z * (z + 1j) / (z + q * 1j)

    def k(x):
        return p * abs(x) / (math.pi * (x * x + q * q))

    def dens(x):
        return p / (math.pi * (1 + x * x))

    if p == 0.0:
        return dirac(0.0)
    bnd = (lambda x: complex(ev(complex(x)))) if q > 0 else (lambda x: complex(x, 1.0))
    return CatalogEntry(
        "cauchy_dirac_mixture", {"p": p}, _handle(ev, bnd, f"kappa({p})"),
        measure_factory=lambda: SpectralMeasure(
            atoms=[(0.0, q)] if q > 0 else [], density=dens, support=[(-math.inf, math.inf)],
            mass_hint=1.0),
        k_closed=k, k_support=((-math.inf, math.inf),), gamma=0.0,
        sd_expected=(p in (0.0, 1.0)), sd_condition="SD iff p in {0, 1}",
        atom_candidates=(0.0,) if q > 0 else (),
        density_windows=((-3.0, 3.0),),
    )


def normal(m=0.0, v=1.0):
    """``N(m, v)`` as the classical shift and dilation of ``N(0, 1)``."""
    m, v = float(m), float(v)
    _check(v > 0, "normal requires v > 0")
    s = math.sqrt(v)

    def g(z):
        return normal_cauchy((z - m) / s) / s

    def k(x):
        y = (x - m) / s
        return s * normal_ell(y) / abs(x)

    return CatalogEntry(
        "normal", {"m": m, "v": v},
        _handle(lambda z: 1.0 / g(complex(z)), lambda x: 1.0 / g(complex(x)), f"N({m},{v})"),
        measure_factory=lambda: SpectralMeasure(
            density=lambda x: normal_density(x, m, v), support=[(-math.inf, math.inf)], mass_hint=1.0,
            breakpoints=(m,)),
        k_closed=k, k_support=((-math.inf, math.inf),), k_breakpoints=(m,),
        gamma=0.0 if m == 0 else None,
        sd_expected=True if m == 0 else None,
        sd_condition="SD at m = 0; fails for large |m|/sqrt(v)",
        density_windows=((m - 3 * s, m + 3 * s),),
    )


def remark_atom_family(p=2.0):
    """Law with ``F(z) = z - b + int_0^1 (1 - t)^p/(t - z) dt``, ``b = 1 - 1/p`` so that ``F(1) = 0``.

    ``F(z) = (z - 1) Q(z)`` with ``Q(z) = 1 + int_0^1 (1 - t)^(p-1)/(z - t) dt``
    in hypergeometric form. The point 1 carries mass ``(p - 1)/p`` for
    ``p > 1`` and none for ``p <= 1``; a second atom sits at the negative zero of ``Q``.
    """
    p = float(p)
    _check(p > 0, "remark_atom_family requires p > 0")
    b = 1.0 - 1.0 / p

    def q_mp(z):
        c = mpmath.mpc(z) - 1
        return 1 + mpmath.hyp2f1(1, p, p + 1, -1 / c) / (p * c)

    def ev(z):
        with mpmath.workdps(30):
            return complex((mpmath.mpc(z) - 1) * q_mp(z))

    def q_real(x):
        with mpmath.workdps(20):
            return float(mpmath.re(q_mp(x)))

    def bnd(x):
        if 0 < x < 1:
            pv, _ = quad(lambda t: (1 - t) ** p, 0.0, 1.0, weight="cauchy", wvar=x,
                         epsabs=1e-13, epsrel=1e-12, limit=200)
            return complex(x - b + pv, math.pi * (1 - x) ** p)
        if x == 1.0:
            return 0j
        return complex((x - 1) * q_real(x))

    def k(x):
        return (1 - x) ** p / x if 0 < x < 1 else 0.0

    def dens(x):
        fx = bnd(x)
        return (1 - x) ** p / abs(fx) ** 2

    def atoms():
        out = []
        if p > 1:
            out.append((1.0, (p - 1) / p))
        lo = -1.0
        while q_real(lo) <= 0:
            lo *= 2
        hi = -1e-3
        while q_real(hi) >= 0:
            hi /= 10
        x0 = brentq(q_real, lo, hi, xtol=1e-15, rtol=1e-15)
        dq = integrate(lambda t: -((1 - t) ** (p - 1)) / (x0 - t) ** 2, 0.0, 1.0)
        out.append((x0, 1.0 / ((x0 - 1) * dq)))
        return out

    def measure():
        return SpectralMeasure(atoms=atoms(), density=dens, support=[(0.0, 1.0)], mass_hint=1.0)

    # K(z) = b + int_0^1 (1-t)^p/(z-t) dt, tau = (1-t)^p/(1+t^2) dt on (0,1): the drift equals b
    gamma = b
    return CatalogEntry(
        "remark_atom_family", {"p": p}, _handle(ev, bnd, f"remark_atom({p})"),
        measure_factory=measure, k_closed=k, k_support=((0.0, 1.0),), gamma=gamma,
        sd_expected=True, sd_condition="always", atom_candidates=(1.0,),
        density_windows=((0.1, 0.9),),
    )


def arctan_levy_family(m=0.0):
    """Triplet ``(0, k(t) dt, 0)`` with ``k(t) = [arctan(t - m) + pi/2]/|t|``.

    No closed-form measure is available; ``F`` is evaluated from the generating
    pair by quadrature.
    """
    m = float(m)

    def k(t):
        return (math.atan(t - m) + math.pi / 2) / abs(t)

    gamma = 0.0
    triplet = LevyTriplet(a=0.0, gamma=gamma, k=k, k_support=((-math.inf, math.inf),), k_breakpoints=(m,))
    pair = pair_from_triplet(triplet)
    h = f_from_pair(pair, label=f"arctan({m})")
    entry = CatalogEntry(
        "arctan_levy_family", {"m": m}, h, None, k_closed=k, k_support=((-math.inf, math.inf),),
        k_breakpoints=(m,), gamma=gamma,
        sd_expected=(m <= math.pi / 2), sd_condition="SD iff m <= pi/2",
    )
    object.__setattr__(entry, "pair", pair)
    return entry


# ---------------------------------------------------------------------------
# registry


_FAMILIES = {
    "dirac": (dirac, {"x0": (0.0, "real")}),
    "two_point": (two_point, {"p": (0.5, "0 < p < 1")}),
    "boolean_gaussian": (boolean_gaussian, {"gamma": (0.0, "real"), "a": (1.0, "a > 0")}),
    "boolean_stable": (boolean_stable, {"alpha": (1.0, BOOLEAN_STABLE_DOMAIN), "rho": (0.5, "see alpha")}),
    "free_half_stable": (free_half_stable, {}),
    "free_poisson": (free_poisson, {"lambda": (1.0, "lambda > 0")}),
    "semicircle": (semicircle, {"m": (0.0, "real"), "sigma2": (1.0, "sigma2 > 0")}),
    "kesten": (kesten, {"t": (2.0, "t > 1")}),
    "fuss_catalan_boolean": (fuss_catalan_boolean, {"p": (1.5, "1 <= p <= 2")}),
    "cauchy_dirac_mixture": (cauchy_dirac_mixture, {"p": (0.5, "0 <= p <= 1")}),
    "normal": (normal, {"m": (0.0, "real"), "v": (1.0, "v > 0")}),
    "remark_atom_family": (remark_atom_family, {"p": (2.0, "p > 0")}),
    "arctan_levy_family": (arctan_levy_family, {"m": (0.0, "real")}),
}

ALIASES = {
    "mp": "free_poisson",
    "marchenko_pastur": "free_poisson",
    "bernoulli": "boolean_stable",
    "cauchy": "boolean_stable",
    "kappa": "cauchy_dirac_mixture",
    "half_stable": "free_half_stable",
    "gaussian": "normal",
}

_ALIAS_DEFAULTS = {
    "bernoulli": {"alpha": 2.0, "rho": 0.5},
    "cauchy": {"alpha": 1.0, "rho": 0.5},
}


def family_ids():
    return tuple(_FAMILIES)


def entry(id: str, **params) -> CatalogEntry:
    """Construct a catalog entry; unknown ids or out-of-range parameters raise :class:`DomainError`."""
    key = ALIASES.get(id, id)
    if key not in _FAMILIES:
        raise DomainError(f"unknown catalog id {id!r}; known: {', '.join(_FAMILIES)}")
    ctor, schema = _FAMILIES[key]
    merged = {**_ALIAS_DEFAULTS.get(id, {}), **params}
    allowed = set(schema) | ({"sigma"} if key == "semicircle" else set()) | (
        {"lam"} if key == "free_poisson" else set()) | (
        {"alpha", "beta"} if key == "boolean_gaussian" else set())
    unknown = set(merged) - allowed
    if unknown:
        raise DomainError(f"{key} has no parameter(s) {sorted(unknown)}; expected {sorted(schema)}")
    try:
        args = {k: float(v) for k, v in merged.items()}
    except (TypeError, ValueError) as exc:
        raise DomainError(f"non-numeric parameter for {key}: {exc}") from None
    if key == "free_poisson" and "lambda" in args:
        args["lam"] = args.pop("lambda")
    return ctor(**args)


def list_schema():
    """JSON-ready description of every family and its parameters."""
    out = {}
    for fid, (ctor, schema) in _FAMILIES.items():
        doc = (ctor.__doc__ or "").strip().splitlines()
        out[fid] = {
            "description": doc[0] if doc else "",
            "params": {k: {"default": d, "constraint": c} for k, (d, c) in schema.items()},
        }
    out["_aliases"] = dict(ALIASES)
    return out
