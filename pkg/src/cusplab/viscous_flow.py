"""Free surface above a vortex dipole in Stokes flow.

In units of the dipole depth the surface is::

    x = a cos(theta) + (a + 1) cos(theta) / (1 + sin(theta)),   y = a (1 + sin(theta))

with ``-1/3 < a < 0`` set by the capillary number through a relation
involving a complete elliptic integral.  As ``Ca -> inf``, ``a -> -1/3``
and the tip at ``theta = pi/2`` sharpens into a cusp; its radius of
curvature falls off exponentially in ``Ca``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .curves import ParametricCurve
from .normal_forms import NormalForm

RADIUS_FLOOR = 1e-14
THIRD = 1.0 / 3.0


class EllipticDivergence(ValueError):
    """K(m) diverges at m = 1."""


def _agm(a: float, b: float) -> float:
    for _ in range(64):
        if abs(a - b) <= 1e-16 * a:
            break
        a, b = 0.5 * (a + b), math.sqrt(a * b)
    return 0.5 * (a + b)


def elliptic_K_from_complement(kprime: float) -> float:
    """``K`` from the complementary modulus ``k' = sqrt(1 - m**2)``.

    Passing ``k'`` directly keeps full relative accuracy as ``m -> 1``.
    """
    if not kprime > 0:
        raise EllipticDivergence("K diverges at m = 1")
    return math.pi / (2 * _agm(1.0, kprime))


def elliptic_K(m_mod: float) -> float:
    """Complete elliptic integral of the first kind, ``m**2`` multiplying ``sin**2``.

    Evaluated by the arithmetic-geometric mean.
    """
    if not 0 <= m_mod < 1:
        raise EllipticDivergence(f"modulus {m_mod} outside [0, 1)")
    return elliptic_K_from_complement(math.sqrt((1 - m_mod) * (1 + m_mod)))


@dataclass(frozen=True)
class ViscousCuspSolution:
    Ca: float
    a: float
    m_mod: float
    epsilon: float


def _q(eps: float) -> tuple[float, float]:
    """``q = -2a/(a+1)`` and ``q - 1`` for ``a = eps - 1/3``."""
    a = eps - THIRD
    return -2 * a / (a + 1), -3 * eps / (a + 1)


def modulus(eps: float) -> tuple[float, float]:
    """Elliptic modulus ``m`` and its complement ``k'`` at ``a = eps - 1/3``."""
    q, qm1 = _q(eps)
    r = math.sqrt(q)
    # 1 - m^2 = ((sqrt(q) - 1)/(sqrt(q) + 1))^2 and sqrt(q) - 1 = (q - 1)/(sqrt(q) + 1)
    kprime = abs(qm1) / (r + 1) ** 2
    m = 2 / (q**0.25 + q**-0.25)
    return m, kprime


def capillary_number(eps: float) -> float:
    """Capillary number giving ``a = eps - 1/3``, for ``0 < eps < 1/3``."""
    if not 0 < eps < THIRD:
        raise ValueError("eps must lie in (0, 1/3)")
    a = eps - THIRD
    _, kp = modulus(eps)
    K = elliptic_K_from_complement(kp)
    num = -a * (3 * a + 2) ** 2 * K
    den = 1 + a + math.sqrt(-2 * a * (a + 1))
    return num / den / (4 * math.pi)


def a_equation_residual(sol: ViscousCuspSolution) -> float:
    """Relative mismatch of the capillary relation at a solved point."""
    return abs(capillary_number(sol.epsilon) - sol.Ca) / sol.Ca


def a_from_Ca(Ca: float) -> ViscousCuspSolution:
    """Solve the capillary relation for ``a`` in ``(-1/3, 0)``.

    The unknown is ``log(eps)`` with ``eps = a + 1/3``, so that the
    exponentially small ``eps`` of large ``Ca`` is resolved to full
    relative precision.
    """
    if not Ca > 0:
        raise ValueError("Ca must be positive")

    def f(u):
        return capillary_number(math.exp(u)) - Ca

    lo, hi = math.log(1e-300), math.log(THIRD * (1 - 1e-12))
    if f(lo) <= 0 or f(hi) >= 0:
        raise ValueError(f"no root bracketed for Ca = {Ca}")
    u = brentq(f, lo, hi, xtol=1e-15, rtol=4 * np.finfo(float).eps, maxiter=500)
    eps = math.exp(u)
    m, _ = modulus(eps)
    return ViscousCuspSolution(float(Ca), eps - THIRD, m, eps)


def _shape(a, th):
    th = np.asarray(th, dtype=float)
    c, s = np.cos(th), np.sin(th)
    return np.column_stack([a * c + (a + 1) * c / (1 + s), a * (1 + s)])


def surface_shape(a: float, thetas, label=None) -> ParametricCurve:
    """Free surface for coefficient ``a``, parametrized by ``theta``."""
    if not -THIRD <= a < 0:
        raise ValueError("a must lie in [-1/3, 0)")
    th = np.asarray(thetas, dtype=float)
    if np.any(np.abs(1 + np.sin(th)) < 1e-12):
        raise ValueError("theta grid hits the pole at theta = -pi/2")
    return ParametricCurve(th, _shape(a, th), label, func=lambda t: _shape(a, t))


def tip_radius_exact(eps: float) -> float:
    """Radius of curvature at ``theta = pi/2`` from the derivatives of the shape.

    There ``x' = -(3a+1)/2``, ``x'' = 0``, ``y' = 0`` and ``y'' = -a``.
    """
    a = eps - THIRD
    xp = -1.5 * eps
    return xp * xp / abs(a)


@dataclass(frozen=True)
class TipReport:
    Ca: float
    a: float
    epsilon: float
    radius: float


@dataclass(frozen=True)
class RadiusLaw:
    """Exponential fit ``R = prefactor * exp(rate * Ca)`` over the reports."""

    rate: float
    prefactor: float
    reports: tuple
    reference_rate: float = -32 * math.pi
    # two candidate asymptotic prefactors, see local_cusp_form
    prefactor_local_form: float = 256.0 / 3.0
    prefactor_alternative: float = 4096.0 / 243.0


def tip_radius(Ca_list) -> RadiusLaw:
    """Tip radius at each capillary number and its log-linear fit in ``Ca``."""
    reports = []
    for Ca in Ca_list:
        sol = a_from_Ca(Ca)
        R = tip_radius_exact(sol.epsilon)
        if R < RADIUS_FLOOR:
            raise ValueError(f"radius {R:.3g} at Ca = {Ca} is below double precision resolution")
        reports.append(TipReport(sol.Ca, sol.a, sol.epsilon, R))
    if len(reports) < 2:
        raise ValueError("need at least two capillary numbers")
    ca = np.array([r.Ca for r in reports])
    rate, icpt = np.polyfit(ca, np.log([r.radius for r in reports]), 1)
    return RadiusLaw(float(rate), float(math.exp(icpt)), tuple(reports))


def epsilon_law(Ca_list) -> tuple[float, float]:
    """Slope and prefactor of ``log(eps)`` against ``Ca``."""
    ca = np.asarray(Ca_list, dtype=float)
    eps = np.array([a_from_Ca(c).epsilon for c in ca])
    slope, icpt = np.polyfit(ca, np.log(eps), 1)
    return float(slope), float(math.exp(icpt))


def local_cusp_curve(eps: float, deltas) -> ParametricCurve:
    """Expansion of the surface about ``theta = pi/2 + delta`` to third order.

    ``x = -(3 eps/2) delta - delta^3/12``, ``y = -2/3 + 2 eps + delta^2/6``.
    """
    d = np.asarray(deltas, dtype=float)

    def func(s):
        s = np.asarray(s, dtype=float)
        return np.column_stack([-1.5 * eps * s - s**3 / 12, -2 * THIRD + 2 * eps + s**2 / 6])

    return ParametricCurve(d, func(d), func=func)


def local_cusp_form(eps: float) -> NormalForm:
    """Cusp normal form of the tip expansion.

    ``theta = -delta/sqrt(3)`` gives ``eps_nf = 3 sqrt(3) eps / 2`` and
    ``a = 3 sqrt(3)/4``; the tip radius ``eps_nf**2`` is ``27 eps^2/4``.
    """
    return NormalForm("cusp", 1.5 * math.sqrt(3) * eps, 0.75 * math.sqrt(3), 0.0,
                      (0.0, -2 * THIRD + 2 * eps))
