"""Suction from a Hele-Shaw cell through a quadratic conformal map.

The fluid domain is the image of the unit disc under
``f(xi) = a1*xi + a2*xi**2``.  Under suction at unit rate the
coefficients obey::

    a1' = -a1 / (a1**2 - 4*a2**2),    a2' = 2*a2 / (a1**2 - 4*a2**2)

with first integrals ``B = a2*a1**2`` and ``a1**2/2 + B**2/a1**4 = A - t``.
The map stops being univalent when ``a1 = 2|a2|``; at that moment the
boundary develops a cusp.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.optimize import brentq

from .curves import CurveFamily, ParametricCurve
from .normal_forms import NormalForm


class NotUnivalentError(ValueError):
    """Initial map folds the unit circle (a1 <= 2|a2|)."""


class PastSingularityError(ValueError):
    """Requested time is at or after the cusp time."""


class NoCuspError(ValueError):
    """B = 0: the circle shrinks to a point without forming a cusp."""


@dataclass(frozen=True)
class PolyMapState:
    t: float
    a1: float
    a2: float
    A: float
    B: float

    @property
    def margin(self) -> float:
        """Univalence margin ``a1 - 2|a2|``."""
        return self.a1 - 2 * abs(self.a2)

    @property
    def area(self) -> float:
        return math.pi * (self.a1**2 + 2 * self.a2**2)

    def map(self, xi):
        xi = np.asarray(xi, dtype=complex)
        return self.a1 * xi + self.a2 * xi**2


@dataclass(frozen=True)
class CuspPrediction:
    t0: float
    location: tuple
    a1_crit: float
    a2_crit: float


def invariants(a1_0: float, a2_0: float) -> tuple[float, float]:
    """``(A, B)`` from initial coefficients."""
    B = a2_0 * a1_0**2
    return a1_0**2 / 2 + B**2 / a1_0**4, B


def _check_initial(a1_0, a2_0):
    if not a1_0 > 2 * abs(a2_0):
        raise NotUnivalentError(f"a1 = {a1_0} must exceed 2|a2| = {2 * abs(a2_0)}")


def predict_cusp(a1_0: float, a2_0: float) -> CuspPrediction:
    """Closed-form cusp time, critical coefficients and cusp location."""
    _check_initial(a1_0, a2_0)
    A, B = invariants(a1_0, a2_0)
    if B == 0:
        raise NoCuspError("a2 = 0: no cusp forms")
    s = math.copysign(1.0, B)
    a1c = (2 * abs(B)) ** (1 / 3)
    a2c = s * a1c / 2
    t0 = A - 0.75 * a1c**2
    # the fold sits at xi = -sign(B) on the unit circle
    return CuspPrediction(t0, (-s * a1c + a2c, 0.0), a1c, a2c)


def evolve_map(a1_0: float, a2_0: float, t: float) -> PolyMapState:
    """Coefficients at time ``t`` from the first integrals.

    ``a1`` is the root of ``a1**2/2 + B**2/a1**4 = A - t`` on the branch
    through the initial data, bracketed by ``[(2|B|)^(1/3), a1_0]``.
    """
    _check_initial(a1_0, a2_0)
    A, B = invariants(a1_0, a2_0)
    if t < 0:
        raise ValueError("t must be non-negative")
    if B == 0:
        if t >= A:
            raise PastSingularityError("the bubble has been emptied")
        return PolyMapState(t, math.sqrt(2 * (A - t)), 0.0, A, B)
    t0 = predict_cusp(a1_0, a2_0).t0
    if t >= t0:
        raise PastSingularityError(f"t = {t} is not before the cusp time {t0}")
    if t == 0:
        return PolyMapState(0.0, a1_0, a2_0, A, B)

    def g(a1):
        return a1**2 / 2 + B**2 / a1**4 - (A - t)

    lo = (2 * abs(B)) ** (1 / 3)
    a1 = brentq(g, lo, a1_0, xtol=1e-15, rtol=4 * np.finfo(float).eps, maxiter=500)
    return PolyMapState(t, a1, B / a1**2, A, B)


def _rhs(y):
    a1, a2 = y
    d = a1 * a1 - 4 * a2 * a2
    return np.array([-a1 / d, 2 * a2 / d])


def _rk4(f, y, h):
    k1 = f(y)
    k2 = f(y + 0.5 * h * k1)
    k3 = f(y + 0.5 * h * k2)
    k4 = f(y + h * k3)
    return y + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)


def integrate_map(a1_0: float, a2_0: float, t_end: float, dt: float = 1e-4) -> list[PolyMapState]:
    """Fixed-step RK4 trajectory of the coefficient equations from 0 to ``t_end``."""
    _check_initial(a1_0, a2_0)
    A, B = invariants(a1_0, a2_0)
    if B != 0 and t_end >= predict_cusp(a1_0, a2_0).t0:
        raise PastSingularityError("t_end is not before the cusp time")
    n = max(1, int(math.ceil(t_end / dt - 1e-9)))
    h = t_end / n
    y = np.array([a1_0, a2_0], dtype=float)
    out = [PolyMapState(0.0, y[0], y[1], A, B)]
    for i in range(1, n + 1):
        y = _rk4(_rhs, y, h)
        out.append(PolyMapState(i * h, float(y[0]), float(y[1]), A, B))
    return out


def blowup_time(a1_0: float, a2_0: float, ds: float = 1e-3, tol: float = 1e-14) -> float:
    """Time at which ``da1/dt`` diverges, found by integration alone.

    The coefficient equations are integrated in the regularized time
    ``s`` with ``dt/ds = a1**2 - 4*a2**2``, which stays smooth through the
    fold.  RK4 steps proceed until ``a1**2 - 4*a2**2`` changes sign and the
    final step length is then bisected.
    """
    _check_initial(a1_0, a2_0)
    if a2_0 == 0:
        raise NoCuspError("a2 = 0: no cusp forms")

    def f(y):
        a1, a2, _ = y
        return np.array([-a1, 2 * a2, a1 * a1 - 4 * a2 * a2])

    def gap(y):
        return y[0] * y[0] - 4 * y[1] * y[1]

    y = np.array([a1_0, a2_0, 0.0])
    while True:
        nxt = _rk4(f, y, ds)
        if gap(nxt) <= 0:
            break
        y = nxt
    lo, hi = 0.0, ds
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if gap(_rk4(f, y, mid)) > 0:
            lo = mid
        else:
            hi = mid
    return float(_rk4(f, y, 0.5 * (lo + hi))[2])


def boundary_curve(state: PolyMapState, thetas, label: Optional[float] = None) -> ParametricCurve:
    """Image of the unit circle, parametrized by the polar angle on it."""
    thetas = np.asarray(thetas, dtype=float)

    def func(th):
        z = state.map(np.exp(1j * np.asarray(th, dtype=float)))
        return np.column_stack([z.real, z.imag])

    return ParametricCurve(thetas, func(thetas), label, func)


@dataclass(frozen=True)
class LocalCuspFrame:
    """Similarity frame around the forming cusp.

    ``X = -s*y/(alpha*t'^(3/4))`` and ``Y = -s*(x - x_c)/(alpha*t'^(1/2)) - offset``
    with ``theta - theta_c = k*t'^(1/4)*Theta``, where ``s = sign(B)``.
    In this frame the boundary approaches the cusp similarity profile with
    unit ``eps`` and coefficient ``form.a``.
    """

    tprime: float
    a_tilde: float
    x_c: float
    theta_c: float
    alpha: float
    k: float
    offset: float
    sign: float
    form: NormalForm
    physical: NormalForm

    def to_frame(self, curve: ParametricCurve) -> ParametricCurve:
        """Boundary samples expressed in ``(Theta, X, Y)``."""
        s, tp = self.sign, self.tprime
        X = -s * curve.y / (self.alpha * tp**0.75)
        Y = -s * (curve.x - self.x_c) / (self.alpha * tp**0.5) - self.offset
        Th = (curve.params - self.theta_c) / (self.k * tp**0.25)
        return ParametricCurve(Th, np.column_stack([X, Y]), tp)


def local_cusp(a1_0: float, a2_0: float, tprime: float) -> LocalCuspFrame:
    """Local cusp at distance ``tprime`` before the singular time.

    Returns the similarity frame together with the cusp normal form of the
    boundary near the fold in physical coordinates, whose ``eps`` is
    ``3*a_tilde/sqrt(2|a2c|)`` with ``a_tilde = sqrt(t'/3)``.
    """
    if not tprime > 0:
        raise ValueError("tprime must be positive")
    pred = predict_cusp(a1_0, a2_0)
    s = math.copysign(1.0, pred.a2_crit)
    a2c = abs(pred.a2_crit)
    state = evolve_map(a1_0, a2_0, pred.t0 - tprime)
    a_tilde = math.sqrt(tprime / 3)
    alpha = 1.5 / a2c
    k = math.sqrt(3) / (2 * a2c)
    offset = 4 * a2c / (3 * math.sqrt(3))
    form = NormalForm("cusp", 1.0, 3 * math.sqrt(3) / (4 * a2c))
    kp = 1 / math.sqrt(2 * a2c)
    physical = NormalForm("cusp", 3 * a_tilde * kp, 3 * a2c * kp**3, s * math.pi / 2,
                          (-s * state.a1 + state.a2, 0.0))
    theta_c = math.pi if s > 0 else 0.0
    return LocalCuspFrame(tprime, a_tilde, pred.location[0], theta_c, alpha, k, offset, s, form, physical)


def boundary_family(a1_0: float, a2_0: float, tprimes, thetas) -> CurveFamily:
    """Boundaries at ``t = t0 - t'`` labelled by ``t'`` (``t' = 0`` is the cusp)."""
    pred = predict_cusp(a1_0, a2_0)
    A, B = invariants(a1_0, a2_0)
    curves = []
    for tp in tprimes:
        if tp == 0:
            state = PolyMapState(pred.t0, pred.a1_crit, pred.a2_crit, A, B)
        else:
            state = evolve_map(a1_0, a2_0, pred.t0 - tp)
        curves.append(boundary_curve(state, thetas, label=tp))
    return CurveFamily(tuple(curves), critical_value=pred.t0, label_name="tprime")


def suction_invariants(trajectory) -> tuple[float, float]:
    """Drift of ``a2*a1**2`` and the least-squares slope of the area in time."""
    if len(trajectory) < 3:
        raise ValueError("need at least 3 states")
    t = np.array([s.t for s in trajectory])
    if len(np.unique(t)) < 3:
        raise ValueError("need at least 3 distinct times")
    drift = max(abs(s.a2 * s.a1**2 - s.B) for s in trajectory)
    area = np.array([s.area for s in trajectory])
    slope = np.polyfit(t, area, 1)[0]
    return float(drift), float(slope)
