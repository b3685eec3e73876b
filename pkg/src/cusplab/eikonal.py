"""Unit-speed wavefronts launched from an even polynomial graph.

The initial front is ``h0(x0) = a1*x0**2 + a2*x0**4 + ...``.  Every point
travels along its normal at unit speed, so the front at time ``t`` is
known in closed form as a curve parametrized by ``x0``.  It stays valid
through the first focusing event, where the front develops a swallowtail.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from numpy.polynomial import polynomial as P
from scipy.optimize import minimize_scalar

from .curves import CurveError, CurveFamily, ParametricCurve
from .normal_forms import NormalForm


class NoFocusingError(ValueError):
    """Rays through this point diverge (h0'' <= 0), so they never meet."""


class DegenerateFocusingError(ValueError):
    """The quartic term cancels the focusing and no swallowtail forms."""


@dataclass(frozen=True)
class InitialFront:
    """Even polynomial initial front ``h0 = a1 x0^2 + a2 x0^4 + sum c_k x0^(2k+6)``."""

    a1: float
    a2: float = 0.0
    higher: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "higher", tuple(float(c) for c in self.higher))

    @property
    def coefficients(self) -> np.ndarray:
        """Ascending power-series coefficients of ``h0``."""
        c = np.zeros(5 + 2 * len(self.higher))
        c[2], c[4] = self.a1, self.a2
        for k, v in enumerate(self.higher):
            c[6 + 2 * k] = v
        return c

    def derivatives(self, x0):
        """``(h0, h0', h0'')`` at ``x0``."""
        c = self.coefficients
        x0 = np.asarray(x0, dtype=float)
        return P.polyval(x0, c), P.polyval(x0, P.polyder(c)), P.polyval(x0, P.polyder(c, 2))


@dataclass(frozen=True)
class CausticPoint:
    x0: float
    t_c: float
    point: tuple


@dataclass(frozen=True)
class FocusingEvent:
    """First singularity of a front: time, ray and local swallowtail coefficient."""

    t0: float
    x0: float
    a: float
    location: tuple

    def local_form(self, tprime: float) -> NormalForm:
        """Swallowtail approximating the front at ``t = t0 - tprime``."""
        return NormalForm("swallowtail", tprime, self.a, 0.0, (self.location[0], self.location[1] - tprime))


def _front_points(front: InitialFront, t, x0):
    h, hp, _ = front.derivatives(x0)
    w = 1.0 / np.sqrt(1.0 + hp**2)
    return np.column_stack([x0 - hp * t * w, h + t * w])


def propagate_front(front: InitialFront, t: float, x0s, label: Optional[float] = None) -> ParametricCurve:
    """Front at time ``t``, parametrized by the launch abscissa ``x0``.

    The curve is multivalued after focusing; nothing is trimmed.
    """
    if t < 0:
        raise ValueError("t must be non-negative")
    x0s = np.asarray(x0s, dtype=float)
    return ParametricCurve(x0s, _front_points(front, t, x0s), t if label is None else label,
                           func=lambda s: _front_points(front, t, np.asarray(s, dtype=float)))


def caustic_time(front: InitialFront, x0):
    """Time at which the ray from ``x0`` reaches the caustic (radius of curvature)."""
    _, hp, hpp = front.derivatives(x0)
    if np.any(hpp <= 0):
        raise NoFocusingError(f"h0'' <= 0 at x0 = {x0}")
    return (1.0 + hp**2) ** 1.5 / hpp


def swallowtail_coefficient(front: InitialFront) -> float:
    """Cubic coefficient of the swallowtail born at the axis."""
    return 3.0 * (front.a1**3 - front.a2) / (4.0 * front.a1**4)


def first_singularity(front: InitialFront) -> FocusingEvent:
    """Earliest focusing event, by bounded minimization of the caustic time.

    The search covers ``|x0| <= 1/sqrt(a1)``.
    """
    if front.a1 <= 0:
        raise NoFocusingError("a1 must be positive")
    a = swallowtail_coefficient(front)
    if a <= 0:
        raise DegenerateFocusingError(f"a1^3 - a2 = {front.a1**3 - front.a2:g}: no swallowtail")
    half = 1.0 / math.sqrt(front.a1)

    def tc(x0):
        _, _, hpp = front.derivatives(x0)
        return float(caustic_time(front, x0)) if hpp > 0 else math.inf

    res = minimize_scalar(tc, bounds=(-half, half), method="bounded", options={"xatol": 1e-12})
    x0 = float(res.x)
    # the even symmetry puts the minimum on the axis; keep whichever is lower
    if tc(0.0) <= res.fun:
        x0 = 0.0
    t0 = tc(x0)
    point = _front_points(front, t0, np.array([x0]))[0]
    return FocusingEvent(t0, x0, a, (float(point[0]), float(point[1])))


def caustic_curve(front: InitialFront, x0s) -> ParametricCurve:
    """Envelope of the rays: the front point of each ray at its caustic time."""
    x0s = np.asarray(x0s, dtype=float)

    def func(s):
        s = np.asarray(s, dtype=float)
        h, hp, _ = front.derivatives(s)
        tc = caustic_time(front, s)
        w = 1.0 / np.sqrt(1.0 + hp**2)
        return np.column_stack([s - hp * tc * w, h + tc * w])

    return ParametricCurve(x0s, func(x0s), func=func)


def front_family(front: InitialFront, tprimes, x0s) -> CurveFamily:
    """Fronts at ``t = t0 - t'`` labelled by ``t'``."""
    ev = first_singularity(front)
    curves = tuple(propagate_front(front, ev.t0 - tp, x0s, label=tp) for tp in tprimes)
    return CurveFamily(curves, critical_value=ev.t0, label_name="tprime")


def _times(family: CurveFamily) -> np.ndarray:
    labels = family.labels
    if family.label_name == "tprime":
        if family.critical_value is None:
            raise CurveError("t' labels need the critical time")
        return family.critical_value - labels
    return labels


def eikonal_residual(family: CurveFamily) -> float:
    """Max of ``|Im(z_sigma conj(z_t)) + |z_sigma||`` over the family grid.

    Both derivatives are second-order finite differences.  Curves must share
    one parameter grid and carry times (or ``t'`` with a critical time).
    """
    if len(family) < 3:
        raise CurveError("need at least 3 time slices")
    grid = family.curves[0].params
    for c in family.curves[1:]:
        if len(c.params) != len(grid) or np.any(c.params != grid):
            raise CurveError("curves are sampled on different parameter grids")
    t = _times(family)
    order = np.argsort(t)
    t = t[order]
    if np.any(np.diff(t) <= 0):
        raise CurveError("time slices must be distinct")
    z = np.array([family.curves[i].z for i in order])
    z_t = np.gradient(z, t, axis=0, edge_order=2)
    z_s = np.gradient(z, grid, axis=1, edge_order=2)
    return float(np.max(np.abs(np.imag(z_s * np.conj(z_t)) + np.abs(z_s))))
