"""Free-surface potential flows with cusps.

Two exact solutions:

* a drop stirred by a vortex dipole and a vortex of relative strength
  ``m`` at the same interior point.  For ``m < 1`` the surface carries two
  cusps; as ``m -> 1`` they merge through a swallowtail at the top.
* a layer draining into a sink at the crest of a ridge of opening angle
  ``2*pi/3`` under gravity, which has a single 2/3 cusp.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.integrate import quad

from .curves import CurveError, ParametricCurve, find_self_intersections
from .normal_forms import NormalForm

APEX_HEIGHT = 4.0 / 3.0
CRAYA_CUT = 1e-3


@dataclass(frozen=True)
class HopkinsonDrop:
    """Drop driven by a vortex dipole plus a vortex of relative strength ``m``."""

    m: float

    def __post_init__(self):
        if not 0 <= self.m <= 1:
            raise ValueError(f"m = {self.m} outside [0, 1]")

    @property
    def gamma_m(self) -> float:
        return math.sqrt((1 - self.m) / (1 + self.m))

    @property
    def scale(self) -> float:
        return 2 * (1 + self.m)

    def point(self, vartheta) -> np.ndarray:
        """Surface point for ``zeta = tan(vartheta/2)``; ``vartheta = +-pi`` is the origin."""
        h = 0.5 * np.asarray(vartheta, dtype=float)
        s, c = np.sin(h), np.cos(h)
        g2 = self.gamma_m**2
        # the rational formulas in zeta, multiplied through by cos(vartheta/2)^6
        x = -self.scale * s * c * (3 * s**4 - (1 + g2) * s**2 * c**2 + 3 * g2 * c**4) / 3
        y = self.scale * c**2 * (6 * s**4 + 3 * (1 - g2) * s**2 * c**2 + (1 + g2) * c**4) / 3
        return np.column_stack([x, y])

    def z_of_zeta(self, zeta):
        """Complex position from the integrated map (finite ``zeta`` only)."""
        w = np.asarray(zeta, dtype=complex) + 1j
        return self.scale * (-1 / w + 1j / w**2 + (1 + self.gamma_m**2) / (3 * w**3))

    def dz_dzeta(self, zeta):
        zeta = np.asarray(zeta, dtype=complex)
        return self.scale * (zeta**2 - self.gamma_m**2) / (zeta + 1j) ** 4


def zeta_of(vartheta):
    return np.tan(0.5 * np.asarray(vartheta, dtype=float))


def vartheta_of(zeta):
    return 2 * np.arctan(np.asarray(zeta, dtype=float))


def drop_shape(m: float, samples: int = 4096, dense: float = 0.0) -> ParametricCurve:
    """Closed drop surface parametrized by ``vartheta in [-pi, pi]``.

    Parameters
    ----------
    m : float
        Relative vortex strength, ``0 <= m <= 1``.
    samples : int
        Number of samples on the uniform ``vartheta`` grid.
    dense : float
        If positive, the same number of extra samples is placed uniformly in
        ``|zeta| <= dense`` to resolve the top of the drop.
    """
    if not 0 <= m <= 1:
        raise ValueError(f"m = {m} outside [0, 1] (only the m <= 1 branch is available)")
    if samples < 8:
        raise ValueError("samples must be at least 8")
    drop = HopkinsonDrop(m)
    vt = np.linspace(-math.pi, math.pi, samples)
    if dense > 0:
        vt = np.union1d(vt, vartheta_of(np.linspace(-dense, dense, samples)))
    curve = ParametricCurve(vt, drop.point(vt), label=m, func=drop.point)
    return curve


def drop_local_form(m: float) -> NormalForm:
    """Swallowtail of the drop top for ``m`` near 1.

    With ``m = 1 + eps`` the top reads ``x = 2 eps zeta + 4 zeta^3/3``,
    ``y - 4/3 = 4 eps zeta^2 + 4 zeta^4``; ``theta = 4 zeta`` turns this into
    the swallowtail with ``eps/2`` and ``a = 1/16``.
    """
    if abs(m - 1) > 0.1:
        raise ValueError("the local form holds for |m - 1| <= 0.1")
    return NormalForm("swallowtail", (m - 1) / 2, 1.0 / 16, 0.0, (0.0, APEX_HEIGHT))


def local_top(m: float, zetas) -> ParametricCurve:
    """Polynomial expansion of the drop top, parametrized by ``zeta``."""
    eps = m - 1
    z = np.asarray(zetas, dtype=float)

    def func(s):
        s = np.asarray(s, dtype=float)
        return np.column_stack([2 * eps * s + 4 * s**3 / 3, APEX_HEIGHT + 4 * eps * s**2 + 4 * s**4])

    return ParametricCurve(z, func(z), label=m, func=func)


def has_self_intersection(m: float, samples: int = 20000) -> bool:
    return len(find_self_intersections(drop_shape(m, samples))) > 0


def critical_m(lo: float = 0.9, hi: float = 0.99, tol: float = 1e-5, samples: int = 20000) -> float:
    """Bisection for the ``m`` below which the drop surface stops crossing itself."""
    if has_self_intersection(lo, samples) or not has_self_intersection(hi, samples):
        raise CurveError(f"[{lo}, {hi}] does not bracket the loss of self-intersection")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if has_self_intersection(mid, samples):
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


# -- flow over a ridge ---------------------------------------------------------------


@dataclass(frozen=True)
class CrayaShape:
    thetas: np.ndarray
    curve: ParametricCurve


def craya_velocity(theta):
    """``dz/dtheta`` on the free surface, ``l = exp(-i theta)``.

    On the unit circle the branch factors combine into
    ``-(2/3)^(1/3) * 2i sin(theta/2) exp(-i theta/2) / (2 cos(theta/2))^(4/3)``.
    """
    th = np.asarray(theta, dtype=float)
    c = np.cos(0.5 * th)
    if np.any(c <= 0):
        raise ValueError("theta must lie strictly inside (-pi, pi)")
    return -(2 / 3) ** (1 / 3) * 2j * np.sin(0.5 * th) * np.exp(-0.5j * th) / (2 * c) ** (4 / 3)


def _integrate(grid):
    """Cumulative integral of the velocity from 0 along an increasing grid starting at 0."""
    out = np.zeros(len(grid), dtype=complex)
    for i in range(1, len(grid)):
        a, b = grid[i - 1], grid[i]
        re = quad(lambda t: craya_velocity(t).real, a, b, epsabs=1e-13, epsrel=1e-10)[0]
        im = quad(lambda t: craya_velocity(t).imag, a, b, epsabs=1e-13, epsrel=1e-10)[0]
        out[i] = out[i - 1] + re + 1j * im
    return out


def craya_shape(samples: int = 2001, cut: float = CRAYA_CUT, theta_max: Optional[float] = None) -> CrayaShape:
    """Free surface over the ridge, tip at the origin, ``|theta| <= pi - cut``.

    The surface is mirror symmetric (``x`` odd, ``y`` even in ``theta``), so
    the positive half is integrated panel by panel and reflected.  The
    velocity diverges at ``theta = +-pi``; ``theta_max`` restricts the
    surface further to an arc around the tip.
    """
    if samples < 5:
        raise ValueError("samples must be at least 5")
    top = math.pi - cut if theta_max is None else min(theta_max, math.pi - cut)
    if not top > 0:
        raise ValueError("empty theta range")
    half = samples // 2 + 1
    pos = np.linspace(0.0, top, half)
    zp = _integrate(pos)
    thetas = np.concatenate([-pos[:0:-1], pos])
    z = np.concatenate([-np.conj(zp[:0:-1]), zp])

    def func(t):
        t = np.atleast_1d(np.asarray(t, dtype=float))
        vals = np.empty(len(t), dtype=complex)
        for i, ti in enumerate(t):
            k = int(np.clip(np.searchsorted(pos, abs(ti)), 1, len(pos) - 1))
            base = pos[k - 1]
            re = quad(lambda s: craya_velocity(s).real, base, abs(ti), epsabs=1e-14, epsrel=1e-12)[0]
            im = quad(lambda s: craya_velocity(s).imag, base, abs(ti), epsabs=1e-14, epsrel=1e-12)[0]
            v = zp[k - 1] + re + 1j * im
            vals[i] = v if ti >= 0 else -np.conj(v)
        return np.column_stack([vals.real, vals.imag])

    curve = ParametricCurve(thetas, np.column_stack([z.real, z.imag]), func=func)
    return CrayaShape(thetas, curve)


def craya_local(thetas) -> ParametricCurve:
    """Leading-order tip expansion ``x = -3^(2/3) theta^3/36``, ``y = -3^(2/3) theta^2/12``."""
    th = np.asarray(thetas, dtype=float)
    c = 3 ** (2 / 3)
    return ParametricCurve(th, np.column_stack([-c * th**3 / 36, -c * th**2 / 12]))
