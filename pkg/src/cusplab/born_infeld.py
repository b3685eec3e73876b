"""Graph solutions of the Born-Infeld equation from two generating functions.

The equation is ``z_tt (1 + z_x^2) - z_xx (1 - z_t^2) = 2 z_x z_t z_xt``.
With ``u = f - g`` and ``v = f + g``, where ``f`` is evaluated at
``phi + t/lam`` and ``g`` at ``phi - t/lam``, the solution is the curve
``(x, z)(t, phi)`` with::

    x_phi = lam cos(u) cos(v),   z_phi = lam cos(u) sin(v)
    x_t   = -sin(u) sin(v),      z_t   = sin(u) cos(v)

The curvature ``(f' + g') / (lam cos u)`` blows up where ``cos u = 0``.
Near the first such point the curve is a swallowtail unfolding linearly
in the time to the singularity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from numpy.polynomial import polynomial as P
from numpy.polynomial.legendre import leggauss
from scipy.interpolate import CubicHermiteSpline
from scipy.optimize import brentq, minimize_scalar

from .curves import CurveError, CurveFamily, ParametricCurve
from .normal_forms import NormalForm

MAX_DEGREE = 6
GAUSS_ORDER = 12
PANEL = 0.05
_GL_X, _GL_W = leggauss(GAUSS_ORDER)


class GraphConditionError(ValueError):
    """The curve has a vertical tangent (``|f + g| >= pi/2``) or folds back."""


class SingularCurvatureError(ArithmeticError):
    """``cos(f - g) = 0``: the curvature is infinite."""


@dataclass(frozen=True)
class HoppeData:
    """Polynomial generating functions and the speed parameter ``lam``.

    Coefficients are ascending powers of the argument ``zeta``.  When
    ``g_coeffs`` is omitted the symmetric choice ``g(zeta) = -f(-zeta)``
    is used.
    """

    f_coeffs: tuple
    g_coeffs: Optional[tuple] = None
    lam: float = 1.0

    def __post_init__(self):
        f = tuple(float(c) for c in self.f_coeffs)
        if not f:
            raise ValueError("f needs at least one coefficient")
        g = self.g_coeffs
        g = tuple(-((-1) ** k) * c for k, c in enumerate(f)) if g is None else tuple(float(c) for c in g)
        if max(len(f), len(g)) - 1 > MAX_DEGREE:
            raise ValueError(f"generating functions are limited to degree {MAX_DEGREE}")
        if not all(map(math.isfinite, f + g)):
            raise ValueError("coefficients must be finite")
        if not self.lam > 0:
            raise ValueError("lam must be positive")
        object.__setattr__(self, "f_coeffs", f)
        object.__setattr__(self, "g_coeffs", g)
        object.__setattr__(self, "lam", float(self.lam))

    @classmethod
    def from_expansion(cls, zeta0: float, a: float, b: float, lam: float = 1.0) -> "HoppeData":
        """Symmetric data with ``f = pi/4 + a (zeta - zeta0) - b (zeta - zeta0)^2``."""
        f = (math.pi / 4 - a * zeta0 - b * zeta0**2, a + 2 * b * zeta0, -b)
        return cls(f, None, lam)

    @property
    def symmetric(self) -> bool:
        return all(gk == -((-1) ** k) * fk for k, (fk, gk) in
                   enumerate(zip(self.f_coeffs, self.g_coeffs))) and len(self.f_coeffs) == len(self.g_coeffs)

    def phases(self, t, phi):
        """``u = f - g``, ``v = f + g`` and ``f' + g'`` at ``(t, phi)``."""
        zp = np.asarray(phi, dtype=float) + np.asarray(t, dtype=float) / self.lam
        zm = np.asarray(phi, dtype=float) - np.asarray(t, dtype=float) / self.lam
        f, g = P.polyval(zp, self.f_coeffs), P.polyval(zm, self.g_coeffs)
        fp = P.polyval(zp, P.polyder(self.f_coeffs)) if len(self.f_coeffs) > 1 else 0 * zp
        gp = P.polyval(zm, P.polyder(self.g_coeffs)) if len(self.g_coeffs) > 1 else 0 * zm
        return f - g, f + g, fp + gp


def tangent(data: HoppeData, t, phi) -> np.ndarray:
    """``(x_phi, z_phi)`` stacked along the last axis."""
    u, v, _ = data.phases(t, phi)
    c = data.lam * np.cos(u)
    return np.stack([c * np.cos(v), c * np.sin(v)], axis=-1)


def velocity(data: HoppeData, t, phi) -> np.ndarray:
    """``(x_t, z_t)`` stacked along the last axis."""
    u, v, _ = data.phases(t, phi)
    s = np.sin(u)
    return np.stack([-s * np.sin(v), s * np.cos(v)], axis=-1)


# -- quadrature ------------------------------------------------------------------


def _refine(grid: np.ndarray) -> np.ndarray:
    gaps = np.diff(grid)
    nsub = np.maximum(1, np.ceil(gaps / PANEL).astype(int))
    if np.all(nsub == 1):
        return grid
    pieces = [np.linspace(grid[i], grid[i + 1], nsub[i] + 1)[:-1] for i in range(len(gaps))]
    return np.concatenate(pieces + [grid[-1:]])


def _cumulative(integrand, start: float, targets) -> np.ndarray:
    """Integrals of a vector integrand from ``start`` to each target.

    Composite Gauss-Legendre on panels no wider than ``PANEL``; the
    integrand maps an array of abscissae to values with a trailing axis.
    """
    targets = np.asarray(targets, dtype=float)
    grid = _refine(np.unique(np.concatenate([targets.ravel(), [start]])))
    lo, hi = grid[:-1], grid[1:]
    mid, half = 0.5 * (lo + hi), 0.5 * (hi - lo)
    vals = integrand(mid[:, None] + half[:, None] * _GL_X[None, :])
    panels = half[:, None] * np.einsum("k,nkc->nc", _GL_W, vals)
    cum = np.concatenate([np.zeros((1, panels.shape[1])), np.cumsum(panels, axis=0)])
    cum -= cum[np.searchsorted(grid, start)]
    return cum[np.searchsorted(grid, targets.ravel())].reshape(targets.shape + (panels.shape[1],))


def _points_t_first(data, t, phis, anchor):
    t_ref, phi_ref, x_ref, z_ref = anchor
    base = np.array([x_ref, z_ref]) + _cumulative(lambda s: velocity(data, s, phi_ref), t_ref, [t])[0]
    return base + _cumulative(lambda p: tangent(data, t, p), phi_ref, phis)


def _points_phi_first(data, t, phis, anchor):
    t_ref, phi_ref, x_ref, z_ref = anchor
    phis = np.asarray(phis, dtype=float)
    base = np.array([x_ref, z_ref]) + _cumulative(lambda p: tangent(data, t_ref, p), phi_ref, phis)
    # one time integral per phi, all sharing the same panels in t
    grid = _refine(np.unique([t_ref, float(t)]))
    lo, hi = grid[:-1], grid[1:]
    nodes = (0.5 * (lo + hi))[:, None] + (0.5 * (hi - lo))[:, None] * _GL_X[None, :]
    vals = velocity(data, nodes[..., None], phis[None, None, :])
    total = np.einsum("n,k,nkpc->pc", 0.5 * (hi - lo), _GL_W, vals)
    return base + (total if t >= t_ref else -total)


def hoppe_point(data: HoppeData, t: float, phis, anchor=(0.0, 0.0, 0.0, 0.0),
                route: str = "t-first") -> np.ndarray:
    """Points ``(x, z)`` at time ``t``, integrated from the anchor along either route.

    ``"t-first"`` integrates the velocity at ``phi_ref`` and then the
    tangent at time ``t``; ``"phi-first"`` integrates the tangent at
    ``t_ref`` and then the velocity along each ``phi``.  Agreement of the
    two routes checks the integrability of the pair of equations.
    """
    if route == "t-first":
        return _points_t_first(data, t, phis, anchor)
    if route == "phi-first":
        return _points_phi_first(data, t, phis, anchor)
    raise ValueError(f"unknown route {route!r}")


def _check_graph(data, t, phis):
    _, v, _ = data.phases(t, phis)
    if np.any(np.abs(v) >= math.pi / 2):
        bad = np.asarray(phis)[np.argmax(np.abs(v))]
        raise GraphConditionError(f"|f + g| >= pi/2 near phi = {bad:.6g} at t = {t}")


@dataclass(frozen=True)
class BICurve:
    t: float
    curve: ParametricCurve
    anchor: tuple


def hoppe_curve(data: HoppeData, t: float, phis, anchor=(0.0, 0.0, 0.0, 0.0),
                label: Optional[float] = None) -> BICurve:
    """Solution curve at time ``t`` on the ``phi`` grid.

    The anchor ``(t_ref, phi_ref, x_ref, z_ref)`` fixes the constants of
    integration; by default the point ``phi = 0`` sits at the origin at
    ``t = 0``.
    """
    phis = np.asarray(phis, dtype=float)
    _check_graph(data, t, phis)
    anchor = tuple(float(v) for v in anchor)

    def func(s):
        return _points_t_first(data, t, np.asarray(s, dtype=float), anchor)

    curve = ParametricCurve(phis, func(phis), t if label is None else label, func=func)
    return BICurve(float(t), curve, anchor)


def mixed_partial_gap(data: HoppeData, t: float, phis, h: float = 1e-4) -> float:
    """Max of ``|d/dt (x_phi, z_phi) - d/dphi (x_t, z_t)|`` by central differences."""
    phis = np.asarray(phis, dtype=float)
    dt = (tangent(data, t + h, phis) - tangent(data, t - h, phis)) / (2 * h)
    dp = (velocity(data, t, phis + h) - velocity(data, t, phis - h)) / (2 * h)
    return float(np.max(np.abs(dt - dp)))


def hoppe_curvature(data: HoppeData, t, phi):
    """Curvature ``(f' + g') / (lam cos(f - g))`` of the graph ``z(x)``."""
    u, _, fg = data.phases(t, phi)
    c = np.cos(u)
    if np.any(np.abs(c) <= 1e-15):
        raise SingularCurvatureError("cos(f - g) = 0: curvature singularity")
    return fg / (data.lam * c)


# -- the PDE ---------------------------------------------------------------------


def bi_pde_residual(z, dx: float, dt: float) -> float:
    """Max residual of the equation for samples ``z[i, j] = z(t_i, x_j)``.

    Second-order central differences on the interior of the grid.
    """
    z = np.asarray(z, dtype=float)
    if z.ndim != 2 or min(z.shape) < 3:
        raise ValueError("z must be a 2-d array with at least 3 samples per axis")
    c = z[1:-1, 1:-1]
    zt = (z[2:, 1:-1] - z[:-2, 1:-1]) / (2 * dt)
    zx = (z[1:-1, 2:] - z[1:-1, :-2]) / (2 * dx)
    ztt = (z[2:, 1:-1] - 2 * c + z[:-2, 1:-1]) / dt**2
    zxx = (z[1:-1, 2:] - 2 * c + z[1:-1, :-2]) / dx**2
    zxt = (z[2:, 2:] - z[2:, :-2] - z[:-2, 2:] + z[:-2, :-2]) / (4 * dx * dt)
    r = ztt * (1 + zx**2) - zxx * (1 - zt**2) - 2 * zx * zt * zxt
    return float(np.max(np.abs(r)))


def _resample(data, t, phis, xs, anchor, newton: int = 3):
    """``z`` at abscissae ``xs`` for time ``t``, inverting ``x(phi)`` by Newton."""
    pts = _points_t_first(data, t, phis, anchor)
    tan = tangent(data, t, phis)
    if np.any(tan[:, 0] <= 0):
        raise GraphConditionError(f"x is not increasing in phi at t = {t}")
    guess = CubicHermiteSpline(pts[:, 0], phis, 1.0 / tan[:, 0])
    ph = guess(xs)
    for _ in range(newton):
        x = _points_t_first(data, t, ph, anchor)[:, 0]
        ph = ph - (x - xs) / tangent(data, t, ph)[:, 0]
    return _points_t_first(data, t, ph, anchor)[:, 1]


def bi_residual(data: HoppeData, t_grid, phi_grid, dx: Optional[float] = None,
                anchor=(0.0, 0.0, 0.0, 0.0)) -> float:
    """Residual of the equation for the solution sampled as a graph ``z(x, t)``.

    Each time slice is resampled onto a common uniform ``x`` grid of
    spacing ``dx`` (default: the spacing of ``t_grid``) covering the
    range shared by all slices; derivatives are central differences.
    """
    t_grid = np.asarray(t_grid, dtype=float)
    phi_grid = np.asarray(phi_grid, dtype=float)
    if len(t_grid) < 3:
        raise ValueError("need at least 3 time slices")
    steps = np.diff(t_grid)
    if np.any(steps <= 0) or np.ptp(steps) > 1e-9 * steps.mean():
        raise ValueError("t_grid must be uniform and increasing")
    dt = float(steps.mean())
    dx = dt if dx is None else float(dx)
    for t in t_grid:
        _check_graph(data, t, phi_grid)
    ends = np.array([_points_t_first(data, t, phi_grid[[0, -1]], anchor)[:, 0] for t in t_grid])
    lo, hi = ends[:, 0].max(), ends[:, 1].min()
    n = int(math.floor((hi - lo) / dx))
    if n < 2:
        raise ValueError("the slices share too short an x range for this dx")
    xs = lo + 0.5 * (hi - lo - n * dx) + dx * np.arange(n + 1)
    z = np.array([_resample(data, t, phi_grid, xs, anchor) for t in t_grid])
    return bi_pde_residual(z, dx, dt)


# -- singularity -----------------------------------------------------------------


def _graph_margin(data, t, phi_range, samples=401):
    """``min over phi of pi/2 - |f - g|``, refined around the grid minimum."""
    ph = np.linspace(phi_range[0], phi_range[1], samples)
    m = math.pi / 2 - np.abs(data.phases(t, ph)[0])
    i = int(np.argmin(m))
    lo, hi = ph[max(i - 1, 0)], ph[min(i + 1, samples - 1)]
    res = minimize_scalar(lambda p: math.pi / 2 - abs(float(data.phases(t, p)[0])),
                          bounds=(lo, hi), method="bounded", options={"xatol": 1e-12})
    return min(float(res.fun), float(m[i])), float(res.x if res.fun <= m[i] else ph[i])


def blowup_time(data: HoppeData, t_start: float, t_stop: float, phi_range=(-1.0, 1.0),
                steps: int = 200) -> tuple[float, float]:
    """First time after ``t_start`` at which ``cos(f - g)`` vanishes somewhere.

    Returns ``(t0, phi0)``.  The margin ``pi/2 - |f - g|`` is minimized over
    ``phi_range`` at each time; its first sign change is bracketed on a
    uniform scan and then located by Brent's method.
    """
    if _graph_margin(data, t_start, phi_range)[0] <= 0:
        raise SingularCurvatureError("already singular at t_start")
    ts = np.linspace(t_start, t_stop, steps + 1)
    prev = ts[0]
    for t in ts[1:]:
        if _graph_margin(data, t, phi_range)[0] <= 0:
            t0 = brentq(lambda s: _graph_margin(data, s, phi_range)[0], prev, t, xtol=1e-14,
                        rtol=4 * np.finfo(float).eps, maxiter=200)
            return float(t0), _graph_margin(data, t0, phi_range)[1]
        prev = t
    raise SingularCurvatureError(f"no curvature singularity in [{t_start}, {t_stop}]")


@dataclass(frozen=True)
class BISingularity:
    """First singularity of the data built from ``f = pi/4 + a s - b s^2``, ``s = zeta - zeta0``."""

    data: HoppeData
    zeta0: float
    a: float
    b: float
    t0: float
    phi0: float
    location: tuple

    @property
    def swallowtail_a(self) -> float:
        return self.data.lam * self.b / (4 * self.a**3)

    def local_form(self, tprime: float) -> NormalForm:
        """Swallowtail with ``eps = t'`` through the point ``phi = 0`` at ``t0 - t'``.

        ``theta = 2 a phi`` maps the leading-order curve onto the normal form.
        """
        p = hoppe_point(self.data, self.t0 - tprime, [self.phi0])[0]
        return NormalForm("swallowtail", float(tprime), self.swallowtail_a, 0.0, (float(p[0]), float(p[1])))

    def family(self, tprimes, phis) -> CurveFamily:
        """Solution curves at ``t = t0 - t'`` labelled by ``t'``."""
        curves = tuple(hoppe_curve(self.data, self.t0 - tp, phis, label=tp).curve for tp in tprimes)
        return CurveFamily(curves, critical_value=self.t0, label_name="tprime")


def local_curve(a: float, b: float, tprime: float, phis) -> ParametricCurve:
    """Leading-order curve ``x = 2 a t' phi + 2 b phi^3/3``, ``z = 2 a^2 t' phi^2 + a b phi^4``."""
    phis = np.asarray(phis, dtype=float)

    def func(p):
        p = np.asarray(p, dtype=float)
        return np.column_stack([2 * a * tprime * p + 2 * b * p**3 / 3,
                                2 * a * a * tprime * p**2 + a * b * p**4])

    return ParametricCurve(phis, func(phis), tprime, func=func)


def bi_singularity(zeta0: float, a: float, b: float, lam: float = 1.0) -> BISingularity:
    """Singular time, point and local swallowtail for expansion data.

    The phase ``f - g`` first reaches ``pi/2`` at ``phi = 0`` when
    ``t/lam = zeta0``, which requires ``a > 0`` and ``b > 0``.
    """
    if not a > 0:
        raise ValueError("a must be positive for a regular solution before the singularity")
    if not b > 0:
        raise ValueError("b must be positive for the singularity to be the first one")
    data = HoppeData.from_expansion(zeta0, a, b, lam)
    t0 = lam * zeta0
    p = hoppe_point(data, t0, [0.0])[0]
    return BISingularity(data, float(zeta0), float(a), float(b), float(t0), 0.0, (float(p[0]), float(p[1])))
