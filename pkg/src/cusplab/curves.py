"""Sampled planar curves and the geometric queries shared by every solver.

A :class:`ParametricCurve` is an immutable set of samples ``z(sigma)`` of a
plane curve.  Generators that know the curve in closed form (or by
quadrature) attach the exact evaluator as ``func``; the tip and crossing
finders use it to refine below the sampling resolution.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np
from scipy.optimize import minimize_scalar

CurveFunc = Callable[[np.ndarray], np.ndarray]

TIP_THRESHOLD = 1e-3


class CurveError(ValueError):
    """Invalid curve data or a query the curve cannot answer."""


@dataclass(frozen=True, eq=False)
class ParametricCurve:
    """Samples of a plane curve.

    Parameters
    ----------
    params : array_like, shape (n,)
        Strictly increasing parameter values.
    points : array_like, shape (n, 2)
        ``(x, y)`` samples.
    label : float, optional
        Time, time-to-singularity or control parameter of this curve.
    func : callable, optional
        Exact evaluator mapping a parameter array to an ``(m, 2)`` array.
        Not serialized and ignored by equality.
    """

    params: np.ndarray
    points: np.ndarray
    label: Optional[float] = None
    func: Optional[CurveFunc] = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        params = np.array(self.params, dtype=float).reshape(-1)
        points = np.array(self.points, dtype=float)
        if points.ndim != 2 or points.shape[1] != 2:
            raise CurveError("points must have shape (n, 2)")
        if len(params) != len(points):
            raise CurveError("params and points differ in length")
        if len(params) < 2:
            raise CurveError("a curve needs at least 2 samples")
        if not (np.all(np.isfinite(params)) and np.all(np.isfinite(points))):
            raise CurveError("non-finite curve data")
        if np.any(np.diff(params) <= 0):
            raise CurveError("params must be strictly increasing")
        params.setflags(write=False)
        points.setflags(write=False)
        object.__setattr__(self, "params", params)
        object.__setattr__(self, "points", points)
        if self.label is not None:
            object.__setattr__(self, "label", float(self.label))

    def __len__(self):
        return len(self.params)

    @property
    def x(self) -> np.ndarray:
        return self.points[:, 0]

    @property
    def y(self) -> np.ndarray:
        return self.points[:, 1]

    @property
    def z(self) -> np.ndarray:
        return self.points[:, 0] + 1j * self.points[:, 1]

    @property
    def is_closed(self) -> bool:
        span = np.ptp(self.points, axis=0).max()
        return bool(np.linalg.norm(self.points[0] - self.points[-1]) <= 1e-12 * max(span, 1.0))

    def evaluate(self, sigma) -> np.ndarray:
        """Points at arbitrary parameters: exact if ``func`` is set, else linear."""
        s = np.atleast_1d(np.asarray(sigma, dtype=float))
        if self.func is not None:
            return np.asarray(self.func(s), dtype=float).reshape(-1, 2)
        return np.column_stack([np.interp(s, self.params, self.x), np.interp(s, self.params, self.y)])

    def transformed(self, rotation: float = 0.0, translation=(0.0, 0.0)) -> "ParametricCurve":
        """Rigidly moved copy: rotate about the origin, then translate."""
        c, s = math.cos(rotation), math.sin(rotation)
        rot = np.array([[c, -s], [s, c]])
        shift = np.asarray(translation, dtype=float)
        func = None
        if self.func is not None:
            inner = self.func
            func = lambda p: np.asarray(inner(p), dtype=float).reshape(-1, 2) @ rot.T + shift
        return ParametricCurve(self.params, self.points @ rot.T + shift, self.label, func)

    def reversed(self) -> "ParametricCurve":
        """Same curve traversed backwards, parameter ``-sigma``."""
        func = None
        if self.func is not None:
            inner = self.func
            func = lambda p: inner(-np.asarray(p, dtype=float))
        return ParametricCurve(-self.params[::-1], self.points[::-1], self.label, func)

    def subset(self, start: int, stop: int) -> "ParametricCurve":
        return ParametricCurve(self.params[start:stop], self.points[start:stop], self.label, self.func)

    # -- serialization -----------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "params": self.params.tolist(),
            "points": self.points.tolist(),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ParametricCurve":
        try:
            return cls(data["params"], data["points"], data.get("label"))
        except KeyError as exc:
            raise CurveError(f"curve object is missing {exc}") from None

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["sigma", "x", "y"])
        for s, (x, y) in zip(self.params, self.points):
            writer.writerow([repr(float(s)), repr(float(x)), repr(float(y))])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str, label: Optional[float] = None) -> "ParametricCurve":
        rows = list(csv.DictReader(io.StringIO(text)))
        if not rows or not {"sigma", "x", "y"} <= set(rows[0]):
            raise CurveError("CSV needs columns sigma,x,y")
        data = np.array([[float(r["sigma"]), float(r["x"]), float(r["y"])] for r in rows])
        return cls(data[:, 0], data[:, 1:], label)


@dataclass(frozen=True)
class CurveFamily:
    """Curves indexed by their distance to a singularity.

    Each curve's ``label`` is ``t' = t0 - t`` (or the analogous parameter
    distance); ``label == 0`` marks the critical curve.
    """

    curves: tuple
    critical_value: Optional[float] = None
    label_name: str = "tprime"

    def __post_init__(self):
        object.__setattr__(self, "curves", tuple(self.curves))

    def __len__(self):
        return len(self.curves)

    def __iter__(self):
        return iter(self.curves)

    @property
    def labels(self) -> np.ndarray:
        return np.array([np.nan if c.label is None else c.label for c in self.curves])

    def to_dict(self) -> dict:
        return {
            "label_name": self.label_name,
            "critical_value": self.critical_value,
            "curves": [c.to_dict() for c in self.curves],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "CurveFamily":
        if "curves" not in data:
            raise CurveError("family object needs a 'curves' list")
        return cls(
            tuple(ParametricCurve.from_dict(c) for c in data["curves"]),
            data.get("critical_value"),
            data.get("label_name", "tprime"),
        )


@dataclass(frozen=True)
class GeometryReport:
    arclength: float
    speed: np.ndarray
    curvature: np.ndarray


@dataclass(frozen=True)
class Crossing:
    sigma_i: float
    sigma_j: float
    point: tuple


@dataclass(frozen=True)
class IntersectionReport:
    crossings: tuple

    def __len__(self):
        return len(self.crossings)

    def __bool__(self):
        return bool(self.crossings)


@dataclass(frozen=True)
class Tip:
    sigma: float
    point: tuple
    speed: float


# -- derivatives of exact evaluators -----------------------------------------


def _as_complex(pts: np.ndarray) -> np.ndarray:
    pts = np.asarray(pts, dtype=float).reshape(-1, 2)
    return pts[:, 0] + 1j * pts[:, 1]


def func_derivatives(func: CurveFunc, sigma, h: float):
    """First and second derivative of ``func`` as complex numbers (5-point stencils)."""
    s = np.atleast_1d(np.asarray(sigma, dtype=float))
    offsets = np.array([-2.0, -1.0, 0.0, 1.0, 2.0]) * h
    z = _as_complex(func((s[:, None] + offsets[None, :]).ravel())).reshape(len(s), 5)
    d1 = (z[:, 0] - 8 * z[:, 1] + 8 * z[:, 3] - z[:, 4]) / (12 * h)
    d2 = (-z[:, 0] + 16 * z[:, 1] - 30 * z[:, 2] + 16 * z[:, 3] - z[:, 4]) / (12 * h * h)
    return d1, d2


def _signed_curvature(d1: np.ndarray, d2: np.ndarray) -> np.ndarray:
    return (np.conj(d1) * d2).imag / np.abs(d1) ** 3


# -- geometry ----------------------------------------------------------------


def geometry(curve: ParametricCurve) -> GeometryReport:
    """Arclength, speed ``|dz/dsigma|`` and signed curvature by finite differences."""
    if len(curve) < 3:
        raise CurveError("curvature needs at least 3 samples")
    seg = np.hypot(np.diff(curve.x), np.diff(curve.y))
    dx = np.gradient(curve.x, curve.params, edge_order=2)
    dy = np.gradient(curve.y, curve.params, edge_order=2)
    ddx = np.gradient(dx, curve.params, edge_order=2)
    ddy = np.gradient(dy, curve.params, edge_order=2)
    speed = np.hypot(dx, dy)
    with np.errstate(divide="ignore", invalid="ignore"):
        kappa = (dx * ddy - dy * ddx) / speed**3
    return GeometryReport(float(seg.sum()), speed, kappa)


def _speed2(curve: ParametricCurve) -> np.ndarray:
    dx = np.gradient(curve.x, curve.params, edge_order=2)
    dy = np.gradient(curve.y, curve.params, edge_order=2)
    return dx * dx + dy * dy


def _parabola_vertex(s: Sequence[float], v: Sequence[float]):
    """Vertex of the parabola through three points, clamped to their span."""
    (s0, s1, s2), (v0, v1, v2) = s, v
    denom = (s0 - s1) * (s0 - s2) * (s1 - s2)
    A = (s2 * (v1 - v0) + s1 * (v0 - v2) + s0 * (v2 - v1)) / denom
    B = (s2 * s2 * (v0 - v1) + s1 * s1 * (v2 - v0) + s0 * s0 * (v1 - v2)) / denom
    if A <= 0:
        return s1, v1
    sv = min(max(-B / (2 * A), s0), s2)
    C = v0 - A * s0 * s0 - B * s0
    return sv, A * sv * sv + B * sv + C


def find_tips(curve: ParametricCurve, threshold: float = TIP_THRESHOLD) -> list[Tip]:
    """Points where the tangent vector vanishes.

    A tip is a local minimum of the speed below ``threshold`` times the
    median speed.  The minimum of the squared speed is located by a
    parabola through the bracketing samples and, when the curve carries an
    exact evaluator, polished by a bounded scalar minimization.
    """
    if len(curve) < 3:
        return []
    s2 = _speed2(curve)
    med = float(np.median(np.sqrt(s2)))
    if med == 0:
        return []
    sig = curve.params
    interior = np.arange(1, len(curve) - 1)
    is_min = (s2[interior] <= s2[interior - 1]) & (s2[interior] < s2[interior + 1])
    tips = []
    for k in interior[is_min]:
        lo, hi = sig[k - 1], sig[k + 1]
        sv, vv = _parabola_vertex(sig[k - 1:k + 2], s2[k - 1:k + 2])
        if curve.func is not None:
            h = 0.25 * min(sig[k] - lo, hi - sig[k])

            def sp2(s):
                d1, _ = func_derivatives(curve.func, s, h)
                return float(np.abs(d1[0]) ** 2)

            res = minimize_scalar(sp2, bounds=(lo, hi), method="bounded",
                                  options={"xatol": 1e-14 * max(1.0, abs(sig[k]))})
            sv, vv = float(res.x), float(res.fun)
        speed = math.sqrt(max(vv, 0.0))
        if speed < threshold * med:
            pt = curve.evaluate(sv)[0]
            tips.append(Tip(float(sv), (float(pt[0]), float(pt[1])), speed))
    return tips


def max_curvature_point(curve: ParametricCurve) -> tuple[float, float]:
    """Parameter and signed curvature at the sample maximizing ``|kappa|``.

    Refined with the exact evaluator when available.
    """
    kappa = geometry(curve).curvature
    finite = np.where(np.isfinite(kappa), np.abs(kappa), -1.0)
    k = int(np.clip(np.argmax(finite[1:-1]) + 1, 1, len(curve) - 2))
    sig = curve.params
    if curve.func is None:
        sv, _ = _parabola_vertex(sig[k - 1:k + 2], finite[k - 1:k + 2])
        return float(sv), float(np.interp(sv, sig, kappa))
    # second differences lose digits as 1/h^2; the sample spacing resolves the curve
    h = min(sig[k] - sig[k - 1], sig[k + 1] - sig[k])

    def neg_abs_kappa(s):
        d1, d2 = func_derivatives(curve.func, s, h)
        return -abs(float(_signed_curvature(d1, d2)[0]))

    res = minimize_scalar(neg_abs_kappa, bounds=(sig[k - 1], sig[k + 1]), method="bounded",
                          options={"xatol": 1e-13 * max(1.0, abs(sig[k]))})
    d1, d2 = func_derivatives(curve.func, res.x, h)
    return float(res.x), float(_signed_curvature(d1, d2)[0])


# -- self-intersections ------------------------------------------------------


def _cross(ax, ay, bx, by):
    return ax * by - ay * bx


def _candidate_pairs(p0: np.ndarray, p1: np.ndarray, chunk: int = 4_000_000):
    """Segment pairs with overlapping bounding boxes (x-sorted sweep)."""
    xmin = np.minimum(p0[:, 0], p1[:, 0])
    xmax = np.maximum(p0[:, 0], p1[:, 0])
    ymin = np.minimum(p0[:, 1], p1[:, 1])
    ymax = np.maximum(p0[:, 1], p1[:, 1])
    order = np.argsort(xmin, kind="stable")
    xs = xmin[order]
    hi = np.searchsorted(xs, xmax[order], side="right")
    counts = np.maximum(hi - np.arange(len(xs)) - 1, 0)
    bounds = np.cumsum(counts)
    start = 0
    while start < len(xs):
        stop = int(np.searchsorted(bounds, bounds[start - 1] + chunk if start else chunk, side="right"))
        stop = max(stop, start + 1)
        c = counts[start:stop]
        total = int(c.sum())
        if total:
            ii = np.repeat(np.arange(start, stop), c)
            first = np.repeat(np.cumsum(c) - c, c)
            jj = ii + 1 + (np.arange(total) - first)
            a, b = order[ii], order[jj]
            keep = (ymin[a] <= ymax[b]) & (ymin[b] <= ymax[a])
            yield a[keep], b[keep]
        start = stop


def _refine_crossing(func: CurveFunc, si: float, sj: float, h: float, tol: float = 1e-12):
    """Newton on ``z(si) = z(sj)``; returns None when it wanders off."""
    s = np.array([si, sj])
    for _ in range(30):
        zi, zj = _as_complex(func(s))
        r = zi - zj
        (di, dj), _ = func_derivatives(func, s, h)
        J = np.array([[di.real, -dj.real], [di.imag, -dj.imag]])
        try:
            step = np.linalg.solve(J, -np.array([r.real, r.imag]))
        except np.linalg.LinAlgError:
            return None
        s = s + step
        if np.max(np.abs(step)) < tol * max(1.0, np.max(np.abs(s))):
            return s
    return None


def find_self_intersections(curve: ParametricCurve) -> IntersectionReport:
    """Transversal crossings between non-adjacent segments of the polyline.

    Candidate pairs come from a bounding-box sweep; each crossing is the
    exact segment/segment intersection, then refined on the exact curve
    (when ``curve.func`` is set) to ~1e-12 in parameter.
    """
    pts = curve.points
    p0, p1 = pts[:-1], pts[1:]
    nseg = len(p0)
    closed = curve.is_closed
    sig = curve.params
    found = []
    for a, b in _candidate_pairs(p0, p1):
        i, j = np.minimum(a, b), np.maximum(a, b)
        keep = (j - i) > 1
        if closed:
            keep &= ~((i == 0) & (j == nseg - 1))
        i, j = i[keep], j[keep]
        if len(i) == 0:
            continue
        r = p1[i] - p0[i]
        s = p1[j] - p0[j]
        q = p0[j] - p0[i]
        denom = _cross(r[:, 0], r[:, 1], s[:, 0], s[:, 1])
        scale = np.hypot(r[:, 0], r[:, 1]) * np.hypot(s[:, 0], s[:, 1])
        ok = np.abs(denom) > 1e-14 * scale
        with np.errstate(divide="ignore", invalid="ignore"):
            t = _cross(q[:, 0], q[:, 1], s[:, 0], s[:, 1]) / denom
            u = _cross(q[:, 0], q[:, 1], r[:, 0], r[:, 1]) / denom
        hit = ok & (t >= 0) & (t < 1) & (u >= 0) & (u < 1)
        for ii, jj, tt, uu in zip(i[hit], j[hit], t[hit], u[hit]):
            si = sig[ii] + tt * (sig[ii + 1] - sig[ii])
            sj = sig[jj] + uu * (sig[jj + 1] - sig[jj])
            pt = p0[ii] + tt * (p1[ii] - p0[ii])
            if curve.func is not None:
                h = 0.25 * min(sig[ii + 1] - sig[ii], sig[jj + 1] - sig[jj])
                ref = _refine_crossing(curve.func, si, sj, h)
                width = 2 * max(sig[ii + 1] - sig[ii], sig[jj + 1] - sig[jj])
                if ref is not None and abs(ref[0] - si) < width and abs(ref[1] - sj) < width:
                    si, sj = float(ref[0]), float(ref[1])
                    pt = curve.evaluate(si)[0]
            found.append((float(si), float(sj), (float(pt[0]), float(pt[1]))))
    found.sort()
    crossings = []
    for si, sj, pt in found:
        if crossings and abs(crossings[-1].sigma_i - si) < 1e-9 and abs(crossings[-1].sigma_j - sj) < 1e-9:
            continue
        crossings.append(Crossing(si, sj, pt))
    return IntersectionReport(tuple(crossings))
