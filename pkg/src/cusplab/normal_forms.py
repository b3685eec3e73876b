"""The two universal singularity shapes, their fits, and scaling collapse.

Cusp::

    x = eps*theta + a*theta**3/3,   y = theta**2/2

Swallowtail::

    x = eps*theta + a*theta**3/3,   y = eps*theta**2/2 + a*theta**4/4

Both are placed in the plane by a rotation followed by a translation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

import numpy as np
from scipy.optimize import least_squares
from scipy.spatial import cKDTree

from .curves import (
    CurveError,
    CurveFamily,
    ParametricCurve,
    find_tips,
    max_curvature_point,
)

KINDS = ("cusp", "swallowtail")
FIT_WINDOW = 0.1
MAX_FIT_POINTS = 80
MIN_FIT_POINTS = 20
KIND_RATIO = 10.0
MAX_RESIDUAL = 0.05
EXPONENT_DECADE = (1e-4, 1e-1)
REPROJECTIONS = 4
MIN_SCALING_CURVES = 3
LM_TOL = 1e-12
LM_MAX_NFEV = 200


class FitError(RuntimeError):
    """A fit could not be carried out or is not trustworthy."""


class UnclassifiedError(FitError):
    """Neither normal form explains the data decisively."""

    def __init__(self, message, residuals=None):
        super().__init__(message)
        self.residuals = residuals or {}


def _wrap(angle: float) -> float:
    """Map an angle into (-pi, pi]."""
    w = math.remainder(angle, 2 * math.pi)
    return math.pi if w == -math.pi else w


def _rot(phi: float) -> np.ndarray:
    c, s = math.cos(phi), math.sin(phi)
    return np.array([[c, -s], [s, c]])


@dataclass(frozen=True)
class NormalForm:
    kind: str
    epsilon: float
    a: float
    rotation: float = 0.0
    translation: tuple = (0.0, 0.0)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown normal form kind {self.kind!r}")
        if not self.a > 0:
            raise ValueError("normal form coefficient a must be positive")
        object.__setattr__(self, "rotation", _wrap(float(self.rotation)))
        object.__setattr__(self, "translation", tuple(float(v) for v in self.translation))

    def local(self, theta) -> np.ndarray:
        """Points before the rigid motion."""
        return _local(self.kind, self.epsilon, self.a, np.asarray(theta, dtype=float))

    def __call__(self, theta) -> np.ndarray:
        pts = self.local(np.atleast_1d(theta))
        return pts @ _rot(self.rotation).T + np.asarray(self.translation)

    def to_local(self, points) -> np.ndarray:
        """Inverse rigid motion: physical points into the model frame."""
        pts = np.asarray(points, dtype=float).reshape(-1, 2)
        return (pts - np.asarray(self.translation)) @ _rot(self.rotation)


def _local(kind: str, eps: float, a: float, th: np.ndarray) -> np.ndarray:
    x = eps * th + a * th**3 / 3
    if kind == "cusp":
        y = th**2 / 2
    else:
        y = eps * th**2 / 2 + a * th**4 / 4
    return np.stack([x, y], axis=-1)


def eval_normal_form(nf: NormalForm, thetas, label: Optional[float] = None) -> ParametricCurve:
    """Sample a normal form; the returned curve carries the exact evaluator."""
    thetas = np.asarray(thetas, dtype=float)
    if thetas.size == 0:
        raise ValueError("empty parameter grid")
    return ParametricCurve(thetas, nf(thetas), label, nf)


def similarity_profile(kind: str, sign: int, a: float, sigmas) -> ParametricCurve:
    """Self-similar profile; ``sign=+1`` before the singularity, ``-1`` after.

    Cusp ``(X, Y) = (±s + a s^3/3, s^2/2)``; swallowtail
    ``(±s + a s^3/3, ±s^2/2 + a s^4/4)``.
    """
    if kind not in KINDS:
        raise ValueError(f"unknown normal form kind {kind!r}")
    if not a > 0:
        raise ValueError("a must be positive")
    sg = 1.0 if sign > 0 else -1.0
    s = np.asarray(sigmas, dtype=float)
    X = sg * s + a * s**3 / 3
    Y = s**2 / 2 if kind == "cusp" else sg * s**2 / 2 + a * s**4 / 4

    def func(p):
        p = np.asarray(p, dtype=float)
        Xp = sg * p + a * p**3 / 3
        Yp = p**2 / 2 if kind == "cusp" else sg * p**2 / 2 + a * p**4 / 4
        return np.column_stack([Xp, Yp])

    return ParametricCurve(s, np.column_stack([X, Y]), None, func)


def cusp_cubic_residual(X, Y, a: float, sign: int):
    """``X^2 - 2Y(1 ± 2aY/3)^2``: zero on the cusp similarity profile."""
    sg = 1.0 if sign > 0 else -1.0
    X = np.asarray(X, dtype=float)
    Y = np.asarray(Y, dtype=float)
    return X**2 - 2 * Y * (1 + sg * 2 * a * Y / 3) ** 2


@dataclass(frozen=True)
class LocalCusp:
    """One of the two cusps of an unfolded swallowtail.

    ``sigma``/``point_scaled`` refer to the rescaled profile
    ``theta = sqrt(|eps|) sigma``, ``x = |eps|^{3/2} X``, ``y = eps^2 Y``.
    ``matrix @ (X - X_tip, Y - Y_tip) ≈ (cubic s^3, quadratic s^2)`` for
    ``sigma = sigma_tip + s``.
    """

    sigma: float
    theta: float
    point_scaled: tuple
    point: tuple
    matrix: np.ndarray = field(repr=False)
    cubic: float
    quadratic: float


def swallowtail_cusps(nf: NormalForm) -> tuple[LocalCusp, LocalCusp]:
    """The two cusps that an unfolded swallowtail (``eps < 0``) traces out."""
    if nf.kind != "swallowtail":
        raise ValueError("swallowtail_cusps needs a swallowtail form")
    if not nf.epsilon < 0:
        raise ValueError("a swallowtail has no cusps for eps >= 0")
    a = nf.a
    ra = math.sqrt(a)
    out = []
    for pm in (1.0, -1.0):
        sig = pm / ra
        theta = sig * math.sqrt(-nf.epsilon)
        Xt, Yt = -pm * 2 / (3 * ra), -1 / (4 * a)
        matrix = np.array([[1.0, -pm * ra], [pm * ra, 1.0]])
        pt = nf(theta)[0]
        out.append(LocalCusp(sig, theta, (Xt, Yt), (float(pt[0]), float(pt[1])),
                             matrix, -2 * a / 3, a + 1))
    return tuple(out)


# -- fitting -------------------------------------------------------------------


@dataclass(frozen=True)
class NormalFormFit:
    kind: str
    form: NormalForm
    residual: float
    residuals: dict
    anchor: tuple
    radius: float


def singular_point(curve: ParametricCurve) -> tuple[float, tuple]:
    """Best guess for the centre of the local singular structure.

    One tip: that tip.  Two nearby tips (an unfolded swallowtail): the
    parameter midpoint between them.  No tip: the curvature maximum.
    """
    tips = find_tips(curve)
    diam = _diameter(curve)
    if len(tips) == 1:
        return tips[0].sigma, tips[0].point
    if len(tips) == 2:
        gap = math.dist(tips[0].point, tips[1].point)
        if gap < 2 * FIT_WINDOW * diam:
            mid = 0.5 * (tips[0].sigma + tips[1].sigma)
            pt = curve.evaluate(mid)[0]
            return mid, (float(pt[0]), float(pt[1]))
    if tips:
        return tips[0].sigma, tips[0].point
    sig, _ = max_curvature_point(curve)
    pt = curve.evaluate(sig)[0]
    return sig, (float(pt[0]), float(pt[1]))


def _diameter(curve: ParametricCurve) -> float:
    return float(np.hypot(*np.ptp(curve.points, axis=0)))


def _window(curve: ParametricCurve, sigma: float, anchor, radius: float) -> np.ndarray:
    """Indices of the contiguous run of samples within ``radius`` of the anchor."""
    dist = np.hypot(curve.x - anchor[0], curve.y - anchor[1])
    k = int(np.clip(np.searchsorted(curve.params, sigma), 0, len(curve) - 1))
    if k > 0 and abs(curve.params[k - 1] - sigma) < abs(curve.params[k] - sigma):
        k -= 1
    inside = dist <= radius
    if not inside[k]:
        return np.array([], dtype=int)
    lo = k
    while lo > 0 and inside[lo - 1]:
        lo -= 1
    hi = k
    while hi < len(curve) - 1 and inside[hi + 1]:
        hi += 1
    return np.arange(lo, hi + 1)


def _initial_guess(kind, d, sig_rel, keep: int = 3):
    """Starting points for the fit from a coarse grid in (rotation, eps, a).

    Each candidate model is sampled densely and every datum is projected
    onto its nearest model sample, which seeds the per-point theta.
    """
    # cusp branches leave the tip together along the local y axis, swallowtail
    # branches leave in opposite x directions: seed from both cues
    r = np.hypot(d[:, 0], d[:, 1])
    u = d[r > 0] / r[r > 0, None]
    mean = u.mean(axis=0)
    phi_mean = math.atan2(mean[1], mean[0]) - math.pi / 2
    _, vecs = np.linalg.eigh(d.T @ d)
    phi_axis = math.atan2(vecs[1, 1], vecs[0, 1])
    phis = np.concatenate([phi_mean + math.pi * np.arange(2), phi_axis + 0.5 * math.pi * np.arange(4)])
    scored = []
    eps_grid = (-1.0, -0.3, -0.1, -0.03, 0.0, 0.03, 0.1, 0.3, 1.0)
    for phi in phis:
        loc = d @ _rot(phi)
        a_grid = np.concatenate([np.logspace(-2, 3, 11), _scale_a(kind, loc) * np.logspace(-1, 1, 5)])
        for a in a_grid:
            for eps in eps_grid:
                th = _theta_span(kind, float(eps), float(a))
                model = _local(kind, eps, a, th)
                dist, idx = cKDTree(model).query(loc)
                scored.append((float(np.sum(dist**2)), phi, eps, float(a), th[idx]))
    scored.sort(key=lambda t: t[0])
    return [(phi, eps, a, _monotone(th, sig_rel)) for _, phi, eps, a, th in scored[:keep]]


def _scale_a(kind, loc) -> float:
    """Coefficient a for which the critical form passes through the farthest datum."""
    xi, eta = np.abs(loc[np.argmax(np.hypot(loc[:, 0], loc[:, 1]))])
    if xi <= 0 or eta <= 0:
        return 1.0
    th = math.sqrt(2 * eta) if kind == "cusp" else 4 * eta / (3 * xi)
    return float(np.clip(3 * xi / th**3, 1e-3, 1e9))


@lru_cache(maxsize=4096)
def _theta_span(kind, eps, a, n: int = 601) -> np.ndarray:
    """Theta samples covering the part of the model inside radius 1.5."""
    scales = [(3 / a) ** (1 / 3), (4 / a) ** 0.25, math.sqrt(2.0)]
    if eps != 0:
        scales += [1 / abs(eps), math.sqrt(2 / abs(eps))]
    wide = np.linspace(-3 * max(scales), 3 * max(scales), n)
    inside = np.hypot(*_local(kind, eps, a, wide).T) <= 1.5
    span = np.abs(wide[inside]).max() if inside.any() else max(scales)
    return np.linspace(-1.1 * span, 1.1 * span, n)


def _monotone(th, sig_rel):
    """Rearrange projected thetas so they are monotone in the data parameter.

    Projections near a loop crossing can land on the wrong branch.
    """
    order = np.argsort(sig_rel)
    seq = np.sort(th)
    if np.corrcoef(sig_rel[order], th[order])[0, 1] < 0:
        seq = seq[::-1]
    mono = np.empty_like(th)
    mono[order] = seq
    return mono


def _project(kind, d, sig_rel, T, phi, eps, a, th):
    """Reseed thetas by nearest projection onto the current model."""
    lo, hi = float(th.min()), float(th.max())
    pad = 0.5 * (hi - lo) + 1e-3
    grid = np.linspace(lo - pad, hi + pad, 4001)
    loc = (d - T) @ _rot(phi)
    _, idx = cKDTree(_local(kind, eps, a, grid)).query(loc)
    return _monotone(grid[idx], sig_rel)


def _fit_kind(kind: str, d: np.ndarray, sig_rel: np.ndarray):
    """Orthogonal-distance fit of one normal form to anchor-frame data ``d``.

    Unknowns: translation, rotation, eps, log a and one theta per point.
    The anchor enters as a pseudo-point pinned to theta = 0.
    """
    n = len(d)

    def unpack(p):
        return p[0:2], p[2], p[3], math.exp(min(max(p[4], -60.0), 60.0)), p[5:]

    def resid(p):
        T, phi, eps, a, th = unpack(p)
        m = _local(kind, eps, a, th) @ _rot(phi).T + T
        return np.concatenate([(m - d).ravel(), T])

    def jac(p):
        T, phi, eps, a, th = unpack(p)
        R = _rot(phi)
        dR = np.array([[-R[1, 0], -R[0, 0]], [R[0, 0], -R[1, 0]]])
        L = _local(kind, eps, a, th)
        if kind == "cusp":
            dLde = np.column_stack([th, np.zeros(n)])
            dLda = np.column_stack([th**3 / 3, np.zeros(n)])
            dLdt = np.column_stack([eps + a * th**2, th])
        else:
            dLde = np.column_stack([th, th**2 / 2])
            dLda = np.column_stack([th**3 / 3, th**4 / 4])
            dLdt = np.column_stack([eps + a * th**2, eps * th + a * th**3])
        J = np.zeros((2 * n + 2, n + 5))
        J[0:2 * n:2, 0] = 1
        J[1:2 * n:2, 1] = 1
        J[0:2 * n, 2] = (L @ dR.T).ravel()
        J[0:2 * n, 3] = (dLde @ R.T).ravel()
        J[0:2 * n, 4] = (dLda @ R.T).ravel() * a
        g = dLdt @ R.T
        rows = np.arange(n)
        J[2 * rows, 5 + rows] = g[:, 0]
        J[2 * rows + 1, 5 + rows] = g[:, 1]
        J[2 * n, 0] = 1
        J[2 * n + 1, 1] = 1
        return J

    best = None
    for phi, eps, a, th in _initial_guess(kind, d, sig_rel):
        if best is not None and 2 * best.cost / (n + 1) < 1e-16:
            break
        p0 = np.concatenate([[0.0, 0.0, phi, eps, math.log(a)], th])
        prev = math.inf
        for _ in range(REPROJECTIONS):
            try:
                res = least_squares(resid, p0, jac=jac, method="lm", xtol=LM_TOL, ftol=LM_TOL,
                                    gtol=LM_TOL, max_nfev=LM_MAX_NFEV)
            except (ValueError, FloatingPointError):
                break
            if not np.all(np.isfinite(res.x)):
                break
            if best is None or res.cost < best.cost:
                best = res
            if 2 * res.cost / (n + 1) < 1e-20 or res.cost > 0.9 * prev:
                break
            prev = res.cost
            # points stuck behind a tip (zero model speed) need a fresh projection
            T, phi1, eps1, a1, th1 = unpack(res.x)
            p0 = np.concatenate([res.x[:5], _project(kind, d, sig_rel, T, phi1, eps1, a1, th1)])
    if best is None:
        raise FitError(f"{kind} fit did not converge")
    rms = math.sqrt(2 * best.cost / (n + 1))
    return best.x, rms


def fit_normal_form(curve: ParametricCurve, tip=None, *, kind: Optional[str] = None,
                    window: Optional[float] = None) -> NormalFormFit:
    """Least-squares fit of the cusp and/or swallowtail forms around a tip.

    Parameters
    ----------
    curve : ParametricCurve
    tip : (sigma, point), optional
        Centre of the singular structure; :func:`singular_point` if omitted.
    kind : {"cusp", "swallowtail"}, optional
        Fit a single form instead of choosing between the two.
    window : float, optional
        Radius of the fit window.  Defaults to 10% of the curve diameter.

    The kind is chosen when one residual is at least ten times smaller than
    the other and below ``MAX_RESIDUAL`` (residuals are RMS point-to-model
    distances in units of the window radius).  Otherwise
    :class:`UnclassifiedError` is raised.
    """
    if tip is None:
        tip = singular_point(curve)
    sigma, anchor = float(tip[0]), tuple(float(v) for v in tip[1])
    radius = window if window is not None else FIT_WINDOW * _diameter(curve)
    if not radius > 0:
        raise FitError("degenerate curve: zero diameter")
    idx = _window(curve, sigma, anchor, radius)
    if len(idx) < MIN_FIT_POINTS:
        raise FitError(f"only {len(idx)} samples in the fit window (need {MIN_FIT_POINTS})")
    if len(idx) > MAX_FIT_POINTS:
        idx = idx[np.unique(np.linspace(0, len(idx) - 1, MAX_FIT_POINTS).round().astype(int))]
    d = (curve.points[idx] - np.asarray(anchor)) / radius
    sig_rel = curve.params[idx] - sigma

    kinds = KINDS if kind is None else (kind,)
    fits = {}
    for k in kinds:
        try:
            fits[k] = _fit_kind(k, d, sig_rel)
        except FitError:
            continue
    if not fits:
        raise FitError("no normal form fit converged")
    residuals = {k: v[1] for k, v in fits.items()}
    if kind is None:
        order = sorted(residuals, key=residuals.get)
        best, other = order[0], order[-1]
        ratio = residuals[other] / max(residuals[best], 1e-300) if len(order) > 1 else math.inf
        if ratio < KIND_RATIO or residuals[best] > MAX_RESIDUAL:
            raise UnclassifiedError(
                f"ambiguous fit: residuals {residuals}", residuals)
    else:
        best = kind
    p, rms = fits[best]
    T = np.asarray(anchor) + radius * p[0:2]
    eps_s, a_s = p[3], math.exp(min(max(p[4], -60.0), 60.0))
    if best == "cusp":
        eps, a = eps_s * math.sqrt(radius), a_s / math.sqrt(radius)
    else:
        eps, a = eps_s * radius, a_s * radius
    form = NormalForm(best, float(eps), float(a), float(p[2]), tuple(T))
    return NormalFormFit(best, form, rms, residuals, anchor, radius)


def tip_exponent(curve: ParametricCurve, fit: NormalFormFit,
                 decade: tuple = EXPONENT_DECADE, bins: int = 24) -> float:
    """Slope of ``log|y|`` against ``log|x|`` in the fitted local frame.

    Coordinates are measured from the anchor, rotated into the fitted
    frame and scaled by the fit-window radius; only ``|x|`` inside
    ``decade`` is used, averaged in equal-width bins of ``log|x|``.
    """
    loc = (curve.points - np.asarray(fit.anchor)) @ _rot(fit.form.rotation) / fit.radius
    xi, eta = np.abs(loc[:, 0]), np.abs(loc[:, 1])
    near = np.hypot(loc[:, 0], loc[:, 1]) <= 1.0
    sel = near & (xi >= decade[0]) & (xi <= decade[1]) & (eta > 0)
    if sel.sum() < 3:
        raise FitError("too few samples in the exponent decade")
    lx, ly = np.log(xi[sel]), np.log(eta[sel])
    edges = np.linspace(math.log(decade[0]), math.log(decade[1]), bins + 1)
    which = np.clip(np.digitize(lx, edges) - 1, 0, bins - 1)
    bx, by = [], []
    for b in range(bins):
        m = which == b
        if m.any():
            bx.append(lx[m].mean())
            by.append(ly[m].mean())
    if len(bx) < 3:
        raise FitError("exponent decade is not resolved by the sampling")
    slope, _ = np.polyfit(bx, by, 1)
    return float(slope)


# -- scaling collapse ------------------------------------------------------------


@dataclass(frozen=True)
class SimilarityFit:
    """Temporal exponent from a family of curves approaching a singularity.

    ``gamma`` comes from the tip radius of curvature, which scales as
    ``|t'|^(2 gamma)`` for a cusp and ``|t'|^gamma`` for a swallowtail.
    """

    gamma: float
    tip_exponent: Optional[float]
    residual: float
    kind: str
    radius_exponent: float
    tprimes: tuple = ()
    radii: tuple = ()


class ScalingFitError(FitError):
    pass


def tip_radius(curve: ParametricCurve) -> float:
    """Radius of curvature at the curvature maximum."""
    _, kappa = max_curvature_point(curve)
    return 1.0 / abs(kappa)


def fit_scaling(family: CurveFamily, kind: Optional[str] = None,
                critical_fit: Optional[NormalFormFit] = None) -> SimilarityFit:
    """Scaling exponent gamma from the pre-singular curves of a family.

    Parameters
    ----------
    family : CurveFamily
        Curves labelled by ``t'``; those with ``t' > 0`` enter the fit and a
        curve with ``t' == 0`` supplies the tip exponent.
    kind : {"cusp", "swallowtail"}, optional
        Fixes how the radius exponent converts to gamma.  Inferred from the
        critical (or least-advanced) curve when omitted.
    critical_fit : NormalFormFit, optional
        Reuse an existing fit of the critical curve.
    """
    labels = family.labels
    before = [c for c, t in zip(family.curves, labels) if np.isfinite(t) and t > 0]
    tp = np.array([c.label for c in before])
    if len(np.unique(tp)) < MIN_SCALING_CURVES:
        raise ScalingFitError(f"need at least {MIN_SCALING_CURVES} curves with distinct t' > 0")
    critical = [c for c, t in zip(family.curves, labels) if np.isfinite(t) and t == 0]
    fit_crit = critical_fit
    if fit_crit is None and (kind is None or critical):
        ref = critical[0] if critical else before[int(np.argmin(tp))]
        fit_crit = fit_normal_form(ref, kind=kind)
    if fit_crit is not None:
        kind = fit_crit.kind
    order = np.argsort(tp)
    tp = tp[order]
    radii = np.array([tip_radius(before[i]) for i in order])
    if np.any(np.diff(radii) <= 0):
        raise ScalingFitError("tip radius is not monotone in t'")
    coef, res, *_ = np.polyfit(np.log(tp), np.log(radii), 1, full=True)
    slope = float(coef[0])
    gamma = slope / 2 if kind == "cusp" else slope
    fitted = np.polyval(coef, np.log(tp))
    rms = float(np.sqrt(np.mean((np.log(radii) - fitted) ** 2)))
    texp = None
    if critical and fit_crit is not None:
        try:
            texp = tip_exponent(critical[0], fit_crit)
        except FitError:
            pass
    return SimilarityFit(gamma, texp, rms, kind, slope, tuple(tp.tolist()), tuple(radii.tolist()))


# -- classification -----------------------------------------------------------------


@dataclass(frozen=True)
class SingularityReport:
    kind: str
    form: NormalForm
    similarity: Optional[SimilarityFit]
    location: tuple
    critical_value: Optional[float]
    residuals: dict
    tip_exponent: Optional[float] = None
    notes: dict = field(default_factory=dict)

    @property
    def gamma(self) -> Optional[float]:
        return None if self.similarity is None else self.similarity.gamma

    def to_dict(self) -> dict:
        out = {
            "kind": self.kind,
            "epsilon": self.form.epsilon,
            "a": self.form.a,
            "rotation": self.form.rotation,
            "translation": list(self.form.translation),
            "gamma": self.gamma,
            "tip_exponent": self.tip_exponent,
            "residuals": dict(self.residuals),
            "location": list(self.location),
            "critical_value": self.critical_value,
        }
        if self.similarity is not None:
            out["scaling"] = {
                "radius_exponent": self.similarity.radius_exponent,
                "residual": self.similarity.residual,
                "tprimes": list(self.similarity.tprimes),
                "radii": list(self.similarity.radii),
            }
        if self.notes:
            out["notes"] = dict(self.notes)
        return out


def classify(data, *, kind: Optional[str] = None, window: Optional[float] = None) -> SingularityReport:
    """Classify a single curve or a family against the two normal forms.

    For a family, the critical curve (label 0, else the smallest label) is
    classified and gamma is fitted when at least three pre-singular curves
    are present.  A lone curve yields the kind and tip exponent only.
    """
    if isinstance(data, ParametricCurve):
        family = CurveFamily((data,))
    else:
        family = data
    if len(family) == 0:
        raise CurveError("nothing to classify")
    labels = family.labels
    if np.all(np.isnan(labels)):
        ref = family.curves[0]
    else:
        ref = family.curves[int(np.nanargmin(np.abs(labels)))]
    fit = fit_normal_form(ref, kind=kind, window=window)
    texp = None
    try:
        texp = tip_exponent(ref, fit)
    except FitError:
        pass
    sim = None
    finite = labels[np.isfinite(labels)]
    if len(np.unique(finite[finite > 0])) >= MIN_SCALING_CURVES:
        crit = fit if labels[int(np.nanargmin(np.abs(labels)))] == 0 else None
        sim = fit_scaling(family, kind=fit.kind, critical_fit=crit)
    return SingularityReport(fit.kind, fit.form, sim, fit.anchor, family.critical_value,
                             fit.residuals, texp)
