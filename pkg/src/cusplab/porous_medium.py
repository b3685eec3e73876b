"""Tip of the oil-water interface at the critical withdrawal rate.

Near the tip the interface obeys ``x = (2A/3)(sigma + 1)^(3/2)`` with ``y``
linear in ``sigma + 1``.  The slope of ``y`` is not fixed by the local
analysis and is normalized to 1 here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .curves import ParametricCurve
from .normal_forms import NormalForm

Y_SLOPE = 1.0


@dataclass(frozen=True)
class PorousCuspLocal:
    A: float
    sigma_max: float

    def __post_init__(self):
        if not self.A > 0:
            raise ValueError("A must be positive")
        if not self.sigma_max > -1:
            raise ValueError("sigma_max must exceed -1")


def _point(A, tau):
    tau = np.asarray(tau, dtype=float)
    return np.column_stack([2 * A / 3 * tau**3, Y_SLOPE * tau**2])


def local_cusp_shape(A: float, sigmas) -> ParametricCurve:
    """Both branches of the symmetric interface near its tip.

    Each ``sigma`` contributes the points at ``+x`` and ``-x``.  The curve
    is parametrized by the signed root ``tau = +-sqrt(sigma + 1)``, which is
    smooth through the tip; ``sigma = tau**2 - 1``.
    """
    if not A > 0:
        raise ValueError("A must be positive")
    s = np.asarray(sigmas, dtype=float)
    if np.any(s < -1):
        raise ValueError("sigma must be >= -1")
    r = np.unique(np.sqrt(s + 1))
    tau = np.concatenate([-r[::-1], r[r > 0]]) if r[0] == 0 else np.concatenate([-r[::-1], r])
    return ParametricCurve(tau, _point(A, tau), func=lambda t: _point(A, t))


def branch(A: float, sigmas) -> np.ndarray:
    """The ``x >= 0`` branch as ``(x, y)`` rows, one per ``sigma``."""
    s = np.asarray(sigmas, dtype=float)
    if np.any(s < -1):
        raise ValueError("sigma must be >= -1")
    return np.column_stack([2 * A / 3 * (s + 1) ** 1.5, Y_SLOPE * (s + 1)])


def normal_form(A: float) -> NormalForm:
    """Critical cusp equivalent to the local law, via ``theta = sqrt(2) tau``."""
    if not A > 0:
        raise ValueError("A must be positive")
    return NormalForm("cusp", 0.0, A / math.sqrt(2))
