"""Exact free-surface solutions, their singularities, and normal-form fits."""

from .curves import (
    CurveError,
    CurveFamily,
    ParametricCurve,
    find_self_intersections,
    find_tips,
    geometry,
)
from .normal_forms import (
    FitError,
    NormalForm,
    SingularityReport,
    UnclassifiedError,
    classify,
    eval_normal_form,
    fit_normal_form,
    fit_scaling,
    similarity_profile,
)

__version__ = "0.1.0"

__all__ = [
    "CurveError",
    "CurveFamily",
    "FitError",
    "NormalForm",
    "ParametricCurve",
    "SingularityReport",
    "UnclassifiedError",
    "classify",
    "eval_normal_form",
    "find_self_intersections",
    "find_tips",
    "fit_normal_form",
    "fit_scaling",
    "geometry",
    "similarity_profile",
]
