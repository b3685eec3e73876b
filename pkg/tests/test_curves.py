import json
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cusplab.curves import (
    CurveError,
    CurveFamily,
    ParametricCurve,
    find_self_intersections,
    find_tips,
    geometry,
)
from cusplab.normal_forms import NormalForm, eval_normal_form


def cusp(eps, a=1.0, lo=-1.0, hi=1.0, n=2001):
    return eval_normal_form(NormalForm("cusp", eps, a), np.linspace(lo, hi, n))


def swallowtail(eps, a=1.0, lo=-1.0, hi=1.0, n=2001):
    return eval_normal_form(NormalForm("swallowtail", eps, a), np.linspace(lo, hi, n))


# -- construction ------------------------------------------------------------------


def test_rejects_non_increasing_params():
    with pytest.raises(CurveError):
        ParametricCurve([0.0, 0.0, 1.0], [[0, 0], [1, 0], [2, 0]])


def test_rejects_length_mismatch():
    with pytest.raises(CurveError):
        ParametricCurve([0.0, 1.0, 2.0], [[0, 0], [1, 0]])


def test_rejects_non_finite():
    with pytest.raises(CurveError):
        ParametricCurve([0.0, 1.0], [[0, 0], [np.nan, 0]])


def test_json_round_trip():
    c = cusp(0.3, n=50)
    back = ParametricCurve.from_dict(json.loads(json.dumps(c.to_dict())))
    assert np.array_equal(back.params, c.params)
    assert np.array_equal(back.points, c.points)


def test_csv_round_trip():
    c = cusp(0.3, n=50)
    back = ParametricCurve.from_csv(c.to_csv())
    assert np.array_equal(back.points, c.points)


def test_family_round_trip():
    fam = CurveFamily((cusp(0.1, n=20), cusp(0.0, n=20)), critical_value=1.5)
    back = CurveFamily.from_dict(json.loads(json.dumps(fam.to_dict())))
    assert back.critical_value == 1.5
    assert len(back) == 2


# -- geometry ----------------------------------------------------------------------


def test_circle_arclength():
    th = np.linspace(0, 2 * math.pi, 1000)
    c = ParametricCurve(th, np.column_stack([np.cos(th), np.sin(th)]))
    assert geometry(c).arclength == pytest.approx(2 * math.pi, abs=1e-4)


def test_segment_curvature_zero():
    s = np.linspace(0, 1, 37)
    g = geometry(ParametricCurve(s, np.column_stack([s, 0 * s])))
    assert g.arclength == pytest.approx(1.0)
    assert np.all(g.curvature == 0)


def test_cusp_speed_vanishes_at_tip():
    # the centred difference of x = theta^3/3 leaves a bias h^2/3
    c = cusp(0.0, lo=-1, hi=1, n=20001)
    assert geometry(c).speed[10000] == pytest.approx(0.0, abs=1e-8)


def test_geometry_needs_three_points():
    with pytest.raises(CurveError):
        geometry(ParametricCurve([0.0, 1.0], [[0, 0], [1, 1]]))


@settings(max_examples=30, deadline=None)
@given(rot=st.floats(-math.pi, math.pi), dx=st.floats(-5, 5), dy=st.floats(-5, 5))
def test_arclength_rigid_invariance(rot, dx, dy):
    c = cusp(0.2, n=400)
    L0 = geometry(c).arclength
    L1 = geometry(c.transformed(rot, (dx, dy))).arclength
    assert L1 == pytest.approx(L0, rel=1e-12)


# -- tips --------------------------------------------------------------------------


def test_cusp_tip_at_origin():
    tips = find_tips(cusp(0.0))
    assert len(tips) == 1
    assert tips[0].sigma == pytest.approx(0.0, abs=1e-9)
    assert np.allclose(tips[0].point, (0, 0), atol=1e-12)


def test_swallowtail_tip_at_origin():
    tips = find_tips(swallowtail(0.0))
    assert len(tips) == 1
    assert tips[0].sigma == pytest.approx(0.0, abs=1e-9)


def test_regular_cusp_form_has_no_tip():
    assert find_tips(cusp(1.0)) == []


@settings(max_examples=40, deadline=None)
@given(eps=st.one_of(st.just(0.0), st.floats(-0.5, -0.01), st.floats(0.01, 0.5)))
def test_swallowtail_tips_iff_eps_nonpositive(eps):
    # a swallowtail has tangent-vanishing points exactly when eps <= 0
    tips = find_tips(swallowtail(eps, lo=-2, hi=2, n=4001))
    assert (len(tips) > 0) == (eps <= 0)


@settings(max_examples=40, deadline=None)
@given(eps=st.floats(0.05, 2.0))
def test_cusp_form_regular_for_positive_eps(eps):
    assert find_tips(cusp(eps, lo=-2, hi=2)) == []


# -- self-intersections ------------------------------------------------------------


def test_cusp_crossing_location():
    rep = find_self_intersections(cusp(-1.0, lo=-2, hi=2, n=801))
    assert len(rep) == 1
    c = rep.crossings[0]
    assert c.sigma_i == pytest.approx(-math.sqrt(3), abs=1e-9)
    assert c.sigma_j == pytest.approx(math.sqrt(3), abs=1e-9)
    assert np.allclose(c.point, (0.0, 1.5), atol=1e-9)


def test_cusp_positive_eps_simple():
    assert len(find_self_intersections(cusp(2.0, lo=-2, hi=2, n=801))) == 0


def test_swallowtail_crossing_on_axis():
    # x(theta) = theta(-1/2 + theta^2/3) vanishes at theta = +-sqrt(3/2)
    rep = find_self_intersections(swallowtail(-0.5, lo=-2, hi=2, n=801))
    assert len(rep) == 1
    c = rep.crossings[0]
    assert c.point[0] == pytest.approx(0.0, abs=1e-9)
    assert c.sigma_j == pytest.approx(math.sqrt(1.5), abs=1e-9)


@settings(max_examples=20, deadline=None)
@given(eps=st.floats(-1.5, -0.1))
def test_crossings_symmetric_and_reversal_invariant(eps):
    c = cusp(eps, lo=-3, hi=3, n=600)
    fwd = find_self_intersections(c)
    rev = find_self_intersections(c.reversed())
    assert len(fwd) == len(rev) == 1
    a, b = fwd.crossings[0], rev.crossings[0]
    assert a.sigma_i < a.sigma_j
    assert np.allclose(a.point, b.point, atol=1e-9)
    # the cusp form is even in y and odd in x, so the pair is symmetric
    assert a.sigma_i == pytest.approx(-a.sigma_j, abs=1e-9)
