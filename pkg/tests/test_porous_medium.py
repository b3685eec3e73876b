import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cusplab.curves import find_tips
from cusplab.normal_forms import classify, eval_normal_form, fit_normal_form, tip_exponent
from cusplab.porous_medium import PorousCuspLocal, branch, local_cusp_shape, normal_form


def test_tip_at_origin():
    assert np.array_equal(branch(1.0, [-1.0]), [[0.0, 0.0]])


def test_substitution_example():
    assert branch(1.5, [0.0])[0, 0] == 1.0


def test_domain_errors():
    with pytest.raises(ValueError):
        local_cusp_shape(1.0, [-1.5, 0.0])
    with pytest.raises(ValueError):
        branch(1.0, [-1.01])
    with pytest.raises(ValueError):
        local_cusp_shape(0.0, [0.0, 1.0])
    with pytest.raises(ValueError):
        PorousCuspLocal(1.0, -2.0)


def test_both_branches_emitted():
    s = np.linspace(-1, 0, 11)
    c = local_cusp_shape(2.0, s)
    assert len(c) == 21
    assert np.allclose(c.points[::-1, 0], -c.points[:, 0], atol=1e-15)
    assert np.allclose(c.points[::-1, 1], c.points[:, 1], atol=1e-15)
    right = c.points[c.points[:, 0] >= 0]
    assert np.allclose(right, branch(2.0, s), atol=1e-15)


def test_log_slope_three_halves():
    s1 = np.geomspace(1e-4, 1e-1, 50)
    x = branch(0.7, s1 - 1)[:, 0]
    slope = np.polyfit(np.log(s1), np.log(x), 1)[0]
    assert slope == pytest.approx(1.5, abs=1e-3)


def test_exponent_and_kind():
    c = local_cusp_shape(1.0, np.linspace(-1, 0, 10001))
    rep = classify(c)
    assert rep.kind == "cusp"
    assert rep.tip_exponent == pytest.approx(2 / 3, abs=1e-2)


def test_single_tip():
    tips = find_tips(local_cusp_shape(1.0, np.linspace(-1, 0, 1001)))
    assert len(tips) == 1
    assert np.allclose(tips[0].point, 0.0, atol=1e-12)


@settings(max_examples=30, deadline=None)
@given(A=st.floats(0.1, 10.0), tau=st.floats(-2.0, 2.0))
def test_equivalent_normal_form(A, tau):
    # theta = sqrt(2) tau maps the local law onto the critical cusp form
    c = local_cusp_shape(A, [tau**2 - 1, 5.0])
    p = c.func([tau])[0]
    q = eval_normal_form(normal_form(A), [math.sqrt(2) * tau, 10.0]).points[0]
    assert np.allclose(p, q, rtol=1e-12, atol=1e-14)


@pytest.mark.parametrize("A", [0.3, 1.0, 4.0])
def test_fit_recovers_coefficient(A):
    c = local_cusp_shape(A, np.linspace(-1, 0, 4001))
    fit = fit_normal_form(c, kind="cusp")
    assert fit.form.a == pytest.approx(A / math.sqrt(2), rel=1e-2)
    assert abs(fit.form.epsilon) <= 1e-3
