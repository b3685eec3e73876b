import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.integrate import quad

from cusplab.curves import find_self_intersections
from cusplab.normal_forms import classify
from cusplab.viscous_flow import (
    EllipticDivergence,
    THIRD,
    a_equation_residual,
    a_from_Ca,
    capillary_number,
    elliptic_K,
    epsilon_law,
    local_cusp_curve,
    local_cusp_form,
    modulus,
    surface_shape,
    tip_radius,
    tip_radius_exact,
)


def K_oracle(m):
    # cos^2 + k'^2 sin^2 keeps the integrand well conditioned as m -> 1
    kp2 = (1 - m) * (1 + m)
    return quad(lambda t: 1 / math.sqrt(math.cos(t) ** 2 + kp2 * math.sin(t) ** 2), 0, math.pi / 2,
                epsabs=1e-14, epsrel=1e-13, limit=200)[0]


# -- elliptic integral -------------------------------------------------------------


def test_K_examples():
    assert elliptic_K(0.0) == pytest.approx(math.pi / 2, rel=1e-15)
    assert elliptic_K(0.5) == pytest.approx(1.685750354812596, abs=1e-10)
    assert elliptic_K(0.999999) > 7


def test_K_diverges_at_one():
    with pytest.raises(EllipticDivergence):
        elliptic_K(1.0)
    with pytest.raises(EllipticDivergence):
        elliptic_K(-0.1)


@settings(max_examples=50, deadline=None)
@given(m=st.floats(0.0, 0.999999))
def test_K_against_quadrature(m):
    assert elliptic_K(m) == pytest.approx(K_oracle(m), abs=1e-10)


def test_K_increasing():
    ms = np.linspace(0, 0.999, 50)
    assert np.all(np.diff([elliptic_K(m) for m in ms]) > 0)


def test_modulus_tends_to_one_at_cusp():
    m, kp = modulus(1e-12)
    assert m == pytest.approx(1.0, abs=1e-12)
    assert 0 < kp < 1e-11


# -- capillary relation ------------------------------------------------------------


def test_asymptotic_epsilon():
    sol = a_from_Ca(0.25)
    assert sol.epsilon == pytest.approx(32 / 9 * math.exp(-4 * math.pi), rel=0.2)


def test_monotone_in_Ca():
    a = [a_from_Ca(c).a for c in np.linspace(0.05, 0.5, 19)]
    assert np.all(np.diff(a) < 0)
    assert all(-THIRD < v < 0 for v in a)


@settings(max_examples=40, deadline=None)
@given(Ca=st.floats(0.01, 0.5))
def test_residual_and_round_trip(Ca):
    sol = a_from_Ca(Ca)
    assert a_equation_residual(sol) <= 1e-12
    assert capillary_number(sol.epsilon) == pytest.approx(Ca, rel=1e-10)
    assert sol.epsilon == pytest.approx(sol.a + THIRD, abs=1e-16)


def test_Ca_must_be_positive():
    with pytest.raises(ValueError):
        a_from_Ca(0.0)
    with pytest.raises(ValueError):
        a_from_Ca(-1.0)


def test_epsilon_law():
    slope, pref = epsilon_law(np.linspace(0.15, 0.35, 9))
    assert slope == pytest.approx(-16 * math.pi, rel=0.01)
    assert pref == pytest.approx(32 / 9, rel=0.1)


def test_epsilon_prefactor_converges():
    for Ca in (0.5, 1.0):
        assert a_from_Ca(Ca).epsilon * math.exp(16 * math.pi * Ca) == pytest.approx(32 / 9, rel=1e-7)


# -- surface -----------------------------------------------------------------------


def test_cusp_point():
    c = surface_shape(-THIRD, [math.pi / 2, 2.0])
    assert np.allclose(c.points[0], (0.0, -2 / 3), atol=1e-15)


@settings(max_examples=30, deadline=None)
@given(a=st.floats(-THIRD, -1e-3))
def test_tip_position(a):
    c = surface_shape(a, [math.pi / 2, 2.0])
    assert np.allclose(c.points[0], (0.0, 2 * a), atol=1e-15)


@settings(max_examples=30, deadline=None)
@given(a=st.floats(-THIRD, -1e-3), th=st.floats(-1.5, 1.5))
def test_surface_symmetry(a, th):
    # theta -> pi - theta mirrors x
    p, q = surface_shape(a, [0.0, 1.0]).func([math.pi / 2 - th, math.pi / 2 + th])
    assert q[0] == pytest.approx(-p[0], abs=1e-12)
    assert q[1] == pytest.approx(p[1], abs=1e-12)


def test_pole_rejected():
    with pytest.raises(ValueError):
        surface_shape(-0.2, [-math.pi / 2, 0.0])
    with pytest.raises(ValueError):
        surface_shape(0.1, [0.0, 1.0])


def test_critical_surface_exponent():
    th = np.linspace(math.pi / 2 - 0.3, math.pi / 2 + 0.3, 20001)
    rep = classify(surface_shape(-THIRD, th))
    assert rep.kind == "cusp"
    assert rep.tip_exponent == pytest.approx(2 / 3, abs=0.01)


# -- local form and radius ---------------------------------------------------------


def test_local_curve_example():
    p = local_cusp_curve(0.0, [1.0, 2.0]).points[0]
    assert p == pytest.approx([-1 / 12, -2 / 3 + 1 / 6])


def test_local_curve_matches_surface():
    eps = 1e-3
    d = np.linspace(-0.05, 0.05, 101)
    exact = surface_shape(eps - THIRD, math.pi / 2 + d).points
    local = local_cusp_curve(eps, d).points
    assert np.max(np.hypot(*(exact - local).T)) <= 1e-4


def test_local_linear_coefficient():
    # x'(pi/2) = -(3a + 1)/2 = -3 eps / 2, by differentiating the exact shape
    eps, h = 1e-2, 1e-6
    c = surface_shape(eps - THIRD, [math.pi / 2 - h, math.pi / 2 + h])
    slope = (c.points[1, 0] - c.points[0, 0]) / (2 * h)
    assert slope == pytest.approx(-1.5 * eps, rel=1e-6)
    lc = local_cusp_curve(eps, [-h, h]).points
    assert (lc[1, 0] - lc[0, 0]) / (2 * h) == pytest.approx(slope, rel=1e-4)


def test_local_form_is_the_local_curve():
    eps = 0.01
    nf = local_cusp_form(eps)
    d = np.linspace(-0.5, 0.5, 41)
    pts = nf(-d / math.sqrt(3))
    assert np.allclose(pts, local_cusp_curve(eps, d).points, atol=1e-14)


def test_negative_epsilon_self_intersects():
    c = local_cusp_curve(-0.01, np.linspace(-1, 1, 2001))
    assert len(find_self_intersections(c)) == 1
    assert len(find_self_intersections(local_cusp_curve(0.01, np.linspace(-1, 1, 2001)))) == 0


def test_radius_quadruples_when_epsilon_doubles():
    for eps in (1e-6, 1e-4):
        assert tip_radius_exact(2 * eps) / tip_radius_exact(eps) == pytest.approx(4, rel=0.01)


def test_radius_leading_order():
    eps = 1e-6
    assert tip_radius_exact(eps) == pytest.approx(27 * eps**2 / 4, rel=1e-5)
    assert local_cusp_form(eps).epsilon ** 2 == pytest.approx(27 * eps**2 / 4, rel=1e-12)


def test_radius_against_geometry():
    # osculating radius from the curve itself at the tip
    eps = 1e-3
    h = 1e-4
    th = math.pi / 2 + np.array([-h, 0.0, h])
    p = surface_shape(eps - THIRD, th).points
    d1 = (p[2] - p[0]) / (2 * h)
    d2 = (p[2] - 2 * p[1] + p[0]) / h**2
    R = np.hypot(*d1) ** 3 / abs(d1[0] * d2[1] - d1[1] * d2[0])
    assert R == pytest.approx(tip_radius_exact(eps), rel=1e-4)


def test_radius_rate():
    law = tip_radius([0.15, 0.20, 0.25, 0.30])
    assert law.rate == pytest.approx(-32 * math.pi, rel=0.02)
    assert len(law.reports) == 4
    assert all(r.radius > 0 for r in law.reports)


def test_radius_prefactor_converges():
    for Ca in (0.5, 1.0):
        R = tip_radius_exact(a_from_Ca(Ca).epsilon)
        assert R * math.exp(32 * math.pi * Ca) == pytest.approx(256 / 3, rel=1e-6)


def test_radius_floor():
    with pytest.raises(ValueError):
        tip_radius([0.3, 0.6])
    with pytest.raises(ValueError):
        tip_radius([0.2])
