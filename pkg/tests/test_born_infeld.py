import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cusplab.born_infeld import (
    GraphConditionError,
    HoppeData,
    SingularCurvatureError,
    bi_pde_residual,
    bi_residual,
    bi_singularity,
    blowup_time,
    hoppe_curvature,
    hoppe_curve,
    hoppe_point,
    local_curve,
    mixed_partial_gap,
    tangent,
    velocity,
)
from cusplab.curves import func_derivatives, geometry
from cusplab.normal_forms import classify, fit_normal_form, fit_scaling, tip_exponent

GENERIC = HoppeData((0.1, 0.4, -0.3, 0.1))
ASYMMETRIC = HoppeData((0.1, 0.3, 0.2), (0.05, -0.2, 0.1, 0.05))
PHIS = np.linspace(-0.3, 0.3, 61)


def coeffs():
    return st.lists(st.floats(-0.3, 0.3), min_size=1, max_size=4)


# -- data --------------------------------------------------------------------------


def test_symmetric_rule():
    d = HoppeData((1.0, 2.0, 3.0))
    assert d.g_coeffs == (-1.0, 2.0, -3.0)
    assert d.symmetric
    assert not ASYMMETRIC.symmetric


def test_data_validation():
    with pytest.raises(ValueError):
        HoppeData(())
    with pytest.raises(ValueError):
        HoppeData((0.0,) * 8)
    with pytest.raises(ValueError):
        HoppeData((0.0, 1.0), lam=0.0)
    with pytest.raises(ValueError):
        HoppeData((math.inf,))


def test_expansion_data():
    d = HoppeData.from_expansion(1.0, 0.5, 0.25)
    s = 0.3 - 1.0
    f = np.polynomial.polynomial.polyval(0.3, d.f_coeffs)
    assert f == pytest.approx(math.pi / 4 + 0.5 * s - 0.25 * s * s, abs=1e-15)


# -- curves ------------------------------------------------------------------------


def test_zero_data_is_static_line():
    d = HoppeData((0.0,))
    for t in (0.0, 0.7):
        c = hoppe_curve(d, t, np.linspace(-1, 1, 11)).curve
        assert np.allclose(c.x, np.linspace(-1, 1, 11), atol=1e-14)
        assert np.allclose(c.y, 0.0, atol=1e-14)


def test_linear_f_tangent():
    # f = zeta: f - g = 2t, f + g = 2 phi
    d = HoppeData((0.0, 1.0))
    phis = np.linspace(-0.7, 0.7, 29)
    c = hoppe_curve(d, 0.0, phis).curve
    d1, _ = func_derivatives(c.func, phis, 1e-3)
    assert np.max(np.abs(d1.real - np.cos(2 * phis))) <= 1e-8
    assert np.max(np.abs(d1.imag - np.sin(2 * phis))) <= 1e-8


def test_linear_f_closed_form():
    d = HoppeData((0.0, 1.0))
    phis = np.linspace(-0.7, 0.7, 29)
    c = hoppe_curve(d, 0.0, phis).curve
    assert np.allclose(c.x, np.sin(2 * phis) / 2, atol=1e-13)
    assert np.allclose(c.y, (1 - np.cos(2 * phis)) / 2, atol=1e-13)


def test_route_independence():
    for d, t in ((GENERIC, 0.4), (ASYMMETRIC, -0.3), (HoppeData.from_expansion(1, 0.5, 0.5, 2.0), 1.5)):
        p1 = hoppe_point(d, t, PHIS, route="t-first")
        p2 = hoppe_point(d, t, PHIS, route="phi-first")
        assert np.max(np.abs(p1 - p2)) <= 1e-8


def test_unknown_route():
    with pytest.raises(ValueError):
        hoppe_point(GENERIC, 0.1, PHIS, route="diagonal")


def test_anchor_point():
    c = hoppe_curve(GENERIC, 0.25, [-0.1, 0.0, 0.1], anchor=(0.25, 0.0, 1.0, -2.0)).curve
    assert np.allclose(c.points[1], (1.0, -2.0), atol=1e-15)


@settings(max_examples=25, deadline=None)
@given(f=coeffs(), g=coeffs(), t=st.floats(-0.5, 0.5), lam=st.floats(0.5, 2.0))
def test_mixed_partials_agree(f, g, t, lam):
    d = HoppeData(tuple(f), tuple(g), lam)
    assert mixed_partial_gap(d, t, PHIS) <= 1e-6


@settings(max_examples=25, deadline=None)
@given(f=coeffs(), t=st.floats(-0.5, 0.5), lam=st.floats(0.5, 2.0))
def test_tangent_norm(f, t, lam):
    d = HoppeData(tuple(f), None, lam)
    u, _, _ = d.phases(t, PHIS)
    c = hoppe_curve(d, t, PHIS).curve
    d1, _ = func_derivatives(c.func, PHIS, 1e-3)
    assert np.max(np.abs(np.abs(d1) - lam * np.abs(np.cos(u)))) <= 1e-8


@settings(max_examples=25, deadline=None)
@given(f=coeffs(), t=st.floats(-0.5, 0.5))
def test_velocity_normal_to_curve(f, t):
    # the pair of equations moves points along the normal only
    d = HoppeData(tuple(f))
    dot = np.sum(tangent(d, t, PHIS) * velocity(d, t, PHIS), axis=-1)
    assert np.max(np.abs(dot)) <= 1e-14


def test_graph_condition():
    d = HoppeData((0.0, 1.0))
    with pytest.raises(GraphConditionError):
        hoppe_curve(d, 0.0, np.linspace(-1, 1, 11))


# -- curvature ---------------------------------------------------------------------


def test_curvature_examples():
    assert hoppe_curvature(HoppeData((0.0,)), 0.3, 0.1) == 0
    assert hoppe_curvature(HoppeData((0.0, 0.5)), 0.0, 0.0) == pytest.approx(1.0, abs=1e-15)


def test_curvature_near_singularity():
    sing = bi_singularity(1.0, 0.5, 0.5)
    for tp in (1e-3, 1e-4):
        k = hoppe_curvature(sing.data, sing.t0 - tp, 0.0)
        assert k == pytest.approx(1 / (2 * 0.5 * tp), rel=1e-2)


def test_curvature_singular():
    sing = bi_singularity(1.0, 0.5, 0.5)
    with pytest.raises(SingularCurvatureError):
        hoppe_curvature(sing.data, sing.t0, 0.0)


@pytest.mark.parametrize("d, t", [(GENERIC, 0.3), (ASYMMETRIC, 0.1), (HoppeData.from_expansion(1, 0.5, 0.5), 0.6)])
def test_curvature_matches_geometry(d, t):
    phis = np.linspace(-0.3, 0.3, 2001)
    c = hoppe_curve(d, t, phis).curve
    exact = hoppe_curvature(d, t, phis)
    g = geometry(c).curvature
    assert np.max(np.abs(g[2:-2] - exact[2:-2])) <= 1e-4
    d1, d2 = func_derivatives(c.func, phis[::50], 1e-3)
    k = (np.conj(d1) * d2).imag / np.abs(d1) ** 3
    assert np.max(np.abs(k - exact[::50])) <= 1e-6


# -- the PDE -----------------------------------------------------------------------


def test_residual_static():
    assert bi_residual(HoppeData((0.0,)), 0.1 * np.arange(5), np.linspace(-1, 1, 21)) <= 1e-10


def test_residual_of_linear_graph():
    x = np.linspace(-1, 1, 41)
    z = np.tile(x, (7, 1))
    assert bi_pde_residual(z, x[1] - x[0], 0.1) <= 1e-12


def test_residual_generic():
    h = 1e-3
    assert bi_residual(GENERIC, 0.3 + h * np.arange(-3, 4), PHIS) <= 1e-5


def test_residual_second_order():
    r = [bi_residual(GENERIC, 0.3 + h * np.arange(-3, 4), PHIS) for h in (2e-3, 1e-3)]
    assert r[0] / r[1] == pytest.approx(4, rel=0.1)


def test_residual_asymmetric():
    r = [bi_residual(ASYMMETRIC, 0.2 + h * np.arange(-3, 4), PHIS) for h in (2e-3, 1e-3)]
    assert r[1] <= 1e-5
    assert r[0] / r[1] == pytest.approx(4, rel=0.1)


def test_residual_detects_wrong_solution():
    # a surface that is not extremal: z = x^2 at all times
    x = np.linspace(-1, 1, 41)
    z = np.tile(x**2, (7, 1))
    assert bi_pde_residual(z, x[1] - x[0], 0.1) > 1.0


def test_residual_input_checks():
    with pytest.raises(ValueError):
        bi_residual(GENERIC, [0.0, 0.1], PHIS)
    with pytest.raises(ValueError):
        bi_residual(GENERIC, [0.0, 0.1, 0.3], PHIS)
    with pytest.raises(ValueError):
        bi_pde_residual(np.zeros((2, 5)), 0.1, 0.1)


# -- singularity -------------------------------------------------------------------


def test_singular_time_example():
    sing = bi_singularity(1.0, 0.5, 0.5)
    assert sing.t0 == 1.0
    assert sing.phi0 == 0.0


def test_preconditions():
    with pytest.raises(ValueError):
        bi_singularity(1.0, 0.0, 0.5)
    with pytest.raises(ValueError):
        bi_singularity(1.0, 0.5, -0.1)


@settings(max_examples=15, deadline=None)
@given(zeta0=st.floats(0.3, 2.0), a=st.floats(0.2, 1.0), b=st.floats(0.2, 1.0))
def test_blowup_time_equals_zeta0(zeta0, a, b):
    d = HoppeData.from_expansion(zeta0, a, b)
    # the expansion is local, so the scan starts shortly before zeta0
    t0, phi0 = blowup_time(d, zeta0 - 0.1, zeta0 + 0.1, phi_range=(-0.2, 0.2))
    assert t0 == pytest.approx(zeta0, abs=1e-8)
    assert phi0 == pytest.approx(0.0, abs=1e-4)


def test_blowup_time_scales_with_lambda():
    sing = bi_singularity(1.0, 0.5, 0.5, lam=2.0)
    assert sing.t0 == 2.0
    t0, _ = blowup_time(sing.data, 0.0, 4.0, phi_range=(-0.4, 0.4))
    assert t0 == pytest.approx(2.0, abs=1e-8)


def test_no_blowup():
    with pytest.raises(SingularCurvatureError):
        blowup_time(GENERIC, 0.0, 0.1, phi_range=(-0.3, 0.3))


def test_local_curve_is_the_expansion():
    # leading order of the exact curve at phi ~ t'^(1/2)
    sing = bi_singularity(1.0, 0.5, 0.5)
    tp = 1e-4
    phis = math.sqrt(tp) * np.linspace(-1, 1, 21)
    exact = hoppe_curve(sing.data, sing.t0 - tp, phis, anchor=(sing.t0 - tp, 0.0, 0.0, 0.0)).curve
    loc = local_curve(0.5, 0.5, tp, phis)
    scale = np.abs(loc.points).max(axis=0)
    err = np.abs(exact.points - loc.points).max(axis=0)
    assert np.all(err <= 0.05 * scale)


def test_local_form_maps_local_curve():
    sing = bi_singularity(1.0, 0.5, 0.5)
    tp = 1e-3
    phis = np.linspace(-0.2, 0.2, 41)
    nf = sing.local_form(tp)
    loc = local_curve(0.5, 0.5, tp, phis).points
    # theta = 2 a phi turns the leading-order curve into the swallowtail form
    mapped = nf(2 * 0.5 * phis) - np.asarray(nf.translation)
    assert nf.epsilon == tp
    assert nf.a == pytest.approx(0.5 / (4 * 0.5**3), rel=1e-15)
    assert np.allclose(mapped, loc, rtol=1e-13, atol=1e-16)


def test_tip_exponent_at_singularity():
    sing = bi_singularity(1.0, 0.5, 0.5)
    curve = hoppe_curve(sing.data, sing.t0, np.linspace(-0.4, 0.4, 20001)).curve
    fit = fit_normal_form(curve, kind="swallowtail")
    assert tip_exponent(curve, fit) == pytest.approx(4 / 3, abs=0.02)


def test_classification_and_coefficient():
    sing = bi_singularity(1.0, 0.5, 0.5)
    fam = sing.family([0.0, 1e-4, 1e-3, 1e-2], np.linspace(-0.4, 0.4, 4001))
    rep = classify(fam)
    assert rep.kind == "swallowtail"
    assert rep.gamma == pytest.approx(1.0, abs=0.02)


def test_gamma_over_wide_window():
    sing = bi_singularity(1.0, 0.5, 0.5)
    fam = sing.family([0.0, 1e-3, 1e-2, 1e-1], np.linspace(-0.4, 0.4, 4001))
    sim = fit_scaling(fam, kind="swallowtail")
    assert sim.gamma == pytest.approx(1.0, abs=0.02)
