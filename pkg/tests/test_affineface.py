import cmath

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from quasihopf import affineface as af
from quasihopf.errors import DomainError, InvalidParams, PoleAtPoint

Q, P, W = 0.45, 0.12, 0.55
Z = 0.5 + 0.3j


def test_trig_weights():
    assert af.b_trig(1, Q) == 0
    assert af.c_trig(0, Q) == pytest.approx(1 - Q * Q)
    with pytest.raises(PoleAtPoint):
        af.b_trig(Q**-2, Q)
    with pytest.raises(PoleAtPoint):
        af.rho_trig(1, Q)


def test_trig_ybe():
    assert af.check_ybe_trig(0.7 + 0.2j, 1.1 - 0.4j, 0.9j, Q).passed


def test_closed_twistor_initial_value():
    F0 = af.f_vv_closed(0, P, W, Q)
    assert np.abs(F0 - af.f_sl2(W, Q)).max() < 1e-13
    assert F0[1, 2] == pytest.approx(W * (Q - 1 / Q) / (1 - W))


def test_lower_entry_is_linear_at_zero():
    small = [af.f_vv_closed(z, P, W, Q)[2, 1] / z for z in (1e-4, 2e-4)]
    assert abs(small[0] - small[1]) < 1e-3 * abs(small[0])


def test_difference_solver():
    sol = af.f_vv_by_difference(Z, P, W, Q)
    assert sol.iterations >= 8
    assert np.abs(sol.matrix - af.f_vv_closed(Z, P, W, Q)).max() < 1e-10
    # z = 0 is a fixed point of the recursion
    assert np.abs(af.f_vv_by_difference(0, P, W, Q).matrix - af.f_sl2(W, Q)).max() < 1e-14
    assert af.check_difference_equation(Z, P, W, Q).passed


def test_elliptic_at_z_one():
    M = af.r_elliptic(1, P, W, Q, normalized=True)
    assert abs(M[1, 1]) < 1e-15 and abs(M[2, 2]) < 1e-15
    assert M[1, 2] == pytest.approx(1) and M[2, 1] == pytest.approx(1)


def test_ice_rule():
    allowed = np.zeros((4, 4), bool)
    allowed[0, 0] = allowed[3, 3] = True
    allowed[1:3, 1:3] = True
    for M in (af.r_trig(Z, Q), af.r_elliptic(Z, P, W, Q)):
        assert not np.any(M[~allowed])


def test_gauge():
    assert af.check_gauge(0.9 + 0.4j, P, W, Q).passed
    assert af.check_gauge(0.9 + 0.4j, P, W, Q, control="no_prefactor").residual > 1e-2
    with pytest.raises(DomainError):
        af.check_gauge(Q * Q / P, P, W, Q)


def test_dybe_and_control():
    zs = (0.9 + 0.3j, 1.1 - 0.2j, 0.8 + 0.6j)
    assert af.check_dybe_elliptic(*zs, P, W, Q).passed
    assert af.check_dybe_elliptic(*zs, P, W, Q, exponent=0).residual > 1e-2
    # at p = 0 the same identity holds for the trigonometric face weights
    assert af.check_dybe_elliptic(*zs, 0.0, W, Q).passed


def test_lplm_and_control():
    assert af.check_lplm(Z, P, W, Q).passed
    assert af.check_lplm(Z, P, W, Q, conjugator="identity").residual > 1e-2


def test_weight_symmetry():
    assert af.check_weight_symmetry(Z, P, W, Q).passed


def test_p0_limit():
    rep = af.check_p0_limit(Z, W, Q)
    assert rep.passed
    # the elliptic bbar does not tend to the trigonometric b for generic w
    assert rep.details["bbar_minus_trig_b"] > 1e-2


def test_guards():
    with pytest.raises(InvalidParams) as exc:
        af.FaceParams(Q, P, 1.0, Z).validate()
    assert exc.value.guard == "(w;p)_inf"
    with pytest.raises(InvalidParams):
        af.FaceParams(1.2, P, W, Z).validate()


unit_disc = st.builds(lambda r, t: r * cmath.exp(1j * t), st.floats(0.05, 0.8), st.floats(0.3, 2.8))


@given(unit_disc, st.floats(0.2, 0.6), st.floats(0.05, 0.3), st.floats(0.1, 0.5))
def test_solver_matches_closed_form(z, q, p, gap):
    w = min(p + gap, 0.85)
    assume(abs(p * z / q**2) < 0.9)
    sol = af.f_vv_by_difference(z, p, w, q)
    assert np.abs(sol.matrix - af.f_vv_closed(z, p, w, q)).max() < 1e-10
