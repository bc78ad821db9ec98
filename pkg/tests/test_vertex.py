import numpy as np
import pytest

from quasihopf import vertex as vx
from quasihopf.errors import InvalidParams

Q, P = 0.4, 0.3
ZETA = 0.6 + 0.5j


def test_factor_limits():
    even = vx.vertex_factor(200, ZETA, P, Q)
    odd = vx.vertex_factor(201, ZETA, P, Q)
    assert np.abs(even - Q**-0.5 * np.diag([1, Q, Q, 1])).max() < 1e-14
    assert np.abs(even @ odd - np.eye(4)).max() < 1e-14
    assert np.abs(vx.vertex_factor(4, 0, P, Q) - even).max() < 1e-14


def test_identity_at_zero():
    assert np.abs(vx.e_vv_product(0, P, Q)[0] - np.eye(4)).max() < 1e-15
    assert np.abs(vx.e_vv_closed(0, P, Q) - np.eye(4)).max() < 1e-15


def test_product_converges_to_closed_form():
    closed = vx.e_vv_closed(ZETA, P, Q)
    errs = [np.abs(vx.e_vv_product(ZETA, P, Q, K)[0] - closed).max() for K in (20, 40, 60)]
    assert errs[2] < 1e-10
    rate = (errs[1] / errs[0]) ** (1 / 20)
    assert rate <= P**0.5 + 0.05
    with pytest.raises(InvalidParams):
        vx.e_vv_product(ZETA, P, Q, K=21)


def test_successive_even_truncations():
    a = vx.e_vv_product(ZETA, P, Q, 30)[0]
    b = vx.e_vv_product(ZETA, P, Q, 32)[0]
    assert np.abs(a - b).max() < 50 * P**15


def test_weights_at_one():
    M = vx.r_eight_vertex(1, P, Q, normalized=True)
    expected = np.eye(4)[[0, 2, 1, 3]]
    assert np.abs(M - expected).max() < 1e-14


def test_parity():
    a, b = vx.eight_vertex_weights(ZETA, P, Q), vx.eight_vertex_weights(-ZETA, P, Q)
    assert a["d"] == pytest.approx(-b["d"])
    assert a["a"] == pytest.approx(b["a"])


def test_spin_flip_symmetry():
    X = np.kron(vx.SIGMA_X, vx.SIGMA_X)
    R = vx.r_eight_vertex(ZETA, P, Q)
    assert np.abs(X @ R @ X - R).max() < 1e-14


@pytest.mark.parametrize("sign", [1, -1])
def test_identities(sign):
    assert vx.check_e_vv(ZETA, P, Q, sign=sign).passed
    assert vx.check_vertex_gauge(0.9 + 0.5j, P, Q, sign).passed
    assert vx.check_ybe_vertex(0.9 + 0.2j, 1.1 - 0.3j, 0.7 + 0.7j, P, Q, sign).passed
    assert vx.check_l_relation_vertex(ZETA, P, Q, sign).passed


def test_negative_controls():
    zs = (0.9 + 0.2j, 1.1 - 0.3j, 0.7 + 0.7j)
    assert vx.check_ybe_vertex(*zs, P, Q, drop_d=True).residual > 1e-2
    assert vx.check_l_relation_vertex(ZETA, P, Q, conjugator="identity").residual > 1e-2


def test_trigonometric_degeneration():
    # at p = 0 only the d-free principal-picture weights survive
    wt = vx.eight_vertex_weights(ZETA, 0.0, Q)
    assert wt["d"] == 0
    assert vx.check_ybe_vertex(0.9 + 0.2j, 1.1 - 0.3j, 0.7 + 0.7j, 0.0, Q).residual < 1e-12
