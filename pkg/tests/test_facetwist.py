import pytest
import sympy

from quasihopf import facetwist as ft
from quasihopf.qscalar import ONE, QScalar
from quasihopf.uqsl2 import PBWMonomial, TensorElement, counit

q = QScalar.q


def test_first_order_term():
    F = ft.build_product(2, 2).element
    assert F.w_part(0) == TensorElement.one(2, 2)
    # q^2 w (q - q^-1) (e t) (x) (t f), written in normal order
    et = TensorElement.generator("e", degree_cap=2) * TensorElement.generator("t", degree_cap=2)
    tf = TensorElement.generator("t", degree_cap=2) * TensorElement.generator("f", degree_cap=2)
    expected = (et.embed([0], 2) * tf.embed([1], 2)) * (q(2) * (q(1) - q(-1)))
    assert F.w_part(1) == expected


@pytest.mark.parametrize("N,D", [(0, 0), (1, 3), (3, 3), (4, 2), (6, 6)])
def test_product_equals_closed(N, D):
    assert ft.build_product(N, D).element == ft.build_closed(N, D).element


@pytest.mark.parametrize("N,D", [(0, 2), (2, 2), (3, 3), (2, 4), (4, 4)])
def test_cocycle(N, D):
    rep = ft.check_cocycle(N, D)
    assert rep.residual == 0 and rep.passed


def test_corrupted_cocycle_fails():
    assert ft.check_cocycle(2, 2, corrupt=True).residual > 0


def test_counit_triviality():
    F = ft.build_closed(4, 4).element
    one = TensorElement.one(1, 4, w_cap=4)
    assert counit(F, 0) == one
    assert counit(F, 1) == one


def test_rep2_closed_form():
    M = ft.f_sl2_rational()
    V, W = ft.V, ft.W
    expected = sympy.eye(4)
    expected[1, 2] = (V**2 - V**-2) * W / (1 - W)
    assert (M - expected).applyfunc(sympy.cancel) == sympy.zeros(4, 4)
    assert ft.check_rep2(6, 6).passed


def test_phi():
    assert ft.check_phi(3, 3).passed
    Phi = ft.build_phi(2, 2)
    assert Phi.w_part(0) == TensorElement.one(3, 2)


def test_face_r_entry():
    R = ft.face_r_rep()
    assert sympy.simplify(R[0, 0] - ft.V**-1) == 0


def test_dybe_and_controls():
    assert ft.check_dybe_sl2().passed
    assert ft.check_dybe_sl2(4).residual > 0
    assert ft.check_quasitriangular().passed
