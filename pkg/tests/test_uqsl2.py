import numpy as np
import pytest
from hypothesis import given

from quasihopf.errors import RankMismatch, SlotOutOfRange
from quasihopf.qscalar import ONE, ZERO, QScalar, q_factorial
from quasihopf.uqsl2 import (
    E,
    F,
    T,
    UNIT,
    PBWMonomial,
    TensorElement,
    apply_phi_power,
    coproduct,
    counit,
    dynamical_shift,
    obj_matmul,
    r_nilpotent,
    rep2,
)

from strategies import elements

q = QScalar.q
qd = q(1) - q(-1)
D = 6


def gen(name, rank=1, slot=0, cap=D):
    return TensorElement.generator(name, rank, slot, cap)


def mono(*monos, c=ONE, cap=D):
    return TensorElement.monomial(monos, c, degree_cap=cap)


def test_commutator():
    e, f = gen("e"), gen("f")
    expected = f * e + (gen("t") - gen("tinv")) * qd.inverse()
    assert e * f == expected


def test_cartan_reordering():
    # t e = q^2 e t, so e t = q^-2 t e
    assert gen("e") * gen("t") == mono(PBWMonomial(0, 1, 1), c=q(-2))
    assert gen("t") * gen("f") == mono(PBWMonomial(1, 1, 0), c=q(-2))
    x = gen("f") * gen("e")
    assert x * TensorElement.one(1, D) == x


def test_rank_checks():
    with pytest.raises(RankMismatch):
        gen("e") * gen("e", rank=2)
    with pytest.raises(SlotOutOfRange):
        gen("e", rank=2, slot=2)


def test_coproduct_on_generators():
    assert coproduct(gen("e")) == mono(E, UNIT) + mono(T(1), E)
    assert coproduct(gen("f")) == mono(F, T(-1)) + mono(UNIT, F)
    assert coproduct(gen("t")) == mono(T(1), T(1))


def test_counit_values():
    assert counit(mono(T(3))) == TensorElement(0, D, {(0, ()): ONE})
    assert not counit(gen("f") * gen("e"))


def test_r_nilpotent_low_orders():
    x = (gen("e") * gen("tinv")).embed([0], 2) * (gen("t") * gen("f")).embed([1], 2)
    one = TensorElement.one(2, D)
    assert r_nilpotent(0) == TensorElement.one(2, 0)
    assert r_nilpotent(1) == (one - x * qd).project_degree(1)
    second = one - x * qd + x * x * (qd * qd * q_factorial(2, 2).inverse())
    assert r_nilpotent(2) == second.project_degree(2)


def test_r_nilpotent_inverse():
    D2 = 4
    assert r_nilpotent(D2) * r_nilpotent(D2, sign=-1) == TensorElement.one(2, D2)


def test_phi_power():
    e = gen("e").with_w_cap(3)
    expected = (gen("e") * gen("t") * gen("t")).with_w_cap(3).times_w(1) * q(2)
    assert apply_phi_power(e, 0, 1) == expected
    assert apply_phi_power(e, 0, 0) == e
    # the automorphism is multiplicative
    f = gen("f").with_w_cap(3).times_w(1)
    assert apply_phi_power(e * f, 0, 1) == apply_phi_power(e, 0, 1) * apply_phi_power(f, 0, 1)


def test_dynamical_shift():
    one = TensorElement.one(3, D, w_cap=2)
    assert dynamical_shift(one, 0) == one
    x = TensorElement(3, D, {(1, (UNIT, E, F)): ONE}, w_cap=2)
    assert dynamical_shift(x, 0) == TensorElement(3, D, {(1, (T(2), E, F)): ONE}, w_cap=2)


def test_rep2_images():
    ef = rep2(mono(E, F))
    expected = np.zeros((4, 4), dtype=object)
    expected.fill(ZERO)
    expected[1, 2] = ONE
    assert (ef == expected).all()
    assert (rep2(TensorElement.one(2, D)) == np.diag([ONE] * 4)).all()
    tt = rep2(mono(T(1), T(1)))
    assert [tt[i, i] for i in range(4)] == [q(2), ONE, ONE, q(-2)]


@given(elements(D=D), elements(D=D), elements(D=D))
def test_associativity(x, y, z):
    assert (x * y) * z == x * (y * z)


@given(elements(D=4, max_terms=2), elements(D=4, max_terms=2))
def test_coproduct_is_multiplicative(x, y):
    assert coproduct(x * y) == coproduct(x) * coproduct(y)


@given(elements(D=4))
def test_counit_axiom(x):
    d = coproduct(x)
    assert counit(d, 0) == x
    assert counit(d, 1) == x


@given(elements(D=D), elements(D=D))
def test_rep2_is_homomorphism(x, y):
    assert (rep2(x * y) == obj_matmul(rep2(x), rep2(y))).all()
