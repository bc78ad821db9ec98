import pytest
from hypothesis import given
from hypothesis import strategies as st

from quasihopf.errors import NonStabilizingFactor, NonUnitConstantTerm, VariableMismatch
from quasihopf.fps import TruncSeries, ordered_product
from quasihopf.qscalar import QScalar
from quasihopf.uqsl2 import E, F, TensorElement, UNIT, PBWMonomial

from strategies import laurent


def w_series(coeffs, cap):
    return TruncSeries(("w",), (cap,), {(n,): QScalar(c) for n, c in enumerate(coeffs)})


def test_products_and_truncation():
    one_plus, one_minus = w_series([1, 1], 4), w_series([1, -1], 4)
    assert one_plus * one_minus == w_series([1, 0, -1], 4)
    assert w_series([1, 1], 1) * w_series([1, -1], 1) == w_series([1], 1)
    assert w_series([1] * 5, 4) * w_series([1, -1], 4) == w_series([1], 4)


def test_geometric_inverse():
    assert w_series([1, -1], 5).invert_unit() == w_series([1] * 6, 5)
    assert w_series([1], 3).invert_unit() == w_series([1], 3)
    with pytest.raises(NonUnitConstantTerm):
        w_series([0, 1], 3).invert_unit()


def test_substitute_scale():
    q2 = QScalar.q(2)
    assert w_series([1, 1], 3).substitute_scale("w", q2) == TruncSeries(("w",), (3,), {(0,): QScalar(1), (1,): q2})
    geo = w_series([1] * 4, 3)
    assert geo.substitute_scale("w", QScalar(1)) == geo
    with pytest.raises(VariableMismatch):
        geo.substitute_scale("z", q2)


def test_mismatched_variables():
    with pytest.raises(VariableMismatch):
        w_series([1], 2) * TruncSeries(("z",), (2,), {(0,): QScalar(1)})


def test_ordered_product_examples():
    assert ordered_product(lambda k: w_series([1], 3)) == w_series([1], 3)
    one_plus_wk = lambda k: TruncSeries(("w",), (2,), {(0,): QScalar(1), (k,): QScalar(1)})
    assert ordered_product(one_plus_wk) == w_series([1, 1, 1], 2)
    with pytest.raises(NonStabilizingFactor):
        ordered_product(lambda k: w_series([1, 1], 3))


@given(st.lists(laurent(), min_size=1, max_size=6), st.lists(laurent(), min_size=1, max_size=6), st.integers(0, 4))
def test_truncation_functoriality(a, b, m):
    A = TruncSeries(("w",), (5,), {(n,): c for n, c in enumerate(a)})
    B = TruncSeries(("w",), (5,), {(n,): c for n, c in enumerate(b)})
    assert (A * B).truncate((m,)) == A.truncate((m,)) * B.truncate((m,))
    if a[0]:
        assert A.invert_unit().truncate((m,)) == A.truncate((m,)).invert_unit()


def _op_series(cap):
    # coefficients in a noncommutative ring: the rank-1 algebra itself
    def el(mo, c=1):
        return TensorElement(1, 3, {(0, (mo,)): QScalar(c)})
    return TruncSeries(("w",), (cap,), {(0,): el(UNIT), (1,): el(E), (2,): el(F, 2) + el(PBWMonomial(1, 1, 1))})


def test_noncommutative_inverse_is_two_sided():
    A = _op_series(4)
    inv = A.invert_unit()
    one = A.one_like()
    assert A * inv == one
    assert inv * A == one
