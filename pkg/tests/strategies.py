"""Hypothesis strategies shared by the test modules."""

from hypothesis import strategies as st

from quasihopf.qscalar import QScalar
from quasihopf.uqsl2 import PBWMonomial, TensorElement

small_ints = st.integers(-4, 4)


@st.composite
def qscalars(draw, nonzero=False):
    num = draw(st.lists(small_ints, min_size=1, max_size=4))
    den = draw(st.lists(small_ints, min_size=1, max_size=3).filter(any))
    if nonzero and not any(num):
        num = [1]
    return QScalar.from_parts(num, den, draw(st.integers(-4, 4)))


@st.composite
def laurent(draw):
    """Laurent polynomials in v; no poles away from v = 0."""
    return QScalar.laurent({e: draw(small_ints) for e in draw(st.lists(st.integers(-4, 4), max_size=4))})


monomials = st.builds(PBWMonomial, st.integers(0, 2), st.integers(-2, 2), st.integers(0, 2))


@st.composite
def elements(draw, rank=1, D=3, max_terms=3):
    data = {}
    for _ in range(draw(st.integers(1, max_terms))):
        monos = tuple(draw(monomials) for _ in range(rank))
        data[(0, monos)] = draw(laurent())
    return TensorElement(rank, D, data)
