import cmath

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from quasihopf import qnumeric as qn
from quasihopf.errors import DomainError, NonConvergent, PoleAtNonpositive, PoleInC, ZeroArgument

bases = st.floats(0.05, 0.8)
disc = st.builds(lambda r, t: r * cmath.exp(1j * t), st.floats(0.0, 0.9), st.floats(0, 6.3))


def test_pochhammer_values():
    assert qn.qpoch(0.3, 0.5, 0) == 1
    assert qn.qpoch(0, 0.5) == 1
    assert qn.qpoch(0.5, 0.5, 2) == pytest.approx(0.375)
    with pytest.raises(NonConvergent):
        qn.qpoch(0.5, 1.2)


def test_multipoch_against_double_loop():
    z, a, b = 0.2, 0.4**4, 0.1
    brute = 1.0
    for i in range(60):
        for j in range(60):
            brute *= 1 - z * a**i * b**j
    assert qn.multipoch(z, [a, b]) == pytest.approx(brute, abs=1e-15)
    assert qn.multipoch(0, [a, b]) == 1


def test_theta_zeros():
    assert abs(qn.theta(1, 0.3)) < 1e-15
    assert abs(qn.theta(0.3, 0.3)) < 1e-15
    with pytest.raises(ZeroArgument):
        qn.theta(0, 0.3)


def test_gamma_values():
    assert qn.gamma_q(1, 0.5) == pytest.approx(1)
    # Gamma_q(x + 1) = [x]_q Gamma_q(x) with [x]_q = (1 - q^x)/(1 - q)
    x, q = 0.7, 0.5
    assert qn.gamma_q(x + 1, q) == pytest.approx((1 - q**x) / (1 - q) * qn.gamma_q(x, q))
    with pytest.raises(PoleAtNonpositive):
        qn.gamma_q(0, 0.5)
    assert abs(qn.rgamma_q(-1, 0.5)) < 1e-15


def test_phi21_special_values():
    assert qn.phi21(0.2, 0.3, 0.4, 0.5, 0) == 1
    assert qn.phi21(1, 0.3, 0.4, 0.5, 0.7) == pytest.approx(1)
    with pytest.raises(PoleInC):
        qn.phi21(0.2, 0.3, 0.5**-2, 0.5, 0.3)
    with pytest.raises(NonConvergent):
        qn.phi21(0.2, 0.3, 0.4, 0.5, 1.2)


def test_connection_formula():
    assert qn.connection_residual(0.3, 0.7, 1.9, 0.35, 1.6) < 1e-10
    with pytest.raises(DomainError):
        qn.connection_residual(0.4, 0.4, 1.9, 0.35, 1.6)
    with pytest.raises(DomainError):
        qn.connection_residual(0.3, 0.7, 1.9, 0.35, 0.8)


def test_connection_binomial_case():
    a, b, q, z = 0.6, 0.25, 0.4, 1.7 + 0.4j
    lhs, t1, t2 = qn.connection_terms(a, b, a, q, z)
    assert abs(t1) < 1e-15
    assert abs(lhs - qn.qpoch(q**b / z, q) / qn.qpoch(1 / z, q)) < 1e-12
    assert abs(lhs - t2) < 1e-12


@given(st.complex_numbers(max_magnitude=3, allow_nan=False, allow_infinity=False), bases, st.integers(0, 12))
def test_pochhammer_recursion(a, q, n):
    assert qn.qpoch(a, q, n + 1) == pytest.approx(qn.qpoch(a, q, n) * (1 - a * q**n), rel=1e-14, abs=1e-14)


@given(disc, bases)
def test_theta_quasi_periodicity(z, q):
    assume(abs(z) > 0.05)
    lhs = qn.theta(q * z, q)
    assert abs(lhs + qn.theta(z, q) / z) <= 1e-12 * max(1, abs(lhs))


@given(disc, bases)
def test_single_base_multipoch(z, q):
    assert abs(qn.multipoch(z, [q]) - qn.qpoch(z, q)) < 1e-13


@given(disc, st.floats(0.1, 0.95), st.floats(0.1, 0.95), st.floats(0.1, 0.95), bases)
def test_phi21_tail_bound(z, A, B, C, q):
    value, bound = qn.phi21_with_bound(A, B, C, q, z, tol=1e-6)
    reference = qn.phi21(A, B, C, q, z, tol=1e-17)
    assert abs(reference - value) <= bound + 1e-15
