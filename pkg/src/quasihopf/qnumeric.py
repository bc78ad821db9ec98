"""q-special functions in double precision with explicit truncation bounds.

All infinite objects are cut off once a rigorous bound on the neglected
tail drops below the requested tolerance.  For a product
``prod_{k>=K} (1 - x_k)`` with ``|x_k| <= r^k |a|`` and ``r < 1`` the bound used
is ``|log tail| <= 2 |a| r^K / (1 - r)`` whenever ``|a| r^K <= 1/2``.
"""

import cmath
import math
from dataclasses import dataclass

from .errors import (
    DomainError,
    NonConvergent,
    PoleAtNonpositive,
    PoleInC,
    ZeroArgument,
)

__all__ = [
    "QDomain",
    "qpoch",
    "multipoch",
    "theta",
    "gamma_q",
    "rgamma_q",
    "phi21",
    "phi21_with_bound",
    "connection_terms",
    "connection_residual",
]

EPS = 1e-17
MAX_FACTORS = 100_000
POLE_GUARD = 1e-6


@dataclass(frozen=True)
class QDomain:
    q0: complex
    p0: complex | None = None
    tolerance: float = 1e-15
    max_terms: int = 5000

    def __post_init__(self):
        if abs(self.q0) >= 1:
            raise ValueError("|q| must be < 1")
        if self.p0 is not None and abs(self.p0) >= 1:
            raise ValueError("|p| must be < 1")
        if self.tolerance <= 0:
            raise ValueError("tolerance must be positive")


def qpoch(a, q, n=None, tol=EPS):
    """``(a; q)_n``; ``n=None`` or ``math.inf`` gives the infinite product."""
    a = complex(a)
    q = complex(q)
    if n is not None and n != math.inf:
        out = 1 + 0j
        x = a
        for _ in range(int(n)):
            out *= 1 - x
            x *= q
        return out
    r = abs(q)
    if r >= 1:
        raise NonConvergent("infinite Pochhammer needs |q| < 1")
    if a == 0:
        return 1 + 0j
    out = 1 + 0j
    x = a
    for _ in range(MAX_FACTORS):
        ax = abs(x)
        if ax <= 0.5 and 2 * ax / (1 - r) < tol:
            return out
        out *= 1 - x
        x *= q
    raise NonConvergent("Pochhammer product did not converge")


def multipoch(z, bases, tol=EPS):
    """``(z; t_1, ..., t_n)_inf``, the product over all monomials in the bases."""
    bases = [complex(t) for t in bases]
    if not bases:
        raise ValueError("at least one base required")
    if any(abs(t) >= 1 for t in bases):
        raise NonConvergent("all bases need modulus < 1")
    z = complex(z)
    if z == 0:
        return 1 + 0j
    if len(bases) == 1:
        return qpoch(z, bases[0], tol=tol)
    first, rest = bases[0], bases[1:]
    r = abs(first)
    # the remaining product over the other bases of a shell with leading |x| is
    # within factor exp(2|x| / prod(1 - |t_j|)) of 1
    spread = 1.0
    for t in rest:
        spread /= 1 - abs(t)
    out = 1 + 0j
    x = z
    for _ in range(MAX_FACTORS):
        ax = abs(x)
        if ax <= 0.5 and 2 * ax * spread / (1 - r) < tol:
            return out
        out *= multipoch(x, rest, tol=tol)
        x *= first
    raise NonConvergent("multi-base product did not converge")


def theta(z, q):
    """``Theta_q(z) = (z; q)_inf (q/z; q)_inf (q; q)_inf``."""
    z = complex(z)
    if q == 0:
        # only the first factor survives
        return 1 - z
    if z == 0:
        raise ZeroArgument("theta needs z != 0")
    return qpoch(z, q) * qpoch(q / z, q) * qpoch(q, q)


def _qpow(q, x):
    return cmath.exp(complex(x) * cmath.log(complex(q)))


def _near_pole(X, q, terms=400):
    """True if ``(X; q)_inf`` has a factor within the guard of zero."""
    x = complex(X)
    for _ in range(terms):
        if abs(1 - x) < POLE_GUARD:
            return True
        x *= q
        if abs(x) < 1e-3:
            return False
    return False


def rgamma_q(x, q):
    """``1 / Gamma_q(x)``; entire in ``x``, vanishing on the pole set of ``Gamma_q``."""
    qx = _qpow(q, x)
    return qpoch(qx, q) / (qpoch(q, q) * cmath.exp((1 - complex(x)) * cmath.log(1 - complex(q))))


def gamma_q(x, q):
    """``(q; q)_inf / (q^x; q)_inf * (1 - q)^(1 - x)`` with principal branches."""
    qx = _qpow(q, x)
    if _near_pole(qx, q):
        raise PoleAtNonpositive(f"Gamma_q pole at x={x}")
    return qpoch(q, q) / qpoch(qx, q) * cmath.exp((1 - complex(x)) * cmath.log(1 - complex(q)))


def phi21_with_bound(A, B, C, q, z, tol=1e-16, max_terms=5000):
    """``2phi1(A, B; C; q, z)`` and a bound on the neglected tail."""
    A, B, C, q, z = (complex(v) for v in (A, B, C, q, z))
    if _near_pole(C, q, terms=max_terms):
        raise PoleInC(f"C={C} is on the pole set q^(-n)")
    if z == 0:
        return 1 + 0j, 0.0
    if abs(z) >= 1:
        raise NonConvergent("series mode needs |z| < 1")
    r = abs(q)
    total = 0j
    term = 1 + 0j
    for n in range(max_terms):
        total += term
        qn = q ** n
        term = term * (1 - A * qn) * (1 - B * qn) / ((1 - q * qn) * (1 - C * qn)) * z
        if term == 0:
            return total, 0.0
        rn = r ** (n + 1)
        if abs(C) * rn < 1:
            ratio = (1 + abs(A) * rn) * (1 + abs(B) * rn) / ((1 - r * rn) * (1 - abs(C) * rn)) * abs(z)
            if ratio < 1:
                bound = abs(term) / (1 - ratio)
                if bound < tol * max(1.0, abs(total)):
                    return total + term, bound * abs(ratio)
    raise NonConvergent(f"2phi1 did not converge in {max_terms} terms")


def phi21(A, B, C, q, z, tol=1e-16, max_terms=5000):
    """Basic hypergeometric series ``sum (A)_n (B)_n / ((q)_n (C)_n) z^n``."""
    return phi21_with_bound(A, B, C, q, z, tol, max_terms)[0]


def _is_gamma_pole(x, q):
    return _near_pole(_qpow(q, x), q)


def connection_terms(a, b, c, q, z):
    """Left side and the two right-side terms of the two-term connection formula.

    The left side is the series at ``1/z``; the right side uses series at
    ``q^(c-a-b+1) z``.  Reciprocal q-Gamma values keep the formula finite when
    a denominator Gamma has a pole (the corresponding term then vanishes).
    """
    q = complex(q)
    z = complex(z)
    if abs(z) <= 1:
        raise DomainError("need |z| > 1 so that the series at 1/z converges")
    arg = _qpow(q, c - a - b + 1) * z
    if abs(arg) >= 1:
        raise DomainError("need |q^(c-a-b+1) z| < 1")
    for name, x in (("c", c), ("b-a", b - a), ("a-b", a - b)):
        if _is_gamma_pole(x, q):
            raise DomainError(f"Gamma_q({name}) has a pole")
    if abs(theta(q * z, q)) < POLE_GUARD:
        raise DomainError("Theta_q(qz) vanishes")
    qa, qb, qc = _qpow(q, a), _qpow(q, b), _qpow(q, c)
    lhs = phi21(qa, qb, qc, q, 1 / z)
    th = theta(q * z, q)
    g_c = gamma_q(c, q)
    t1 = (
        g_c * gamma_q(b - a, q) * rgamma_q(b, q) * rgamma_q(c - a, q)
        * theta(_qpow(q, 1 - a) * z, q) / th
        * phi21(qa, _qpow(q, a - c + 1), _qpow(q, a - b + 1), q, arg)
    )
    t2 = (
        g_c * gamma_q(a - b, q) * rgamma_q(a, q) * rgamma_q(c - b, q)
        * theta(_qpow(q, 1 - b) * z, q) / th
        * phi21(qb, _qpow(q, b - c + 1), _qpow(q, b - a + 1), q, arg)
    )
    return lhs, t1, t2


def connection_residual(a, b, c, q, z):
    lhs, t1, t2 = connection_terms(a, b, c, q, z)
    return abs(lhs - (t1 + t2))
