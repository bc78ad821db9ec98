"""Exact rational functions in the deformation parameter.

Values live in Q(v) with ``q = v**2``, so half-integer powers of ``q`` (needed
for ``q^{-T}`` in the two-dimensional representation) are exact.  A value is
stored as ``v**shift * num(v) / den(v)`` where ``num`` and ``den`` are integer
polynomials with nonzero constant terms, coprime, and ``den`` has positive
leading coefficient.  That triple is the canonical form; equality and hashing
use it.

Polynomial arithmetic and gcd are delegated to FLINT (``python-flint``).
"""

import cmath
from fractions import Fraction
from functools import lru_cache
from numbers import Integral, Rational

from flint import fmpz_poly

from .errors import DivisionByZero, PoleAtPoint

__all__ = ["QScalar", "add", "mul", "neg", "invert", "eval_complex", "q_number", "q_factorial"]

_ONE_POLY = fmpz_poly([1])
_ZERO_POLY = fmpz_poly([])


def _valuation(p):
    """Number of trailing zero coefficients (multiplicity of v as a factor)."""
    for i, c in enumerate(p.coeffs()):
        if c != 0:
            return i
    return 0


class QScalar:
    """An element of Q(v), q = v^2.  Immutable."""

    __slots__ = ("num", "den", "shift", "_hash")

    def __init__(self, value=0):
        if isinstance(value, QScalar):
            self.num, self.den, self.shift = value.num, value.den, value.shift
        elif isinstance(value, Integral):
            self.num, self.den, self.shift = (fmpz_poly([int(value)]) if value else _ZERO_POLY), _ONE_POLY, 0
        elif isinstance(value, Rational):
            fr = Fraction(value)
            self.num, self.den, self.shift = fmpz_poly([fr.numerator]), fmpz_poly([fr.denominator]), 0
            if not fr:
                self.num, self.den = _ZERO_POLY, _ONE_POLY
        else:
            raise TypeError(f"cannot build QScalar from {type(value).__name__}")
        self._hash = None

    @classmethod
    def _raw(cls, num, den, shift):
        obj = object.__new__(cls)
        obj.num, obj.den, obj.shift, obj._hash = num, den, shift, None
        return obj

    @classmethod
    def from_parts(cls, num, den, shift=0):
        """Build and canonicalize ``v**shift * num / den`` (coefficient lists low to high)."""
        num = num if isinstance(num, fmpz_poly) else fmpz_poly(list(num))
        den = den if isinstance(den, fmpz_poly) else fmpz_poly(list(den))
        if den.is_zero():
            raise DivisionByZero("zero denominator")
        return cls._canonical(num, den, shift)

    @classmethod
    def _canonical(cls, num, den, shift):
        if num.is_zero():
            return ZERO
        a = _valuation(num)
        if a:
            num = num.right_shift(a)
            shift += a
        b = _valuation(den)
        if b:
            den = den.right_shift(b)
            shift -= b
        if not den.is_constant() or den.coeffs()[0] != 1:
            g = num.gcd(den)
            if not g.is_one():
                num = num // g
                den = den // g
            if den.leading_coefficient() < 0:
                num, den = -num, -den
        return cls._raw(num, den, shift)

    @classmethod
    def v(cls, k=1):
        """``v**k``, i.e. ``q**(k/2)``."""
        return cls._raw(_ONE_POLY, _ONE_POLY, int(k))

    @classmethod
    def q(cls, k=1):
        """``q**k`` for integer or half-integer ``k``."""
        k2 = Fraction(k) * 2
        if k2.denominator != 1:
            raise ValueError("only integer or half-integer powers of q are representable")
        return cls._raw(_ONE_POLY, _ONE_POLY, int(k2))

    @classmethod
    def laurent(cls, coeffs):
        """Laurent polynomial in v from a mapping ``{exponent: rational}``."""
        total = ZERO
        for e, c in coeffs.items():
            total = total + QScalar(c) * cls.v(e)
        return total

    # -- predicates -------------------------------------------------------
    def __bool__(self):
        return not self.num.is_zero()

    def is_one(self):
        return self.shift == 0 and self.num.is_one() and self.den.is_one()

    def _key(self):
        return (self.shift, tuple(int(c) for c in self.num.coeffs()), tuple(int(c) for c in self.den.coeffs()))

    def __eq__(self, other):
        if isinstance(other, QScalar):
            return self.shift == other.shift and self.num == other.num and self.den == other.den
        if isinstance(other, (Integral, Rational)):
            return self == QScalar(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._key())
        return self._hash

    # -- arithmetic -------------------------------------------------------
    @staticmethod
    def _coerce(x):
        if isinstance(x, QScalar):
            return x
        if isinstance(x, (Integral, Rational)):
            return QScalar(x)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not o:
            return self
        if not self:
            return o
        s = min(self.shift, o.shift)
        n1 = self.num.left_shift(self.shift - s) if self.shift > s else self.num
        n2 = o.num.left_shift(o.shift - s) if o.shift > s else o.num
        if self.den == o.den:
            return QScalar._canonical(n1 + n2, self.den, s)
        return QScalar._canonical(n1 * o.den + n2 * self.den, self.den * o.den, s)

    __radd__ = __add__

    def __neg__(self):
        if not self:
            return self
        return QScalar._raw(-self.num, self.den, self.shift)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not self or not o:
            return ZERO
        if o.den.is_one() and self.den.is_one():
            return QScalar._raw(self.num * o.num, _ONE_POLY, self.shift + o.shift)
        return QScalar._canonical(self.num * o.num, self.den * o.den, self.shift + o.shift)

    __rmul__ = __mul__

    def inverse(self):
        if not self:
            raise DivisionByZero("inverse of zero QScalar")
        num, den = self.den, self.num
        if den.leading_coefficient() < 0:
            num, den = -num, -den
        return QScalar._raw(num, den, -self.shift)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n):
        if not isinstance(n, Integral):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        if not self:
            return ONE if n == 0 else ZERO
        return QScalar._raw(self.num ** n, self.den ** n, self.shift * n)

    # -- evaluation / rendering ------------------------------------------
    def eval_complex(self, q0, tol=1e-14):
        """Evaluate at ``q = q0`` using the principal square root for ``v``."""
        v0 = cmath.sqrt(complex(q0))
        num = _horner([int(c) for c in self.num.coeffs()], v0)
        den = _horner([int(c) for c in self.den.coeffs()], v0)
        scale = max(1.0, sum(abs(int(c)) * abs(v0) ** i for i, c in enumerate(self.den.coeffs())))
        if abs(den) <= tol * scale or (self.shift < 0 and abs(v0) == 0):
            raise PoleAtPoint(f"{self} has a pole at q={q0}")
        if abs(v0) == 0:
            return (num / den) if self.shift == 0 else 0j
        return v0 ** self.shift * num / den

    def to_sympy(self, q_symbol=None):
        """Convert to a sympy expression in ``q`` (half powers as ``sqrt``)."""
        import sympy

        q = q_symbol if q_symbol is not None else sympy.Symbol("q")
        v = sympy.sqrt(q)
        num = sum(int(c) * v ** i for i, c in enumerate(self.num.coeffs()))
        den = sum(int(c) * v ** i for i, c in enumerate(self.den.coeffs()))
        return v ** self.shift * num / den

    def __str__(self):
        if not self:
            return "0"
        num_shift = max(self.shift, 0)
        den_shift = max(-self.shift, 0)
        n = _render_poly(self.num, num_shift)
        if self.den.is_one() and den_shift == 0:
            return n
        d = _render_poly(self.den, den_shift)
        return f"({n})/({d})"

    def __repr__(self):
        return f"QScalar({self})"


def _horner(coeffs, x):
    acc = 0j
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _q_power(e):
    # e is an exponent in v; q = v^2
    if e == 0:
        return ""
    if e % 2 == 0:
        k = e // 2
        return "q" if k == 1 else f"q^{k}"
    return f"q^({e}/2)"


def _render_poly(poly, shift):
    parts = []
    for i, c in reversed(list(enumerate(poly.coeffs()))):
        c = int(c)
        if c == 0:
            continue
        mono = _q_power(i + shift)
        if mono == "":
            body = str(abs(c))
        elif abs(c) == 1:
            body = mono
        else:
            body = f"{abs(c)}*{mono}"
        sign = "-" if c < 0 else "+"
        parts.append((sign, body))
    if not parts:
        return "0"
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


ZERO = QScalar._raw(_ZERO_POLY, _ONE_POLY, 0)
ONE = QScalar._raw(_ONE_POLY, _ONE_POLY, 0)


def add(a, b):
    return QScalar(a) + QScalar(b)


def mul(a, b):
    return QScalar(a) * QScalar(b)


def neg(a):
    return -QScalar(a)


def invert(a):
    return QScalar(a).inverse()


def eval_complex(a, q0):
    return QScalar(a).eval_complex(q0)


@lru_cache(maxsize=None)
def q_number(n, base_power=1):
    """``(1 - x**n) / (1 - x)`` with ``x = q**base_power``."""
    x = QScalar.q(base_power)
    total = ZERO
    for k in range(n):
        total = total + x ** k
    return total


@lru_cache(maxsize=None)
def q_factorial(n, base_power=1):
    """``(n)_x! = (x; x)_n / (1 - x)**n`` with ``x = q**base_power``."""
    out = ONE
    for k in range(1, n + 1):
        out = out * q_number(k, base_power)
    return out
