"""Truncated formal power series in named commuting variables.

Coefficients may come from any ring whose elements support ``+``, ``*``,
unary ``-`` and truthiness as a zero test: :class:`~quasihopf.qscalar.QScalar`,
Python complex numbers, or tensor elements of :mod:`quasihopf.uqsl2`.
Products keep the left/right order of coefficients, so noncommutative
coefficient rings are fine.

Exponents are integers, or :class:`fractions.Fraction` for lattices such as
``p**(1/2)``.  Every variable carries an upper cap; anything above it is
dropped.
"""

from fractions import Fraction
from numbers import Number

from .errors import NonStabilizingFactor, NonUnitConstantTerm, VariableMismatch

__all__ = [
    "DEFAULT_CAPS",
    "TruncSeries",
    "mul",
    "invert_unit",
    "substitute_scale",
    "ordered_product",
]

DEFAULT_CAPS = {"w": 6, "z": 8, "p": 8}


def _ring_inverse(c):
    inv = getattr(c, "inverse", None)
    if inv is not None:
        return inv()
    return 1 / c


class TruncSeries:
    """A truncated power series ``sum c_k x^k``; immutable."""

    __slots__ = ("variables", "caps", "coeffs")

    def __init__(self, variables, caps, coeffs=None):
        variables = tuple(variables)
        if isinstance(caps, dict):
            caps = tuple(caps[v] for v in variables)
        caps = tuple(caps)
        if len(caps) != len(variables):
            raise ValueError("one cap per variable required")
        self.variables = variables
        self.caps = caps
        clean = {}
        for exps, c in (coeffs or {}).items():
            exps = tuple(exps)
            if any(e > cap for e, cap in zip(exps, caps)):
                continue
            if c:
                clean[exps] = c
        self.coeffs = clean

    # -- constructors -----------------------------------------------------
    @classmethod
    def constant(cls, value, variables, caps):
        return cls(variables, caps, {(0,) * len(tuple(variables)): value})

    @classmethod
    def monomial(cls, exponents, value, variables, caps):
        """``value * prod(var**exponents[var])``; ``exponents`` is a dict."""
        variables = tuple(variables)
        exps = tuple(exponents.get(v, 0) for v in variables)
        return cls(variables, caps, {exps: value})

    def _like(self, coeffs, caps=None):
        out = object.__new__(TruncSeries)
        out.variables = self.variables
        out.caps = self.caps if caps is None else caps
        out.coeffs = coeffs
        return out

    def one_like(self):
        c = self.constant_term()
        one = 1
        if c is not None and hasattr(c, "one_like"):
            one = c.one_like()
        elif c is not None and not isinstance(c, Number):
            one = type(c)(1)
        return TruncSeries.constant(one, self.variables, self.caps)

    # -- inspection -------------------------------------------------------
    def __bool__(self):
        return bool(self.coeffs)

    def __iter__(self):
        return iter(sorted(self.coeffs.items(), key=lambda kv: kv[0]))

    def items(self):
        return list(self)

    def coefficient(self, exponents):
        if isinstance(exponents, dict):
            exponents = tuple(exponents.get(v, 0) for v in self.variables)
        return self.coeffs.get(tuple(exponents), 0)

    def constant_term(self):
        return self.coeffs.get((0,) * len(self.variables))

    def valuation(self):
        """Minimal total degree of a nonzero term, or ``None`` for zero."""
        if not self.coeffs:
            return None
        return min(sum(e) for e in self.coeffs)

    @property
    def degree_bound(self):
        """Largest total degree that survives truncation."""
        return sum(self.caps)

    def truncate(self, caps):
        if isinstance(caps, dict):
            caps = tuple(min(caps.get(v, c), c) for v, c in zip(self.variables, self.caps))
        caps = tuple(caps)
        kept = {e: c for e, c in self.coeffs.items() if all(x <= m for x, m in zip(e, caps))}
        return self._like(kept, caps)

    def map_coefficients(self, fn):
        out = {}
        for e, c in self.coeffs.items():
            v = fn(c)
            if v:
                out[e] = v
        return self._like(out)

    def __eq__(self, other):
        if isinstance(other, TruncSeries):
            if other.variables != self.variables:
                return False
            return not (self - other)
        if isinstance(other, Number) or hasattr(other, "__radd__"):
            try:
                return not (self - other)
            except TypeError:
                return NotImplemented
        return NotImplemented

    __hash__ = None

    # -- arithmetic -------------------------------------------------------
    def _check(self, other):
        if other.variables != self.variables:
            raise VariableMismatch(f"{self.variables} vs {other.variables}")
        return tuple(min(a, b) for a, b in zip(self.caps, other.caps))

    def __add__(self, other):
        if isinstance(other, TruncSeries):
            caps = self._check(other)
            out = {e: c for e, c in self.coeffs.items() if all(x <= m for x, m in zip(e, caps))}
            for e, c in other.coeffs.items():
                if any(x > m for x, m in zip(e, caps)):
                    continue
                if e in out:
                    s = out[e] + c
                    if s:
                        out[e] = s
                    else:
                        del out[e]
                else:
                    out[e] = c
            return self._like(out, caps)
        if not other:
            return self
        return self + TruncSeries.constant(other, self.variables, self.caps)

    def __radd__(self, other):
        if not other:
            return self
        return TruncSeries.constant(other, self.variables, self.caps) + self

    def __neg__(self):
        return self._like({e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, TruncSeries):
            caps = self._check(other)
            out = {}
            for e1, c1 in self.coeffs.items():
                for e2, c2 in other.coeffs.items():
                    e = tuple(a + b for a, b in zip(e1, e2))
                    if any(x > m for x, m in zip(e, caps)):
                        continue
                    prod = c1 * c2
                    if e in out:
                        prod = out[e] + prod
                    out[e] = prod
            return self._like({e: c for e, c in out.items() if c}, caps)
        return self._like({e: s for e, c in self.coeffs.items() if (s := c * other)})

    def __rmul__(self, other):
        return self._like({e: s for e, c in self.coeffs.items() if (s := other * c)})

    def __pow__(self, n):
        out = self.one_like()
        for _ in range(n):
            out = out * self
        return out

    def invert_unit(self):
        """Two-sided inverse up to the caps.

        The constant term must be invertible and central (a scalar); the
        remaining part is inverted as a terminating geometric series.
        """
        c0 = self.constant_term()
        if c0 is None or not c0:
            raise NonUnitConstantTerm("constant term is zero")
        try:
            inv0 = _ring_inverse(c0)
        except (ZeroDivisionError, ValueError, TypeError) as exc:
            raise NonUnitConstantTerm(str(exc)) from exc
        zero_key = (0,) * len(self.variables)
        rest = self._like({e: c for e, c in self.coeffs.items() if e != zero_key})
        if rest and any(x < 0 for e in rest.coeffs for x in e):
            raise NonUnitConstantTerm("negative exponents present")
        # a = c0 (1 + x), so a^{-1} = sum (-x)^k c0^{-1}
        neg_x = -(inv0 * rest)
        term = TruncSeries.constant(inv0, self.variables, self.caps)
        total = term
        while True:
            term = neg_x * term
            if not term:
                break
            total = total + term
        return total

    def substitute_scale(self, var, factor):
        """Replace ``var`` by ``factor * var``: coefficient of var^n gains factor^n."""
        if var not in self.variables:
            raise VariableMismatch(f"variable {var!r} not in {self.variables}")
        i = self.variables.index(var)
        inv = None
        out = {}
        for e, c in self.coeffs.items():
            n = e[i]
            if isinstance(n, Fraction) and n.denominator != 1:
                raise ValueError("substitute_scale needs integer exponents in the scaled variable")
            n = int(n)
            if n >= 0:
                s = (factor ** n) * c
            else:
                if inv is None:
                    inv = _ring_inverse(factor)
                s = (inv ** (-n)) * c
            if s:
                out[e] = s
        return self._like(out)

    # -- rendering --------------------------------------------------------
    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for e, c in self:
            mono = "*".join(
                (v if x == 1 else f"{v}^{x}") for v, x in zip(self.variables, e) if x
            )
            cs = str(c)
            if not mono:
                parts.append(f"({cs})")
            else:
                parts.append(f"({cs})*{mono}")
        return " + ".join(parts)

    def __repr__(self):
        return f"TruncSeries({self.variables}, caps={self.caps}, {self})"


def mul(a, b):
    return a * b


def invert_unit(a):
    return a.invert_unit()


def substitute_scale(a, var, factor):
    return a.substitute_scale(var, factor)


def ordered_product(factor, degree_bound=None):
    """Left-ordered product ``... A_3 A_2 A_1`` with ``A_k = factor(k)``.

    ``factor(k) - 1`` must have total degree at least ``k``; the product is
    therefore exact up to the caps once ``k`` exceeds ``degree_bound``
    (taken from the first factor when not given).  Factor objects need
    ``*``, ``-``, ``one_like()``, ``valuation()`` and ``degree_bound``.
    """
    first = factor(1)
    bound = first.degree_bound if degree_bound is None else degree_bound
    result = first.one_like()
    k = 1
    current = first
    while k <= bound:
        if k > 1:
            current = factor(k)
        val = (current - current.one_like()).valuation()
        if val is not None and val < k:
            raise NonStabilizingFactor(f"factor {k} deviates from 1 at degree {val} < {k}")
        result = current * result
        k += 1
    return result
