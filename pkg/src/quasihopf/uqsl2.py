"""PBW normal-form arithmetic in truncated U_q(sl2) and its tensor powers.

Generators ``e, f, t`` obey ``t e = q^2 e t``, ``t f = q^-2 f t`` and
``e f - f e = (t - t^-1)/(q - q^-1)``.  Monomials are kept in the order
``f^a t^m e^b``.  A :class:`TensorElement` is a finite sum of tensor
products of such monomials with exact :class:`QScalar` coefficients,
optionally graded by a formal variable ``w`` (stored as an integer power
next to the monomials).

Truncation: a term is discarded as soon as any slot carries an ``e`` or
``f`` power above the degree cap ``D``, or its ``w`` power exceeds the
``w`` cap.
"""

from functools import lru_cache
from itertools import product as cartesian
from typing import NamedTuple

import numpy as np

from .errors import NonConvergent, NonUnitConstantTerm, RankMismatch, SlotOutOfRange
from .fps import TruncSeries
from .qscalar import ONE, ZERO, QScalar, q_factorial

__all__ = [
    "PBWMonomial",
    "TensorElement",
    "mono_mul",
    "normal_form_product",
    "coproduct",
    "counit",
    "r_nilpotent",
    "apply_phi_power",
    "dynamical_shift",
    "rep2",
    "rep2_q_minus_T",
    "q_exp",
]


class PBWMonomial(NamedTuple):
    """``f^a t^m e^b``."""

    a: int = 0
    m: int = 0
    b: int = 0

    def __str__(self):
        parts = []
        if self.a:
            parts.append("f" if self.a == 1 else f"f^{self.a}")
        if self.m:
            parts.append("t" if self.m == 1 else f"t^{self.m}")
        if self.b:
            parts.append("e" if self.b == 1 else f"e^{self.b}")
        return "*".join(parts) or "1"


UNIT = PBWMonomial(0, 0, 0)
E = PBWMonomial(0, 0, 1)
F = PBWMonomial(1, 0, 0)


def T(m=1):
    return PBWMonomial(0, m, 0)


def _qq(k):
    return QScalar.q(k)


@lru_cache(maxsize=None)
def _ef_coeffs(b):
    """Coefficients of ``t e^{b-1}`` and ``t^-1 e^{b-1}`` in ``e^b f - f e^b``."""
    inv = (_qq(1) - _qq(-1)).inverse()
    alpha = ZERO
    beta = ZERO
    for i in range(b):
        alpha = alpha + _qq(-2 * i)
        beta = beta + _qq(2 * i)
    return alpha * inv, beta * inv


def _times_f(terms, D):
    out = {}
    for (a, m, b), c in terms.items():
        if a + 1 <= D:
            key = (a + 1, m, b)
            _acc(out, key, c * _qq(-2 * m))
        if b:
            alpha, beta = _ef_coeffs(b)
            _acc(out, (a, m + 1, b - 1), c * alpha)
            _acc(out, (a, m - 1, b - 1), -(c * beta))
    return out


def _acc(d, key, c):
    if not c:
        return
    if key in d:
        s = d[key] + c
        if s:
            d[key] = s
        else:
            del d[key]
    else:
        d[key] = c


@lru_cache(maxsize=200_000)
def mono_mul(x, y, D):
    """Normal-ordered product of two monomials as a tuple of ``(monomial, coeff)``."""
    x = PBWMonomial(*x)
    a2, m2, b2 = y
    terms = {tuple(x): ONE}
    for _ in range(a2):
        terms = _times_f(terms, D)
        if not terms:
            return ()
    out = {}
    for (a, m, b), c in terms.items():
        # e^b t^n = q^{-2nb} t^n e^b
        if b + b2 > D:
            continue
        out[PBWMonomial(a, m + m2, b + b2)] = c * _qq(-2 * m2 * b) if m2 and b else c
    return tuple(sorted(out.items()))


class TensorElement:
    """Element of the ``rank``-fold tensor power of truncated U_q(sl2).

    ``data`` maps ``(n, (mono_1, ..., mono_rank))`` to a QScalar, meaning
    the coefficient of ``w^n``.  ``w_cap=None`` marks an element that does
    not involve ``w`` at all (exact in ``w``).
    """

    __slots__ = ("rank", "degree_cap", "w_cap", "data")

    def __init__(self, rank, degree_cap, data=None, w_cap=None):
        self.rank = rank
        self.degree_cap = degree_cap
        self.w_cap = w_cap
        clean = {}
        for (n, monos), c in (data or {}).items():
            monos = tuple(PBWMonomial(*mo) for mo in monos)
            if len(monos) != rank:
                raise RankMismatch(f"expected {rank} slots, got {len(monos)}")
            if n < 0:
                raise ValueError("negative power of w")
            if w_cap is not None and n > w_cap:
                continue
            if w_cap is None and n:
                raise ValueError("w-dependent data needs a w_cap")
            if any(mo.a > degree_cap or mo.b > degree_cap for mo in monos):
                continue
            if not isinstance(c, QScalar):
                c = QScalar(c)
            _acc(clean, (n, monos), c)
        self.data = clean

    def _like(self, data, w_cap="same", degree_cap=None, rank=None):
        out = object.__new__(TensorElement)
        out.rank = self.rank if rank is None else rank
        out.degree_cap = self.degree_cap if degree_cap is None else degree_cap
        out.w_cap = self.w_cap if w_cap == "same" else w_cap
        out.data = data
        return out

    # -- constructors -----------------------------------------------------
    @classmethod
    def one(cls, rank, degree_cap, w_cap=None):
        return cls(rank, degree_cap, {(0, (UNIT,) * rank): ONE}, w_cap)

    @classmethod
    def monomial(cls, monos, coeff=ONE, degree_cap=6, w_power=0, w_cap=None):
        monos = tuple(PBWMonomial(*mo) for mo in monos)
        return cls(len(monos), degree_cap, {(w_power, monos): coeff}, w_cap)

    @classmethod
    def generator(cls, name, rank=1, slot=0, degree_cap=6):
        """``e``, ``f``, ``t`` or ``tinv`` placed in ``slot`` (0-based)."""
        gens = {"e": E, "f": F, "t": T(1), "tinv": T(-1)}
        if name not in gens:
            raise ValueError(f"unknown generator {name!r}")
        if not 0 <= slot < rank:
            raise SlotOutOfRange(slot)
        monos = [UNIT] * rank
        monos[slot] = gens[name]
        return cls.monomial(monos, degree_cap=degree_cap)

    def one_like(self):
        return TensorElement.one(self.rank, self.degree_cap, self.w_cap)

    # -- inspection -------------------------------------------------------
    def __bool__(self):
        return bool(self.data)

    def __len__(self):
        return len(self.data)

    def items(self):
        return sorted(self.data.items(), key=lambda kv: (kv[0][0], kv[0][1]))

    @property
    def terms(self):
        """Map from monomial tuples to their w-series coefficients."""
        grouped = {}
        for (n, monos), c in self.data.items():
            grouped.setdefault(monos, {})[(n,)] = c
        cap = (self.w_cap or 0,)
        return {m: TruncSeries(("w",), cap, cs) for m, cs in sorted(grouped.items())}

    def coefficient(self, monos, n=0):
        return self.data.get((n, tuple(PBWMonomial(*mo) for mo in monos)), ZERO)

    def w_part(self, n):
        """The coefficient of ``w^n`` as a w-free element."""
        data = {(0, monos): c for (k, monos), c in self.data.items() if k == n}
        return self._like(data, w_cap=None)

    def valuation(self):
        """Smallest power of ``w`` carrying a nonzero term."""
        if not self.data:
            return None
        return min(n for n, _ in self.data)

    @property
    def degree_bound(self):
        return self.w_cap or 0

    def max_degree(self):
        """Largest e- or f-power appearing in any slot."""
        return max((max(mo.a, mo.b) for _, monos in self.data for mo in monos), default=0)

    # -- arithmetic -------------------------------------------------------
    def _check(self, other):
        if self.rank != other.rank:
            raise RankMismatch(f"rank {self.rank} vs {other.rank}")
        caps = [c for c in (self.w_cap, other.w_cap) if c is not None]
        return min(self.degree_cap, other.degree_cap), (min(caps) if caps else None)

    def _coerce(self, other):
        if isinstance(other, TensorElement):
            return other
        if isinstance(other, (int, QScalar)):
            return TensorElement(self.rank, self.degree_cap, {(0, (UNIT,) * self.rank): QScalar(other)}, None)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        D, N = self._check(o)
        out = {}
        for src in (self.data, o.data):
            for (n, monos), c in src.items():
                if N is not None and n > N:
                    continue
                if any(mo.a > D or mo.b > D for mo in monos):
                    continue
                _acc(out, (n, monos), c)
        return self._like(out, w_cap=N, degree_cap=D)

    __radd__ = __add__

    def __neg__(self):
        return self._like({k: -c for k, c in self.data.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, TensorElement):
            return normal_form_product(self, other)
        if isinstance(other, (int, QScalar)):
            s = QScalar(other)
            if not s:
                return self._like({})
            return self._like({k: c * s for k, c in self.data.items()})
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, QScalar)):
            return self * other
        return NotImplemented

    def __pow__(self, n):
        out = self.one_like()
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return not (self - o)

    __hash__ = None

    def times_w(self, k=1, w_cap=None):
        """Multiply by ``w^k``; a w-free element needs ``w_cap`` to become graded."""
        cap = self.w_cap if w_cap is None else w_cap
        if cap is None:
            raise ValueError("w_cap required")
        data = {(n + k, monos): c for (n, monos), c in self.data.items() if n + k <= cap}
        return self._like(data, w_cap=cap)

    def with_w_cap(self, w_cap):
        data = {k: c for k, c in self.data.items() if k[0] <= w_cap}
        return self._like(data, w_cap=w_cap)

    def project_degree(self, D):
        """Drop terms whose e- or f-power exceeds ``D`` in some slot."""
        data = {k: c for k, c in self.data.items() if all(mo.a <= D and mo.b <= D for mo in k[1])}
        return self._like(data, degree_cap=min(D, self.degree_cap))

    def inverse(self, max_iter=None):
        """Inverse of ``1 + x`` with ``x`` nilpotent under the truncation."""
        one = self.one_like()
        x = self - one
        c0 = self.coefficient((UNIT,) * self.rank)
        if not c0.is_one():
            raise NonUnitConstantTerm("unit part must be 1")
        limit = max_iter or 4 * ((self.w_cap or 0) + self.degree_cap + 2)
        total = one
        term = one
        for _ in range(limit):
            term = -(x * term)
            if not term:
                return total
            total = total + term
        raise NonConvergent("inverse series did not terminate under the truncation")

    def invert_unit(self):
        return self.inverse()

    # -- slot surgery -----------------------------------------------------
    def permute(self, order):
        """New element whose slot ``i`` is old slot ``order[i]``."""
        if sorted(order) != list(range(self.rank)):
            raise ValueError("order must be a permutation")
        data = {(n, tuple(monos[j] for j in order)): c for (n, monos), c in self.data.items()}
        return self._like(data)

    def flip(self):
        return self.permute(list(range(self.rank))[::-1])

    def embed(self, slots, rank):
        """Place this element into ``slots`` of a rank-``rank`` tensor power."""
        if len(slots) != self.rank or any(not 0 <= s < rank for s in slots):
            raise SlotOutOfRange(slots)
        data = {}
        for (n, monos), c in self.data.items():
            full = [UNIT] * rank
            for s, mo in zip(slots, monos):
                full[s] = mo
            data[(n, tuple(full))] = c
        return self._like(data, rank=rank)

    def render(self):
        """Deterministic text: terms sorted by w power then monomials."""
        if not self.data:
            return "0"
        lines = []
        for (n, monos), c in self.items():
            w = "" if n == 0 else (" w" if n == 1 else f" w^{n}")
            lines.append(f"({c}){w} " + " (x) ".join(str(mo) for mo in monos))
        return "\n".join(lines)

    def __str__(self):
        return self.render().replace("\n", " + ")

    def __repr__(self):
        return f"TensorElement(rank={self.rank}, D={self.degree_cap}, N={self.w_cap}, terms={len(self.data)})"


def normal_form_product(x, y):
    """Product ``x*y`` in PBW normal form, slot by slot."""
    if not isinstance(x, TensorElement) or not isinstance(y, TensorElement):
        raise TypeError("TensorElement operands required")
    D, N = x._check(y)
    out = {}
    for (n1, m1), c1 in x.data.items():
        for (n2, m2), c2 in y.data.items():
            n = n1 + n2
            if N is not None and n > N:
                continue
            slot_terms = [mono_mul(a, b, D) for a, b in zip(m1, m2)]
            if any(not st for st in slot_terms):
                continue
            c12 = c1 * c2
            for combo in cartesian(*slot_terms):
                coeff = c12
                for _, c in combo:
                    if not c.is_one():
                        coeff = coeff * c
                _acc(out, (n, tuple(mo for mo, _ in combo)), coeff)
    return x._like(out, w_cap=N, degree_cap=D)


# -- Hopf structure -------------------------------------------------------

@lru_cache(maxsize=None)
def _delta_mono(mono, D):
    a, m, b = mono
    d_e = TensorElement(2, D, {(0, (E, UNIT)): ONE, (0, (T(1), E)): ONE})
    d_f = TensorElement(2, D, {(0, (F, T(-1))): ONE, (0, (UNIT, F)): ONE})
    d_t = TensorElement(2, D, {(0, (T(m), T(m))): ONE})
    out = d_f ** a * d_t * d_e ** b
    return tuple(out.data.items())


def coproduct(x, slot=0):
    """Apply the coproduct to ``slot`` (0-based); the rank grows by one."""
    if not 0 <= slot < x.rank:
        raise SlotOutOfRange(f"slot {slot} for rank {x.rank}")
    D = x.degree_cap
    out = {}
    for (n, monos), c in x.data.items():
        for (_, (l, r)), dc in _delta_mono(monos[slot], D):
            new = monos[:slot] + (l, r) + monos[slot + 1:]
            _acc(out, (n, new), c * dc)
    return x._like(out, rank=x.rank + 1)


def counit(x, slot=0):
    """Apply the counit to ``slot``; the rank drops by one."""
    if not 0 <= slot < x.rank:
        raise SlotOutOfRange(f"slot {slot} for rank {x.rank}")
    out = {}
    for (n, monos), c in x.data.items():
        mo = monos[slot]
        if mo.a or mo.b:
            continue
        _acc(out, (n, monos[:slot] + monos[slot + 1:]), c)
    return x._like(out, rank=x.rank - 1)


def q_exp(x, base_power, D):
    """``exp_{q^base_power}(x) = sum x^n / (n)!`` truncated at ``n <= D``."""
    total = x.one_like()
    power = x.one_like()
    for n in range(1, D + 1):
        power = power * x
        if not power:
            break
        total = total + power * q_factorial(n, base_power).inverse()
    return total


def r_nilpotent(D, sign=1):
    """``exp_{q^2}(-(q - q^-1) e t^-1 (x) t f)`` truncated at degree ``D``.

    ``sign=-1`` gives the inverse ``exp_{q^-2}((q - q^-1) e t^-1 (x) t f)``.
    The Cartan factor ``q^-T`` is not included.
    """
    qdiff = _qq(1) - _qq(-1)
    arg = TensorElement(2, D, {(0, (PBWMonomial(0, -1, 1), PBWMonomial(1, 1, 0))): qdiff})
    if sign == 1:
        return q_exp(-arg, 2, D)
    return q_exp(arg, -2, D)


# -- automorphisms and shifts -------------------------------------------

def apply_phi_power(x, slot, k, w_cap=None):
    """Apply ``e -> (q^2 w)^k e t^{2k}``, ``f -> (q^2 w)^-k t^{-2k} f`` to ``slot``."""
    if not 0 <= slot < x.rank:
        raise SlotOutOfRange(slot)
    if k == 0:
        return x
    cap = x.w_cap if w_cap is None else w_cap
    if cap is None:
        raise ValueError("w_cap required for a nonzero power")
    D = x.degree_cap
    out = {}
    for (n, monos), c in x.data.items():
        a, m, b = monos[slot]
        shift = k * (b - a)
        if n + shift < 0:
            raise ValueError("negative power of w produced")
        if n + shift > cap:
            continue
        img = _phi_mono(a, m, b, k, D)
        scale = c * _qq(2 * shift)
        for mo, cc in img:
            new = monos[:slot] + (mo,) + monos[slot + 1:]
            _acc(out, (n + shift, new), scale * cc)
    return x._like(out, w_cap=cap)


@lru_cache(maxsize=None)
def _phi_mono(a, m, b, k, D):
    # (t^{-2k} f)^a t^m (e t^{2k})^b, normal-ordered
    terms = {UNIT: ONE}
    factors = [PBWMonomial(0, -2 * k, 0), F] * a + [T(m)] + [E, T(2 * k)] * b
    for g in factors:
        new = {}
        for mo, c in terms.items():
            for r, cr in mono_mul(mo, g, D):
                _acc(new, r, c * cr)
        terms = new
    return tuple(sorted(terms.items()))


def dynamical_shift(x, slot):
    """``w -> w t^2`` in ``slot``: the coefficient of ``w^n`` gains ``t^{2n}`` on the left."""
    if not 0 <= slot < x.rank:
        raise SlotOutOfRange(f"slot {slot} for rank {x.rank}")
    out = {}
    for (n, monos), c in x.data.items():
        if n == 0:
            _acc(out, (n, monos), c)
            continue
        a, m, b = monos[slot]
        # t^s f^a = q^{-2sa} f^a t^s
        cc = c * _qq(-4 * n * a) if a else c
        new = monos[:slot] + (PBWMonomial(a, m + 2 * n, b),) + monos[slot + 1:]
        _acc(out, (n, new), cc)
    return x._like(out)


# -- two-dimensional representation ---------------------------------------

def _rep_mono(mo):
    a, m, b = mo
    if a > 1 or b > 1:
        return None
    M = np.array([[ONE, ZERO], [ZERO, ONE]], dtype=object)
    if a:
        M = np.array([[ZERO, ZERO], [ONE, ZERO]], dtype=object)
    if m:
        M = M @ np.array([[_qq(m), ZERO], [ZERO, _qq(-m)]], dtype=object)
    if b:
        M = M @ np.array([[ZERO, ONE], [ZERO, ZERO]], dtype=object)
    return M


def rep2(x):
    """Image under ``e -> E12, f -> E21, t -> diag(q, 1/q)`` in every slot.

    Returns a ``2^rank`` square object array.  Entries are QScalar for a
    w-free element and TruncSeries in ``w`` otherwise.  Basis order is
    lexicographic with the last tensor index fastest.
    """
    dim = 2 ** x.rank
    graded = x.w_cap is not None
    zero = TruncSeries(("w",), (x.w_cap,)) if graded else ZERO
    out = np.empty((dim, dim), dtype=object)
    out.fill(zero)
    for (n, monos), c in x.data.items():
        mats = [_rep_mono(mo) for mo in monos]
        if any(M is None for M in mats):
            continue
        K = np.array([[c]], dtype=object)
        for M in mats:
            K = np.kron(K, M)
        for i in range(dim):
            for j in range(dim):
                v = K[i, j]
                if not v:
                    continue
                if graded:
                    v = TruncSeries(("w",), (x.w_cap,), {(n,): v})
                out[i, j] = out[i, j] + v
    return out


def rep2_q_minus_T(rank=2):
    """Image of ``q^{-T}``, ``T = h (x) h / 2``, adjoined as an explicit diagonal matrix."""
    if rank != 2:
        raise ValueError("only the two-fold tensor power is supported")
    return np.diag(np.array([QScalar.v(-1), QScalar.v(1), QScalar.v(1), QScalar.v(-1)], dtype=object))


def obj_matmul(A, B):
    """Matrix product for object arrays without assuming a zero of int type."""
    n, k = A.shape
    k2, m = B.shape
    if k != k2:
        raise ValueError("shape mismatch")
    out = np.empty((n, m), dtype=object)
    for i in range(n):
        for j in range(m):
            acc = None
            for l in range(k):
                a, b = A[i, l], B[l, j]
                if not a or not b:
                    continue
                p = a * b
                acc = p if acc is None else acc + p
            out[i, j] = acc if acc is not None else A[i, 0] * 0
    return out
