"""Face-type dynamical twistor of U_q(sl2).

The twistor is a rank-2 :class:`TensorElement` graded by ``w``.  It can be
built two ways: as the left-ordered product of q-exponentials twisted by
powers of the automorphism ``phi`` and as a single sum with a Pochhammer
denominator in ``w t^2``.  Both are exact up to the caps ``N`` (order in
``w``) and ``D`` (PBW degree per slot).

Representation-level identities (the face R matrix and its dynamical
Yang-Baxter equation) are checked exactly over the rational function field
Q(v, w) with ``q = v^2``.
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
import sympy
from sympy.polys.matrices import DomainMatrix

from .fps import TruncSeries, ordered_product
from .qscalar import ONE, QScalar, q_factorial
from .report import CheckReport
from .uqsl2 import (
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
    rep2_q_minus_T,
)

__all__ = [
    "FaceTwistor",
    "build_product",
    "build_closed",
    "check_cocycle",
    "check_product_closed",
    "check_counit",
    "build_phi",
    "check_phi",
    "f_sl2_rational",
    "check_rep2",
    "face_r_rep",
    "face_r_series",
    "check_dybe_sl2",
    "check_quasitriangular",
]

V, W = sympy.symbols("v w")
FIELD = sympy.QQ.frac_field(V, W)


def _q(k):
    return QScalar.q(k)


@dataclass(frozen=True)
class FaceTwistor:
    element: TensorElement
    N: int
    D: int

    def rep2(self):
        return rep2(self.element)

    def __eq__(self, other):
        if not isinstance(other, FaceTwistor):
            return NotImplemented
        return self.element == other.element

    __hash__ = None


def build_product(N, D):
    """Twistor as ``... A_2 A_1`` with ``A_k = (phi^k (x) id)(C^-1)``.

    ``C^-1 = exp_{q^-2}((q - q^-1) e t^-1 (x) t f)``; ``phi^k`` sends ``e t^-1``
    to ``(q^2 w)^k e t^{2k-1}``.
    """
    c_inv = r_nilpotent(D, sign=-1).with_w_cap(N)
    if N == 0:
        return FaceTwistor(c_inv.one_like(), N, D)
    elem = ordered_product(lambda k: apply_phi_power(c_inv, 0, k, w_cap=N), degree_bound=N)
    return FaceTwistor(elem, N, D)


@lru_cache(maxsize=None)
def _et_tf_power(n, D):
    def g(name, slot):
        return TensorElement.generator(name, rank=2, slot=slot, degree_cap=D)

    et = g("e", 0) * g("t", 0)
    tf = g("t", 1) * g("f", 1)
    return (et ** n) * (tf ** n)


def build_closed(N, D):
    """Twistor as ``sum_n (q^2 w)^n (q - q^-1)^n / [(n)! (q^-2 w t^2 (x) 1; q^-2)_n] (et)^n (x) (tf)^n``.

    The factorial is in base ``q^-2``; the Pochhammer sits on the left and is
    expanded as a product of geometric series in ``w t^2``.
    """
    qdiff = _q(1) - _q(-1)
    total = TensorElement.one(2, D, N)
    for n in range(1, min(N, D) + 1):
        coeff = _q(2 * n) * qdiff ** n * q_factorial(n, -2).inverse()
        body = (_et_tf_power(n, D) * coeff).times_w(n, w_cap=N)
        denom = TensorElement.one(2, D, N)
        for k in range(n):
            # 1/(1 - q^{-2-2k} w t^2) = sum_j q^{(-2-2k)j} w^j t^{2j}
            geo = TensorElement(
                2, D,
                {(j, (PBWMonomial(0, 2 * j, 0), UNIT)): _q((-2 - 2 * k) * j) for j in range(N - n + 1)},
                w_cap=N,
            )
            denom = denom * geo
        total = total + denom * body
    return FaceTwistor(total, N, D)


def _corrupt(elem):
    items = [kv for kv in elem.items() if kv[0][0] > 0]
    if not items:
        return elem
    (key, _), = items[:1]
    data = dict(elem.data)
    del data[key]
    return elem._like(data)


def cocycle_sides(N, D, twistor=None):
    """Both sides of the shifted cocycle identity as rank-3 elements.

    Computed at degree cap ``max(N, D)`` so no product ever drops a term of
    w-order at most ``N``, then projected to degree ``D``.
    """
    cap = max(N, D)
    Fe = twistor if twistor is not None else build_closed(N, cap).element
    F12 = Fe.embed((0, 1), 3)
    F23 = Fe.embed((1, 2), 3)
    lhs = F12 * coproduct(Fe, 0)
    rhs = dynamical_shift(F23, 0) * coproduct(Fe, 1)
    return lhs.project_degree(D), rhs.project_degree(D)


def check_cocycle(N=2, D=2, corrupt=False):
    """Exact check of ``F12 (Delta (x) id)F = F23(lambda + h1) (id (x) Delta)F``."""
    cap = max(N, D)
    Fe = build_closed(N, cap).element
    if corrupt:
        Fe = _corrupt(Fe)
    lhs, rhs = cocycle_sides(N, D, Fe)
    diff = lhs - rhs
    return CheckReport(
        "face.cocycle",
        {"N": N, "D": D, "corrupt": corrupt},
        float(len(diff)),
        0.0,
        truncation={"w_order": N, "pbw_degree": D, "internal_degree": cap},
        details={"lhs_terms": len(lhs), "rhs_terms": len(rhs)},
    )


def check_product_closed(N=6, D=6):
    a = build_product(N, D).element
    b = build_closed(N, D).element
    diff = a - b
    return CheckReport(
        "face.product_closed",
        {"N": N, "D": D},
        float(len(diff)),
        0.0,
        truncation={"w_order": N, "pbw_degree": D},
        details={"terms": len(a)},
    )


def check_counit(N=4, D=4):
    Fe = build_closed(N, D).element
    one = TensorElement.one(1, D, N)
    bad = len(counit(Fe, 0) - one) + len(counit(Fe, 1) - one)
    return CheckReport("face.counit", {"N": N, "D": D}, float(bad), 0.0, truncation={"w_order": N, "pbw_degree": D})


def build_phi(N, D):
    """``F23(lambda) F23(lambda + h1)^-1`` as a rank-3 element."""
    cap = max(N, D)
    F23 = build_closed(N, cap).element.embed((1, 2), 3)
    return (F23 * dynamical_shift(F23, 0).inverse()).project_degree(D)


def check_phi(N=2, D=2):
    """The three structural properties of ``Phi``: unit w^0 part, counit in slots 2 and 3, and
    agreement with the cocycle-based expression."""
    cap = max(N, D)
    phi = build_phi(N, cap)
    one2 = TensorElement.one(2, cap, N)
    bad_w0 = len(phi.w_part(0) - TensorElement.one(3, cap))
    bad_eps = len(counit(phi, 1) - one2) + len(counit(phi, 2) - one2)
    Fe = build_closed(N, cap).element
    F12 = Fe.embed((0, 1), 3)
    F23 = Fe.embed((1, 2), 3)
    other = F23 * coproduct(Fe, 1) * (F12 * coproduct(Fe, 0)).inverse()
    bad_cons = len((other - phi).project_degree(D))
    total = bad_w0 + bad_eps + bad_cons
    return CheckReport(
        "face.phi",
        {"N": N, "D": D},
        float(total),
        0.0,
        truncation={"w_order": N, "pbw_degree": D, "internal_degree": cap},
        details={"w0": bad_w0, "counit": bad_eps, "consistency": bad_cons},
    )


# -- representation level ---------------------------------------------------

def qscalar_to_sympy(x):
    """QScalar as a sympy expression in ``v`` (``q = v^2``)."""
    num = sum(int(c) * V ** i for i, c in enumerate(x.num.coeffs()))
    den = sum(int(c) * V ** i for i, c in enumerate(x.den.coeffs()))
    return V ** x.shift * num / den


def _t_eigen(index):
    # t acts on v1 by q, on v2 by 1/q
    return V ** 2 if index == 0 else V ** -2


def f_sl2_rational():
    """Two-dimensional image of the twistor with every geometric series summed.

    Each closed-form term is imaged exactly; the Pochhammer in ``w t^2``
    becomes a scalar on each row because ``t`` is diagonal.
    """
    M = sympy.eye(4)
    # (e t)^n has zero image for n >= 2; n = 2 is kept so that this is observed, not assumed
    for n in range(1, 3):
        body = rep2(_et_tf_power(n, n))
        coeff = qscalar_to_sympy(_q(2 * n) * (_q(1) - _q(-1)) ** n * q_factorial(n, -2).inverse())
        for i in range(4):
            lam = _t_eigen(i // 2) ** 2
            poch = sympy.Integer(1)
            for k in range(n):
                poch *= 1 - V ** (-4 - 4 * k) * W * lam
            for j in range(4):
                if body[i, j]:
                    M[i, j] += coeff * W ** n * qscalar_to_sympy(body[i, j]) / poch
    return M.applyfunc(sympy.cancel)


def _series_to_poly(s):
    return sum(qscalar_to_sympy(c) * W ** int(e[0]) for e, c in s.coeffs.items())


def _agrees_to_order(expr, poly, N):
    """True if ``expr - poly`` vanishes to order ``w^(N+1)``."""
    num, den = sympy.fraction(sympy.cancel(sympy.together(expr - poly)))
    if num == 0:
        return True
    if sympy.Poly(den, W).eval(0) == 0:
        return False
    pw = sympy.Poly(num, W)
    low = min(m[0] for m in pw.monoms())
    return low >= N + 1


def check_rep2(N=4, D=4):
    """rep2 of the twistor against the summed closed form and against the reference matrix."""
    series = rep2(build_product(N, D).element)
    rational = f_sl2_rational()
    bad = 0
    for i in range(4):
        for j in range(4):
            if not _agrees_to_order(rational[i, j], _series_to_poly(series[i, j]), N):
                bad += 1
    reference = sympy.eye(4)
    reference[1, 2] = (V ** 2 - V ** -2) * W / (1 - W)
    bad_ref = sum(1 for i in range(4) for j in range(4) if sympy.cancel(rational[i, j] - reference[i, j]) != 0)
    return CheckReport(
        "face.rep2",
        {"N": N, "D": D},
        float(bad + bad_ref),
        0.0,
        truncation={"w_order": N, "pbw_degree": D},
        details={"series_vs_rational": bad, "rational_vs_reference": bad_ref},
    )


_P4 = sympy.zeros(4, 4)
for _i in range(2):
    for _j in range(2):
        _P4[2 * _i + _j, 2 * _j + _i] = 1


def _r22_sym(D=2):
    R = obj_matmul(rep2_q_minus_T(), rep2(r_nilpotent(D)))
    return sympy.Matrix(4, 4, lambda i, j: qscalar_to_sympy(R[i, j]) if R[i, j] else 0)


def face_r_rep(D=2):
    """Face R matrix ``P F P R F^-1`` over Q(v, w), ``q = v^2``."""
    Fm = f_sl2_rational()
    R = _P4 * Fm * _P4 * _r22_sym(D) * Fm.inv()
    return R.applyfunc(sympy.cancel)


def face_r_series(N=4, D=4):
    """Same matrix with ``F`` as a truncated w-series (object array of TruncSeries)."""
    Fs = rep2(build_product(N, D).element)
    X = Fs.copy()
    for i in range(4):
        X[i, i] = X[i, i] - 1
    Finv = np.empty((4, 4), dtype=object)
    for i in range(4):
        for j in range(4):
            Finv[i, j] = TruncSeries(("w",), (N,), {(0,): ONE} if i == j else {})
    term = Finv.copy()
    for _ in range(N):
        term = -obj_matmul(X, term)
        Finv = Finv + term
    P = np.zeros((4, 4), dtype=object)
    for i in range(4):
        for j in range(4):
            P[i, j] = TruncSeries(("w",), (N,), {(0,): ONE} if _P4[i, j] else {})
    Rc = obj_matmul(rep2_q_minus_T(), rep2(r_nilpotent(D)))
    Rs = np.empty((4, 4), dtype=object)
    for i in range(4):
        for j in range(4):
            Rs[i, j] = TruncSeries(("w",), (N,), {(0,): Rc[i, j]} if Rc[i, j] else {})
    return obj_matmul(obj_matmul(obj_matmul(obj_matmul(P, Fs), P), Rs), Finv)


def _to_dm(M):
    return DomainMatrix([[FIELD.from_sympy(sympy.cancel(M[i, j])) for j in range(M.cols)] for i in range(M.rows)], M.shape, FIELD)


def _embed3(Rw, i, j, shift_slot=None, exponent=2):
    """8x8 embedding of a w-dependent 4x4 matrix into slots (i, j).

    With ``shift_slot`` set, ``w`` becomes ``w q^(exponent * weight)`` where the
    weight of that slot's basis vector is +1 or -1.
    """
    k = 3 - i - j
    mats = {}
    for wt in (1, -1):
        if shift_slot is None:
            mats[wt] = Rw
        else:
            mats[wt] = Rw.subs(W, W * V ** (2 * exponent * wt))
    out = sympy.zeros(8, 8)
    for a in range(8):
        ia = [(a >> 2) & 1, (a >> 1) & 1, a & 1]
        for b in range(8):
            ib = [(b >> 2) & 1, (b >> 1) & 1, b & 1]
            if ia[k] != ib[k]:
                continue
            if shift_slot is None:
                M = mats[1]
            else:
                M = mats[1 if ia[shift_slot] == 0 else -1]
            out[a, b] = M[2 * ia[i] + ia[j], 2 * ib[i] + ib[j]]
    return _to_dm(out)


def dybe_residual(R, exponent=2):
    """Nonzero entry count of ``R12(+h3) R13 R23(+h1) - R23 R13(+h2) R12``."""
    lhs = _embed3(R, 0, 1, 2, exponent) * _embed3(R, 0, 2) * _embed3(R, 1, 2, 0, exponent)
    rhs = _embed3(R, 1, 2) * _embed3(R, 0, 2, 1, exponent) * _embed3(R, 0, 1)
    diff = (lhs - rhs).to_Matrix()
    return sum(1 for x in diff if x != 0)


def check_dybe_sl2(exponent=2):
    """Exact dynamical YBE for the face R matrix plus the plain YBE of its ``w = 0`` value.

    ``exponent=4`` is the negative control.
    """
    R = face_r_rep()
    bad = dybe_residual(R, exponent)
    R0 = R.subs(W, 0)
    bad0 = dybe_residual(R0, exponent)
    return CheckReport(
        "face.dybe_sl2",
        {"shift_exponent": exponent},
        float(bad + bad0),
        0.0,
        details={"dynamical": bad, "w0_limit": bad0},
    )


def check_quasitriangular(D=2):
    """``R22 rep2(Delta x) = rep2(Delta' x) R22`` for x in {e, f, t}."""
    R = _r22_sym(D)
    bad = 0
    for name in ("e", "f", "t", "tinv"):
        x = TensorElement.generator(name, degree_cap=D)
        d = coproduct(x, 0)
        A = _obj_to_sym(rep2(d))
        B = _obj_to_sym(rep2(d.flip()))
        diff = (R * A - B * R).applyfunc(sympy.cancel)
        bad += sum(1 for v in diff if v != 0)
    return CheckReport("uqsl2.quasitriangular", {"D": D}, float(bad), 0.0)


def _obj_to_sym(M):
    return sympy.Matrix(M.shape[0], M.shape[1], lambda i, j: qscalar_to_sympy(M[i, j]) if M[i, j] else 0)
