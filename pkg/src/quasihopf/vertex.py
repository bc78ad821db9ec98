"""Vertex-type twistor for the affine algebra in the principal picture.

The twistor image ``E(zeta; p)`` is an ordered product of inverted factor
matrices; even factors act on the middle block ``(v1 v2, v2 v1)`` and odd
factors on the corner block ``(v1 v1, v2 v2)``.  The eight-vertex R matrix
is given by product formulas and checked against the twisted trigonometric
R, the Yang-Baxter equation and the L-relation.

``sign`` selects the branch of ``p^(1/2)``: ``+1`` is the positive root.
"""

import numpy as np

from .affineface import PERM, b_trig, c_trig, embed3, phi_vv, rho_elliptic, rho_trig
from .errors import InvalidParams, NonConvergent, PoleAtPoint
from .qnumeric import qpoch
from .report import CheckReport

__all__ = [
    "SIGMA_X",
    "vertex_factor",
    "e_vv_product",
    "e_vv_closed",
    "r_eight_vertex",
    "check_e_vv",
    "check_ybe_vertex",
    "check_l_relation_vertex",
    "check_vertex_gauge",
]

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)


def _corner_block(a, d, b, c, scale=1.0):
    M = np.zeros((4, 4), complex)
    M[0, 0] = M[3, 3] = a
    M[0, 3] = M[3, 0] = d
    M[1, 1] = M[2, 2] = b
    M[1, 2] = M[2, 1] = c
    return scale * M


def _root(p, sign):
    return sign * np.sqrt(complex(p))


def vertex_factor(k, zeta, p, q, sign=1):
    """Image of the ``k``-th factor: ``rho(x) [..b_k, c_k..]`` with ``x = p^k zeta^2``.

    ``b_k = b(x)`` and ``c_k = p^(k/2) zeta c(x)``; even ``k`` fills the middle
    block, odd ``k`` the corners.
    """
    if k < 0:
        raise ValueError("factor index must be nonnegative")
    x = p ** k * zeta * zeta
    bk = b_trig(x, q)
    ck = _root(p, sign) ** k * zeta * c_trig(x, q)
    if k % 2 == 0:
        return _corner_block(1, 0, bk, ck, rho_trig(x, q))
    return _corner_block(bk, ck, 1, 0, rho_trig(x, q))


def e_vv_product(zeta, p, q, K=60, sign=1):
    """``M_K^-1 ... M_1^-1`` and the size of the last pair's contribution."""
    if K % 2:
        raise InvalidParams("K must be even", guard="K even")
    if not abs(p) < 1:
        raise InvalidParams("|p| < 1 violated", guard="|p|<1")
    E = np.eye(4, dtype=complex)
    before_last_pair = E
    for k in range(1, K + 1):
        if k == K - 1:
            before_last_pair = E
        E = np.linalg.inv(vertex_factor(k, zeta, p, q, sign)) @ E
    if not np.all(np.isfinite(E)):
        raise NonConvergent("product overflowed")
    return E, float(np.abs(E - before_last_pair).max())


def e_vv_closed(zeta, p, q, sign=1):
    """Closed form: ``a +- d`` and ``b +- c`` are ratios of Pochhammer products."""
    s = _root(p, sign)

    def ratio(x, e):
        den = qpoch(-e * x / q * zeta, p)
        if abs(den) < 1e-14:
            raise PoleAtPoint("closed form denominator vanishes")
        return qpoch(-e * x * q * zeta, p) / den

    sp, sm = ratio(s, 1), ratio(s, -1)
    tp, tm = ratio(p, 1), ratio(p, -1)
    return _corner_block((sp + sm) / 2, (sp - sm) / 2, (tp + tm) / 2, (tp - tm) / 2, phi_vv(zeta * zeta, p, q))


def eight_vertex_weights(zeta, p, q, sign=1):
    s = _root(p, sign)

    def f(e):
        return (
            qpoch(-e * s / q * zeta, p) / qpoch(-e * s * q * zeta, p)
            * qpoch(-e * s * q / zeta, p) / qpoch(-e * s / q / zeta, p)
        )

    def g(e):
        return (
            q * (1 + e / q * zeta) / (1 + e * q * zeta)
            * qpoch(-e * p / q * zeta, p) / qpoch(-e * p * q * zeta, p)
            * qpoch(-e * p * q / zeta, p) / qpoch(-e * p / q / zeta, p)
        )

    fp, fm, gp, gm = f(1), f(-1), g(1), g(-1)
    return {"a": (fp + fm) / 2, "d": (fp - fm) / 2, "b": (gp + gm) / 2, "c": (gp - gm) / 2}


def r_eight_vertex(zeta, p, q, sign=1, drop_d=False, normalized=False):
    """Eight-vertex R: ``rho(zeta^2; p)`` times the symmetric a, b, c, d pattern.

    ``drop_d=True`` zeroes the corner ``d`` entries (negative control);
    ``normalized=True`` leaves out the scalar prefactor.
    """
    wt = eight_vertex_weights(zeta, p, q, sign)
    d = 0 if drop_d else wt["d"]
    scale = 1.0 if normalized else rho_elliptic(zeta * zeta, p, q)
    return _corner_block(wt["a"], d, wt["b"], wt["c"], scale)


def check_e_vv(zeta, p, q, K=60, sign=1, tol=1e-10):
    E, tail = e_vv_product(zeta, p, q, K, sign)
    res = float(np.abs(E - e_vv_closed(zeta, p, q, sign)).max())
    return CheckReport(
        "vertex.product",
        {"zeta": zeta, "p": p, "q": q, "K": K},
        res,
        tol,
        truncation={"K": K, "last_pair": tail},
        convention={"sqrt_p_sign": "+" if sign == 1 else "-"},
    )


def check_ybe_vertex(z1, z2, z3, p, q, sign=1, tol=1e-10, drop_d=False):
    def R(x):
        return r_eight_vertex(x, p, q, sign, drop_d)

    lhs = embed3(R(z1 / z2), 0, 1) @ embed3(R(z1 / z3), 0, 2) @ embed3(R(z2 / z3), 1, 2)
    rhs = embed3(R(z2 / z3), 1, 2) @ embed3(R(z1 / z3), 0, 2) @ embed3(R(z1 / z2), 0, 1)
    res = float(np.abs(lhs - rhs).max())
    return CheckReport(
        "vertex.ybe",
        {"zeta1": z1, "zeta2": z2, "zeta3": z3, "p": p, "q": q, "drop_d": drop_d},
        res,
        tol,
        convention={"sqrt_p_sign": "+" if sign == 1 else "-"},
    )


def l_relation_sides(zeta, p, q, sign=1, conjugator="sigma_x"):
    """``R(s zeta)`` and ``(h (x) 1) [P R(1/zeta) P]^-1 (h (x) 1)`` with ``s = sign p^(1/2)``."""
    lhs = r_eight_vertex(_root(p, sign) * zeta, p, q, sign)
    lm = np.linalg.inv(PERM @ r_eight_vertex(1 / zeta, p, q, sign) @ PERM)
    h = SIGMA_X if conjugator == "sigma_x" else np.eye(2)
    H = np.kron(h, np.eye(2))
    return lhs, np.linalg.inv(H) @ lm @ H


def check_l_relation_vertex(zeta, p, q, sign=1, tol=1e-8, conjugator="sigma_x"):
    lhs, rhs = l_relation_sides(zeta, p, q, sign, conjugator)
    res = float(np.abs(lhs - rhs).max())
    return CheckReport(
        "vertex.lrel",
        {"zeta": zeta, "p": p, "q": q, "conjugator": conjugator},
        res,
        tol,
        convention={"sqrt_p_sign": "+" if sign == 1 else "-"},
    )


def check_vertex_gauge(zeta, p, q, sign=1, tol=1e-10):
    """``P E(1/zeta) P R~(zeta) E(zeta)^-1`` against the eight-vertex R; ``R~`` is the index-0 factor."""
    G = PERM @ e_vv_closed(1 / zeta, p, q, sign) @ PERM @ vertex_factor(0, zeta, p, q, sign) @ np.linalg.inv(
        e_vv_closed(zeta, p, q, sign)
    )
    res = float(np.abs(G - r_eight_vertex(zeta, p, q, sign)).max())
    return CheckReport(
        "vertex.gauge",
        {"zeta": zeta, "p": p, "q": q},
        res,
        tol,
        convention={"sqrt_p_sign": "+" if sign == 1 else "-"},
    )
