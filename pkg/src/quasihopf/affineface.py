"""Affine face-type objects in the two-dimensional evaluation representation.

Every matrix is a 4x4 complex numpy array in the basis
``(v1 v1, v1 v2, v2 v1, v2 v2)``.  The trigonometric R matrix, the twistor
``F_VV(z; p, w)`` (closed form and difference-equation solver) and the
elliptic face weights are evaluated directly from their product and series
formulas; the identity checks compare them.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, InvalidParams, NonConvergent, PoleAtPoint
from .qnumeric import multipoch, phi21, qpoch, theta
from .report import CheckReport

__all__ = [
    "FaceParams",
    "PERM",
    "K_matrix",
    "D_matrix",
    "rho_trig",
    "b_trig",
    "c_trig",
    "r_trig",
    "phi_vv",
    "f_sl2",
    "f_vv_closed",
    "f_vv_by_difference",
    "rho_elliptic",
    "elliptic_weights",
    "r_elliptic",
    "embed3",
    "check_f_vv",
    "check_difference_equation",
    "check_gauge",
    "check_dybe_elliptic",
    "check_lplm",
    "check_weight_symmetry",
    "check_p0_limit",
    "check_ybe_trig",
]

GUARD = 1e-6

PERM = np.zeros((4, 4))
for _i in range(2):
    for _j in range(2):
        PERM[2 * _i + _j, 2 * _j + _i] = 1.0


def _sqrt(q):
    return np.sqrt(complex(q))


def K_matrix(q):
    s = _sqrt(q)
    return np.diag([s, 1 / s, 1 / s, s])


def D_matrix(w):
    """``diag(1, w)`` on the first factor."""
    return np.diag([1, 1, w, w]).astype(complex)


@dataclass(frozen=True)
class FaceParams:
    q: complex
    p: complex = 0.0
    w: complex = 0.5
    z: complex = 0.5

    def validate(self):
        q, p, w, z = (complex(x) for x in (self.q, self.p, self.w, self.z))
        if not abs(q) < 1:
            raise InvalidParams("|q| < 1 violated", guard="|q|<1")
        if not abs(p) < 1:
            raise InvalidParams("|p| < 1 violated", guard="|p|<1")
        if abs(1 - q * q * z) < GUARD:
            raise InvalidParams("z too close to 1/q^2", guard="1-q^2 z")
        if p != 0 and abs(theta(q * q * z, p)) < GUARD:
            raise InvalidParams("z on the zero set of Theta_p(q^2 z)", guard="Theta_p(q^2 z)")
        if abs(qpoch(w, p)) < GUARD:
            raise InvalidParams("w on the zero set of (w; p)_inf", guard="(w;p)_inf")
        if w == 0 or (p != 0 and abs(qpoch(p / w, p)) < GUARD):
            raise InvalidParams("w on the zero set of (p/w; p)_inf", guard="(p/w;p)_inf")
        return self


# -- trigonometric ---------------------------------------------------------

def rho_trig(z, q):
    """``q^-1/2 (q^2 z; q^4)^2 / ((z; q^4)(q^4 z; q^4))``."""
    q4 = q ** 4
    den = qpoch(z, q4) * qpoch(q4 * z, q4)
    if abs(den) < 1e-300 or _near_zero_poch(z, q4):
        raise PoleAtPoint(f"rho(z) has a pole at z={z}")
    return qpoch(q * q * z, q4) ** 2 / den / _sqrt(q)


def _near_zero_poch(x, base, terms=200):
    x = complex(x)
    for _ in range(terms):
        if abs(1 - x) < 1e-14:
            return True
        x *= base
        if abs(x) < 1e-3:
            break
    return False


def b_trig(z, q):
    den = 1 - q * q * z
    if abs(den) < 1e-14:
        raise PoleAtPoint("b(z) pole at z = q^-2")
    return (1 - z) * q / den


def c_trig(z, q):
    den = 1 - q * q * z
    if abs(den) < 1e-14:
        raise PoleAtPoint("c(z) pole at z = q^-2")
    return (1 - q * q) / den


def r_trig(z, q, normalized=False):
    """Trigonometric R; ``normalized=True`` omits the scalar ``rho(z)``."""
    b, c = b_trig(z, q), c_trig(z, q)
    M = np.zeros((4, 4), complex)
    M[0, 0] = M[3, 3] = 1
    M[1, 1] = M[2, 2] = b
    M[1, 2] = c
    M[2, 1] = z * c
    return M if normalized else rho_trig(z, q) * M


# -- twistor F_VV ----------------------------------------------------------

def phi_vv(z, p, q):
    q4 = q ** 4
    return (
        multipoch(p * z, [q4, p]) * multipoch(p * q4 * z, [q4, p])
        / multipoch(p * q * q * z, [q4, p]) ** 2
    )


def f_sl2(w, q):
    """Two-dimensional image of the finite twistor: identity plus one entry."""
    if abs(1 - w) < GUARD:
        raise PoleAtPoint("w = 1")
    M = np.eye(4, dtype=complex)
    M[1, 2] = (q - 1 / q) * w / (1 - w)
    return M


def f_vv_closed(z, p, w, q):
    """``F_VV(z; p, w)`` from its basic-hypergeometric closed form."""
    x = p * z / q ** 2
    if abs(x) >= 1:
        raise NonConvergent("closed form needs |p z / q^2| < 1")
    if abs(1 - w) < GUARD or abs(1 - p / w) < GUARD:
        raise PoleAtPoint("w or p/w equals 1")
    q2 = q * q
    pw = p / w
    M = np.eye(4, dtype=complex)
    M[1, 1] = phi21(w * q2, q2, w, p, x)
    M[1, 2] = w * (q - 1 / q) / (1 - w) * phi21(w * q2, p * q2, p * w, p, x)
    M[2, 1] = pw * (q - 1 / q) / (1 - pw) * z * phi21(pw * q2, p * q2, p * pw, p, x)
    M[2, 2] = phi21(pw * q2, q2, pw, p, x)
    return phi_vv(z, p, q) * M


@dataclass(frozen=True)
class DifferenceSolution:
    matrix: np.ndarray
    iterations: int
    increment: float


def f_vv_by_difference(z, p, w, q, tol=1e-15, min_iter=8, max_iter=2000):
    """Solve ``F(z) = D^-1 F(pz) (K R(pz))^-1 D`` from ``F(0) = F_sl2(w)``.

    Unrolled ``k`` times the recursion reads
    ``F(z) = (D^-k F(p^k z) D^k) A_k ... A_1`` with
    ``A_j = D^-j (K R(p^j z))^-1 D^j``; ``F(p^k z)`` is replaced by ``F(0)``.
    Each step appends one factor; iteration stops when two successive
    approximations agree to ``tol`` (relative) after at least ``min_iter``
    steps.  Convergence needs ``|p| < |w| < 1``.
    """
    F0 = f_sl2(w, q)
    Km = K_matrix(q)
    d = np.array([1, 1, w, w], dtype=complex)
    prod = np.eye(4, dtype=complex)
    prev = None
    for k in range(1, max_iter + 1):
        dk = d ** k
        A = np.linalg.inv(Km @ r_trig(p ** k * z, q))
        A = (A / dk[:, None]) * dk[None, :]
        prod = A @ prod
        F = ((F0 / dk[:, None]) * dk[None, :]) @ prod
        if prev is not None:
            inc = float(np.abs(F - prev).max())
            if k >= min_iter and inc <= tol * max(1.0, float(np.abs(F).max())):
                return DifferenceSolution(F, k, inc)
        prev = F
    raise NonConvergent(f"difference solver did not settle in {max_iter} steps")


# -- elliptic --------------------------------------------------------------

def rho_elliptic(z, p, q):
    q4 = q ** 4
    q2 = q * q
    num = multipoch(q2 * z, [p, q4]) ** 2 * multipoch(p / z, [p, q4]) * multipoch(p * q4 / z, [p, q4])
    den = multipoch(z, [p, q4]) * multipoch(q4 * z, [p, q4]) * multipoch(p * q2 / z, [p, q4]) ** 2
    if abs(den) < 1e-14 * max(1.0, abs(num)):
        raise PoleAtPoint(f"rho(z; p) has a pole at z={z}")
    return num / den / _sqrt(q)


def elliptic_weights(z, p, w, q):
    """The four nontrivial face weights ``b, bbar, c, cbar``."""
    q2 = q * q
    th_den = theta(q2 * z, p)
    if abs(th_den) < 1e-14:
        raise PoleAtPoint("Theta_p(q^2 z) vanishes")
    pw = p / w
    tz = theta(z, p) / th_den
    b = q * qpoch(pw * q2, p) * qpoch(pw / q2, p) / qpoch(pw, p) ** 2 * tz
    bbar = q * qpoch(w * q2, p) * qpoch(w / q2, p) / qpoch(w, p) ** 2 * tz
    c = theta(q2, p) / theta(w, p) * theta(w * z, p) / th_den
    # Theta_p(p/x) = Theta_p(x) turns Theta_p(p/w), Theta_p(p z/w) into forms that stay right at p = 0
    cbar = z * theta(q2, p) / theta(w, p) * theta(w / z, p) / th_den
    return {"b": b, "bbar": bbar, "c": c, "cbar": cbar}


def r_elliptic(z, p, w, q, normalized=False, prefactor=True):
    """Elliptic face R matrix.

    ``normalized=True`` returns only the weight matrix; ``prefactor=False``
    replaces ``rho(z; p)`` by 1 (used as a negative control).
    """
    wt = elliptic_weights(z, p, w, q)
    M = np.zeros((4, 4), complex)
    M[0, 0] = M[3, 3] = 1
    M[1, 1] = wt["b"]
    M[1, 2] = wt["c"]
    M[2, 1] = wt["cbar"]
    M[2, 2] = wt["bbar"]
    if normalized or not prefactor:
        return M
    return rho_elliptic(z, p, q) * M


# -- embeddings and checks --------------------------------------------------

def embed3(M, i, j, shifted=None):
    """Put a 4x4 matrix on slots ``(i, j)`` of the threefold tensor power.

    ``shifted`` optionally maps a weight ``+1/-1`` to the matrix to use when
    the remaining slot carries that weight (the dynamical shift).
    """
    k = 3 - i - j
    out = np.zeros((8, 8), complex)
    for a in range(8):
        ia = ((a >> 2) & 1, (a >> 1) & 1, a & 1)
        for b in range(8):
            ib = ((b >> 2) & 1, (b >> 1) & 1, b & 1)
            if ia[k] != ib[k]:
                continue
            src = M if shifted is None else shifted[1 if ia[k] == 0 else -1]
            out[a, b] = src[2 * ia[i] + ia[j], 2 * ib[i] + ib[j]]
    return out


def _embed_dyn(fn, i, j, w, q, shift_slot, exponent):
    """Embed ``fn(w)``; with ``shift_slot`` set, ``w -> w q^(exponent * weight)``."""
    if shift_slot is None:
        return embed3(fn(w), i, j)
    mats = {s: fn(w * q ** (exponent * s)) for s in (1, -1)}
    k = 3 - i - j
    if shift_slot != k:
        raise ValueError("the shift must act on the spectator slot")
    return embed3(None, i, j, shifted=mats)


def check_f_vv(z, p, w, q, tol=1e-10):
    sol = f_vv_by_difference(z, p, w, q)
    closed = f_vv_closed(z, p, w, q)
    res = float(np.abs(sol.matrix - closed).max())
    return CheckReport(
        "affine.f_vv",
        {"z": z, "p": p, "w": w, "q": q},
        res,
        tol,
        truncation={"iterations": sol.iterations, "last_increment": sol.increment},
    )


def check_difference_equation(z, p, w, q, tol=1e-11):
    """Substitute the closed form into the recursion at ``z`` and ``p z``."""
    lhs = f_vv_closed(z, p, w, q)
    Dm = D_matrix(w)
    rhs = np.linalg.inv(Dm) @ f_vv_closed(p * z, p, w, q) @ np.linalg.inv(K_matrix(q) @ r_trig(p * z, q)) @ Dm
    res = float(np.abs(lhs - rhs).max())
    return CheckReport("affine.difference", {"z": z, "p": p, "w": w, "q": q}, res, tol)


def gauge_matrix(z, p, w, q, twistor=f_vv_closed):
    """``P F(1/z) P R(z) F(z)^-1``."""
    return PERM @ twistor(1 / z, p, w, q) @ PERM @ r_trig(z, q) @ np.linalg.inv(twistor(z, p, w, q))


def check_gauge(z, p, w, q, tol=1e-8, control=None):
    """Twisted trigonometric R against the elliptic face R.

    ``control="no_prefactor"`` replaces ``rho(z; p)`` by 1 on the elliptic
    side, which must break the identity.
    """
    a = abs(p * z / q ** 2)
    b = abs(p / (q ** 2 * z))
    if a >= 1 or b >= 1:
        raise DomainError(f"z={z} outside the annulus |p/q^2| < |z| < |q^2/p|")
    G = gauge_matrix(z, p, w, q)
    ref = r_elliptic(z, p, w, q, prefactor=control != "no_prefactor")
    res = float(np.abs(G - ref).max())
    return CheckReport("affine.gauge", {"z": z, "p": p, "w": w, "q": q, "control": control}, res, tol)


def dybe_residual(z1, z2, z3, p, w, q, exponent=2):
    def R(x):
        return lambda ww: r_elliptic(x, p, ww, q)

    lhs = (
        _embed_dyn(R(z1 / z2), 0, 1, w, q, 2, exponent)
        @ _embed_dyn(R(z1 / z3), 0, 2, w, q, None, exponent)
        @ _embed_dyn(R(z2 / z3), 1, 2, w, q, 0, exponent)
    )
    rhs = (
        _embed_dyn(R(z2 / z3), 1, 2, w, q, None, exponent)
        @ _embed_dyn(R(z1 / z3), 0, 2, w, q, 1, exponent)
        @ _embed_dyn(R(z1 / z2), 0, 1, w, q, None, exponent)
    )
    return float(np.abs(lhs - rhs).max())


def check_dybe_elliptic(z1, z2, z3, p, w, q, tol=1e-10, exponent=2):
    """Dynamical YBE; ``exponent=0`` removes the shift (negative control)."""
    res = dybe_residual(z1, z2, z3, p, w, q, exponent)
    return CheckReport(
        "affine.dybe",
        {"z1": z1, "z2": z2, "z3": z3, "p": p, "w": w, "q": q, "shift_exponent": exponent},
        res,
        tol,
    )


def lplm_sides(z, p, w, q, conjugator="face"):
    """``R(p z)`` and ``q^{-2T} (X^-1 (x) 1) [P R(1/z) P]^-1 (X (x) 1)`` with ``X = diag(1, 1/w)``."""
    lhs = r_elliptic(p * z, p, w, q)
    lm = np.linalg.inv(PERM @ r_elliptic(1 / z, p, w, q) @ PERM)
    X = np.diag([1, 1 / w]) if conjugator == "face" else np.eye(2)
    X4 = np.kron(X, np.eye(2))
    Kinv = np.linalg.inv(K_matrix(q))
    rhs = Kinv @ Kinv @ np.linalg.inv(X4) @ lm @ X4
    return lhs, rhs


def check_lplm(z, p, w, q, tol=1e-8, conjugator="face"):
    lhs, rhs = lplm_sides(z, p, w, q, conjugator)
    res = float(np.abs(lhs - rhs).max())
    return CheckReport("affine.lplm", {"z": z, "p": p, "w": w, "q": q, "conjugator": conjugator}, res, tol)


def check_weight_symmetry(z, p, w, q, tol=1e-12):
    """``b(w) = bbar(p/w)`` and ``cbar(w) = z c(p/w)``."""
    a = elliptic_weights(z, p, w, q)
    s = elliptic_weights(z, p, p / w, q)
    res = max(abs(a["b"] - s["bbar"]), abs(a["bbar"] - s["b"]), abs(a["cbar"] - z * s["c"]), abs(z * a["c"] - s["cbar"]))
    return CheckReport("affine.symmetry", {"z": z, "p": p, "w": w, "q": q}, float(res), tol)


def p0_limit_residuals(z, w, q, p=1e-16):
    """Deviation of the elliptic data at small ``p`` from its limit.

    ``rho`` and ``b`` tend to the trigonometric ``rho(z)`` and ``b(z)``.  All
    four weights are compared with two oracles: the termwise limit
    (``Theta_p(x) -> 1 - x`` for fixed ``x``, ``Theta_p(p y) -> 1 - 1/y``) and
    the finite twistor gauge ``P F_sl2 P R(z) F_sl2^-1`` of the trigonometric R.
    """
    wt = elliptic_weights(z, p, w, q)
    q2 = q * q
    den = (1 - w) * (1 - q2 * z)
    limit = {
        "b": b_trig(z, q),
        "bbar": q * (1 - w * q2) * (1 - w / q2) / (1 - w) ** 2 * (1 - z) / (1 - q2 * z),
        "c": (1 - q2) * (1 - w * z) / den,
        "cbar": (1 - q2) * (z - w) / den,
    }
    direct = {"rho": abs(rho_elliptic(z, p, q) - rho_trig(z, q))}
    direct.update({k: abs(wt[k] - v) for k, v in limit.items()})
    Fs = f_sl2(w, q)
    G = PERM @ Fs @ PERM @ r_trig(z, q, normalized=True) @ np.linalg.inv(Fs)
    twisted = {
        "bbar": abs(wt["bbar"] - G[2, 2]),
        "c": abs(wt["c"] - G[1, 2]),
        "b": abs(wt["b"] - G[1, 1]),
        "cbar": abs(wt["cbar"] - G[2, 1]),
    }
    literal_bbar = abs(wt["bbar"] - b_trig(z, q))
    return direct, twisted, literal_bbar


def check_p0_limit(z, w, q, p=1e-16, tol=1e-12):
    direct, twisted, literal = p0_limit_residuals(z, w, q, p)
    res = max(max(direct.values()), max(twisted.values()))
    return CheckReport(
        "affine.p0_limit",
        {"z": z, "w": w, "q": q, "p": p},
        float(res),
        tol,
        details={
            "direct": {k: float(v) for k, v in direct.items()},
            "twisted": {k: float(v) for k, v in twisted.items()},
            "bbar_minus_trig_b": float(literal),
        },
    )


def ybe_residual(R, z1, z2, z3):
    lhs = embed3(R(z1 / z2), 0, 1) @ embed3(R(z1 / z3), 0, 2) @ embed3(R(z2 / z3), 1, 2)
    rhs = embed3(R(z2 / z3), 1, 2) @ embed3(R(z1 / z3), 0, 2) @ embed3(R(z1 / z2), 0, 1)
    return float(np.abs(lhs - rhs).max())


def check_ybe_trig(z1, z2, z3, q, tol=1e-12):
    res = ybe_residual(lambda x: r_trig(x, q), z1, z2, z3)
    return CheckReport("affine.ybe_trig", {"z1": z1, "z2": z2, "z3": z3, "q": q}, res, tol)
