"""Named checks with default parameters and seeded sampling domains.

Every sampled check draws its points from ``numpy.random.default_rng(seed)``
in a fixed order and rejects draws that fall near a pole set; the rejection
count is kept in the report so a run can be reproduced exactly.
"""

import math
import time
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import affineface as af
from . import facetwist as ft
from . import qnumeric as qn
from . import vertex as vx
from .errors import DomainError, InvalidParams, NonConvergent, PoleAtPoint, UnknownCheck
from .report import CheckReport

DEFAULT_SEED = 20240607
DEFAULT_POINTS = 20
MAX_DRAWS = 10_000

_REJECT = (PoleAtPoint, DomainError, NonConvergent, InvalidParams, ZeroDivisionError, np.linalg.LinAlgError)


@dataclass(frozen=True)
class CheckSpec:
    name: str
    run: Callable
    defaults: dict
    summary: str


REGISTRY: dict[str, CheckSpec] = {}


def register(name, summary, **defaults):
    def deco(fn):
        REGISTRY[name] = CheckSpec(name, fn, defaults, summary)
        return fn

    return deco


def _polar(rng, rmin, rmax, avoid_real=0.2):
    """Complex point with modulus in [rmin, rmax], argument kept off the real axis."""
    r = rng.uniform(rmin, rmax)
    while True:
        th = rng.uniform(0, 2 * math.pi)
        if abs(math.sin(th)) >= avoid_real:
            return r * complex(math.cos(th), math.sin(th))


def _sample(rng, draw, evaluate, points):
    """Draw until ``points`` evaluations succeed; returns results and rejection count."""
    out = []
    rejected = 0
    for _ in range(MAX_DRAWS):
        if len(out) == points:
            break
        params = draw(rng)
        try:
            out.append((params, evaluate(params)))
        except _REJECT:
            rejected += 1
    else:
        raise NonConvergent("sampling domain rejected too many draws")
    return out, rejected


def _merge(name, results, rejected, tol, seed, params, summary_key="residual", **extra):
    residuals = [float(r) for _, r in results]
    worst = max(residuals, default=0.0)
    worst_at = results[residuals.index(worst)][0] if results else None
    details = {"points": len(results), "rejected_draws": rejected, "worst_point": worst_at, summary_key + "s": residuals}
    details.update(extra)
    return CheckReport(name, params, worst, tol, seed=seed, details=details)


# -- exact algebra -------------------------------------------------------------

@register("face.product_closed", "product form of the sl2 face twistor equals its closed form", N=6, D=6)
def _product_closed(N, D, seed=None):
    return ft.check_product_closed(N, D)


@register("face.cocycle", "shifted cocycle identity for the sl2 face twistor", N=4, D=4, corrupt=False)
def _cocycle(N, D, corrupt, seed=None):
    return ft.check_cocycle(N, D, corrupt)


@register("face.counit", "counit applied to either slot of the twistor gives 1", N=4, D=4)
def _counit(N, D, seed=None):
    return ft.check_counit(N, D)


@register("face.rep2", "two-dimensional image of the twistor as rational functions", N=6, D=6)
def _rep2(N, D, seed=None):
    return ft.check_rep2(N, D)


@register("face.phi", "associator element: unit part, counit and cocycle consistency", N=3, D=3)
def _phi(N, D, seed=None):
    return ft.check_phi(N, D)


@register("face.dybe_sl2", "exact dynamical YBE of the sl2 face R matrix and its w=0 YBE", shift_exponent=2)
def _dybe_sl2(shift_exponent, seed=None):
    return ft.check_dybe_sl2(shift_exponent)


@register("uqsl2.quasitriangular", "R intertwines the coproduct and its flip in rep2", D=2)
def _quasi(D, seed=None):
    return ft.check_quasitriangular(D)


# -- q-special functions -----------------------------------------------------

@register("qnum.connection", "two-term connection formula of 2phi1", points=DEFAULT_POINTS, tol=1e-10)
def _connection(points, tol, seed=DEFAULT_SEED):
    rng = np.random.default_rng(seed)

    def draw(rng):
        q = rng.uniform(0.2, 0.6)
        a = rng.uniform(0.05, 0.95)
        b = rng.uniform(0.05, 0.95)
        c = rng.uniform(1.1, 2.5)
        e = c - a - b + 1
        rmax = 0.85 * q ** (-e)
        if abs(a - b) < 0.05 or rmax <= 1.3:
            return {"reject": True}
        z = _polar(rng, 1.2, min(rmax, 6.0))
        return {"a": a, "b": b, "c": c, "q": q, "z": z}

    def evaluate(pt):
        if pt.get("reject"):
            raise DomainError("draw outside the common domain")
        return qn.connection_residual(pt["a"], pt["b"], pt["c"], pt["q"], pt["z"])

    results, rej = _sample(rng, draw, evaluate, points)
    return _merge("qnum.connection", results, rej, tol, seed, {"points": points})


@register("qnum.binomial", "2phi1 with A = C against its product formula", points=DEFAULT_POINTS, tol=1e-12)
def _binomial(points, tol, seed=DEFAULT_SEED):
    rng = np.random.default_rng(seed)

    def draw(rng):
        return {"q": rng.uniform(0.2, 0.6), "a": rng.uniform(0.1, 2.0), "b": rng.uniform(0.1, 2.0), "z": _polar(rng, 0.05, 0.8, 0.0)}

    def evaluate(pt):
        q, z = pt["q"], pt["z"]
        A, B = q ** pt["a"], q ** pt["b"]
        return abs(qn.phi21(A, B, A, q, z) - qn.qpoch(B * z, q) / qn.qpoch(z, q))

    results, rej = _sample(rng, draw, evaluate, points)
    return _merge("qnum.binomial", results, rej, tol, seed, {"points": points})


@register("qnum.connection_binomial", "connection formula at A = C against the product formula", points=DEFAULT_POINTS, tol=1e-12)
def _connection_binomial(points, tol, seed=DEFAULT_SEED):
    rng = np.random.default_rng(seed)

    def draw(rng):
        q = rng.uniform(0.2, 0.6)
        a = rng.uniform(0.1, 0.9)
        b = rng.uniform(0.05, 0.6)
        if abs(a - b) < 0.05:
            b = a + 0.1 if a < 0.5 else a - 0.1
        rmax = 0.85 * q ** (b - 1)
        z = _polar(rng, 1.2, max(1.25, min(rmax, 6.0)))
        return {"a": a, "b": b, "q": q, "z": z}

    def evaluate(pt):
        a, b, q, z = pt["a"], pt["b"], pt["q"], pt["z"]
        lhs, t1, t2 = qn.connection_terms(a, b, a, q, z)
        closed = qn.qpoch(q ** b / z, q) / qn.qpoch(1 / z, q)
        return max(abs(lhs - (t1 + t2)), abs(lhs - closed), abs(t1))

    results, rej = _sample(rng, draw, evaluate, points)
    return _merge("qnum.connection_binomial", results, rej, tol, seed, {"points": points})


# -- affine face -----------------------------------------------------------------

def _face_point(rng, q_range=(0.2, 0.6), p_range=(0.05, 0.3), zmax=0.8):
    q = rng.uniform(*q_range)
    p = rng.uniform(*p_range)
    w = rng.uniform(p + 0.15, 0.85)
    z = _polar(rng, 0.05, zmax, 0.0)
    return {"q": q, "p": p, "w": w, "z": z}


def _guarded(pt):
    af.FaceParams(pt["q"], pt["p"], pt["w"], pt["z"]).validate()


@register("affine.f_vv", "difference-equation solution against the 2phi1 closed form", points=DEFAULT_POINTS, tol=1e-10)
def _f_vv(points, tol, seed=DEFAULT_SEED):
    rng = np.random.default_rng(seed)
    iters = []

    def evaluate(pt):
        _guarded(pt)
        if abs(pt["p"] * pt["z"] / pt["q"] ** 2) >= 0.9:
            raise DomainError("closed-form series argument too large")
        sol = af.f_vv_by_difference(pt["z"], pt["p"], pt["w"], pt["q"])
        iters.append(sol.iterations)
        return float(np.abs(sol.matrix - af.f_vv_closed(pt["z"], pt["p"], pt["w"], pt["q"])).max())

    results, rej = _sample(rng, _face_point, evaluate, points)
    return _merge("affine.f_vv", results, rej, tol, seed, {"points": points}, max_iterations=max(iters))


@register("affine.difference", "closed form satisfies the difference equation", points=DEFAULT_POINTS, tol=1e-11)
def _difference(points, tol, seed=DEFAULT_SEED):
    rng = np.random.default_rng(seed)

    def evaluate(pt):
        _guarded(pt)
        if abs(pt["p"] * pt["z"] / pt["q"] ** 2) >= 0.9:
            raise DomainError("closed-form series argument too large")
        return af.check_difference_equation(pt["z"], pt["p"], pt["w"], pt["q"]).residual

    results, rej = _sample(rng, _face_point, evaluate, points)
    return _merge("affine.difference", results, rej, tol, seed, {"points": points})


def _annulus_point(rng):
    q = rng.uniform(0.4, 0.6)
    p = rng.uniform(0.05, 0.5 * q * q)
    w = rng.uniform(0.1, 0.9)
    inner = p / q ** 2
    lo, hi = inner * 1.5, 1 / (inner * 1.5)
    r = math.exp(rng.uniform(math.log(lo), math.log(hi)))
    z = _polar(rng, r, r)
    return {"q": q, "p": p, "w": w, "z": z}


@register("affine.gauge", "twisted trigonometric R equals the elliptic face R", points=DEFAULT_POINTS, tol=1e-8, control="none")
def _gauge(points, tol, control, seed=DEFAULT_SEED):
    rng = np.random.default_rng(seed)
    ctl = None if control == "none" else control

    def evaluate(pt):
        _guarded(pt)
        return af.check_gauge(pt["z"], pt["p"], pt["w"], pt["q"], control=ctl).residual

    results, rej = _sample(rng, _annulus_point, evaluate, points)
    rep = _merge("affine.gauge", results, rej, tol, seed, {"points": points, "control": control})
    if ctl is not None:
        rep.details["min_residual"] = min(float(r) for _, r in results)
    return rep


def _off_lattice(w, p, q, margin=0.2):
    """Reject ``w`` whose shifts ``w q^(2j)``, j in {-1, 0, 1}, sit near ``p^Z``.

    Residuals are absolute, so points next to a theta zero are ill-conditioned
    rather than generic.
    """
    lp = math.log(p)
    for j in (-1, 0, 1):
        t = math.log(w * q ** (2 * j)) / lp
        k = round(t)
        if abs(1 - p ** (t - k)) < margin:
            raise DomainError("dynamical variable too close to the theta zero set")


def _triple_point(rng):
    q = rng.uniform(0.3, 0.6)
    p = rng.uniform(0.05, 0.3)
    w = rng.uniform(0.15, 0.85)
    zs = [_polar(rng, 0.7, 1.3) for _ in range(3)]
    return {"q": q, "p": p, "w": w, "z1": zs[0], "z2": zs[1], "z3": zs[2]}


@register("affine.dybe", "dynamical YBE of the elliptic face R", points=DEFAULT_POINTS, tol=1e-10, shift_exponent=2)
def _dybe(points, tol, shift_exponent, seed=DEFAULT_SEED):
    rng = np.random.default_rng(seed)

    def evaluate(pt):
        af.FaceParams(pt["q"], pt["p"], pt["w"], 0.5).validate()
        _off_lattice(pt["w"], pt["p"], pt["q"])
        return af.dybe_residual(pt["z1"], pt["z2"], pt["z3"], pt["p"], pt["w"], pt["q"], shift_exponent)

    results, rej = _sample(rng, _triple_point, evaluate, points)
    rep = _merge("affine.dybe", results, rej, tol, seed, {"points": points, "shift_exponent": shift_exponent})
    rep.details["min_residual"] = min(float(r) for _, r in results)
    return rep


def _lplm_point(rng):
    q = rng.uniform(0.3, 0.6)
    p = rng.uniform(0.05, 0.3)
    w = rng.uniform(0.15, 0.85)
    return {"q": q, "p": p, "w": w, "z": _polar(rng, 0.6, 1.5)}


@register("affine.lplm", "L+ at p z equals the conjugated inverse of L- at z", points=DEFAULT_POINTS, tol=1e-8, conjugator="face")
def _lplm(points, tol, conjugator, seed=DEFAULT_SEED):
    rng = np.random.default_rng(seed)

    def evaluate(pt):
        _guarded(pt)
        return af.check_lplm(pt["z"], pt["p"], pt["w"], pt["q"], conjugator=conjugator).residual

    results, rej = _sample(rng, _lplm_point, evaluate, points)
    rep = _merge("affine.lplm", results, rej, tol, seed, {"points": points, "conjugator": conjugator})
    rep.details["min_residual"] = min(float(r) for _, r in results)
    return rep


@register("affine.symmetry", "w -> p/w exchanges b with bbar and c with cbar/z", points=DEFAULT_POINTS, tol=1e-12)
def _symmetry(points, tol, seed=DEFAULT_SEED):
    rng = np.random.default_rng(seed)

    def evaluate(pt):
        _guarded(pt)
        return af.check_weight_symmetry(pt["z"], pt["p"], pt["w"], pt["q"]).residual

    results, rej = _sample(rng, _lplm_point, evaluate, points)
    return _merge("affine.symmetry", results, rej, tol, seed, {"points": points})


@register("affine.p0_limit", "elliptic weights at p -> 0 against two trigonometric oracles", points=DEFAULT_POINTS, tol=1e-12, p=1e-16)
def _p0(points, tol, p, seed=DEFAULT_SEED):
    rng = np.random.default_rng(seed)
    literal = []

    def draw(rng):
        return {"q": rng.uniform(0.2, 0.6), "w": rng.uniform(0.15, 0.85), "z": _polar(rng, 0.3, 1.5)}

    def evaluate(pt):
        rep = af.check_p0_limit(pt["z"], pt["w"], pt["q"], p=p)
        literal.append(rep.details["bbar_minus_trig_b"])
        return rep.residual

    results, rej = _sample(rng, draw, evaluate, points)
    return _merge(
        "affine.p0_limit", results, rej, tol, seed, {"points": points, "p": p},
        min_bbar_minus_trig_b=min(literal),
    )


@register("affine.ybe_trig", "YBE of the trigonometric R", points=DEFAULT_POINTS, tol=1e-12)
def _ybe_trig(points, tol, seed=DEFAULT_SEED):
    rng = np.random.default_rng(seed)

    def evaluate(pt):
        return af.check_ybe_trig(pt["z1"], pt["z2"], pt["z3"], pt["q"]).residual

    results, rej = _sample(rng, _triple_point, evaluate, points)
    return _merge("affine.ybe_trig", results, rej, tol, seed, {"points": points})


# -- vertex --------------------------------------------------------------------------

def _vertex_point(rng, p_max=0.3):
    q = rng.uniform(0.3, 0.6)
    p = rng.uniform(0.05, p_max)
    return {"q": q, "p": p, "zeta": _polar(rng, 0.2, 1.0, 0.3)}


@register("vertex.product", "ordered factor product against the closed form", points=DEFAULT_POINTS, tol=1e-10, K=60, sign=1)
def _vertex_product(points, tol, K, sign, seed=DEFAULT_SEED):
    rng = np.random.default_rng(seed)
    rates = []

    def evaluate(pt):
        z, p, q = pt["zeta"], pt["p"], pt["q"]
        closed = vx.e_vv_closed(z, p, q, sign)
        err = {k: float(np.abs(vx.e_vv_product(z, p, q, k, sign)[0] - closed).max()) for k in (20, 40)}
        res = float(np.abs(vx.e_vv_product(z, p, q, K, sign)[0] - closed).max())
        if err[20] > 0 and err[40] > 1e-14:
            rates.append((err[40] / err[20]) ** (1 / 20) - math.sqrt(abs(p)))
        return res

    results, rej = _sample(rng, _vertex_point, evaluate, points)
    return _merge(
        "vertex.product", results, rej, tol, seed, {"points": points, "K": K, "sign": sign},
        rate_excess_max=max(rates) if rates else None,
    )


@register("vertex.ybe", "YBE of the eight-vertex R", points=DEFAULT_POINTS, tol=1e-10, drop_d=False, sign=1)
def _vertex_ybe(points, tol, drop_d, sign, seed=DEFAULT_SEED):
    rng = np.random.default_rng(seed)

    def draw(rng):
        pt = _vertex_point(rng)
        pt.update({f"zeta{i}": _polar(rng, 0.7, 1.3) for i in (1, 2, 3)})
        return pt

    def evaluate(pt):
        return vx.check_ybe_vertex(pt["zeta1"], pt["zeta2"], pt["zeta3"], pt["p"], pt["q"], sign, drop_d=drop_d).residual

    results, rej = _sample(rng, draw, evaluate, points)
    rep = _merge("vertex.ybe", results, rej, tol, seed, {"points": points, "drop_d": drop_d, "sign": sign})
    rep.details["min_residual"] = min(float(r) for _, r in results)
    return rep


@register("vertex.lrel", "L-relation of the eight-vertex R under the sigma_x conjugation", points=DEFAULT_POINTS, tol=1e-8, conjugator="sigma_x", sign=1)
def _vertex_lrel(points, tol, conjugator, sign, seed=DEFAULT_SEED):
    rng = np.random.default_rng(seed)

    def draw(rng):
        pt = _vertex_point(rng)
        pt["zeta"] = _polar(rng, 0.6, 1.5, 0.3)
        return pt

    def evaluate(pt):
        return vx.check_l_relation_vertex(pt["zeta"], pt["p"], pt["q"], sign, conjugator=conjugator).residual

    results, rej = _sample(rng, draw, evaluate, points)
    rep = _merge("vertex.lrel", results, rej, tol, seed, {"points": points, "conjugator": conjugator, "sign": sign})
    rep.details["min_residual"] = min(float(r) for _, r in results)
    return rep


@register("vertex.gauge", "twisted principal trigonometric R equals the eight-vertex R", points=DEFAULT_POINTS, tol=1e-10, sign=1)
def _vertex_gauge(points, tol, sign, seed=DEFAULT_SEED):
    rng = np.random.default_rng(seed)

    def draw(rng):
        pt = _vertex_point(rng)
        pt["zeta"] = _polar(rng, 0.75, 1.3, 0.3)
        return pt

    def evaluate(pt):
        return vx.check_vertex_gauge(pt["zeta"], pt["p"], pt["q"], sign).residual

    results, rej = _sample(rng, draw, evaluate, points)
    return _merge("vertex.gauge", results, rej, tol, seed, {"points": points, "sign": sign})


# -- dispatch ----------------------------------------------------------------------

def run_check(name, params=None, seed=None, timings=False):
    """Run a registered check with defaults overridden by ``params``."""
    if name not in REGISTRY:
        raise UnknownCheck(name)
    spec = REGISTRY[name]
    args = dict(spec.defaults)
    for k, v in (params or {}).items():
        if k not in args:
            raise InvalidParams(f"unknown parameter {k!r} for {name}", guard=k)
        args[k] = v
    t0 = time.perf_counter()
    if "points" in args:
        report = spec.run(seed=DEFAULT_SEED if seed is None else seed, **args)
    else:
        report = spec.run(**args)
    report.check_name = name
    report.params = {**args, **report.params}
    if "points" in args:
        report.seed = DEFAULT_SEED if seed is None else seed
    if timings:
        report.runtime_ms = int(round((time.perf_counter() - t0) * 1000))
    return report
