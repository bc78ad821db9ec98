"""Command-line entry point: run checks and suites, export matrices as JSON.

Config files are TOML::

    seed = 20240607
    [[check]]
    name = "face.cocycle"
    params = { N = 4, D = 4 }

    [[check]]
    name = "affine.gauge"
    grid = { control = ["none", "no_prefactor"] }

A ``grid`` expands into one entry per combination, in row-major order.
``QUASIHOPF_OUT_DIR`` redirects relative ``--out`` paths.
"""

import argparse
import itertools
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np
import sympy

from . import __version__
from . import affineface as af
from . import facetwist as ft
from . import vertex as vx
from .errors import ConfigParseError, InvalidParams, PoleAtPoint, QuasiHopfError, UnknownCheck, UnknownMatrix
from .report import CONVENTIONS, SCHEMA_VERSION, _jsonable
from .suite import REGISTRY, run_check

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

__all__ = ["run_check", "run_suite", "load_config", "emit_matrix", "main"]

OUT_DIR_ENV = "QUASIHOPF_OUT_DIR"


def parse_value(text):
    low = text.lower()
    if low in ("true", "false"):
        return low == "true"
    for conv in (int, float, complex):
        try:
            return conv(text)
        except ValueError:
            pass
    return text


def parse_params(pairs):
    out = {}
    for item in pairs or []:
        if "=" not in item:
            raise InvalidParams(f"parameter {item!r} is not of the form key=value")
        k, v = item.split("=", 1)
        out[k.strip()] = parse_value(v.strip())
    return out


# -- suites --------------------------------------------------------------------

def load_config(path):
    """Expand a TOML config into a list of ``(name, params, seed)`` jobs."""
    try:
        with open(path, "rb") as fh:
            cfg = tomllib.load(fh)
    except OSError as exc:
        raise ConfigParseError(f"cannot read {path}: {exc}") from exc
    except tomllib.TOMLDecodeError as exc:
        raise ConfigParseError(f"{path}: {exc}") from exc
    seed = cfg.get("seed")
    entries = cfg.get("check", [])
    if not isinstance(entries, list):
        raise ConfigParseError("'check' must be an array of tables")
    jobs = []
    for i, entry in enumerate(entries):
        if not isinstance(entry, dict) or "name" not in entry:
            raise ConfigParseError(f"check entry {i} has no name")
        base = dict(entry.get("params", {}))
        grid = entry.get("grid", {})
        if any(not isinstance(v, list) for v in grid.values()):
            raise ConfigParseError(f"check entry {i}: grid values must be arrays")
        keys = list(grid)
        for combo in itertools.product(*(grid[k] for k in keys)):
            jobs.append((entry["name"], {**base, **dict(zip(keys, combo))}, entry.get("seed", seed)))
    return jobs


def _run_job(job):
    name, params, seed, timings = job
    try:
        return run_check(name, params, seed=seed, timings=timings).to_dict()
    except (UnknownCheck, InvalidParams) as exc:
        return {
            "schema_version": SCHEMA_VERSION,
            "check_name": name,
            "params": _jsonable(params),
            "pass": False,
            "error": f"{type(exc).__name__}: {exc}",
            "guard": getattr(exc, "guard", None),
        }


def run_suite(path, jobs=1, timings=False):
    """Run every entry of a config; returns ``(exit_code, reports)`` in config order."""
    work = [(n, p, s, timings) for n, p, s in load_config(path)]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(_run_job, work))
    else:
        reports = [_run_job(w) for w in work]
    return (0 if all(r["pass"] for r in reports) else 1), reports


# -- matrices ------------------------------------------------------------------

def _complex_matrix(M):
    return [[[float(x.real), float(x.imag)] for x in row] for row in np.asarray(M, dtype=complex)]


def _with_prefactor(weights, prefactor_fn):
    try:
        pre = complex(prefactor_fn())
    except PoleAtPoint:
        pre = None
    return {
        "matrix": None if pre is None else _complex_matrix(pre * weights),
        "weights": _complex_matrix(weights),
        "prefactor": None if pre is None else [pre.real, pre.imag],
    }


def _f_sl2(params):
    if params.get("symbolic", "w" not in params):
        q = sympy.Symbol("q", positive=True)
        M = ft.f_sl2_rational().subs(ft.V, sympy.sqrt(q)).applyfunc(sympy.factor)
        return {"matrix": [[str(M[i, j]) for j in range(4)] for i in range(4)], "variables": ["q", "w"]}
    return {"matrix": _complex_matrix(af.f_sl2(params["w"], params["q"]))}


def _r_trig(params):
    z, q = params["z"], params["q"]
    return _with_prefactor(af.r_trig(z, q, normalized=True), lambda: af.rho_trig(z, q))


def _r_elliptic(params):
    z, p, w, q = params["z"], params["p"], params["w"], params["q"]
    return _with_prefactor(af.r_elliptic(z, p, w, q, normalized=True), lambda: af.rho_elliptic(z, p, q))


def _r_8v(params):
    zeta, p, q = params["zeta"], params["p"], params["q"]
    sign = params.get("sign", 1)
    return _with_prefactor(vx.r_eight_vertex(zeta, p, q, sign, normalized=True), lambda: af.rho_elliptic(zeta * zeta, p, q))


def _f_vv(params):
    return {"matrix": _complex_matrix(af.f_vv_closed(params["z"], params["p"], params["w"], params["q"]))}


def _e_vv(params):
    return {"matrix": _complex_matrix(vx.e_vv_closed(params["zeta"], params["p"], params["q"], params.get("sign", 1)))}


MATRICES = {
    "f_sl2": (_f_sl2, {"q": 0.5}),
    "r_trig": (_r_trig, {"z": 0.5, "q": 0.5}),
    "f_vv": (_f_vv, {"z": 0.5, "p": 0.1, "w": 0.4, "q": 0.5}),
    "r_elliptic": (_r_elliptic, {"z": 0.5, "p": 0.1, "w": 0.4, "q": 0.5}),
    "e_vv": (_e_vv, {"zeta": 0.5, "p": 0.1, "q": 0.5}),
    "r_8v": (_r_8v, {"zeta": 0.5, "p": 0.1, "q": 0.5}),
}


def emit_matrix(name, params=None):
    """Row-major 4x4 matrix as ``[re, im]`` pairs with the convention block.

    R matrices carry their scalar prefactor separately; ``matrix`` is null
    when the prefactor sits on a pole.
    """
    if name not in MATRICES:
        raise UnknownMatrix(name)
    fn, defaults = MATRICES[name]
    args = {**defaults, **(params or {})}
    body = fn(args)
    return {
        "schema_version": SCHEMA_VERSION,
        "name": name,
        "params": _jsonable(args),
        "convention": _jsonable(CONVENTIONS),
        **body,
    }


# -- entry point ---------------------------------------------------------------

def _out_path(out):
    path = Path(out)
    base = os.environ.get(OUT_DIR_ENV)
    if base and not path.is_absolute():
        path = Path(base) / path
    path.parent.mkdir(parents=True, exist_ok=True)
    return path


def _emit(payload, out):
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if out:
        _out_path(out).write_text(text)
    else:
        sys.stdout.write(text)


def build_parser():
    ap = argparse.ArgumentParser(prog="quasihopf", description="Identity checks for face and vertex twistors.")
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run every check listed in a TOML config")
    run.add_argument("config")
    run.add_argument("--out")
    run.add_argument("--jobs", type=int, default=1)
    run.add_argument("--timings", action="store_true", help="record runtime_ms (breaks byte-identical output)")

    chk = sub.add_parser("check", help="run one named check")
    chk.add_argument("name")
    chk.add_argument("--param", action="append", metavar="K=V")
    chk.add_argument("--seed", type=int)
    chk.add_argument("--out")
    chk.add_argument("--timings", action="store_true")

    mat = sub.add_parser("matrix", help="export a 4x4 matrix")
    mat.add_argument("name", choices=sorted(MATRICES))
    mat.add_argument("--param", action="append", metavar="K=V")
    mat.add_argument("--out")

    sub.add_parser("list", help="list registered checks with their defaults")
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        if args.command == "list":
            for name, spec in REGISTRY.items():
                defaults = " ".join(f"{k}={v}" for k, v in spec.defaults.items())
                print(f"{name:28s} {spec.summary}  [{defaults}]")
            return 0
        if args.command == "run":
            code, reports = run_suite(args.config, jobs=args.jobs, timings=args.timings)
            _emit(reports, args.out)
            return code
        if args.command == "check":
            report = run_check(args.name, parse_params(args.param), seed=args.seed, timings=args.timings)
            _emit(report.to_dict(), args.out)
            return 0 if report.passed else 1
        if args.command == "matrix":
            _emit(emit_matrix(args.name, parse_params(args.param)), args.out)
            return 0
    except (ConfigParseError, UnknownCheck, UnknownMatrix, InvalidParams) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except QuasiHopfError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    return 2


if __name__ == "__main__":
    sys.exit(main())
