"""Structured result of one identity check."""

import json
import math
from dataclasses import dataclass, field

SCHEMA_VERSION = 1

BASIS_ORDER = ["v1v1", "v1v2", "v2v1", "v2v2"]

CONVENTIONS = {
    "basis_order": BASIS_ORDER,
    "pbw_order": "f^a t^m e^b",
    "sqrt_p_sign": "+",
    "q_half": "principal sqrt",
    "trig_rho_prefactor": "q^(-1/2) counted once",
}


def _jsonable(x):
    if isinstance(x, complex):
        return [_num(x.real), _num(x.imag)]
    if isinstance(x, float):
        return _num(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if hasattr(x, "item") and not isinstance(x, (str, bytes)):
        return _jsonable(x.item())
    return x


def _num(v):
    return v if math.isfinite(v) else str(v)


@dataclass
class CheckReport:
    check_name: str
    params: dict
    residual: float
    tolerance: float
    truncation: dict = field(default_factory=dict)
    seed: int | None = None
    convention: dict = field(default_factory=lambda: dict(CONVENTIONS))
    details: dict = field(default_factory=dict)
    runtime_ms: int | None = None

    def __post_init__(self):
        self.convention = {**CONVENTIONS, **self.convention}

    @property
    def passed(self) -> bool:
        return bool(self.residual <= self.tolerance)

    def to_dict(self):
        return {
            "schema_version": SCHEMA_VERSION,
            "check_name": self.check_name,
            "params": _jsonable(self.params),
            "residual": _jsonable(float(self.residual)),
            "tolerance": _jsonable(float(self.tolerance)),
            "pass": self.passed,
            "truncation": _jsonable(self.truncation),
            "seed": self.seed,
            "convention": _jsonable(self.convention),
            "details": _jsonable(self.details),
            "runtime_ms": self.runtime_ms,
        }

    def to_json(self, indent=2):
        return json.dumps(self.to_dict(), indent=indent, sort_keys=True)


def worst(reports, name, params=None, seed=None, tolerance=None, **extra):
    """Merge per-point reports into one, keeping the largest residual."""
    reports = list(reports)
    tol = tolerance if tolerance is not None else max(r.tolerance for r in reports)
    res = max((r.residual for r in reports), default=0.0)
    details = {"points": len(reports), "residuals": [float(r.residual) for r in reports]}
    details.update(extra)
    return CheckReport(name, params or {}, res, tol, seed=seed, details=details)
