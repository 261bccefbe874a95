"""JSON kernel files, report files and findings.

Kernel file::

    {"scalar": "exact" | "float", "tol": 1e-9,
     "matrix": [[...], ...]}            # or
     "spec": {"type": "density", "expr": "cos(pi*(s+t))"}

Exact entries may be JSON numbers (read as exact decimals) or ``"p/q"``
strings; complex entries are ``[re, im]`` pairs.  Exact scalars are written
back as ``"p/q"`` strings in lowest terms, so exact reports round-trip.
Spec types: ``density`` (expr), ``rank_one`` (shape, measure),
``c0_factored`` (terms: [{coef, measure}]), ``atomic`` (points:
[[location, weight-expr]]), ``sum`` (parts) and ``preset`` (name).  A
measure is ``{"density": expr}`` or ``{"atoms": [[location, weight]]}``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import __version__
from .daugavet import DaugavetReport, RowStat
from .expression import to_text
from .models import (
    PRESETS,
    AtomList,
    Atomic,
    C0Factored,
    Density,
    DensityMeasure,
    KernelSpec,
    RankOne,
    SumSpec,
)
from .operator import KernelOperator, kernel
from .scalars import DEFAULT_TOL, ComplexRational, InputError, Surd, to_exact, to_float

TOOL = "daugavet"


@dataclass(frozen=True)
class KernelInput:
    scalar: str | None  # None: not given (specs then discretize in auto mode)
    tol: float
    operator: KernelOperator | None = None
    spec: KernelSpec | None = None
    raw: dict | None = None


# --------------------------------------------------------------------------
# scalars


def scalar_to_json(x):
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, ComplexRational):
        return [str(x.re), str(x.im)]
    if isinstance(x, Surd):
        return str(x)
    if isinstance(x, (complex, np.complexfloating)):
        return [float(x.real), float(x.imag)]
    if isinstance(x, (int, np.integer)):
        return int(x)
    return float(x)


def scalar_from_json(v, exact: bool):
    return to_exact(v) if exact else to_float(v)


def _entry(v, exact: bool):
    if isinstance(v, list):
        if len(v) != 2:
            raise InputError(f"complex entries are [re, im] pairs, got {v!r}")
        if exact:
            return to_exact(ComplexRational(to_exact(v[0]), to_exact(v[1])))
        return complex(to_float(v[0]), to_float(v[1]))
    return scalar_from_json(v, exact)


# --------------------------------------------------------------------------
# specs


def _measure_from_json(obj) -> DensityMeasure | AtomList:
    if not isinstance(obj, dict) or len(obj) != 1:
        raise InputError('a measure is {"density": expr} or {"atoms": [[location, weight], ...]}')
    if "density" in obj:
        return DensityMeasure(obj["density"])
    if "atoms" in obj:
        return AtomList(tuple((to_exact(loc), to_exact(w)) for loc, w in obj["atoms"]))
    raise InputError(f"unknown measure keys {sorted(obj)}")


def _measure_to_json(m) -> dict:
    if isinstance(m, DensityMeasure):
        return {"density": to_text(m.expr)}
    return {"atoms": [[str(loc), str(w)] for loc, w in m.atoms]}


def spec_from_json(obj) -> KernelSpec:
    if not isinstance(obj, dict) or "type" not in obj:
        raise InputError('spec must be an object with a "type" field')
    kind = obj["type"]
    try:
        match kind:
            case "density":
                return Density(obj["expr"])
            case "rank_one":
                return RankOne(obj["shape"], _measure_from_json(obj["measure"]))
            case "c0_factored":
                return C0Factored(tuple((t["coef"], _measure_from_json(t["measure"])) for t in obj["terms"]))
            case "atomic":
                return Atomic(tuple((to_exact(loc), w) for loc, w in obj["points"]))
            case "sum":
                return SumSpec(tuple(spec_from_json(p) for p in obj["parts"]))
            case "preset":
                if obj["name"] not in PRESETS:
                    raise InputError(f"unknown preset {obj['name']!r}; choose from {', '.join(PRESETS)}")
                return PRESETS[obj["name"]]()
    except KeyError as exc:
        raise InputError(f"spec of type {kind!r} is missing field {exc.args[0]!r}") from exc
    except (TypeError, ValueError) as exc:
        if isinstance(exc, InputError):
            raise
        raise InputError(f"malformed {kind!r} spec: {exc}") from exc
    raise InputError(f"unknown spec type {kind!r}")


def spec_to_json(spec: KernelSpec) -> dict:
    match spec:
        case Density(expr):
            return {"type": "density", "expr": to_text(expr)}
        case RankOne(shape, meas):
            return {"type": "rank_one", "shape": to_text(shape), "measure": _measure_to_json(meas)}
        case C0Factored(terms):
            return {
                "type": "c0_factored",
                "terms": [{"coef": to_text(c), "measure": _measure_to_json(m)} for c, m in terms],
            }
        case Atomic(points):
            return {"type": "atomic", "points": [[str(loc), to_text(w)] for loc, w in points]}
        case SumSpec(parts):
            return {"type": "sum", "parts": [spec_to_json(p) for p in parts]}
    raise TypeError(f"not a kernel spec: {spec!r}")


# --------------------------------------------------------------------------
# kernel files


def parse_kernel_json(text: str) -> KernelInput:
    try:
        obj = json.loads(text, parse_float=Decimal)
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON: {exc.msg} at line {exc.lineno} column {exc.colno}") from exc
    return kernel_input_from_obj(obj, raw)


def kernel_input_from_obj(obj, raw=None) -> KernelInput:
    if not isinstance(obj, dict):
        raise InputError("kernel file must hold a JSON object")
    scalar = obj.get("scalar")
    if scalar not in (None, "exact", "float"):
        raise InputError(f'"scalar" must be "exact" or "float", got {scalar!r}')
    tol = float(obj.get("tol", DEFAULT_TOL))
    if tol <= 0:
        raise InputError('"tol" must be > 0')
    if ("matrix" in obj) == ("spec" in obj):
        raise InputError('kernel file needs exactly one of "matrix" or "spec"')
    if "spec" in obj:
        return KernelInput(scalar, tol, spec=spec_from_json(obj["spec"]), raw=raw)
    exact = scalar != "float"
    rows = obj["matrix"]
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise InputError('"matrix" must be an array of row arrays')
    entries = [[_entry(v, exact) for v in row] for row in rows]
    op = kernel(entries, "exact" if exact else "float", tol)
    return KernelInput(scalar or "exact", tol, operator=op, raw=raw)


def load_kernel_file(path) -> KernelInput:
    return parse_kernel_json(Path(path).read_text())


def matrix_to_json(T: KernelOperator) -> list:
    return [[scalar_to_json(x) for x in row] for row in T.matrix]


def kernel_to_json(T: KernelOperator) -> dict:
    out = {"scalar": T.scalar, "matrix": matrix_to_json(T)}
    if not T.exact:
        out["tol"] = T.tol
    return out


# --------------------------------------------------------------------------
# reports


def report_to_json(rep: DaugavetReport) -> dict:
    return {
        "opnorm": scalar_to_json(rep.opnorm),
        "norm_id_plus": scalar_to_json(rep.norm_id_plus),
        "norm_id_minus": scalar_to_json(rep.norm_id_minus),
        "defect": scalar_to_json(rep.defect),
        "defect_bound": scalar_to_json(rep.defect_bound),
        "star": rep.star,
        "double_star": rep.double_star,
        "holds": rep.holds,
        "rows": [
            {
                "s": row.s,
                "d": scalar_to_json(row.d),
                "r": scalar_to_json(row.r),
                "rownorm": scalar_to_json(row.rownorm),
                "attains": row.attains,
            }
            for row in rep.rows
        ],
    }


def report_from_json(obj: dict, exact: bool, tol: float | None = None) -> DaugavetReport:
    def v(x):
        return scalar_from_json(x, exact)

    rows = tuple(RowStat(r["s"], v(r["d"]), v(r["r"]), v(r["rownorm"]), r["attains"]) for r in obj["rows"])
    return DaugavetReport(
        opnorm=v(obj["opnorm"]),
        norm_id_plus=v(obj["norm_id_plus"]),
        norm_id_minus=v(obj["norm_id_minus"]),
        defect=v(obj["defect"]),
        star=obj["star"],
        double_star=obj["double_star"],
        defect_bound=v(obj["defect_bound"]),
        rows=rows,
        exact=exact,
        tol=None if exact else (tol if tol is not None else DEFAULT_TOL),
    )


def report_file(rep: DaugavetReport, raw_input, level: int | None, n: int) -> dict:
    return {
        "tool": TOOL,
        "version": __version__,
        "input": raw_input,
        "level": level,
        "n": n,
        "scalar": "exact" if rep.exact else "float",
        "tol": rep.tol,
        "report": report_to_json(rep),
    }


def read_report_file(obj: dict) -> DaugavetReport:
    return report_from_json(obj["report"], obj["scalar"] == "exact", obj.get("tol"))


def finding_to_json(finding) -> dict:
    return {
        "trial": finding.trial,
        "predicate": finding.predicate,
        "kernel": kernel_to_json(finding.kernel),
        "report": report_to_json(finding.report),
    }


def finding_kernel(obj: dict) -> KernelOperator:
    """Rebuild the kernel stored in a serialized finding."""
    return kernel_input_from_obj(obj["kernel"]).operator


def dumps(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"
