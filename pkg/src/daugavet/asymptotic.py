"""Grid-refinement studies of the Daugavet defect.

Weak compactness has no finite counterpart.  What the continuum argument
actually uses is that atom functions are continuous, which forces self-atoms
to vanish as the grid is refined.  A study therefore certifies the explicit
bound

    defect(n) <= 2 * max_i |d_i|      (and so <= 2*M/n when |density| <= M)

at each level, not a limit.  The defect is not claimed to be monotone in n.
The fitted exponent is a least-squares slope of log(defect_bound) against
log(n) over the levels where the bound is nonzero.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .daugavet import daugavet_report
from .models import Density, KernelSpec, SumSpec, discretize
from .operator import KernelOperator, transpose
from .scalars import DEFAULT_TOL, InputError, geq, rational_modulus


@dataclass(frozen=True)
class LevelResult:
    level: int
    opnorm: object
    defect: object
    defect_bound: object
    max_abs_diag: object


@dataclass(frozen=True)
class RefinementStudy:
    spec: KernelSpec
    levels: tuple[int, ...]
    results: tuple[LevelResult, ...]
    exponent: float | None
    dual: bool = False

    def csv_rows(self) -> list[tuple]:
        return [(r.level, r.opnorm, r.defect, r.defect_bound, r.max_abs_diag) for r in self.results]


class BoundViolation(AssertionError):
    """A certified per-level bound failed; indicates a bug, not a property of the kernel."""


def _max_abs_diag(T: KernelOperator):
    d = T.diagonal()
    if T.exact:
        return max(rational_modulus(x) for x in d)
    return float(np.abs(d).max())


def _is_density(spec: KernelSpec) -> bool:
    if isinstance(spec, SumSpec):
        return all(_is_density(p) for p in spec.parts)
    return isinstance(spec, Density)


def _fit_exponent(results) -> float | None:
    pts = [(math.log(r.level), math.log(float(r.defect_bound))) for r in results if r.defect_bound > 0]
    if len(pts) < 2:
        return None
    x, y = np.array(pts).T
    slope, _ = np.polyfit(x, y, 1)
    return float(slope)


def _study(spec, levels, scalar, tol, dual: bool) -> RefinementStudy:
    levels = tuple(int(n) for n in levels)
    if not levels:
        raise InputError("at least one level is required")
    if any(n < 2 for n in levels):
        raise InputError("levels must be >= 2")
    if any(a >= b for a, b in zip(levels, levels[1:])):
        raise InputError("levels must be strictly increasing")
    check_density = _is_density(spec)
    results = []
    for n in levels:
        T = discretize(spec, n, scalar, tol)
        if dual:
            T = transpose(T)
        report = daugavet_report(T)
        diag = _max_abs_diag(T)
        if not geq(report.defect_bound, report.defect, T.tol):
            raise BoundViolation(f"defect exceeds defect_bound at level {n}")
        if check_density and not geq(2 * diag, report.defect, T.tol):
            raise BoundViolation(f"defect exceeds 2*max|d_i| at level {n}")
        results.append(LevelResult(n, report.opnorm, report.defect, report.defect_bound, diag))
    return RefinementStudy(spec, levels, tuple(results), _fit_exponent(results), dual)


def refinement_study(spec: KernelSpec, levels, scalar: str = "auto", tol: float = DEFAULT_TOL) -> RefinementStudy:
    """Daugavet reports for ``spec`` at each grid level."""
    return _study(spec, levels, scalar, tol, dual=False)


def dual_study(spec: KernelSpec, levels, scalar: str = "auto", tol: float = DEFAULT_TOL) -> RefinementStudy:
    """The same study on the transposed (l1-side) discretizations."""
    return _study(spec, levels, scalar, tol, dual=True)
